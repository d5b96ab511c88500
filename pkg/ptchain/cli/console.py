# ptchain/cli/console.py
# Terminal output for the CLI: summaries on stdout, diagnostics on stderr.

from typing import Any, Dict, Optional

from rich.console import Console
from rich.markup import escape
from rich.padding import Padding
from rich.status import Status
from rich.table import Table

from ptchain.core.constants import CONSOLE_LEFT_PADDING, CONSOLE_RIGHT_PADDING

# No force_terminal: output is often redirected into files or captured by tests
_stdout_console = Console(soft_wrap=True)
_stderr_console = Console(stderr=True, soft_wrap=True)


class PtConsole:
    """Wraps a rich Console, indenting whatever it prints."""

    def __init__(self, console: Console, indent: bool = True):
        self._console = console
        self._indent = indent

    def print(self, renderable: Any = None, *args, indent: Optional[bool] = None, **kwargs):
        """
        Print one renderable, indented by the console padding.

        Args:
            renderable: Text or rich renderable
            indent: Override the console default; single-line diagnostics
                    are printed flush so they never wrap
        """
        if renderable is not None and (self._indent if indent is None else indent):
            renderable = Padding(
                renderable, (0, CONSOLE_RIGHT_PADDING, 0, CONSOLE_LEFT_PADDING)
            )
        return self._console.print(renderable, *args, **kwargs)

    def status(self, message: str, **kwargs) -> Status:
        return self._console.status(" " * CONSOLE_LEFT_PADDING + message, **kwargs)

    def __getattr__(self, name):
        return getattr(self._console, name)


pt_console = PtConsole(_stdout_console)
err_console = PtConsole(_stderr_console)


def show_spinner(message: str, spinner: str = "dots") -> Status:
    """
    Spinner on stderr while a sweep, map or scan runs.

    Returns:
        A Status usable as a context manager
    """
    return err_console.status(message, spinner=spinner, spinner_style="status.spinner")


def show_success(message: str) -> None:
    pt_console.print(f"[green]{escape(message)}[/green]")


def show_error(message: str) -> None:
    """Print a one-line error on stderr."""
    err_console.print(f"[red]{escape(message)}[/red]", indent=False)


def show_warning(message: str) -> None:
    err_console.print(f"[yellow]{escape(message)}[/yellow]")


def show_summary(title: str, rows: Dict[str, Any]) -> None:
    """Key/value table of a command's results."""
    table = Table(title=title, show_header=False, box=None)
    table.add_column("key", style="cyan")
    table.add_column("value")
    for key, value in rows.items():
        table.add_row(escape(str(key)), escape(str(value)))
    pt_console.print(table)
