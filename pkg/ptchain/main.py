"""
Console entry point for ptchain.
"""

import sys

from ptchain.cli.commands import app
from ptchain.core.logging import get_logger

# Initialize logger
logger = get_logger(__name__)


def main() -> None:
    """Run the CLI; every failure ends in an exit code, never a traceback."""
    try:
        app(prog_name="ptchain")
    except KeyboardInterrupt:
        logger.warning("Interrupted by user")
        sys.exit(130)


if __name__ == "__main__":
    main()
