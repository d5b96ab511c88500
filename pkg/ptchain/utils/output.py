"""
Result files: CSV, JSON and run manifests.

Every file is written to a temporary sibling and renamed into place, so an
interrupted run never leaves a partial file. Numbers are written with repr(),
the shortest decimal that round-trips a double.
"""

import json
import math
import os
import tempfile
from typing import Any, Dict, Iterable, List, Optional, Sequence

import pandas as pd

from ptchain import __version__
from ptchain.core.errors import PtChainError, ValidationError
from ptchain.core.logging import get_logger

logger = get_logger(__name__)

# Conventions that are not parameters but change how results read
CONVENTIONS = {
    "staggered_potential": "i*gamma*(-1)^n with 1-based n; site 1 is a loss",
    "end_cap_potential": "+i*gamma on site 1, -i*gamma on site N",
    "kitaev_basis": "(particle 1..N, hole 1..N)",
    "eigenvectors": "right eigenvectors, unit norm, largest component real positive",
    "ordering": "eigenvalues sorted by (re, im)",
}


def format_value(value: Any) -> str:
    """Format one CSV cell."""
    if hasattr(value, "item"):
        # numpy scalar
        return format_value(value.item())
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        return repr(value)
    return str(value)


def atomic_write_text(path: str, text: str) -> str:
    """
    Write text to path via a temporary file in the same directory.

    Args:
        path: Destination file (user directory expanded)
        text: Content, written with LF line endings

    Returns:
        The expanded destination path

    Raises:
        PtChainError: If the directory cannot be created or the file written
    """
    target = os.path.expanduser(path)
    directory = os.path.dirname(target) or "."
    try:
        os.makedirs(directory, exist_ok=True)
        fd, tmp_path = tempfile.mkstemp(prefix=".tmp-", dir=directory)
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as f:
                f.write(text)
            os.replace(tmp_path, target)
        except BaseException:
            if os.path.exists(tmp_path):
                os.unlink(tmp_path)
            raise
    except OSError as e:
        error_msg = f"Error writing '{target}': {e}"
        logger.error(error_msg)
        raise PtChainError(error_msg) from e

    logger.info(f"Wrote {target}")
    return target


def results_frame(
    header: Sequence[str], rows: Iterable[Sequence[Any]]
) -> pd.DataFrame:
    """
    Build a results table of formatted cells.

    Every column holds strings from format_value, so numbers keep their
    repr() digits and booleans read true/false.
    """
    cells = [[format_value(cell) for cell in row] for row in rows]
    return pd.DataFrame(cells, columns=list(header), dtype=object)


def csv_text(frame: pd.DataFrame) -> str:
    return frame.to_csv(index=False, lineterminator="\n")


def write_csv(path: str, frame: pd.DataFrame) -> str:
    """Write a results table as CSV with a header row and LF line endings."""
    return atomic_write_text(path, csv_text(frame))


def _json_default(value: Any) -> Any:
    if hasattr(value, "tolist"):
        return value.tolist()
    if hasattr(value, "value"):
        # Enum
        return value.value
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")


def json_text(payload: Dict[str, Any]) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, default=_json_default) + "\n"


def write_json(path: str, payload: Dict[str, Any]) -> str:
    return atomic_write_text(path, json_text(payload))


def build_manifest(
    command: str,
    argv: List[str],
    model: Optional[Dict[str, Any]],
    tolerances: Dict[str, Any],
    grid: Optional[Dict[str, Any]],
    workers: int,
    duration: float,
    outputs: List[str],
    summary: Optional[Dict[str, Any]] = None,
) -> Dict[str, Any]:
    """
    Assemble the reproducibility record of one run.

    Args:
        command: CLI command name
        argv: The command's own arguments, replayable as-is
        model: ModelSpec.to_dict() of the (base) model
        tolerances: Every threshold used
        grid: Sweep/map/scan grid definition, if any
        workers: Worker count
        duration: Wall-clock seconds
        outputs: Names of the files written next to the manifest
        summary: Command-specific result summary

    Returns:
        A JSON-serializable dict
    """
    return {
        "tool": "ptchain",
        "version": __version__,
        "command": command,
        "argv": list(argv),
        "model": model,
        "tolerances": tolerances,
        "grid": grid,
        "workers": workers,
        "duration_seconds": round(duration, 6),
        "conventions": CONVENTIONS,
        "outputs": sorted(outputs),
        "summary": summary or {},
    }


def read_manifest(path: str) -> Dict[str, Any]:
    """
    Load a manifest written by build_manifest/write_json.

    Raises:
        ValidationError: If the file is missing or not a ptchain manifest
    """
    expanded = os.path.expanduser(path)
    try:
        with open(expanded, "r", encoding="utf-8") as f:
            payload = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise ValidationError(f"Cannot read manifest '{expanded}': {e}") from e
    if not isinstance(payload, dict) or "command" not in payload or "argv" not in payload:
        raise ValidationError(f"'{expanded}' is not a ptchain run manifest")
    return payload
