"""
Validation module for ptchain.

This module provides the checks applied to model parameters, tolerances and
grid definitions before any matrix is built. Checks collect every problem
first and then raise once, so a user sees all mistakes in a single message.
"""

import math
from typing import Iterable, List, Optional, Sequence

from ptchain.core.errors import ValidationError
from ptchain.core.logging import get_logger

logger = get_logger(__name__)


def raise_if_errors(errors: Sequence[str], context: str = "") -> None:
    """
    Raise a ValidationError joining all collected messages.

    Args:
        errors: Messages collected by the check_* helpers
        context: Optional prefix naming what was being validated
    """
    if not errors:
        return
    message = "; ".join(errors)
    if context:
        message = f"{context}: {message}"
    logger.debug(f"Validation failed: {message}")
    raise ValidationError(message)


def check_finite(name: str, value: float) -> List[str]:
    """Return an error if value is NaN or infinite."""
    if not math.isfinite(value):
        return [f"{name} must be finite, got {value!r}"]
    return []


def check_positive(name: str, value: float) -> List[str]:
    """Return an error if value is not a finite number > 0."""
    errors = check_finite(name, value)
    if not errors and value <= 0:
        errors.append(f"{name} must be > 0, got {value!r}")
    return errors


def check_non_negative(name: str, value: float) -> List[str]:
    """Return an error if value is not a finite number >= 0."""
    errors = check_finite(name, value)
    if not errors and value < 0:
        errors.append(f"{name} must be >= 0, got {value!r}")
    return errors


def check_int_at_least(name: str, value: int, minimum: int) -> List[str]:
    """Return an error if value is not an integer >= minimum."""
    if isinstance(value, bool) or not isinstance(value, int):
        return [f"{name} must be an integer, got {value!r}"]
    if value < minimum:
        return [f"{name} must be >= {minimum}, got {value}"]
    return []


def check_even(name: str, value: int, reason: str) -> List[str]:
    """Return an error if value is odd."""
    if isinstance(value, int) and value % 2 != 0:
        return [f"{name} must be even ({reason}), got {value}"]
    return []


def check_interval(
    name: str,
    value: float,
    low: Optional[float] = None,
    high: Optional[float] = None,
    low_open: bool = True,
    high_open: bool = True,
) -> List[str]:
    """Return an error if value lies outside the given interval."""
    errors = check_finite(name, value)
    if errors:
        return errors
    if low is not None and (value <= low if low_open else value < low):
        errors.append(f"{name} must be {'>' if low_open else '>='} {low}, got {value!r}")
    if high is not None and (value >= high if high_open else value > high):
        errors.append(
            f"{name} must be {'<' if high_open else '<='} {high}, got {value!r}"
        )
    return errors


def check_range(name: str, start: float, stop: float) -> List[str]:
    """Return an error if start/stop are not finite with start < stop."""
    errors = check_finite(f"{name} start", start) + check_finite(f"{name} stop", stop)
    if not errors and not start < stop:
        errors.append(f"{name} range must satisfy start < stop, got {start!r}:{stop!r}")
    return errors


def flatten(groups: Iterable[List[str]]) -> List[str]:
    """Concatenate several lists of error messages."""
    return [message for group in groups for message in group]
