"""
Parsing of angle and range flags.

Angles may be written as multiples of pi ("0.1pi", "-pi", "pi/2", "3pi/4").
The coefficient is parsed as an exact fraction and multiplied by math.pi
once, so "0.1pi" is exactly 0.1 * math.pi and not 0.1 times a rounded pi.
"""

import math
import re
from fractions import Fraction
from typing import Tuple

from ptchain.core.errors import ValidationError

_PI_ANGLE = re.compile(
    r"^(?P<sign>[+-]?)(?P<coef>(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?)?\s*\*?\s*pi"
    r"(\s*/\s*(?P<den>\d+))?$",
    re.IGNORECASE,
)


def parse_angle(text: str) -> float:
    """
    Parse an angle in radians.

    Args:
        text: A plain float ("0.314") or a multiple of pi ("0.1pi", "-pi", "pi/2")

    Returns:
        The angle as a float

    Raises:
        ValidationError: If the text is neither form or not finite
    """
    raw = text.strip()
    match = _PI_ANGLE.match(raw)
    if match:
        coef = Fraction(match.group("coef")) if match.group("coef") else Fraction(1)
        if match.group("den"):
            den = int(match.group("den"))
            if den == 0:
                raise ValidationError(f"Invalid angle {text!r}: division by zero")
            coef /= den
        if match.group("sign") == "-":
            coef = -coef
        return float(coef) * math.pi

    try:
        value = float(raw)
    except ValueError:
        raise ValidationError(
            f"Invalid angle {text!r}; use a number or a multiple of pi like 0.1pi"
        ) from None
    if not math.isfinite(value):
        raise ValidationError(f"Angle must be finite, got {text!r}")
    return value


def parse_float(text: str, name: str = "value") -> float:
    """Parse a finite float, accepting the pi forms of parse_angle."""
    try:
        return parse_angle(text)
    except ValidationError:
        raise ValidationError(f"Invalid {name} {text!r}") from None


def parse_range(text: str, name: str = "range") -> Tuple[float, float, int]:
    """
    Parse "start:stop:steps" with inclusive endpoints.

    Returns:
        (start, stop, steps) with start < stop and steps >= 2

    Raises:
        ValidationError: Malformed text or invalid bounds
    """
    parts = text.split(":")
    if len(parts) != 3:
        raise ValidationError(f"Invalid {name} {text!r}; expected start:stop:steps")
    start = parse_float(parts[0], f"{name} start")
    stop = parse_float(parts[1], f"{name} stop")
    try:
        steps = int(parts[2])
    except ValueError:
        raise ValidationError(f"Invalid {name} steps {parts[2]!r}; expected an integer") from None
    if not start < stop:
        raise ValidationError(f"Invalid {name} {text!r}; start must be below stop")
    if steps < 2:
        raise ValidationError(f"Invalid {name} {text!r}; steps must be >= 2")
    return start, stop, steps
