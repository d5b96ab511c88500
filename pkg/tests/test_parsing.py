import math

import pytest

from ptchain.cli.parsing import parse_angle, parse_range
from ptchain.core.errors import ValidationError


@pytest.mark.parametrize(
    "text,expected",
    [
        ("0.1pi", 0.1 * math.pi),
        ("0.9pi", 0.9 * math.pi),
        ("-pi", -math.pi),
        ("pi", math.pi),
        ("PI", math.pi),
        ("pi/2", 0.5 * math.pi),
        ("-3pi/4", -0.75 * math.pi),
        ("2*pi", 2 * math.pi),
        ("0.314", 0.314),
        ("-1e-3", -1e-3),
    ],
)
def test_parse_angle(text, expected):
    assert parse_angle(text) == expected


@pytest.mark.parametrize("text", ["", "tau", "pi/0", "0.1 rad", "nan", "inf", "1pi2"])
def test_parse_angle_rejects(text):
    with pytest.raises(ValidationError):
        parse_angle(text)


def test_parse_range():
    assert parse_range("0:4:81") == (0.0, 4.0, 81)
    assert parse_range("-pi:pi:101") == (-math.pi, math.pi, 101)


@pytest.mark.parametrize("text", ["0:4", "4:0:10", "0:4:1", "0:4:x", "a:4:10", "0:0:5"])
def test_parse_range_rejects(text):
    with pytest.raises(ValidationError):
        parse_range(text, "--mu")
