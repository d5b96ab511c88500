import json
import os

import numpy as np
import pytest

from ptchain.core.errors import ValidationError
from ptchain.utils.output import (
    build_manifest,
    csv_text,
    format_value,
    read_manifest,
    results_frame,
    write_csv,
    write_json,
)


@pytest.mark.parametrize(
    "value,expected",
    [
        (True, "true"),
        (False, "false"),
        (0.1, "0.1"),
        (1e-17, "1e-17"),
        (-0.0, "-0.0"),
        (np.float64(0.30000000000000004), "0.30000000000000004"),
        (np.int64(7), "7"),
        (float("nan"), "nan"),
        (3, "3"),
    ],
)
def test_format_value(value, expected):
    assert format_value(value) == expected


def test_numbers_round_trip_exactly():
    values = [0.1 * np.pi, 1 / 3, 2.0**-40, 123456789.123456789]
    text = csv_text(results_frame(["x"], [(v,) for v in values]))
    parsed = [float(line) for line in text.splitlines()[1:]]
    assert parsed == values


def test_write_csv_uses_lf_and_leaves_no_temporary_files(tmp_path):
    table = results_frame(["a", "b"], [(1, 0.5), (2, True)])
    path = write_csv(str(tmp_path / "out" / "table.csv"), table)
    with open(path, "rb") as f:
        raw = f.read()
    assert raw == b"a,b\n1,0.5\n2,true\n"
    assert os.listdir(tmp_path / "out") == ["table.csv"]


def test_table_cells_keep_repr_digits_and_lowercase_booleans():
    table = results_frame(
        ["re", "flag", "gamma_c"],
        [(np.float64(0.1) * 3, np.bool_(False), float("nan")), (1e-300, True, 2.0)],
    )
    assert list(table.columns) == ["re", "flag", "gamma_c"]
    assert csv_text(table) == (
        "re,flag,gamma_c\n0.30000000000000004,false,nan\n1e-300,true,2.0\n"
    )


def test_header_is_written_for_empty_tables(tmp_path):
    path = write_csv(str(tmp_path / "empty.csv"), results_frame(["mu", "gamma_c"], []))
    with open(path, encoding="utf-8") as f:
        assert f.read() == "mu,gamma_c\n"


def test_manifest_round_trip(tmp_path):
    manifest = build_manifest(
        command="spectrum",
        argv=["--model=ssh", "--n=4"],
        model={"model": "ssh"},
        tolerances={"zero_tol": 1e-8},
        grid=None,
        workers=1,
        duration=0.25,
        outputs=["spectrum.csv"],
    )
    path = write_json(str(tmp_path / "manifest.json"), manifest)
    loaded = read_manifest(path)
    assert loaded["argv"] == ["--model=ssh", "--n=4"]
    assert loaded["tolerances"] == {"zero_tol": 1e-8}
    assert loaded["tool"] == "ptchain"
    assert "staggered_potential" in loaded["conventions"]


def test_read_manifest_rejects_other_json(tmp_path):
    path = tmp_path / "other.json"
    path.write_text(json.dumps({"hello": "world"}))
    with pytest.raises(ValidationError):
        read_manifest(str(path))
    with pytest.raises(ValidationError):
        read_manifest(str(tmp_path / "missing.json"))
