"""
Tests for report writers.
"""

import orjson
import pandas as pd
import pytest
from docuscle_lab.writer import atomic_write, encode_csv, encode_json, write_report
from docuscle_types.errors import ConfigValidationError, InvariantViolationError
from docuscle_types.schemas.models import ExactReport


class TestEncodeJson:
    def test_model(self):
        report = ExactReport(model="classical", r=0.1, reasons={"q": "conditioning_on_null"})
        data = orjson.loads(encode_json(report))
        assert data["r"] == 0.1
        assert data["q"] is None
        assert data["reasons"] == {"q": "conditioning_on_null"}

    def test_floats_round_trip(self):
        value = 0.1 + 0.2
        assert orjson.loads(encode_json({"v": value}))["v"] == value

    def test_non_finite_rejected(self):
        with pytest.raises(InvariantViolationError, match=r"\$\.rows\[1\]\.v"):
            encode_json({"rows": [{"v": 1.0}, {"v": float("inf")}]})


class TestEncodeCsv:
    def test_rows(self, tmp_path):
        path = atomic_write(tmp_path / "t.csv", encode_csv([{"dim": 2, "agree": 5}]))
        frame = pd.read_csv(path)
        assert frame.to_dict("records") == [{"dim": 2, "agree": 5}]

    def test_nan_rejected(self):
        with pytest.raises(InvariantViolationError):
            encode_csv([{"v": float("nan")}])


class TestWriteReport:
    def test_stdout(self, capsys):
        write_report({"ok": True})
        assert orjson.loads(capsys.readouterr().out) == {"ok": True}

    def test_file_creates_parents(self, tmp_path):
        out = tmp_path / "a" / "b" / "report.json"
        write_report({"ok": True}, out)
        assert orjson.loads(out.read_bytes()) == {"ok": True}
        assert not list(out.parent.glob("*.tmp"))

    def test_csv_needs_rows(self, tmp_path):
        with pytest.raises(ConfigValidationError, match="no tabular form"):
            write_report({"ok": True}, tmp_path / "r.csv", "csv")

    def test_unknown_format(self, tmp_path):
        with pytest.raises(ConfigValidationError) as info:
            write_report({"ok": True}, tmp_path / "r.xml", "xml")
        assert info.value.field == "output.format"
