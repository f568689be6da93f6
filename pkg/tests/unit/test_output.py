"""Unit tests for CSV and JSON output."""

import json
import math

import pytest

from cavity_chain.output import METADATA_FILE, OutputTable, write_outputs
from cavity_chain.output.writer import dumps, format_value, sanitize


@pytest.fixture
def tables():
    return [
        OutputTable(
            name="spectrum",
            columns=("detuning", "T", "rel_superness", "saturation_flag"),
            rows=[(-1.0, 0.1, math.nan, 0), (0.5, 1 / 3, 0.25, 1)],
        ),
        OutputTable(name="length_scan", columns=("N", "peak_delta_T"), rows=[(2, 0.4)]),
    ]


class TestFormatting:
    """Test value formatting."""

    @pytest.mark.parametrize(
        "value,expected",
        [
            (0.1, "0.10000000000000001"),
            (1 / 3, "0.33333333333333331"),
            (100.0, "100"),
            (math.nan, "nan"),
            (True, "1"),
            (False, "0"),
            (7, "7"),
            ("1+2", "1+2"),
        ],
    )
    def test_format_value(self, value, expected):
        """Test floats use 17 significant digits and flags are 0/1."""
        assert format_value(value) == expected

    def test_sanitize(self):
        """Test non-finite floats become None at any depth."""
        document = {"a": [1.0, math.inf, {"b": math.nan}], 3: (2, -math.inf)}

        assert sanitize(document) == {"a": [1.0, None, {"b": None}], "3": [2, None]}

    def test_dumps_is_sorted(self):
        """Test JSON documents are key-sorted and end with a newline."""
        text = dumps({"b": 1, "a": math.nan})

        assert text == '{\n  "a": null,\n  "b": 1\n}\n'


class TestWriteOutputs:
    """Test output directories."""

    def test_csv_layout(self, tmp_path, tables):
        """Test one CSV per table plus metadata."""
        written = write_outputs(tmp_path / "out", "demo", tables, {"version": "1"})

        assert sorted(path.name for path in written) == [
            "length_scan.csv",
            METADATA_FILE,
            "spectrum.csv",
        ]

    def test_csv_content(self, tmp_path, tables):
        """Test header, LF line endings and the nan marker."""
        write_outputs(tmp_path, "demo", tables, {})
        raw = (tmp_path / "spectrum.csv").read_bytes()

        assert b"\r" not in raw
        assert raw.decode("utf-8").split("\n") == [
            "detuning,T,rel_superness,saturation_flag",
            "-1,0.10000000000000001,nan,0",
            "0.5,0.33333333333333331,0.25,1",
            "",
        ]

    def test_json_layout(self, tmp_path, tables):
        """Test the single JSON document with null for undefined values."""
        written = write_outputs(tmp_path, "demo", tables, {"version": "1"}, fmt="json")
        document = json.loads(written[0].read_text(encoding="utf-8"))

        assert [path.name for path in written] == ["demo.json"]
        assert document["metadata"] == {"version": "1"}
        assert document["tables"]["spectrum"]["columns"][2] == "rel_superness"
        assert document["tables"]["spectrum"]["rows"][0] == [-1.0, 0.1, None, 0]
        assert document["tables"]["length_scan"]["rows"] == [[2, 0.4]]

    def test_repeated_writes_identical(self, tmp_path, tables):
        """Test writing the same tables twice gives identical bytes."""
        first = write_outputs(tmp_path / "a", "demo", tables, {"x": 1.5})
        second = write_outputs(tmp_path / "b", "demo", tables, {"x": 1.5})

        for one, two in zip(first, second, strict=True):
            assert one.read_bytes() == two.read_bytes()

    def test_unwritable_directory(self, tmp_path, tables):
        """Test a file in place of the directory raises OSError."""
        blocker = tmp_path / "blocker"
        blocker.write_text("", encoding="utf-8")

        with pytest.raises(OSError):
            write_outputs(blocker, "demo", tables, {})
