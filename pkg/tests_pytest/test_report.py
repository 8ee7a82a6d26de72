"""
Unit tests for suite reports and their canonical JSON form.
"""

import json
import os
from fractions import Fraction

import jsonschema
import pytest

from twinmorse.constants import EXPECTED_FAILURE, FAIL, PASS, WARN
from twinmorse.report import (
    MAX_EXAMPLES,
    SuiteReport,
    canonical_json,
    emit_report,
    load_schema,
)


@pytest.fixture
def report():
    r = SuiteReport("zonotopes", {"seed": 42, "radius": Fraction(3, 2)})
    r.check("recomposition", [], checked=3)
    r.check("projection", ["p1", "p2"], checked=5)
    r.check("collapse", [], checked=2, warnings=["stuck(6)"])
    r.add("counterexample", EXPECTED_FAILURE, reproduced=True)
    return r


class TestSuiteReport:
    """Test case records and tallies."""

    def test_statuses(self, report):
        assert [c["status"] for c in report.cases] == [PASS, FAIL, WARN, EXPECTED_FAILURE]
        assert report.counts == {PASS: 1, FAIL: 1, WARN: 1, EXPECTED_FAILURE: 1}
        assert not report.ok
        assert report.failures[0]["name"] == "projection"

    def test_detail(self, report):
        detail = report.cases[1]["detail"]
        assert detail == {"checked": 5, "violations": 2, "examples": ["p1", "p2"]}
        assert report.cases[2]["detail"]["warning_count"] == 1

    def test_examples_truncated(self):
        r = SuiteReport("morse", {})
        r.check("many", ["v%d" % i for i in range(25)], checked=25)
        detail = r.cases[0]["detail"]
        assert len(detail["examples"]) == MAX_EXAMPLES
        assert detail["violations"] == 25

    def test_config_fractions(self, report):
        assert report.config == {"seed": 42, "radius": "3/2"}

    def test_unknown_status(self):
        with pytest.raises(ValueError):
            SuiteReport("morse", {}).add("x", "skipped")

    def test_floats_rejected(self):
        with pytest.raises(TypeError):
            SuiteReport("morse", {"radius": 1.5})

    def test_summary(self, report):
        assert report.summary() == (
            "zonotopes: 4 cases, 1 passed, 1 failed, 1 warnings, 1 expected failures"
        )

    def test_ok_without_failures(self):
        r = SuiteReport("horolinks", {})
        r.check("fine", [], checked=1, warnings=["w"])
        assert r.ok


class TestCanonicalJson:
    """Test byte-stable output."""

    def test_sorted_keys(self):
        text = canonical_json({"b": 1, "a": Fraction(1, 2)})
        assert text == '{\n  "a": "1/2",\n  "b": 1\n}\n'

    def test_ascii(self):
        assert canonical_json(["Ã2"]) == '[\n  "\\u00c32"\n]\n'

    def test_timing_is_optional(self, report):
        report.wall_ms = 12
        assert "wall_ms" not in report.to_json()
        assert report.to_json(timing=True)["wall_ms"] == 12

    def test_schema(self, report):
        data = json.loads(canonical_json(report.to_json(True)))
        jsonschema.validate(data, load_schema())

    def test_schema_rejects_unknown_suite(self, report):
        data = report.to_json()
        data["suite"] = "other"
        with pytest.raises(jsonschema.ValidationError):
            jsonschema.validate(data, load_schema())


class TestEmitReport:
    """Test writing reports to disk."""

    def test_written(self, report, temp_dir):
        path = os.path.join(temp_dir, "report.json")
        emit_report(report, path)
        with open(path, encoding="ascii") as fp:
            assert fp.read() == canonical_json(report.to_json())

    def test_equal_runs_equal_bytes(self, report, temp_dir):
        first = os.path.join(temp_dir, "a.json")
        second = os.path.join(temp_dir, "b.json")
        emit_report(report, first)
        emit_report(report, second)
        with open(first, "rb") as a, open(second, "rb") as b:
            assert a.read() == b.read()

    def test_missing_directory(self, report, temp_dir):
        with pytest.raises(OSError):
            emit_report(report, os.path.join(temp_dir, "missing", "report.json"))
