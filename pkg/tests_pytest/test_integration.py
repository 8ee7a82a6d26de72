"""
Integration tests for complete suite runs.

Every suite runs on a small configuration and its report must validate
against the report schema with no failed case.
"""

import json
import os

import jsonschema
import pytest

from twinmorse.constants import FAIL
from twinmorse.report import emit_report, load_schema
from twinmorse.suites import SuiteConfig, run_suite

SMALL = {
    "zonotopes": {"trials": 10},
    "horolinks": {"label": "A~1xA~1", "radius": 2, "trials": 3},
    "hemispheres": {"trials": 1},
    "morse": {},
    "twin-metric": {"label": "A~1", "radius": 3, "trials": 20},
}


def failed(report):
    return [
        (c["name"], c["detail"].get("examples"))
        for c in report.cases
        if c["status"] == FAIL
    ]


@pytest.mark.integration
class TestCompleteWorkflows:
    """Test complete suite workflows."""

    @pytest.mark.parametrize("suite", ["zonotopes", "horolinks", "hemispheres"])
    def test_suite_passes(self, suite):
        report = run_suite(suite, SuiteConfig.defaults(suite, **SMALL[suite]))
        assert failed(report) == []
        jsonschema.validate(report.to_json(timing=True), load_schema())

    @pytest.mark.slow
    @pytest.mark.parametrize("suite", ["morse", "twin-metric"])
    def test_model_suite_passes(self, suite):
        report = run_suite(suite, SuiteConfig.defaults(suite, **SMALL[suite]))
        assert failed(report) == []
        jsonschema.validate(report.to_json(), load_schema())

    @pytest.mark.slow
    def test_default_morse_checks_positive_cells(self):
        report = run_suite("morse")
        cases = {c["name"]: c for c in report.cases}
        kinds = cases["classification"]["detail"]["kinds"]
        assert kinds["zero"] > 0
        for kind in ("essential", "non-horizontal"):
            case = cases["descending_links:%s" % kind]
            assert case["status"] == "pass"
            assert case["detail"]["checked"] > 0
        assert failed(report) == []

    @pytest.mark.slow
    def test_twin_metric_sample_counts(self):
        config = SuiteConfig.defaults("twin-metric", label="A~1", radius=3)
        report = run_suite("twin-metric", config)
        cases = {c["name"]: c for c in report.cases}
        assert cases["midpoint_convexity"]["detail"]["checked"] == 500
        reflections = cases["reflection_preserves_height"]["detail"]
        assert reflections["samples_per_wall"] == 200
        assert reflections["checked"] > 0
        assert failed(report) == []

    def test_report_file_round_trip(self, temp_dir):
        report = run_suite("zonotopes", SuiteConfig.defaults("zonotopes", trials=2))
        path = os.path.join(temp_dir, "zonotopes.json")
        emit_report(report, path, timing=True)
        with open(path, encoding="ascii") as f:
            data = json.load(f)
        jsonschema.validate(data, load_schema())
        assert data["counts"] == report.counts
        assert data["ok"] == report.ok
