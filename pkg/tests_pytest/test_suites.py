"""
Unit tests for suite configuration and small suite runs.
"""

from fractions import Fraction

import jsonschema
import pytest

from twinmorse.constants import EXPECTED_FAILURE, SUITES, WARN
from twinmorse.errors import ComplexFormatError
from twinmorse.report import canonical_json, load_schema
from twinmorse.suites import RUNNERS, SuiteConfig, morse_margin, run_suite


class TestSuiteConfig:
    """Test defaults, overrides and validation."""

    def test_defaults(self):
        config = SuiteConfig.defaults("morse")
        assert config.label == "A~1"
        assert config.radius == Fraction(6)
        assert config.trials == 1
        assert config.seed == 0
        assert config.q == 2

    def test_none_overrides_ignored(self):
        config = SuiteConfig.defaults("zonotopes", seed=None, trials=5, radius="3/2")
        assert config.seed == 0
        assert config.trials == 5
        assert config.radius == Fraction(3, 2)

    def test_to_json(self):
        assert SuiteConfig.defaults("zonotopes").to_json() == {
            "type": "A~2",
            "radius": "2",
            "q": 2,
            "seed": 0,
            "trials": 200,
            "strict_window": False,
        }

    @pytest.mark.parametrize(
        "suite, overrides",
        [
            ("nothing", {}),
            ("zonotopes", {"trials": -1}),
            ("zonotopes", {"radius": "-1"}),
            ("hemispheres", {"q": 1}),
            ("morse", {"radius": "r"}),
        ],
    )
    def test_invalid(self, suite, overrides):
        with pytest.raises(ValueError):
            SuiteConfig.defaults(suite, **overrides)

    def test_invalid_label(self):
        with pytest.raises(ComplexFormatError):
            SuiteConfig.defaults("horolinks", label="A~")


class TestRunners:
    """Test the suite registry."""

    def test_every_suite_has_a_runner(self):
        assert set(RUNNERS) == set(SUITES)

    def test_unknown_suite(self):
        with pytest.raises(ValueError):
            run_suite("nothing")

    @pytest.mark.parametrize("label, margin", [("A~1", 2), ("A~1xA~2", 4)])
    def test_morse_margin(self, label, margin):
        assert morse_margin(label) == margin


class TestZonotopeSuite:
    """Test a small zonotope run."""

    @pytest.fixture(scope="class")
    def report(self):
        config = SuiteConfig.defaults("zonotopes", trials=3, seed=5)
        return run_suite("zonotopes", config)

    def test_cases(self, report):
        names = [c["name"] for c in report.cases]
        assert names[:4] == [
            "space_decomposition",
            "projection_oracle",
            "parallel_translate",
            "vertex_minimum",
        ]
        assert names[4:] == ["chamber_lemma_A2", "chamber_lemma_B2", "chamber_lemma_G2"]
        assert report.cases[0]["detail"]["checked"] == 3

    def test_wall_time(self, report):
        assert report.wall_ms >= 0
        assert "wall_ms" in report.to_json(timing=True)

    def test_schema(self, report):
        jsonschema.validate(report.to_json(timing=True), load_schema())

    def test_reproducible(self, report):
        config = SuiteConfig.defaults("zonotopes", trials=3, seed=5)
        again = run_suite("zonotopes", config)
        assert canonical_json(again.to_json()) == canonical_json(report.to_json())


class TestHorolinksSuite:
    """Test the counterexamples are reported as expected failures."""

    def test_expected_failures(self):
        config = SuiteConfig.defaults("horolinks", label="A~1xA~1", radius=1, trials=1)
        report = run_suite("horolinks", config)
        assert report.counts[EXPECTED_FAILURE] == 2
        expected = [c["name"] for c in report.cases if c["status"] == EXPECTED_FAILURE]
        assert expected == ["disjoint_cohorizontal_faces", "missing_minimal_face"]
        jsonschema.validate(report.to_json(), load_schema())

    def test_counterexample_detail(self):
        config = SuiteConfig.defaults("horolinks", label="A~1xA~1", radius=1, trials=1)
        case = run_suite("horolinks", config).cases[-1]
        assert case["name"] == "missing_minimal_face"
        assert "name" not in case["detail"]
        assert case["detail"]["reproduced"] is True
        assert case["detail"]["space"] == "A~1xA~2"

    @pytest.mark.slow
    def test_seeded_run_passes(self):
        config = SuiteConfig.defaults(
            "horolinks", label="A~1xA~1", radius=3, trials=3, seed=7
        )
        report = run_suite("horolinks", config)
        assert report.failures == []
        detail = report.cases[1]["detail"]
        assert report.cases[1]["name"] == "horizontal_properties"
        assert detail["checked"] + detail["skipped"] == detail["horizontal"]
        assert detail["checked"] > 0
        assert "coverage" in detail


class TestMorseSuite:
    """Test descending-link kinds that were never checked are reported."""

    def test_core_without_positive_cells_warns(self):
        config = SuiteConfig.defaults("morse", radius=1)
        report = run_suite("morse", config)
        cases = {c["name"]: c for c in report.cases}
        assert cases["classification"]["detail"]["kinds"] == {"zero": 25}
        for kind in ("essential", "non-essential", "non-horizontal"):
            case = cases["descending_links:%s" % kind]
            assert case["status"] == WARN
            assert case["detail"]["checked"] == 0
        assert report.ok
