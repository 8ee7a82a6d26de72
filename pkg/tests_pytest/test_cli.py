"""
Unit tests for CLI interface.

Tests command-line interface including argument parsing,
option handling, exit codes and report output.
"""

import json
import os
import sys
from unittest.mock import patch as mock_patch

import pytest

from twinmorse.cli import main


def run_main(*args):
    """Run the command with ``args`` and return its exit code."""
    with mock_patch.object(sys, "argv", ["twinmorse"] + list(args)):
        with pytest.raises(SystemExit) as exc_info:
            main()
    return exc_info.value.code


@pytest.fixture
def circle_file(temp_dir):
    path = os.path.join(temp_dir, "circle.json")
    with open(path, "w") as f:
        json.dump({"vertices": [0, 1, 2], "cells": [[[0, 1]], [[1, 2]], [[0, 2]]]}, f)
    return path


class TestMainFunction:
    """Test the main CLI function."""

    def test_main_with_version_option(self, capsys):
        assert run_main("--version") == 0
        assert "twinmorse 1.0.0" in capsys.readouterr().out

    def test_main_with_help_option(self, capsys):
        run_main("--help")
        captured = capsys.readouterr()
        assert "usage:" in captured.out.lower()
        assert "--suite" in captured.out

    def test_main_no_arguments(self, capsys):
        """Test main function with no arguments shows version and help."""
        assert run_main() in (None, 0)
        captured = capsys.readouterr()
        assert "twinmorse" in captured.out
        assert "usage:" in captured.out.lower()

    def test_unexpected_arguments(self):
        assert run_main("--suite", "zonotopes", "extra") == 2


class TestHomology:
    """Test the --homology mode."""

    def test_homology_to_stdout(self, circle_file, capsys):
        assert run_main("--homology", circle_file) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["betti"] == [0, 1]
        assert data["empty"] is False

    def test_homology_to_report(self, circle_file, temp_dir):
        out = os.path.join(temp_dir, "betti.json")
        assert run_main("--homology", circle_file, "--report", out) == 0
        with open(out) as f:
            assert json.load(f)["betti"] == [0, 1]

    def test_homology_missing_file(self):
        assert run_main("--homology", "/nonexistent/complex.json") == 2

    def test_homology_malformed_file(self, temp_dir):
        path = os.path.join(temp_dir, "bad.json")
        with open(path, "w") as f:
            f.write("{not json")
        assert run_main("--homology", path) == 2


class TestSuiteOptions:
    """Test configuration errors are usage errors."""

    @pytest.mark.parametrize(
        "args",
        [
            ["--suite", "nothing"],
            ["--suite", "zonotopes", "--radius", "abc"],
            ["--suite", "zonotopes", "--radius", "-1"],
            ["--suite", "horolinks", "--type", "Z9"],
            ["--suite", "zonotopes", "--trials", "-3"],
            ["--suite", "hemispheres", "--q", "1"],
            ["--suite", "zonotopes", "--seed", "x"],
        ],
    )
    def test_invalid_configuration(self, args):
        assert run_main(*args) == 2

    def test_unsupported_type(self):
        """Test a finite type for a product window is a usage error."""
        assert run_main("--suite", "horolinks", "--type", "A2", "--radius", "1") == 2


class TestSuiteRuns:
    """Test running a small suite end to end."""

    def test_report_to_stdout(self, capsys):
        code = run_main("--suite", "zonotopes", "--trials", "2", "--seed", "3", "-q")
        data = json.loads(capsys.readouterr().out)
        assert data["suite"] == "zonotopes"
        assert data["config"]["seed"] == 3
        assert "wall_ms" not in data
        assert code == (0 if data["ok"] else 1)

    def test_report_to_file(self, temp_dir):
        out = os.path.join(temp_dir, "report.json")
        code = run_main(
            "--suite", "zonotopes", "--trials", "1", "--report", out, "--timing"
        )
        with open(out) as f:
            data = json.load(f)
        assert isinstance(data["wall_ms"], int)
        assert code == (0 if data["ok"] else 1)

    def test_unwritable_report(self, temp_dir):
        out = os.path.join(temp_dir, "missing", "report.json")
        assert run_main("--suite", "zonotopes", "--trials", "1", "--report", out) == 3
