"""
Unit tests for API functions (complex_fromfile, complex_fromstring, windows).

Tests the entry points that read complexes and the window cache.
"""

import json
import os

import pytest

from twinmorse.api import (
    cache_path,
    complex_fromfile,
    complex_fromstring,
    load_window,
    product_window,
    twin_model,
)
from twinmorse.constants import CACHE_ENV
from twinmorse.errors import ComplexFormatError, UnsupportedType

CIRCLE = '{"vertices": [0, 1, 2], "cells": [[[0, 1]], [[1, 2]], [[0, 2]]]}'


class TestComplexFromString:
    """Test the complex_fromstring function."""

    def test_fromstring_str(self):
        K = complex_fromstring(CIRCLE)
        assert K.f_vector() == [3, 3]

    def test_fromstring_bytes(self):
        K = complex_fromstring(CIRCLE.encode("utf-8"))
        assert K.f_vector() == [3, 3]

    def test_fromstring_isolated_vertex(self):
        K = complex_fromstring('{"vertices": [0, 1, 5], "cells": [[[0, 1]]]}')
        assert K.vertices() == [0, 1, 5]

    def test_fromstring_not_json(self):
        with pytest.raises(ComplexFormatError):
            complex_fromstring("not json")

    def test_fromstring_not_an_object(self):
        with pytest.raises(ComplexFormatError):
            complex_fromstring("[1, 2]")

    def test_fromstring_missing_cells(self):
        with pytest.raises(ComplexFormatError):
            complex_fromstring('{"vertices": [1]}')


class TestComplexFromFile:
    """Test the complex_fromfile function."""

    def test_fromfile(self, temp_dir):
        path = os.path.join(temp_dir, "circle.json")
        with open(path, "w") as f:
            f.write(CIRCLE)
        assert complex_fromfile(path).f_vector() == [3, 3]

    def test_fromfile_nonexistent_file(self):
        with pytest.raises(FileNotFoundError):
            complex_fromfile("/nonexistent/complex.json")


class TestWindowCache:
    """Test the window cache directory."""

    def test_cache_path(self):
        assert cache_path("A~2", 3, "/tmp/w") == "/tmp/w/A_2-r3.json"
        assert cache_path("A~2", "3/2", "/tmp/w") == "/tmp/w/A_2-r3_2.json"

    def test_no_cache_configured(self):
        assert cache_path("A~2", 3) is None

    def test_cache_from_environment(self, monkeypatch, temp_dir):
        monkeypatch.setenv(CACHE_ENV, temp_dir)
        assert cache_path("A~1", 2) == os.path.join(temp_dir, "A_1-r2.json")

    def test_written_and_reused(self, monkeypatch, temp_dir):
        monkeypatch.setenv(CACHE_ENV, temp_dir)
        _, first = load_window("A~1", 2)
        path = cache_path("A~1", 2)
        assert os.path.isfile(path)
        _, second = load_window("A~1", 2)
        assert second.to_json() == first.to_json()

    def test_corrupt_cache_rebuilt(self, monkeypatch, temp_dir):
        monkeypatch.setenv(CACHE_ENV, temp_dir)
        path = cache_path("A~1", 2)
        with open(path, "w") as f:
            f.write("{broken")
        _, window = load_window("A~1", 2)
        assert len(window.cells.vertices()) == 5
        with open(path) as f:
            assert json.load(f)["type"] == "A~1"

    def test_wrong_radius_rebuilt(self, monkeypatch, temp_dir):
        """Test a cached window of another radius is not reused."""
        monkeypatch.setenv(CACHE_ENV, temp_dir)
        load_window("A~1", 1)
        os.replace(cache_path("A~1", 1), cache_path("A~1", 2))
        _, window = load_window("A~1", 2)
        assert window.radius == 2
        assert len(window.cells.vertices()) == 5


class TestModels:
    """Test product windows and twin models built through the cache."""

    def test_product_window(self):
        space = product_window("A~1xA~1", 1)
        assert space.label == "A~1xA~1"
        assert space.dim == 2

    def test_product_window_finite_type(self):
        with pytest.raises(UnsupportedType):
            product_window("A2", 1)

    def test_twin_model(self):
        model = twin_model("A~1", 4)
        assert model.summary()["generators"] == 2
