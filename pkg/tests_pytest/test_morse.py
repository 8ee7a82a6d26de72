"""
Unit tests for Morse values, descending links and the sublevel filtration.
"""

from fractions import Fraction

import pytest

from conftest import a1_id
from twinmorse.errors import BoundaryTruncated
from twinmorse.morse import (
    ESSENTIAL,
    NON_HORIZONTAL,
    ZERO_LEVEL,
    MorseFunction,
    MorseValue,
    check_descending_link,
    filtration,
    flag_complex,
)
from twinmorse.twin import ProductCell, ThinTwinModel


@pytest.fixture(scope="module")
def mf():
    """Morse function on an A~1 model of radius 10.

    Same heights as ``a1_model``; the larger window keeps the stars used by
    depths of cells up to position 6 inside.
    """
    return MorseFunction(ThinTwinModel.build("A~1", 10))


def cell(plus, minus):
    """Product cell from A~1 positions."""
    return ProductCell.of([a1_id(p) for p in plus], [a1_id(m) for m in minus])


class TestMorseValue:
    """Test the lexicographic order of Morse values."""

    def test_order(self):
        low = MorseValue(Fraction(4), Fraction(-1, 2), 1)
        high = MorseValue(Fraction(4), Fraction(0), 0)
        assert low < high
        assert MorseValue(Fraction(1), Fraction(3), 2) < low

    def test_str_and_json(self):
        value = MorseValue(Fraction(4), Fraction(-1, 2), 1)
        assert str(value) == "(4, -1/2, 1)"
        assert value.to_json() == ["4", "-1/2", 1]


class TestFlagComplex:
    def test_edge(self):
        """Test the subdivided edge has two edges."""
        faces = cell([4, 5], [0]).faces()
        assert flag_complex(faces).f_vector() == [3, 2]


class TestDescendingLinks:
    """Test descending links of the three kinds of positive cells."""

    def test_essential_vertex(self, mf):
        dl = mf.descending_link(cell([5], [0]))
        assert dl.kind == ESSENTIAL
        assert dl.essential
        assert dl.value == MorseValue(Fraction(4), Fraction(0), 0)
        assert dl.faces == ()
        assert len(dl.cofaces) == 3
        assert frozenset([(0, a1_id(4)), (1, a1_id(1))]) in dl.vertical_part
        assert check_descending_link(mf, dl).ok

    def test_non_horizontal_square_punctured_at_roof(self, mf):
        """Test every proper face but the essential roof is descending."""
        square = cell([-4, -5], [5, 6])
        roof = cell([-5], [6])
        assert mf.model.roof(square) == roof
        assert mf.kind(roof) == ESSENTIAL
        dl = mf.descending_link(square)
        assert dl.kind == NON_HORIZONTAL
        assert set(dl.faces) == {f for f in square.faces() if f not in (square, roof)}
        assert len(dl.faces) == 7
        assert cell([-5], [5, 6]) in dl.faces
        assert dl.cofaces == ()
        assert check_descending_link(mf, dl).ok

    def test_star_beyond_window(self):
        small = MorseFunction(ThinTwinModel.build("A~1", 6))
        with pytest.raises(BoundaryTruncated):
            small.descending_link(cell([6], [0]))

    def test_non_horizontal_edge(self, mf):
        dl = mf.descending_link(cell([4, 5], [0]))
        assert dl.kind == NON_HORIZONTAL
        assert dl.value == MorseValue(Fraction(4), Fraction(-1, 2), 1)
        assert dl.faces == (cell([4], [0]),)
        assert dl.horizontal_part.simplices == frozenset()
        result = check_descending_link(mf, dl)
        assert result.ok
        assert result.warnings == ()

    def test_to_json(self, mf):
        data = mf.descending_link(cell([4, 5], [0])).to_json()
        assert data["kind"] == NON_HORIZONTAL
        assert data["morse_value"] == ["4", "-1/2", 1]
        assert set(data["betti"]) == {"face", "coface", "horizontal", "vertical"}

    def test_zero_level(self, mf):
        zero = cell([0], [0])
        assert mf.kind(zero) == ZERO_LEVEL
        assert mf.morse_value(zero).h_sq == 0
        with pytest.raises(ValueError):
            mf.links_at(zero)

    def test_max_height(self, mf):
        assert mf.max_height_sq(cell([4, 5], [0, 1])) == 4


class TestFiltration:
    """Test sublevel complexes over a single square and its faces."""

    @pytest.fixture(scope="class")
    def levels(self, mf):
        return filtration(mf, cell([4, 5], [0, 1]).faces())

    def test_zero_level_set(self, levels):
        assert levels.levels[0].value is None
        assert levels.levels[0].added == (cell([4], [1]),)

    def test_levels_grow(self, levels):
        assert levels.check() == []
        assert levels.skipped == []

    def test_level_count(self, levels):
        positive = {v for v in levels.values.values() if v.h_sq > 0}
        assert len(levels) == 1 + len(positive)

    def test_to_json(self, levels):
        data = levels.to_json()
        assert data["skipped"] == 0
        assert data["levels"][0]["value"] is None
        assert data["levels"][-1]["f_vector"] == levels.subdivision.f_vector()
