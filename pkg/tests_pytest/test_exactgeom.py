"""
Unit tests for exact vectors, square-root comparisons and linear algebra.
"""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import vec
from twinmorse.errors import DegenerateSpan
from twinmorse.exactgeom import (
    Ordering,
    RationalVector,
    SqrtRational,
    cmp_sqrt,
    cmp_sum_sqrt,
    in_span,
    independent_subset,
    nullspace,
    perp_component,
    project_onto_cone,
    project_onto_span,
    rank,
    solve_linear,
    solve_system,
)

small = st.integers(min_value=0, max_value=50)


class TestRationalVector:
    """Test vector arithmetic."""

    def test_coordinates_are_fractions(self):
        v = vec(1, "1/2", Fraction(3, 4))
        assert v.coords == (Fraction(1), Fraction(1, 2), Fraction(3, 4))

    def test_float_coordinates_rejected(self):
        with pytest.raises(TypeError):
            vec(0.5, 1)

    def test_arithmetic(self):
        a, b = vec(1, 2), vec(3, "-1/2")
        assert a + b == vec(4, "3/2")
        assert a - b == vec(-2, "5/2")
        assert -a == vec(-1, -2)
        assert a.scale("1/2") == vec("1/2", 1)
        assert a.dot(b) == Fraction(2)
        assert b.norm_sq() == Fraction(37, 4)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            vec(1, 2) + vec(1, 2, 3)

    def test_concat_and_split(self):
        v = vec(1, 2).concat(vec(3))
        assert v == vec(1, 2, 3)
        assert v.split(2) == (vec(1, 2), vec(3))

    def test_str_and_json(self):
        v = vec("-1/2", 0)
        assert str(v) == "(-1/2, 0)"
        assert v.to_json() == ["-1/2", "0"]


class TestSqrtComparisons:
    """Test exact comparisons of square roots."""

    def test_negative_square_rejected(self):
        with pytest.raises(ValueError):
            SqrtRational(Fraction(-1))

    def test_cmp_sqrt(self):
        two, three = SqrtRational(Fraction(2)), SqrtRational(Fraction(3))
        assert cmp_sqrt(two, three) is Ordering.LT

    @pytest.mark.parametrize(
        "a, b, c, expected",
        [
            (1, 1, 1, Ordering.EQ),
            (4, 0, 1, Ordering.EQ),
            (4, 1, 2, Ordering.GT),
            (4, 1, 3, Ordering.LT),
        ],
    )
    def test_half_sum_against_root(self, a, b, c, expected):
        """Test (sqrt(a) + sqrt(b)) / 2 compared with sqrt(c)."""
        result = cmp_sum_sqrt(
            SqrtRational(Fraction(a)), SqrtRational(Fraction(b)), SqrtRational(Fraction(c))
        )
        assert result is expected

    @given(small, small, small)
    def test_perfect_squares(self, p, q, r):
        """Test agreement with integer arithmetic on perfect squares."""
        result = cmp_sum_sqrt(
            SqrtRational(Fraction(p * p)),
            SqrtRational(Fraction(q * q)),
            SqrtRational(Fraction(r * r)),
        )
        assert result is Ordering.of(Fraction(p + q), Fraction(2 * r))


class TestLinearAlgebra:
    """Test rank, kernels and linear solves over the rationals."""

    def test_rank(self):
        assert rank([vec(1, 2), vec(2, 4)]) == 1
        assert rank([vec(1, 0), vec(0, 1)]) == 2
        assert rank([], 3) == 0

    def test_nullspace(self):
        basis = nullspace([vec(1, 1, 1)], 3)
        assert len(basis) == 2
        assert all(b.dot(vec(1, 1, 1)) == 0 for b in basis)

    def test_solve_linear(self):
        coefficients = solve_linear([vec(1, 0), vec(1, 1)], vec(3, 2))
        assert coefficients == [Fraction(1), Fraction(2)]
        assert solve_linear([vec(1, 1)], vec(1, 0)) is None
        assert solve_linear([], RationalVector.zero(2)) == []

    def test_solve_system(self):
        rows = [vec(1, 1), vec(1, -1)]
        assert solve_system(rows, [Fraction(2), Fraction(0)], 2) == vec(1, 1)

    def test_independent_subset(self):
        assert independent_subset([vec(1, 0), vec(2, 0), vec(0, 1)]) == [0, 2]

    def test_in_span(self):
        assert in_span(vec(2, 2, 0), [vec(1, 1, 0)])
        assert not in_span(vec(0, 0, 1), [vec(1, 1, 0)])


class TestProjections:
    """Test orthogonal projections onto spans and cones."""

    def test_perp_component(self):
        assert perp_component(vec(1, 2, 3), [vec(1, 1, 0), vec(0, 0, 1)]) == vec(
            "-1/2", "1/2", 0
        )

    def test_perp_component_empty_span(self):
        assert perp_component(vec(1, 2), []) == vec(1, 2)

    def test_perp_component_dependent_span(self):
        with pytest.raises(DegenerateSpan):
            perp_component(vec(1, 2), [vec(1, 0), vec(2, 0)])

    def test_project_onto_span_dependent(self):
        """Test dependent spanning vectors are reduced first."""
        assert project_onto_span(vec(1, 2), [vec(1, 0), vec(2, 0)]) == vec(1, 0)

    def test_project_onto_cone(self):
        assert project_onto_cone(vec(-1, 1), [vec(1, 0), vec(0, 1)]) == vec(0, 1)
        assert project_onto_cone(vec(2, 3), [vec(1, 0), vec(0, 1)]) == vec(2, 3)
        assert project_onto_cone(vec(-1, -1), [vec(1, 0), vec(0, 1)]) == vec(0, 0)

    @given(st.integers(-9, 9), st.integers(-9, 9))
    def test_cone_projection_residual(self, x, y):
        """Test the residual is nonpositive on every generator and normal to the foot."""
        gens = [vec(1, 0), vec(1, 1)]
        point = vec(x, y)
        foot = project_onto_cone(point, gens)
        residual = point - foot
        assert all(residual.dot(g) <= 0 for g in gens)
        assert residual.dot(foot) == 0
