"""
Unit tests for exact zonotope geometry.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import vec
from twinmorse.errors import InsufficientGenerators, NotInZonotope
from twinmorse.exactgeom import RationalVector
from twinmorse.zonotope import (
    FaceDescriptor,
    Zonotope,
    decompose_point,
    distance_sq,
    embed_parallel_translate,
    exact_min_over_polytope,
    is_sufficiently_rich,
    minmax_over_polytope,
    project_onto_zonotope,
    subunit_coefficients,
    sum_rich_generators,
    wchamber_contains,
    zonotope,
)

A2_POSITIVE = [vec(1, -1, 0), vec(0, 1, -1), vec(1, 0, -1)]
coordinate = st.fractions(min_value=-4, max_value=4, max_denominator=6)


class TestZonotope:
    """Test generators, containment and faces."""

    def test_generators_are_normalized(self):
        Z = Zonotope.of([vec(0, 1), vec(1, 0), vec(0, 0), vec(1, 0)], 2)
        assert Z.generators == (vec(0, 1), vec(1, 0))

    def test_dimension_checked(self):
        with pytest.raises(ValueError):
            Zonotope.of([vec(1, 0, 0)], 2)

    def test_square_vertices(self, unit_square):
        assert unit_square.vertices() == [vec(0, 0), vec(0, 1), vec(1, 0), vec(1, 1)]

    def test_symmetry(self, box, unit_square):
        assert box.is_symmetric
        assert not unit_square.is_symmetric
        assert unit_square.negated.vertices() == [
            vec(-1, -1),
            vec(-1, 0),
            vec(0, -1),
            vec(0, 0),
        ]

    def test_reduced(self, box):
        """Test opposite generators merge into one translated segment."""
        assert box.reduced == (vec(-1, -1), (vec(0, 2), vec(2, 0)))

    def test_support(self, box):
        assert box.support(vec(1, 1)) == 2

    def test_lower_dimensional(self):
        Z = Zonotope.of([vec(-1, 0)], 2)
        assert Z.span_rank == 1
        assert Z.contains(vec("-1/2", 0))
        assert not Z.contains(vec("1/2", 0))
        assert not Z.contains(vec(0, 1))
        assert Z.relint_contains(vec("-1/2", 0))
        assert not Z.relint_contains(vec(0, 0))

    def test_empty_generators(self):
        """Test the zonotope of no generators is the origin."""
        Z = Zonotope.of([], 2)
        assert Z.contains(vec(0, 0))
        assert not Z.contains(vec(1, 0))
        assert Z.vertices() == [vec(0, 0)]
        assert project_onto_zonotope(vec(3, 4), Z)[1].square == 25

    def test_shared_instances(self):
        gens = frozenset([vec(1, 0)])
        assert zonotope(gens, 2) is zonotope(gens, 2)


class TestProjection:
    """Test exact closest points."""

    @pytest.mark.parametrize(
        "point, foot, square",
        [
            (vec(2, 3), vec(1, 1), 5),
            (vec("1/2", -2), vec("1/2", 0), 4),
            (vec("1/3", "2/3"), vec("1/3", "2/3"), 0),
        ],
    )
    def test_unit_square(self, unit_square, point, foot, square):
        p, dist = project_onto_zonotope(point, unit_square)
        assert p == foot
        assert dist.square == Fraction(square)

    def test_box(self, box):
        p, dist = project_onto_zonotope(vec(3, 0), box)
        assert p == vec(1, 0)
        assert dist.square == 4
        assert distance_sq(vec(2, 2), box) == 2

    def test_dimension_mismatch(self, box):
        with pytest.raises(ValueError):
            project_onto_zonotope(vec(1, 2, 3), box)

    @settings(max_examples=50, deadline=None)
    @given(coordinate, coordinate)
    def test_obtuse_angle(self, x, y):
        """Test the foot lies in Z and sees every vertex at an obtuse angle."""
        Z = zonotope(frozenset([vec(1, 0), vec(0, 1), vec(1, 1)]), 2)
        point = RationalVector((x, y))
        p, _ = project_onto_zonotope(point, Z)
        assert Z.contains(p)
        assert all((point - p).dot(w - p) <= 0 for w in Z.vertices())


class TestDecomposition:
    """Test splitting a point into face and normal parts."""

    def test_outside_point(self, box):
        d = decompose_point(vec(3, 0), box)
        assert d.f == vec(1, 0)
        assert d.n == vec(2, 0)
        assert d.face.dim == 1
        assert d.face.normal_cone_contains(box, d.n)

    def test_inside_point(self, box):
        d = decompose_point(vec("1/2", 0), box)
        assert d.n == vec(0, 0)
        assert d.face.dim == 2

    def test_face_descriptor(self, box):
        face = FaceDescriptor.for_direction(box, vec(1, 1))
        assert face.dim == 0
        assert face.offset == vec(1, 1)
        assert face.contains(vec(1, 1))


class TestGeneratorSets:
    """Test sufficiently rich generator sets."""

    def test_rich(self, box):
        assert is_sufficiently_rich(box.generators, [vec(0, 0), vec(1, 0)])
        assert not is_sufficiently_rich([vec(1, 0)], [vec(0, 0), vec(1, 0)])

    def test_sum(self):
        assert sum_rich_generators([vec(1)], [vec(-1)]) == (vec(-1), vec(1))
        assert sum_rich_generators([], []) == ()


class TestSubunitCoefficients:
    """Test representations with coefficients in [0, 1]."""

    def test_square(self, unit_square):
        coeffs = subunit_coefficients(vec("1/2", "1/3"), unit_square)
        assert coeffs == {vec(0, 1): Fraction(1, 3), vec(1, 0): Fraction(1, 2)}

    def test_outside(self, unit_square):
        with pytest.raises(NotInZonotope):
            subunit_coefficients(vec(2, 0), unit_square)

    @settings(max_examples=30, deadline=None)
    @given(st.fractions(min_value=0, max_value=2, max_denominator=5))
    def test_sum_back(self, t):
        """Test coefficients recombine to the point."""
        Z = zonotope(frozenset([vec(1, 0), vec(0, 1), vec(1, 1)]), 2)
        point = RationalVector((t, t / 2))
        coeffs = subunit_coefficients(point, Z)
        assert all(0 <= c <= 1 for c in coeffs.values())
        total = RationalVector.zero(2)
        for z, c in coeffs.items():
            total = total + z.scale(c)
        assert total == point


class TestParallelTranslate:
    """Test embedding of parallel translates."""

    def test_segment(self):
        """Test x + Z(E_v) fits at the vertex the label graph drains into."""
        cert = embed_parallel_translate(vec("1/2"), [vec(0), vec(1)], [vec(-1), vec(1)])
        assert cert.vertex_index == 1
        assert cert.vertex == vec(1)
        extreme = sorted(cert.extreme_points, key=lambda v: v.coords)
        assert extreme == [vec("-1/2"), vec("1/2")]

    def test_outside(self):
        with pytest.raises(NotInZonotope):
            embed_parallel_translate(vec(2), [vec(0), vec(1)], [vec(-1), vec(1)])

    def test_insufficient(self):
        with pytest.raises(InsufficientGenerators):
            embed_parallel_translate(vec(0), [vec(0), vec(1)], [vec(1)])


class TestExtrema:
    """Test extrema of the distance over polytopes."""

    def test_exact_min(self, unit_square):
        assert exact_min_over_polytope([vec(2, -1), vec(2, 2)], unit_square) == 1

    def test_exact_min_empty(self, unit_square):
        with pytest.raises(ValueError):
            exact_min_over_polytope([], unit_square)

    def test_minmax(self, box):
        result = minmax_over_polytope([vec(2, 0), vec(3, 0)], box, verify_min=True)
        assert result.min_index == 0
        assert result.min_sq == 1
        assert result.max_indices == (1,)
        assert result.max_sq == 4

    def test_minmax_not_rich(self, unit_square):
        with pytest.raises(InsufficientGenerators):
            minmax_over_polytope([vec(2, 0), vec(3, 0)], unit_square)


class TestWeylChambers:
    """Test closed Weyl chamber containment."""

    def test_same_chamber(self):
        assert wchamber_contains(A2_POSITIVE, vec(1, 0, -1), vec(2, 1, -3))

    def test_other_chamber(self):
        assert not wchamber_contains(A2_POSITIVE, vec(1, 0, -1), vec(0, 1, -1))

    def test_origin(self):
        """Test the origin lies in every chamber but picks out only itself."""
        assert wchamber_contains(A2_POSITIVE, vec(0, 0, 0), vec(0, 0, 0))
        assert not wchamber_contains(A2_POSITIVE, vec(0, 0, 0), vec(1, 0, -1))
