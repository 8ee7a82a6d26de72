"""
Unit tests for horizontal links, minimal faces, moves and depth.

The A~2 cases use the direction (0, 1, -1). It is perpendicular to the
coweight (2/3, -1/3, -1/3), so the edge from the origin to that coweight
is horizontal, while neither of its vertices sees the edge horizontally.
"""

from fractions import Fraction

import pytest

from conftest import a1_id, vec
from twinmorse.errors import (
    BoundaryTruncated,
    DimensionMismatch,
    NotGeneralPosition,
    NotHorizontal,
    UnsupportedType,
)
from twinmorse.horolinks import (
    DOWN,
    Depth,
    HorizontalLinks,
    MoveRecord,
    MoveSystem,
    ProductWindow,
    TwinDepths,
    Xi,
    check_horizontal_properties,
    disjoint_cohorizontal_faces,
    missing_minimal_face,
    move_bound,
    random_xi,
)
from twinmorse.polycomplex import PolyCell
from twinmorse.twin import ProductCell
from twinmorse.utils import make_rng

OMEGA = vec("2/3", "-1/3", "-1/3")
OTHER_OMEGA = vec("1/3", "1/3", "-2/3")


@pytest.fixture(scope="module")
def a2_links():
    """A~2 window of radius 3 with the direction (0, 1, -1)."""
    space = ProductWindow.build("A~2", 3)
    return HorizontalLinks(space, Xi((vec(0, 1, -1),)))


@pytest.fixture(scope="module")
def a1_links():
    space = ProductWindow.build("A~1", 3)
    return HorizontalLinks(space, Xi((vec(1),)))


def edge_to(links, target):
    window = links.space.factors[0]
    return PolyCell.simplex([0, window.vertex_id(target)])


class TestXi:
    """Test points at infinity."""

    def test_notation(self):
        xi = Xi((vec(1), vec(0, "1/2", -1)))
        assert str(xi) == "(1; 0, 1/2, -1)"
        assert Xi.parse(str(xi)) == xi

    def test_support(self):
        xi = Xi((vec(1), vec(0)))
        assert not xi.general_position
        assert xi.support() == (0,)
        assert xi.direction == vec(1, 0)
        assert xi.to_json() == [["1"], ["0"]]

    def test_busemann(self):
        xi = Xi((vec(1), vec(-1)))
        assert xi.busemann((vec(2), vec(5))) == Fraction(3)


class TestProductWindow:
    """Test products of affine windows."""

    def test_build(self):
        space = ProductWindow.build("A~1xA~2", 1)
        assert space.label == "A~1xA~2"
        assert space.rank == 2
        assert space.factor_dims == (1, 2)
        assert space.dim == 3

    def test_finite_component(self):
        with pytest.raises(UnsupportedType):
            ProductWindow.build("A~1xA2", 1)

    @pytest.mark.parametrize("label, bound", [("A~1xA~1", 27), ("A~1xA~2", 84)])
    def test_move_bound(self, label, bound):
        assert move_bound(ProductWindow.build(label, 0)) == bound

    def test_twin(self, a1_window):
        space = ProductWindow.twin(a1_window)
        assert space.label == "A~1xA~1"
        assert len(space.cells.vertices()) == 7 * 7

    def test_link_of_vertex(self, a1_links):
        link = a1_links.space.link(PolyCell.simplex([0]))
        assert link.factors == (0,)
        assert link.pole(a1_links.xi) == vec(1)
        assert link.simplex(PolyCell.simplex([0, a1_id(1)])) == frozenset([(0, a1_id(1))])
        assert len(link.building.vertices()) == 2

    def test_link_of_chamber(self, a1_links):
        """Test a chamber has an empty link."""
        link = a1_links.space.link(PolyCell.simplex([0, a1_id(1)]))
        assert link.building is None
        assert link.factors == ()

    def test_link_at_boundary(self):
        space = ProductWindow.build("A~1", 1)
        with pytest.raises(BoundaryTruncated):
            space.link(PolyCell.simplex([a1_id(1)]))


class TestHorizontalLinks:
    """Test the horizontal relation and minimal faces."""

    def test_wrong_factor_count(self, a1_window):
        space = ProductWindow.twin(a1_window)
        with pytest.raises(DimensionMismatch):
            HorizontalLinks(space, Xi((vec(1),)))

    def test_direction_outside_span(self, a2_links):
        with pytest.raises(DimensionMismatch):
            HorizontalLinks(a2_links.space, Xi((vec(1, 1, 1),)))

    def test_zero_direction(self, a2_links):
        with pytest.raises(ValueError):
            HorizontalLinks(a2_links.space, Xi((vec(0, 0, 0),)))

    def test_horizontal_edges(self, a2_links):
        assert a2_links.is_horizontal(edge_to(a2_links, OMEGA))
        assert not a2_links.is_horizontal(edge_to(a2_links, OTHER_OMEGA))

    def test_a1_edges_are_not_horizontal(self, a1_links):
        assert not a1_links.is_horizontal(PolyCell.simplex([0, a1_id(1)]))

    def test_essential_edge(self, a2_links):
        edge = edge_to(a2_links, OMEGA)
        assert a2_links.cohorizontal_faces(edge) == [edge]
        assert a2_links.cohorizontal(edge, PolyCell.simplex([0])) == (False, False)
        assert a2_links.is_essential(edge)

    def test_not_a_face(self, a2_links):
        with pytest.raises(ValueError):
            a2_links.cohorizontal(PolyCell.simplex([0]), edge_to(a2_links, OMEGA))

    def test_not_horizontal(self, a2_links):
        edge = edge_to(a2_links, OTHER_OMEGA)
        with pytest.raises(NotHorizontal):
            a2_links.cohorizontal(edge, PolyCell.simplex([0]))
        with pytest.raises(NotHorizontal):
            a2_links.moves_from(edge)

    def test_polar_classes(self, a2_links):
        """Test the origin sees two equatorial directions out of six."""
        classes = a2_links.polar_classes(PolyCell.simplex([0]))
        assert len(classes.labels) == 6
        assert len(classes.equatorial) == 2
        assert len(a2_links.vertical_directions(PolyCell.simplex([0]))) == 6

    def test_vertex_is_its_own_minimum(self, a1_links):
        vertex = PolyCell.simplex([0])
        assert a1_links.tau_min(vertex) == vertex
        assert a1_links.horizontal_cofaces(vertex) == []
        assert a1_links.moves_from(vertex) == []

    def test_not_general_position(self):
        space = ProductWindow.build("A~1xA~1", 2)
        links = HorizontalLinks(space, Xi((vec(1), vec(0))))
        with pytest.raises(NotGeneralPosition):
            links.tau_min(PolyCell.of([0], [0]))

    def test_factorwise(self, a2_links):
        edge = edge_to(a2_links, OMEGA)
        for face in edge.faces():
            assert a2_links.holds(edge, face) == a2_links.holds_on_factors(edge, face)

    def test_properties_at_essential_edge(self, a2_links):
        assert check_horizontal_properties(a2_links, edge_to(a2_links, OMEGA)) == []


class TestMoves:
    """Test moves and longest move sequences."""

    def test_moves_from_edge(self, a2_links):
        edge = edge_to(a2_links, OMEGA)
        moves = a2_links.moves_from(edge)
        assert {m.kind for m in moves} == {DOWN}
        assert {m.target for m in moves} == set(edge.proper_faces())

    def test_depth(self, a2_links):
        system = MoveSystem(a2_links)
        edge = edge_to(a2_links, OMEGA)
        assert system.depth(edge) == 1
        assert system.brute_force_depth(edge) == 1
        assert system.is_acyclic(edge)
        assert system.depth(PolyCell.simplex([0])) == 0

    def test_to_json(self, a2_links):
        system = MoveSystem(a2_links)
        data = system.to_json(edge_to(a2_links, OMEGA))
        assert len(data["edges"]) == 2
        assert all(e["kind"] == DOWN for e in data["edges"])

    def test_move_record(self):
        move = MoveRecord(DOWN, PolyCell.simplex([0, 1]), PolyCell.simplex([0]))
        assert str(move) == "[0,1] \\ [0]"
        assert move.to_json() == {"kind": "down", "from": [[0, 1]], "to": [[0]]}


class TestTwinDepths:
    """Test depths of twin model cells."""

    def test_vertex_depth(self, a1_model):
        depths = TwinDepths(a1_model)
        assert depths.depth(ProductCell.of([a1_id(5)], [a1_id(0)])) == Depth(Fraction(0))

    def test_non_horizontal_is_half_below_roof(self, a1_model):
        depths = TwinDepths(a1_model)
        depth = depths.depth(ProductCell.of([a1_id(4), a1_id(5)], [a1_id(0)]))
        assert str(depth) == "-1/2"

    def test_zero_level(self, a1_model):
        depths = TwinDepths(a1_model)
        cell = ProductCell.of([0], [0])
        assert depths.gradient_xi(cell) is None
        assert depths.links_at(cell) is None
        assert depths.depth(cell) == Depth(Fraction(0))

    def test_gradient_xi(self, a1_model):
        xi = TwinDepths(a1_model).gradient_xi(ProductCell.of([a1_id(5)], [a1_id(0)]))
        assert xi == Xi((vec(2), vec(-2)))


class TestSampling:
    """Test random points at infinity."""

    def test_random_xi_general_position(self):
        space = ProductWindow.build("A~1xA~2", 1)
        rng = make_rng(0)
        for _ in range(10):
            xi = random_xi(space, rng)
            assert xi.general_position
            HorizontalLinks(space, xi)


class TestCounterexamples:
    """Test the configurations outside general position."""

    def test_disjoint_cohorizontal_faces(self):
        found = disjoint_cohorizontal_faces()
        assert found.reproduced
        assert found.space == "A~1xA~1"
        assert sorted(found.to_json()["cells"]) == ["sigma1", "sigma2", "tau"]

    def test_missing_minimal_face(self):
        found = missing_minimal_face()
        assert found.reproduced
        assert found.space == "A~1xA~2"
