"""
Horizontal links, minimal faces, moves and depth in products of affine windows.

A point at infinity of a product of Euclidean Coxeter complexes is given by
one direction per factor. A cell is horizontal when the Busemann function of
that point is constant on it. For horizontal ``sigma <= tau`` the relation
``tau -o sigma`` holds when the new directions of ``tau`` at ``sigma`` lie in
the horizontal part of the link of ``sigma``.

Copyright (c) 2025 Max Qian <astro_air@126.com>
Available under the terms of MIT license
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Any, Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

import networkx as nx

from .coxcomplex import (
    Window,
    build_affine_window,
    classify_coxeter,
    parse_type_label,
    typ,
)
from .errors import (
    BoundaryTruncated,
    DimensionMismatch,
    InvariantViolation,
    MoveCycle,
    NotGeneralPosition,
    NotHorizontal,
    UnsupportedType,
)
from .exactgeom import Ordering, RationalVector, perp_component, vector_sum
from .logging_utils import debug
from .parser import BuildingSpec, format_product_point, parse_product_point
from .polycomplex import PolyCell, PolyComplex, meet_and_faces
from .sphbuild import (
    JoinBuilding,
    PolarClass,
    ThinBuilding,
    direction_class,
    horizontality_criteria,
)
from .twin import GradientDir, ProductCell, ThinTwinModel
from .utils import fraction_str, random_fraction

UP = "up"
DOWN = "down"

LinkVertex = Tuple[int, Any]


def _concat(vectors: Sequence[RationalVector]) -> RationalVector:
    out = RationalVector.zero(0)
    for v in vectors:
        out = out.concat(v)
    return out


@dataclass(frozen=True)
class Xi:
    """Point at infinity of a product, one direction per factor."""

    components: Tuple[RationalVector, ...]

    @classmethod
    def of_gradient(cls, grad: GradientDir) -> "Xi":
        """The direction ``(n, -n)`` of a twin gradient."""
        return cls(grad.components())

    @classmethod
    def parse(cls, text: str) -> "Xi":
        """Read the ``"(1; 0, 1, -1)"`` notation used by :meth:`__str__`.

        Raises:
            ComplexFormatError: If a coordinate is not rational.
        """
        return cls(parse_product_point(text))

    @property
    def direction(self) -> RationalVector:
        return _concat(self.components)

    @property
    def general_position(self) -> bool:
        """Whether the Busemann function is nonconstant on every factor."""
        return all(not c.is_zero() for c in self.components)

    def support(self) -> Tuple[int, ...]:
        """Factors not perpendicular to the point."""
        return tuple(i for i, c in enumerate(self.components) if not c.is_zero())

    def busemann(self, point: Sequence[RationalVector]) -> Fraction:
        """Busemann function up to an additive constant."""
        return -sum((c.dot(x) for c, x in zip(self.components, point)), Fraction(0))

    def to_json(self) -> List[List[str]]:
        return [c.to_json() for c in self.components]

    def __str__(self) -> str:
        return format_product_point(self.components)


@dataclass(frozen=True)
class ProductLink:
    """Link of a product cell as a thin spherical building.

    ``factors[k]`` is the product factor contributing the join part ``k``;
    factors in which the cell is a chamber contribute nothing.
    """

    base: PolyCell
    building: Optional[ThinBuilding]
    factors: Tuple[int, ...]

    def vertex(self, factor: int, v: Any) -> LinkVertex:
        return (self.factors.index(factor), v)

    def simplex(self, tau: PolyCell) -> FrozenSet[LinkVertex]:
        """The directions of ``tau`` at the base cell, as a simplex of the link."""
        out = set()
        for i, new in enumerate(tau.difference(self.base)):
            if new and i not in self.factors:
                raise InvariantViolation("%s has no link in factor %d" % (self.base, i))
            out.update(self.vertex(i, v) for v in new)
        return frozenset(out)

    def pole(self, xi: Xi) -> RationalVector:
        """Direction of ``xi`` in the coordinates of the link apartment."""
        return _concat([xi.components[i] for i in self.factors])


@dataclass(frozen=True)
class ProductWindow:
    """Product of affine windows; cells carry one simplex per factor."""

    factors: Tuple[Window, ...]
    _links: Dict[PolyCell, ProductLink] = field(
        default_factory=dict, compare=False, repr=False
    )

    @classmethod
    def build(cls, label: str, radius: object) -> "ProductWindow":
        """Windows of equal radius for each component of ``"A~1xA~2"``.

        Raises:
            UnsupportedType: If a component is not affine.
        """
        parts = parse_type_label(label)
        if not all(p.affine for p in parts):
            raise UnsupportedType("%s is not a product of affine types" % label)
        return cls(tuple(build_affine_window(str(p), radius)[1] for p in parts))

    @classmethod
    def twin(cls, window: Window) -> "ProductWindow":
        """Product of the two halves of a thin twin apartment."""
        return cls((window, window))

    @property
    def label(self) -> str:
        return "x".join(w.label for w in self.factors)

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def factor_dims(self) -> Tuple[int, ...]:
        return tuple(w.realization.rank for w in self.factors)

    @property
    def dim(self) -> int:
        return sum(self.factor_dims)

    @cached_property
    def cells(self) -> PolyComplex:
        return PolyComplex.product([w.cells for w in self.factors])

    def position(self, factor: int, v: int) -> RationalVector:
        return self.factors[factor].position(v)

    def star_inside(self, cell: PolyCell) -> bool:
        return all(w.star_inside(cell.factor(i)) for i, w in enumerate(self.factors))

    def link(self, sigma: PolyCell) -> ProductLink:
        """Link of ``sigma``, the join of the typed links of its factors.

        Raises:
            BoundaryTruncated: If the star of some factor leaves its window.
        """
        if sigma in self._links:
            return self._links[sigma]
        parts: List[ThinBuilding] = []
        present: List[int] = []
        for i, window in enumerate(self.factors):
            face = sigma.factor(i)
            typed = window.link_with_types(face)
            if not typed.complex.simplices:
                continue
            remaining = sorted(set(range(window.realization.rank + 1)) - typ(window, face))
            coxeter = window.realization.coxeter_system().restrict(remaining)
            name = "x".join(c.label for c in classify_coxeter(coxeter).components)
            parts.append(
                ThinBuilding(
                    BuildingSpec("coxeter", (name,)),
                    typed.complex,
                    {v: remaining.index(t) for v, t in typed.types.items()},
                    coxeter,
                    typed.directions,
                )
            )
            present.append(i)
        building = None
        if parts:
            joined = JoinBuilding(
                BuildingSpec("join", (), tuple(p.spec for p in parts)), parts
            )
            building = ThinBuilding(
                joined.spec,
                joined.complex,
                joined.types,
                joined.coxeter,
                joined.apartment_containing(frozenset()).positions,
            )
        link = ProductLink(sigma, building, tuple(present))
        self._links[sigma] = link
        return link


@dataclass(frozen=True, order=True)
class MoveRecord:
    """A move ``source -> target``: ``up`` to a coface, ``down`` to a face."""

    kind: str
    source: PolyCell
    target: PolyCell

    def to_json(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "from": self.source.to_json(),
            "to": self.target.to_json(),
        }

    def __str__(self) -> str:
        arrow = "/" if self.kind == UP else "\\"
        return "%s %s %s" % (self.source, arrow, self.target)


@dataclass(frozen=True, order=True)
class Depth:
    value: Fraction

    def __str__(self) -> str:
        return fraction_str(self.value)

    def to_json(self) -> str:
        return fraction_str(self.value)


def move_bound(space: ProductWindow) -> int:
    """Upper bound ``(dim Y + 1) * prod(2^(dim X_i + 1) - 1)`` on move sequences.

    Examples:
        >>> move_bound(ProductWindow.build("A~1xA~1", 0))
        27
    """
    faces = 1
    for d in space.factor_dims:
        faces *= 2 ** (d + 1) - 1
    return (space.dim + 1) * faces


def _meet(a: PolyCell, b: PolyCell) -> Optional[PolyCell]:
    return meet_and_faces(a, b)[0]


def _union(a: PolyCell, b: PolyCell) -> PolyCell:
    return PolyCell(tuple(x + y for x, y in zip(a.factors, b.factors)))


class HorizontalLinks(object):
    """The relation ``tau -o sigma`` on a product window for a fixed ``xi``.

    Verdicts, polar classes and minimal faces are memoized per instance.
    """

    def __init__(self, space: ProductWindow, xi: Xi) -> None:
        if len(xi.components) != space.rank:
            raise DimensionMismatch(
                "%d directions for %d factors" % (len(xi.components), space.rank)
            )
        for window, n in zip(space.factors, xi.components):
            roots = window.realization.roots
            if n.dim != roots.dim or not roots.in_span(n):
                raise DimensionMismatch("%s is not a direction of %s" % (n, window.label))
        if xi.direction.is_zero():
            raise ValueError("the zero direction defines no point at infinity")
        self.space = space
        self.xi = xi
        self._verdicts: Dict[Tuple[PolyCell, PolyCell], Tuple[bool, bool]] = {}
        self._classes: Dict[PolyCell, PolarClass] = {}
        self._minimal: Dict[PolyCell, PolyCell] = {}
        self._on_factor: Dict[int, "HorizontalLinks"] = {}

    def is_horizontal(self, cell: PolyCell) -> bool:
        for i, verts in enumerate(cell.factors):
            n = self.xi.components[i]
            if len({n.dot(self.space.position(i, v)) for v in verts}) > 1:
                return False
        return True

    def polar_classes(self, sigma: PolyCell) -> PolarClass:
        """Polar classes of the link of ``sigma`` for the pole ``xi``."""
        if sigma not in self._classes:
            link = self.space.link(sigma)
            if link.building is None:
                self._classes[sigma] = PolarClass({})
            else:
                self._classes[sigma] = direction_class(link.building, link.pole(self.xi))
        return self._classes[sigma]

    def cohorizontal(self, tau: PolyCell, sigma: PolyCell) -> Tuple[bool, bool]:
        """Metric and diagram verdicts for ``tau -o sigma``.

        Raises:
            NotHorizontal: If ``tau`` is not horizontal.
            BoundaryTruncated: If the star of ``sigma`` leaves the window.
        """
        key = (tau, sigma)
        if key in self._verdicts:
            return self._verdicts[key]
        if not sigma.is_face_of(tau):
            raise ValueError("%s is not a face of %s" % (sigma, tau))
        if not self.is_horizontal(tau):
            raise NotHorizontal("%s is not horizontal for %s" % (tau, self.xi))
        if sigma == tau:
            if not self.space.star_inside(sigma):
                raise BoundaryTruncated("star of %s leaves the window" % sigma)
            verdict = (True, True)
        else:
            link = self.space.link(sigma)
            assert link.building is not None
            verdict = horizontality_criteria(
                link.building, None, link.simplex(tau), self.polar_classes(sigma)
            )
        self._verdicts[key] = verdict
        return verdict

    def holds(self, tau: PolyCell, sigma: PolyCell) -> bool:
        """``tau -o sigma`` after checking that both criteria agree.

        Raises:
            InvariantViolation: If the criteria disagree.
        """
        geometric, diagrammatic = self.cohorizontal(tau, sigma)
        if geometric != diagrammatic:
            raise InvariantViolation(
                "criteria disagree on %s -o %s: metric %s, diagram %s"
                % (tau, sigma, geometric, diagrammatic)
            )
        return geometric

    def cohorizontal_faces(self, tau: PolyCell) -> List[PolyCell]:
        """All faces ``sigma`` with ``tau -o sigma``; no general position needed."""
        return sorted(
            (s for s in tau.faces() if self.holds(tau, s)), key=lambda c: c.key
        )

    def tau_min(self, tau: PolyCell) -> PolyCell:
        """Minimal face ``sigma`` with ``tau -o sigma``.

        The faces in relation with ``tau`` are checked to form the interval
        between the result and ``tau``.

        Raises:
            NotGeneralPosition: If ``xi`` is constant on some factor.
            InvariantViolation: If the faces have no minimum or miss the interval.
        """
        if tau in self._minimal:
            return self._minimal[tau]
        if not self.xi.general_position:
            raise NotGeneralPosition("%s is perpendicular to a factor" % self.xi)
        faces = self.cohorizontal_faces(tau)
        low: Optional[PolyCell] = faces[0]
        for s in faces[1:]:
            low = _meet(low, s) if low is not None else None
        if low is None or low not in faces:
            raise InvariantViolation("faces of %s in relation have no minimum" % tau)
        interval = {s for s in tau.faces() if low.is_face_of(s)}
        if interval != set(faces):
            raise InvariantViolation("faces of %s in relation are not an interval" % tau)
        self._minimal[tau] = low
        return low

    def is_essential(self, tau: PolyCell) -> bool:
        """``tau`` is its own minimal related face."""
        return self.tau_min(tau) == tau

    def horizontal_cofaces(self, cell: PolyCell) -> List[PolyCell]:
        """Proper horizontal cofaces of ``cell``.

        Raises:
            BoundaryTruncated: If the star of ``cell`` leaves the window.
        """
        if not self.space.star_inside(cell):
            raise BoundaryTruncated("star of %s leaves the window" % cell)
        return [t for t in self.space.cells.cofaces(cell) if self.is_horizontal(t)]

    def moves_from(self, cell: PolyCell) -> List[MoveRecord]:
        """Moves up to cofaces whose minimal face is ``cell`` and down to faces
        not in relation with ``cell``."""
        if not self.is_horizontal(cell):
            raise NotHorizontal("%s is not horizontal for %s" % (cell, self.xi))
        ups = [
            MoveRecord(UP, cell, t)
            for t in self.horizontal_cofaces(cell)
            if self.tau_min(t) == cell
        ]
        downs = [
            MoveRecord(DOWN, cell, s)
            for s in cell.proper_faces()
            if not self.holds(cell, s)
        ]
        return sorted(ups, key=lambda m: m.target.key) + sorted(
            downs, key=lambda m: m.target.key
        )

    def vertical_directions(self, sigma: PolyCell) -> FrozenSet[LinkVertex]:
        """Vertices of the vertical part of the link of ``sigma``."""
        link = self.space.link(sigma)
        if link.building is None:
            return frozenset()
        classes = self.polar_classes(sigma)
        out: Set[LinkVertex] = set()
        for factor in link.building.join_factors():
            if any(classes.of(v) is not Ordering.EQ for v in factor):
                out.update(factor)
        return frozenset(out)

    def on_factor(self, index: int) -> "HorizontalLinks":
        """The relation on a single factor for the projected direction."""
        if index not in self._on_factor:
            self._on_factor[index] = HorizontalLinks(
                ProductWindow((self.space.factors[index],)),
                Xi((self.xi.components[index],)),
            )
        return self._on_factor[index]

    def holds_on_factors(self, tau: PolyCell, sigma: PolyCell) -> bool:
        """Factorwise relation over the factors not perpendicular to ``xi``."""
        return all(
            self.on_factor(i).holds(tau.factor(i), sigma.factor(i))
            for i in self.xi.support()
        )


class MoveSystem(object):
    """Longest move sequences for a fixed ``xi``.

    Depths are memoized; a cell met again on the current search path is a
    cycle.
    """

    def __init__(self, links: HorizontalLinks) -> None:
        self.links = links
        self.bound = move_bound(links.space)
        self._moves: Dict[PolyCell, List[MoveRecord]] = {}
        self._depth: Dict[PolyCell, int] = {}

    def moves(self, cell: PolyCell) -> List[MoveRecord]:
        if cell not in self._moves:
            self._moves[cell] = self.links.moves_from(cell)
        return self._moves[cell]

    def depth(self, cell: PolyCell) -> int:
        """Length of the longest move sequence starting at ``cell``.

        Raises:
            MoveCycle: If moves return to a cell.
            BoundaryTruncated: If the search reaches the edge of the window.
            InvariantViolation: If the length exceeds :func:`move_bound`.
        """
        return self._longest(cell, set())

    def _longest(self, cell: PolyCell, path: Set[PolyCell]) -> int:
        if cell in self._depth:
            return self._depth[cell]
        if cell in path:
            raise MoveCycle("moves return to %s" % cell)
        path.add(cell)
        best = 0
        for move in self.moves(cell):
            best = max(best, 1 + self._longest(move.target, path))
        path.discard(cell)
        if best > self.bound:
            raise InvariantViolation(
                "%d moves from %s exceed %d" % (best, cell, self.bound)
            )
        self._depth[cell] = best
        return best

    def brute_force_depth(self, cell: PolyCell) -> int:
        """Longest sequence by enumerating every path, without memoization."""

        def walk(c: PolyCell, path: Tuple[PolyCell, ...]) -> int:
            best = 0
            for move in self.moves(c):
                if move.target in path:
                    raise MoveCycle("moves return to %s" % move.target)
                best = max(best, 1 + walk(move.target, path + (move.target,)))
            return best

        return walk(cell, (cell,))

    def digraph(self, start: PolyCell) -> nx.DiGraph:
        """Moves reachable from ``start`` as a directed graph."""
        graph = nx.DiGraph()
        graph.add_node(start)
        stack = [start]
        while stack:
            c = stack.pop()
            for move in self.moves(c):
                if move.target not in graph:
                    stack.append(move.target)
                graph.add_edge(c, move.target, kind=move.kind)
        return graph

    def is_acyclic(self, start: PolyCell) -> bool:
        return nx.is_directed_acyclic_graph(self.digraph(start))

    def to_json(self, start: PolyCell) -> Dict[str, Any]:
        graph = self.digraph(start)
        return {
            "start": start.to_json(),
            "edges": [
                {"from": a.to_json(), "to": b.to_json(), "kind": data["kind"]}
                for a, b, data in sorted(
                    graph.edges(data=True), key=lambda e: (e[0].key, e[1].key)
                )
            ],
        }


# -- twin models ----------------------------------------------------------------


class TwinDepths(object):
    """Depths of cells of a thin twin model.

    A horizontal cell is measured against the gradient at the cell, a
    non-horizontal one is half a step below its roof.
    """

    def __init__(self, model: ThinTwinModel) -> None:
        self.model = model
        self.space = ProductWindow.twin(model.window)
        self._systems: Dict[Xi, MoveSystem] = {}

    def gradient_xi(self, cell: ProductCell) -> Optional[Xi]:
        pair = cell.vertex_pairs()[0]
        if self.model.vertex_height(pair).is_zero():
            return None
        return Xi.of_gradient(self.model.vertex_gradient(pair))

    def system(self, xi: Xi) -> MoveSystem:
        if xi not in self._systems:
            self._systems[xi] = MoveSystem(HorizontalLinks(self.space, xi))
            debug("move system for %s" % xi)
        return self._systems[xi]

    def depth(self, cell: ProductCell) -> Depth:
        """Raises BoundaryTruncated when moves reach the edge of the window."""
        if self.model.is_horizontal(cell):
            xi = self.gradient_xi(cell)
            if xi is None:
                return Depth(Fraction(0))
            return Depth(Fraction(self.system(xi).depth(cell.as_polycell())))
        roof = self.model.roof(cell)
        if roof == cell:
            raise InvariantViolation("%s is its own roof but not horizontal" % cell)
        return Depth(self.depth(roof).value - Fraction(1, 2))

    def links_at(self, cell: ProductCell) -> Optional[HorizontalLinks]:
        xi = self.gradient_xi(cell)
        return None if xi is None else self.system(xi).links


# -- sampling -------------------------------------------------------------------


def _random_direction(window: Window, rng: random.Random) -> RationalVector:
    roots = window.realization.roots.simple_roots
    while True:
        v = vector_sum((a.scale(random_fraction(rng, 6)) for a in roots), roots[0].dim)
        if not v.is_zero():
            return v


def random_xi(
    space: ProductWindow, rng: random.Random, special: bool = True
) -> Xi:
    """Random general-position point at infinity.

    With ``special`` each factor direction is, with probability one half,
    made perpendicular to a random edge so that horizontal edges occur.
    """
    components = []
    for window in space.factors:
        n = _random_direction(window, rng)
        edges = window.cells.cells_of_dim(1)
        if special and edges and rng.random() < 0.5:
            a, b = rng.choice(edges).factors[0]
            edge = window.position(b) - window.position(a)
            candidate = perp_component(n, [edge])
            if not candidate.is_zero():
                n = candidate
        components.append(n)
    return Xi(tuple(components))


# -- lemma checks ---------------------------------------------------------------


def check_horizontal_properties(links: HorizontalLinks, tau: PolyCell) -> List[str]:
    """Violations of the face, join, transitivity and meet rules at ``tau``.

    Also compares with the factorwise relation and, in general position,
    checks that faces in relation meet and share their minimal face.
    """
    out: List[str] = []
    faces = tau.faces()
    related = [s for s in faces if links.holds(tau, s)]
    for sigma in related:
        for mid in faces:
            if sigma.is_face_of(mid) and mid != sigma:
                if not links.holds(mid, sigma):
                    out.append("faces: %s -o %s fails" % (mid, sigma))
                if not links.holds(tau, mid):
                    out.append("join: %s -o %s fails" % (tau, mid))
    if links.space.star_inside(tau):
        for rho in [tau] + links.horizontal_cofaces(tau):
            for other in rho.faces():
                if _union(tau, other) != rho:
                    continue
                for sigma in related:
                    if not links.holds(rho, _union(sigma, other)):
                        out.append(
                            "join: %s -o %s fails" % (rho, _union(sigma, other))
                        )
    for mid in related:
        for sigma in mid.faces():
            if links.holds(mid, sigma) and not links.holds(tau, sigma):
                out.append("transitivity: %s -o %s -o %s" % (tau, mid, sigma))
    for s1, s2 in combinations(related, 2):
        meet = _meet(s1, s2)
        if meet is None:
            if links.xi.general_position:
                out.append("general position: %s and %s are disjoint" % (s1, s2))
        elif not links.holds(tau, meet):
            out.append("meet: %s -o %s fails" % (tau, meet))
    for sigma in faces:
        if links.holds(tau, sigma) != links.holds_on_factors(tau, sigma):
            out.append("factorwise: %s, %s" % (tau, sigma))
    if links.xi.general_position:
        low = links.tau_min(tau)
        for sigma in related:
            if links.tau_min(sigma) != low:
                out.append("min_min: %s -o %s" % (tau, sigma))
    return out


def check_move_lemmas(system: MoveSystem, cell: PolyCell) -> List[str]:
    """Violations of the move lemmas on chains starting at ``cell``.

    Chains running into the edge of the window are skipped.
    """
    links = system.links
    out: List[str] = []
    moves = system.moves(cell)
    ups = [m.target for m in moves if m.kind == UP]
    downs = [m.target for m in moves if m.kind == DOWN]

    for t in ups:
        if not links.holds(t, cell):
            out.append("up/down cycle: %s and %s" % (cell, t))
    if links.is_essential(cell):
        for t in links.horizontal_cofaces(cell):
            up = links.tau_min(t) == cell
            down = not links.holds(t, cell)
            if up == down:
                out.append("either/or: %s and %s" % (cell, t))

    for t in ups:
        try:
            later = system.moves(t)
        except BoundaryTruncated:
            continue
        if any(m.kind == UP for m in later):
            out.append("two moves up from %s" % cell)
        for m in later:
            if m.kind != DOWN:
                continue
            s2 = m.target
            joined = links.space.cells.join_exists([cell, s2])
            if joined is None:
                out.append("no join of %s and %s" % (cell, s2))
                continue
            if links.tau_min(joined) != cell:
                out.append("minimal face of %s is not %s" % (joined, cell))
            if s2 == joined or links.holds(joined, s2):
                out.append("%s -o %s after up/down" % (joined, s2))
            out.extend(_check_shortening(system, cell, t, s2))

    for s in downs:
        for m in system.moves(s):
            if m.kind == DOWN and links.holds(cell, m.target):
                out.append("down moves not transitive: %s, %s, %s" % (cell, s, m.target))

    for sigma in cell.faces():
        try:
            vertical = links.vertical_directions(sigma)
        except BoundaryTruncated:
            continue
        above = _union(links.tau_min(cell), sigma)
        if not links.space.link(sigma).simplex(above) <= vertical:
            out.append("minimal face leaves the vertical link of %s" % sigma)
    return out


def _check_shortening(
    system: MoveSystem, s1: PolyCell, t1: PolyCell, s2: PolyCell
) -> List[str]:
    links = system.links
    out: List[str] = []
    try:
        later = system.moves(s2)
    except BoundaryTruncated:
        return out
    for m in later:
        if m.kind != UP:
            continue
        t2 = m.target
        joined = links.space.cells.join_exists([s1, t2])
        if joined is None:
            out.append("no join of %s and %s" % (s1, t2))
            continue
        if not links.is_horizontal(joined):
            out.append("join of %s and %s is not horizontal" % (s1, t2))
            continue
        via_join = links.tau_min(joined) == s1 and joined != s1 and (
            t2 != joined and not links.holds(joined, t2)
        )
        direct = t2.is_proper_face_of(t1) and not links.holds(t1, t2)
        if not (via_join or direct):
            out.append("chain %s, %s, %s, %s cannot be shortened" % (s1, t1, s2, t2))
    return out


# -- counterexamples --------------------------------------------------------------


@dataclass(frozen=True)
class Counterexample:
    """A configuration outside general position and what it exhibits."""

    name: str
    space: str
    xi: Xi
    cells: Dict[str, PolyCell]
    reproduced: bool
    detail: str

    def to_json(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "space": self.space,
            "xi": self.xi.to_json(),
            "cells": {k: c.to_json() for k, c in sorted(self.cells.items())},
            "reproduced": self.reproduced,
            "detail": self.detail,
        }


def _edge_at_origin(window: Window) -> Tuple[int, ...]:
    return next(e.factors[0] for e in window.cells.cells_of_dim(1) if 0 in e.factors[0])


def disjoint_cohorizontal_faces(radius: object = 2) -> Counterexample:
    """Two factors of type A~1 and a point at infinity of the first factor.

    A vertex times an edge then lies in the horizontal link of both of its
    vertex faces, which do not meet.
    """
    space = ProductWindow.build("A~1xA~1", radius)
    first, second = space.factors
    alpha = first.realization.roots.positive_roots[0]
    xi = Xi((alpha, RationalVector.zero(second.realization.ambient_dim)))
    links = HorizontalLinks(space, xi)
    a, b = _edge_at_origin(second)
    tau = PolyCell(((0,), (a, b)))
    s1, s2 = PolyCell(((0,), (a,))), PolyCell(((0,), (b,)))
    reproduced = links.holds(tau, s1) and links.holds(tau, s2) and _meet(s1, s2) is None
    return Counterexample(
        "disjoint_cohorizontal_faces",
        space.label,
        xi,
        {"tau": tau, "sigma1": s1, "sigma2": s2},
        reproduced,
        "both faces in relation, empty meet",
    )


def missing_minimal_face(radius: object = 2) -> Counterexample:
    """A square in A~1 x A~2 for a point perpendicular to the first factor and
    to one edge of the second.

    The faces in relation have no minimum, so asking for it fails.
    """
    space = ProductWindow.build("A~1xA~2", radius)
    first, second = space.factors
    edge1 = _edge_at_origin(first)
    edge2 = _edge_at_origin(second)
    d = second.position(edge2[1]) - second.position(edge2[0])
    n = next(
        p
        for p in (perp_component(r, [d]) for r in second.realization.roots.positive_roots)
        if not p.is_zero()
    )
    xi = Xi((RationalVector.zero(first.realization.ambient_dim), n))
    links = HorizontalLinks(space, xi)
    tau = PolyCell((edge1, edge2))
    faces = links.cohorizontal_faces(tau)
    try:
        links.tau_min(tau)
        raised = False
    except NotGeneralPosition:
        raised = True
    no_minimum = not any(all(f.is_face_of(g) for g in faces) for f in faces)
    cells = {"tau": tau}
    cells.update(("face%d" % i, f) for i, f in enumerate(faces))
    return Counterexample(
        "missing_minimal_face",
        space.label,
        xi,
        cells,
        raised and no_minimum,
        "%d faces in relation, no minimum" % len(faces),
    )
