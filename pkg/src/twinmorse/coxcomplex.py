"""
Coxeter systems, rational root-system realizations and affine windows.

Copyright (c) 2025 Max Qian <astro_air@126.com>
Available under the terms of MIT license
"""

from __future__ import annotations

import math
import re
import unicodedata
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Any, Dict, FrozenSet, List, NamedTuple, Optional, Sequence, Tuple

import networkx as nx

from .errors import BoundaryTruncated, ComplexFormatError, InvalidMatrix, UnsupportedType
from .exactgeom import (
    LinearMap,
    RationalVector,
    apply_map,
    compose_maps,
    identity_map,
    perp_component,
    solve_linear,
    solve_system,
)
from .logging_utils import debug
from .polycomplex import PolyCell, PolyComplex, SimplicialComplex
from .utils import as_fraction, fraction_str

INFINITY = -1  # Coxeter matrix entry when st has infinite order

FINITE = "finite"
AFFINE = "affine"
OTHER = "other"


# -- type labels ------------------------------------------------------------


class TypeLabel(NamedTuple):
    family: str
    rank: int
    affine: bool

    def __str__(self) -> str:
        return "%s%s%d" % (self.family, "~" if self.affine else "", self.rank)


_LABEL_RE = re.compile(r"^([A-I])(~?)_?(\d+)$")


def parse_type_label(label: str) -> List[TypeLabel]:
    """Parse ``"A~1xA~2"`` style labels; the combining tilde of ``"Ã2"`` is accepted.

    Raises:
        ComplexFormatError: If a component is not ``<family>[~]<rank>``.
    """
    text = unicodedata.normalize("NFD", label).replace("̃", "~")
    parts = [p.strip() for p in re.split(r"[x×*]", text) if p.strip()]
    if not parts:
        raise ComplexFormatError("empty type label")
    out = []
    for part in parts:
        match = _LABEL_RE.match(part)
        if not match:
            raise ComplexFormatError("bad type label component %r" % part)
        family, tilde, rank = match.groups()
        out.append(TypeLabel(family, int(rank), bool(tilde)))
    return out


# -- Coxeter systems ----------------------------------------------------------


@dataclass(frozen=True)
class CoxeterSystem:
    """A Coxeter matrix; ``INFINITY`` marks unbounded products."""

    matrix: Tuple[Tuple[int, ...], ...]

    def __post_init__(self) -> None:
        m = tuple(tuple(int(x) for x in row) for row in self.matrix)
        n = len(m)
        if n == 0 or any(len(row) != n for row in m):
            raise InvalidMatrix("Coxeter matrix must be square and nonempty")
        for i in range(n):
            if m[i][i] != 1:
                raise InvalidMatrix("diagonal entry %d is %d, expected 1" % (i, m[i][i]))
            for j in range(i + 1, n):
                if m[i][j] != m[j][i]:
                    raise InvalidMatrix("matrix is not symmetric at (%d, %d)" % (i, j))
                if m[i][j] != INFINITY and m[i][j] < 2:
                    raise InvalidMatrix(
                        "off-diagonal entry %d at (%d, %d)" % (m[i][j], i, j)
                    )
        object.__setattr__(self, "matrix", m)

    @property
    def rank(self) -> int:
        return len(self.matrix)

    def diagram(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.rank))
        for i, j in combinations(range(self.rank), 2):
            if self.matrix[i][j] != 2:
                graph.add_edge(i, j, m=self.matrix[i][j])
        return graph

    def components(self) -> List[Tuple[int, ...]]:
        return sorted(tuple(sorted(c)) for c in nx.connected_components(self.diagram()))

    def restrict(self, nodes: Sequence[int]) -> "CoxeterSystem":
        """Parabolic subsystem on ``nodes``, renumbered in the given order."""
        return CoxeterSystem(tuple(tuple(self.matrix[i][j] for j in nodes) for i in nodes))

    @classmethod
    def block_sum(cls, systems: Sequence["CoxeterSystem"]) -> "CoxeterSystem":
        n = sum(s.rank for s in systems)
        rows = [[2] * n for _ in range(n)]
        offset = 0
        for s in systems:
            for i in range(s.rank):
                for j in range(s.rank):
                    rows[offset + i][offset + j] = s.matrix[i][j]
            offset += s.rank
        return cls(tuple(tuple(r) for r in rows))


class ComponentType(NamedTuple):
    nodes: Tuple[int, ...]
    label: str
    kind: str


class Classification(NamedTuple):
    kind: str
    components: Tuple[ComponentType, ...]


def _path_order(graph: nx.Graph) -> List[int]:
    ends = sorted(n for n in graph if graph.degree(n) <= 1)
    if len(graph) == 1:
        return list(graph)
    return nx.shortest_path(graph, ends[0], ends[-1])


def _arms(graph: nx.Graph, branch: int) -> List[List[int]]:
    arms = []
    for start in sorted(graph[branch]):
        arm, prev, cur = [start], branch, start
        while graph.degree(cur) == 2:
            nxt = [n for n in graph[cur] if n != prev][0]
            arm.append(nxt)
            prev, cur = cur, nxt
        arms.append(arm)
    return arms


def _classify_component(graph: nx.Graph) -> Tuple[str, str]:
    k = len(graph)
    weights = {frozenset(e): d["m"] for *e, d in graph.edges(data=True)}
    if k == 1:
        return "A1", FINITE
    if INFINITY in weights.values():
        return ("A~1", AFFINE) if k == 2 else ("", OTHER)
    if not nx.is_tree(graph):
        if all(w == 3 for w in weights.values()) and all(d == 2 for _, d in graph.degree):
            return "A~%d" % (k - 1), AFFINE
        return "", OTHER
    degrees = sorted((d for _, d in graph.degree), reverse=True)
    if degrees[0] <= 2:
        path = _path_order(graph)
        w = [weights[frozenset((a, b))] for a, b in zip(path, path[1:])]
        if w[::-1] < w:
            w = w[::-1]
        non3 = [x for x in w if x != 3]
        if not non3:
            return "A%d" % k, FINITE
        if k == 2:
            m = w[0]
            if m == 4:
                return "B2", FINITE
            if m == 6:
                return "G2", FINITE
            return "I2(%d)" % m, FINITE
        if w == [3] * (k - 2) + [4]:
            return "B%d" % k, FINITE
        if w == [4] + [3] * (k - 3) + [4]:
            return "C~%d" % (k - 1), AFFINE
        if w == [3, 4, 3]:
            return "F4", FINITE
        if w == [3, 3, 4, 3]:
            return "F~4", AFFINE
        if w == [3, 5]:
            return "H3", FINITE
        if w == [3, 3, 5]:
            return "H4", FINITE
        if w == [3, 6]:
            return "G~2", AFFINE
        return "", OTHER
    branches = [n for n in graph if graph.degree(n) >= 3]
    if len(branches) == 1 and graph.degree(branches[0]) == 3:
        arms = _arms(graph, branches[0])
        lengths = sorted(len(a) for a in arms)
        if all(w == 3 for w in weights.values()):
            table = {
                (1, 2, 2): ("E6", FINITE),
                (1, 2, 3): ("E7", FINITE),
                (1, 2, 4): ("E8", FINITE),
                (2, 2, 2): ("E~6", AFFINE),
                (1, 3, 3): ("E~7", AFFINE),
                (1, 2, 5): ("E~8", AFFINE),
            }
            if lengths[:2] == [1, 1]:
                return "D%d" % k, FINITE
            return table.get(tuple(lengths), ("", OTHER))  # type: ignore[arg-type]
        chains = [[branches[0]] + a for a in arms]
        arm_weights = [
            [weights[frozenset((a, b))] for a, b in zip(c, c[1:])] for c in chains
        ]
        odd = [w for w in arm_weights if any(x != 3 for x in w)]
        short = [w for w in arm_weights if w not in odd]
        if (
            len(odd) == 1
            and odd[0][-1] == 4
            and all(x == 3 for x in odd[0][:-1])
            and all(w == [3] for w in short)
        ):
            return "B~%d" % (k - 1), AFFINE
        return "", OTHER
    if any(w != 3 for w in weights.values()):
        return "", OTHER
    if len(branches) == 1 and graph.degree(branches[0]) == 4 and k == 5:
        return "D~4", AFFINE
    if len(branches) == 2 and all(graph.degree(b) == 3 for b in branches):
        leaves = [n for n in graph if graph.degree(n) == 1]
        if len(leaves) == 4 and all(
            sum(1 for n in graph[b] if graph.degree(n) == 1) == 2 for b in branches
        ):
            return "D~%d" % (k - 1), AFFINE
    return "", OTHER


def classify_coxeter(m: CoxeterSystem) -> Classification:
    """Split the diagram into components and name each one.

    Examples:
        >>> classify_coxeter(CoxeterSystem(((1, 3), (3, 1))))
        Classification(kind='finite', components=(ComponentType(nodes=(0, 1), label='A2', kind='finite'),))
    """
    diagram = m.diagram()
    comps = []
    for nodes in m.components():
        label, kind = _classify_component(diagram.subgraph(nodes).copy())
        comps.append(ComponentType(nodes, label or "?", kind))
    kinds = {c.kind for c in comps}
    overall = kinds.pop() if len(kinds) == 1 and OTHER not in kinds else OTHER
    return Classification(overall, tuple(comps))


def coxeter_system_for(label: str) -> CoxeterSystem:
    """Standard Coxeter matrix of a (possibly reducible) type label."""
    systems = []
    for part in parse_type_label(label):
        systems.append(_irreducible_matrix(part))
    return CoxeterSystem.block_sum(systems)


def _irreducible_matrix(t: TypeLabel) -> CoxeterSystem:
    n = t.rank + (1 if t.affine else 0)
    rows = [[2] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = 1

    def edge(i: int, j: int, w: int) -> None:
        rows[i][j] = rows[j][i] = w

    fam = t.family
    if t.affine and fam == "A" and t.rank == 1:
        edge(0, 1, INFINITY)
    elif fam == "A":
        for i in range(n - 1):
            edge(i, i + 1, 3)
        if t.affine:
            edge(0, n - 1, 3)
    elif fam in "BC" and not t.affine:
        for i in range(n - 1):
            edge(i, i + 1, 3)
        if n >= 2:
            edge(n - 2, n - 1, 4)
    elif fam == "C" and t.affine and t.rank >= 2:
        for i in range(n - 1):
            edge(i, i + 1, 3)
        edge(0, 1, 4)
        edge(n - 2, n - 1, 4)
    elif fam == "D" and not t.affine and t.rank >= 4:
        for i in range(n - 2):
            edge(i, i + 1, 3)
        edge(n - 3, n - 1, 3)
    elif fam == "G" and t.rank == 2:
        edge(0, 1, 6)
        if t.affine:
            edge(1, 2, 3)
    elif fam == "F" and t.rank == 4 and not t.affine:
        edge(0, 1, 3)
        edge(1, 2, 4)
        edge(2, 3, 3)
    else:
        raise UnsupportedType("no Coxeter matrix for %s" % (t,))
    return CoxeterSystem(tuple(tuple(r) for r in rows))


# -- root systems -------------------------------------------------------------


def coroot(alpha: RationalVector) -> RationalVector:
    return alpha.scale(Fraction(2) / alpha.norm_sq())


def reflection_matrix(alpha: RationalVector) -> LinearMap:
    """Linear reflection ``x -> x - <alpha, x> alpha_check``."""
    check = coroot(alpha)
    dim = alpha.dim
    return tuple(
        tuple(Fraction(int(i == j)) - check[i] * alpha[j] for j in range(dim))
        for i in range(dim)
    )


def _coxeter_entry(a: RationalVector, b: RationalVector) -> int:
    cos_sq = a.dot(b) ** 2 / (a.norm_sq() * b.norm_sq())
    table = {
        Fraction(0): 2,
        Fraction(1, 4): 3,
        Fraction(1, 2): 4,
        Fraction(3, 4): 6,
        Fraction(1): INFINITY,
    }
    if cos_sq not in table:
        raise UnsupportedType("non-crystallographic angle, cos^2 = %s" % cos_sq)
    return table[cos_sq]


def _coxeter_from_normals(normals: Sequence[RationalVector]) -> CoxeterSystem:
    n = len(normals)
    return CoxeterSystem(
        tuple(
            tuple(
                1 if i == j else _coxeter_entry(normals[i], normals[j])
                for j in range(n)
            )
            for i in range(n)
        )
    )


@dataclass(frozen=True)
class RootSystem:
    """A finite crystallographic root system with rational coordinates.

    Also serves as the realization of the thin spherical Coxeter complex of
    its Weyl group.
    """

    label: str
    simple_roots: Tuple[RationalVector, ...]
    # orthogonal complement of the span inside the ambient space
    normals: Tuple[RationalVector, ...] = ()

    @property
    def dim(self) -> int:
        return self.simple_roots[0].dim

    @property
    def rank(self) -> int:
        return len(self.simple_roots)

    @cached_property
    def roots(self) -> Tuple[RationalVector, ...]:
        found = set(self.simple_roots)
        frontier = list(self.simple_roots)
        gens = [reflection_matrix(a) for a in self.simple_roots]
        while frontier:
            nxt = []
            for r in frontier:
                for g in gens:
                    image = apply_map(g, r)
                    if image not in found:
                        found.add(image)
                        nxt.append(image)
            frontier = nxt
        return tuple(sorted(found, key=lambda v: v.coords))

    def simple_coordinates(self, v: RationalVector) -> List[Fraction]:
        coeffs = solve_linear(self.simple_roots, v)
        if coeffs is None:
            raise ValueError("%s is not in the root span" % v)
        return coeffs

    @cached_property
    def positive_roots(self) -> Tuple[RationalVector, ...]:
        return tuple(
            r for r in self.roots if all(c >= 0 for c in self.simple_coordinates(r))
        )

    @cached_property
    def highest_root(self) -> RationalVector:
        return max(
            self.positive_roots,
            key=lambda r: (sum(self.simple_coordinates(r)), r.coords),
        )

    @cached_property
    def span_basis(self) -> Tuple[RationalVector, ...]:
        return self.simple_roots

    def in_span(self, v: RationalVector) -> bool:
        return all(n.dot(v) == 0 for n in self.normals)

    def project_to_span(self, v: RationalVector) -> RationalVector:
        return perp_component(v, list(self.normals)) if self.normals else v

    @cached_property
    def fundamental_coweights(self) -> Tuple[RationalVector, ...]:
        out = []
        for i in range(self.rank):
            rows = list(self.simple_roots) + list(self.normals)
            rhs = [Fraction(int(i == j)) for j in range(self.rank)] + [Fraction(0)] * len(
                self.normals
            )
            sol = solve_system(rows, rhs, self.dim)
            assert sol is not None
            out.append(sol)
        return tuple(out)

    @cached_property
    def weyl_group(self) -> Tuple[LinearMap, ...]:
        """All elements of the Weyl group as matrices, identity first."""
        gens = [reflection_matrix(a) for a in self.simple_roots]
        start = identity_map(self.dim)
        seen = {start}
        order = [start]
        queue = deque([start])
        while queue:
            g = queue.popleft()
            for s in gens:
                h = compose_maps(s, g)
                if h not in seen:
                    seen.add(h)
                    order.append(h)
                    queue.append(h)
        return tuple(order)

    def coxeter_system(self) -> CoxeterSystem:
        return _coxeter_from_normals(self.simple_roots)

    def orbit(self, v: RationalVector) -> FrozenSet[RationalVector]:
        return frozenset(apply_map(g, v) for g in self.weyl_group)


def _sum_zero_normal(dim: int) -> Tuple[RationalVector, ...]:
    return (RationalVector((Fraction(1),) * dim),)


def root_system(label: str) -> RootSystem:
    """Rational model of a finite root system of type A1-A3, B2/C2 or G2.

    Raises:
        UnsupportedType: For any other label.
    """
    parts = parse_type_label(label)
    if len(parts) != 1 or parts[0].affine:
        raise UnsupportedType("not an irreducible finite type: %s" % label)
    t = parts[0]
    if t.family == "A" and t.rank == 1:
        return RootSystem("A1", (RationalVector.of(1),))
    if t.family == "A" and 2 <= t.rank <= 3:
        n = t.rank + 1
        simple = tuple(
            RationalVector.unit(n, i) - RationalVector.unit(n, i + 1)
            for i in range(t.rank)
        )
        return RootSystem(str(t), simple, _sum_zero_normal(n))
    if t.family in "BC" and t.rank == 2:
        return RootSystem("B2", (RationalVector.of(1, -1), RationalVector.of(0, 1)))
    if t.family == "G" and t.rank == 2:
        return RootSystem(
            "G2",
            (RationalVector.of(1, -1, 0), RationalVector.of(-2, 1, 1)),
            _sum_zero_normal(3),
        )
    raise UnsupportedType("no rational root system for %s" % label)


# -- affine realizations ------------------------------------------------------


@dataclass(frozen=True)
class AffineMap:
    """``x -> linear x + translation`` over the rationals."""

    linear: LinearMap
    translation: RationalVector

    def __call__(self, x: RationalVector) -> RationalVector:
        return apply_map(self.linear, x) + self.translation

    def compose(self, other: "AffineMap") -> "AffineMap":
        """``self`` after ``other``."""
        return AffineMap(
            compose_maps(self.linear, other.linear), self(other.translation)
        )

    def is_identity(self) -> bool:
        return (
            self.linear == identity_map(self.translation.dim)
            and self.translation.is_zero()
        )

    @classmethod
    def reflection(cls, alpha: RationalVector, k: Fraction) -> "AffineMap":
        """Reflection in the wall ``<alpha, x> = k``."""
        return cls(reflection_matrix(alpha), coroot(alpha).scale(k))


AFFINE_LABELS = ("A~1", "A~2", "A~3", "C~2", "G~2")


@dataclass(frozen=True)
class AffineRealization:
    """Affine Weyl group of a finite root system acting on the span.

    Walls are ``<alpha, x> = k`` for roots ``alpha`` and integers ``k``. Node 0
    of the diagram is the wall ``<theta, x> = 1`` for the highest root; node
    ``i >= 1`` is ``<alpha_i, x> = 0``. The fundamental alcove vertex of type
    ``i`` is the one off wall ``i``.
    """

    label: str
    roots: RootSystem

    @property
    def ambient_dim(self) -> int:
        return self.roots.dim

    @property
    def rank(self) -> int:
        return self.roots.rank

    def wall(self, node: int) -> Tuple[RationalVector, Fraction]:
        if node == 0:
            return self.roots.highest_root, Fraction(1)
        return self.roots.simple_roots[node - 1], Fraction(0)

    @cached_property
    def simple_reflections(self) -> Tuple[AffineMap, ...]:
        return tuple(AffineMap.reflection(*self.wall(i)) for i in range(self.rank + 1))

    def simple_reflection(self, node: int) -> AffineMap:
        return self.simple_reflections[node]

    @cached_property
    def fundamental_alcove(self) -> Tuple[RationalVector, ...]:
        verts = []
        normals = list(self.roots.normals)
        for i in range(self.rank + 1):
            rows, rhs = [], []
            for j in range(self.rank + 1):
                if j != i:
                    alpha, k = self.wall(j)
                    rows.append(alpha)
                    rhs.append(k)
            rows += normals
            rhs += [Fraction(0)] * len(normals)
            v = solve_system(rows, rhs, self.ambient_dim)
            assert v is not None
            verts.append(v)
        return tuple(verts)

    def coxeter_system(self) -> CoxeterSystem:
        inward = [-self.roots.highest_root] + list(self.roots.simple_roots)
        return _coxeter_from_normals(inward)

    @cached_property
    def diameter_bound(self) -> int:
        """Integer upper bound for the length of any alcove edge."""
        top = max(
            ((a - b).norm_sq() for a, b in combinations(self.fundamental_alcove, 2)),
            default=Fraction(0),
        )
        return math.isqrt(math.ceil(top)) + 1

    def wall_through(
        self, points: Sequence[RationalVector]
    ) -> Tuple[RationalVector, Fraction]:
        """A wall containing every point of an alcove facet."""
        walls = affine_walls_through(self, points)
        if walls:
            return walls[0]
        raise ValueError("no wall through %s" % ", ".join(map(str, points)))


def affine_realization(label: str) -> AffineRealization:
    parts = parse_type_label(label)
    if len(parts) != 1 or not parts[0].affine or str(parts[0]) not in AFFINE_LABELS:
        raise UnsupportedType("unsupported affine type %s" % label)
    t = parts[0]
    finite = "B2" if t.family == "C" else "%s%d" % (t.family, t.rank)
    return AffineRealization(str(t), root_system(finite))


# -- windows ------------------------------------------------------------------


@dataclass(frozen=True)
class TypedLink:
    """Link of a cell with per-vertex diagram type and direction."""

    base: PolyCell
    complex: SimplicialComplex
    types: Dict[int, int]
    directions: Dict[int, RationalVector]


@dataclass(frozen=True)
class Window:
    """Bounded piece of an affine Coxeter complex around the origin.

    ``positions`` and ``types`` cover every explored vertex; ids are sorted by
    (squared norm, coordinates) so that window vertices come first.
    ``chambers`` lists explored alcoves as sorted vertex-id tuples.
    """

    realization: AffineRealization
    radius: Fraction
    positions: Tuple[RationalVector, ...]
    types: Tuple[int, ...]
    chambers: Tuple[Tuple[int, ...], ...]
    _by_vertex: Dict[int, List[int]] = field(
        default_factory=dict, compare=False, repr=False
    )

    @property
    def label(self) -> str:
        return self.realization.label

    def in_ball(self, vertex: int) -> bool:
        return self.positions[vertex].norm_sq() <= self.radius * self.radius

    @cached_property
    def cells(self) -> PolyComplex:
        faces = []
        for chamber in self.chambers:
            inside = [v for v in chamber if self.in_ball(v)]
            if inside:
                faces.append(PolyCell.simplex(inside))
        return PolyComplex.from_cells(faces, flag_factors=True)

    def position(self, vertex: int) -> RationalVector:
        return self.positions[vertex]

    def chambers_containing(self, cell: PolyCell) -> List[Tuple[int, ...]]:
        if not self._by_vertex:
            for index, chamber in enumerate(self.chambers):
                for v in chamber:
                    self._by_vertex.setdefault(v, []).append(index)
        verts = cell.factors[0]
        common = set(self._by_vertex.get(verts[0], []))
        for v in verts[1:]:
            common &= set(self._by_vertex.get(v, []))
        return [self.chambers[i] for i in sorted(common)]

    def star_inside(self, cell: PolyCell) -> bool:
        """Whether every alcove containing ``cell`` lies in the window."""
        chambers = self.chambers_containing(cell)
        return bool(chambers) and all(self.in_ball(v) for c in chambers for v in c)

    def link_with_types(self, sigma: PolyCell) -> TypedLink:
        """Link of ``sigma`` with diagram types and directions perpendicular to it.

        Raises:
            BoundaryTruncated: If an alcove containing ``sigma`` leaves the window.
        """
        if sigma not in self.cells or not self.star_inside(sigma):
            raise BoundaryTruncated("star of %s leaves the window" % sigma)
        verts = sigma.factors[0]
        base = self.positions[verts[0]]
        span = [self.positions[u] - base for u in verts[1:]]
        chambers = self.chambers_containing(sigma)
        complex_ = SimplicialComplex.from_facets(
            [v for v in c if v not in verts] for c in chambers
        )
        link_vertices = complex_.vertices()
        return TypedLink(
            sigma,
            complex_,
            {v: self.types[v] for v in link_vertices},  # type: ignore[index]
            {
                v: perp_component(self.positions[v] - base, span)  # type: ignore[index]
                for v in link_vertices
            },
        )

    def vertex_id(self, position: RationalVector) -> int:
        return self.positions.index(position)

    def to_json(self) -> Dict[str, Any]:
        return {
            "type": self.label,
            "radius": fraction_str(self.radius),
            "positions": [p.to_json() for p in self.positions],
            "types": list(self.types),
            "chambers": [list(c) for c in self.chambers],
        }

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "Window":
        try:
            realization = affine_realization(data["type"])
            return cls(
                realization,
                as_fraction(data["radius"]),
                tuple(
                    RationalVector(tuple(as_fraction(x) for x in p))
                    for p in data["positions"]
                ),
                tuple(int(t) for t in data["types"]),
                tuple(tuple(int(v) for v in c) for c in data["chambers"]),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise ComplexFormatError("malformed window: %s" % e) from e


def explore_alcoves(
    realization: AffineRealization, bound: int
) -> List[Tuple[RationalVector, ...]]:
    """Breadth-first walk over alcoves with a vertex inside the ball of radius ``bound``.

    Alcoves are tuples of vertex positions indexed by vertex type; crossing
    the facet opposite type ``i`` reflects vertex ``i`` in that facet's wall.
    """
    start = realization.fundamental_alcove
    seen = {start}
    queue = deque([start])
    limit = bound * bound
    while queue:
        alcove = queue.popleft()
        if not any(v.norm_sq() <= limit for v in alcove):
            continue
        for i, v in enumerate(alcove):
            facet = [w for j, w in enumerate(alcove) if j != i]
            alpha, k = realization.wall_through(facet)
            image = v - coroot(alpha).scale(alpha.dot(v) - k)
            nxt = alcove[:i] + (image,) + alcove[i + 1 :]
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return sorted(seen, key=lambda a: [p.coords for p in a])


def build_affine_window(label: str, radius: object) -> Tuple[AffineRealization, Window]:
    """Realize an affine type and cut out the window of the given radius.

    Raises:
        UnsupportedType: If the type has no supported realization.

    Examples:
        >>> _, window = build_affine_window("A~1", 3)
        >>> len(window.cells.vertices()), len(window.cells.cells_of_dim(1))
        (7, 6)
    """
    realization = affine_realization(label)
    r = as_fraction(radius)
    if r < 0:
        raise ValueError("negative radius %s" % r)
    bound = math.ceil(r) + 2 * realization.diameter_bound + 1
    alcoves = explore_alcoves(realization, bound)
    typed = {}
    for alcove in alcoves:
        for t, p in enumerate(alcove):
            typed[p] = t
    ordered = sorted(typed, key=lambda p: (p.norm_sq(), p.coords))
    ids = {p: i for i, p in enumerate(ordered)}
    chambers = tuple(sorted(tuple(sorted(ids[p] for p in a)) for a in alcoves))
    window = Window(
        realization, r, tuple(ordered), tuple(typed[p] for p in ordered), chambers
    )
    debug(
        "window %s radius %s: %d vertices, %d cells"
        % (
            realization.label,
            fraction_str(r),
            len(window.cells.vertices()),
            len(window.cells),
        )
    )
    return realization, window


def typ(window: Window, cell: PolyCell) -> FrozenSet[int]:
    return frozenset(window.types[v] for v in cell.factors[0])


def affine_walls_through(
    realization: AffineRealization, points: Sequence[RationalVector]
) -> List[Tuple[RationalVector, Fraction]]:
    """All walls containing every point in ``points``."""
    out = []
    for alpha in realization.roots.positive_roots:
        values = {alpha.dot(p) for p in points}
        if len(values) == 1:
            k = values.pop()
            if k.denominator == 1:
                out.append((alpha, k))
    return out

