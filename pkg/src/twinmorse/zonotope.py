"""
Exact zonotope geometry.

A zonotope ``Z(D)`` is the Minkowski sum of the segments ``[0, z]`` for
``z`` in a finite generator set ``D``. Faces are indexed by covectors of the
arrangement of hyperplanes ``z^perp``; projection, decomposition and the
parallel-translate certificate are all computed exactly on that face
structure.

Copyright (c) 2025 Max Qian <astro_air@126.com>
Available under the terms of MIT license
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from .errors import InsufficientGenerators, InvariantViolation, NotInZonotope
from .exactgeom import (
    RationalVector,
    SqrtRational,
    independent_subset,
    least_squares,
    nullspace,
    project_onto_span,
    rank,
    vector_sum,
)
from .logging_utils import debug

SignVector = Tuple[int, ...]


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def _primitive(v: RationalVector) -> Tuple[RationalVector, Fraction]:
    """Write ``v = c * u`` with the first nonzero coordinate of ``u`` equal to 1."""
    lead = next(x for x in v if x != 0)
    return v.scale(1 / lead), lead


@dataclass(frozen=True)
class Zonotope:
    """Minkowski sum of segments; generators are deduplicated, zeros dropped."""

    generators: Tuple[RationalVector, ...]
    dim: int

    def __post_init__(self) -> None:
        gens = {g for g in self.generators if not g.is_zero()}
        if any(g.dim != self.dim for g in gens):
            raise ValueError("generator dimension differs from %d" % self.dim)
        object.__setattr__(self, "generators", tuple(sorted(gens, key=lambda g: g.coords)))

    @classmethod
    def of(cls, generators: Iterable[RationalVector], dim: int) -> "Zonotope":
        return cls(tuple(generators), dim)

    @cached_property
    def negated(self) -> "Zonotope":
        return Zonotope(tuple(-g for g in self.generators), self.dim)

    @property
    def is_symmetric(self) -> bool:
        gens = set(self.generators)
        return all(-g in gens for g in gens)

    # -- linear structure ---------------------------------------------------

    @cached_property
    def span_rank(self) -> int:
        return rank(self.generators, self.dim)

    @cached_property
    def complement(self) -> Tuple[RationalVector, ...]:
        """Basis of the orthogonal complement of the generator span."""
        return tuple(nullspace(self.generators, self.dim))

    def in_span(self, x: RationalVector) -> bool:
        return all(m.dot(x) == 0 for m in self.complement)

    @cached_property
    def reduced(self) -> Tuple[RationalVector, Tuple[RationalVector, ...]]:
        """Translation ``t`` and one generator per line with ``Z(D) = t + Z(D')``."""
        classes: Dict[RationalVector, List[Fraction]] = {}
        for g in self.generators:
            u, c = _primitive(g)
            classes.setdefault(u, []).append(c)
        shift = RationalVector.zero(self.dim)
        lines = []
        for u in sorted(classes, key=lambda v: v.coords):
            coeffs = classes[u]
            shift = shift + u.scale(sum((c for c in coeffs if c < 0), Fraction(0)))
            lines.append(u.scale(sum(abs(c) for c in coeffs)))
        return shift, tuple(lines)

    @cached_property
    def rays(self) -> Tuple[RationalVector, ...]:
        """Facet normals inside the span, both orientations, deduplicated."""
        r = self.span_rank
        if r == 0:
            return ()
        found = {}
        lines = self.reduced[1]
        for subset in combinations(lines, r - 1):
            if rank(subset, self.dim) < r - 1:
                continue
            normal = nullspace(list(subset) + list(self.complement), self.dim)
            if len(normal) != 1:
                continue
            u, _ = _primitive(normal[0])
            found[u] = True
        out = []
        for u in sorted(found, key=lambda v: v.coords):
            out.extend([u, -u])
        return tuple(out)

    def support(self, u: RationalVector) -> Fraction:
        """Maximum of ``<u, x>`` over the zonotope."""
        return sum((max(Fraction(0), u.dot(z)) for z in self.generators), Fraction(0))

    def contains(self, x: RationalVector) -> bool:
        if not self.in_span(x):
            return False
        if self.span_rank == 0:
            return x.is_zero()
        return all(u.dot(x) <= self.support(u) for u in self.rays)

    def relint_contains(self, x: RationalVector) -> bool:
        if not self.in_span(x):
            return False
        if self.span_rank == 0:
            return x.is_zero()
        return all(u.dot(x) < self.support(u) for u in self.rays)

    # -- face structure -----------------------------------------------------

    def sign_vector(self, u: RationalVector) -> SignVector:
        return tuple(_sign(u.dot(z)) for z in self.reduced[1])

    @cached_property
    def covectors(self) -> Tuple[SignVector, ...]:
        """All covectors of the reduced arrangement, largest zero set first."""
        cocircuits = {self.sign_vector(u) for u in self.rays}
        found = set(cocircuits)
        frontier = set(cocircuits)
        while frontier:
            new = set()
            for x in frontier:
                for y in cocircuits:
                    z = tuple(a if a else b for a, b in zip(x, y))
                    if z not in found:
                        new.add(z)
            found |= new
            frontier = new
        zero = (0,) * len(self.reduced[1])
        found.add(zero)
        return tuple(sorted(found, key=lambda s: (-s.count(0), s)))

    def face_of(
        self, covector: SignVector
    ) -> Tuple[RationalVector, Tuple[RationalVector, ...]]:
        """Offset and zero-set generators of the face ``t + a_X + Z(D0_X)``."""
        shift, lines = self.reduced
        offset = vector_sum((z for z, s in zip(lines, covector) if s > 0), self.dim)
        return shift + offset, tuple(z for z, s in zip(lines, covector) if s == 0)

    def witness(self, covector: SignVector) -> RationalVector:
        """A direction whose maximal face is the covector's face."""
        conforming = [
            u
            for u in self.rays
            if all(s == 0 or s == c for s, c in zip(self.sign_vector(u), covector))
        ]
        return vector_sum(conforming, self.dim)

    def vertices(self) -> List[RationalVector]:
        out = []
        for covector in self.covectors:
            if 0 not in covector:
                out.append(self.face_of(covector)[0])
        return sorted(set(out), key=lambda v: v.coords)

    def _in_normal_cone(self, n: RationalVector, covector: SignVector) -> bool:
        for z, s in zip(self.reduced[1], covector):
            value = n.dot(z)
            if (s > 0 and value < 0) or (s < 0 and value > 0) or (s == 0 and value != 0):
                return False
        return True

    # -- projection ---------------------------------------------------------

    def project(self, x: RationalVector) -> Tuple[RationalVector, SignVector]:
        """Closest point of the zonotope together with a covector whose face holds it."""
        shift = self.reduced[0]
        y = x - shift
        y_span = y - project_onto_span(y, list(self.complement)) if self.complement else y
        for covector in self.covectors:
            offset, zero_set = self.face_of(covector)
            offset = offset - shift
            if zero_set:
                p = offset + project_onto_span(y_span - offset, list(zero_set))
            else:
                p = offset
            if not self._in_normal_cone(y_span - p, covector):
                continue
            if self.contains(p + shift):
                return p + shift, covector
        raise InvariantViolation("no face admits the projection of %s" % x)


@lru_cache(maxsize=4096)
def zonotope(generators: FrozenSet[RationalVector], dim: int) -> Zonotope:
    """Shared instance for a generator set, so cached face data is reused."""
    return Zonotope(tuple(generators), dim)


@dataclass(frozen=True)
class FaceDescriptor:
    """Face ``Z(D_v) + offset`` of ``Z(D)`` for a witness direction ``v``."""

    witness: RationalVector
    zero_set: Tuple[RationalVector, ...]
    offset: RationalVector

    @classmethod
    def for_direction(cls, Z: Zonotope, v: RationalVector) -> "FaceDescriptor":
        zero = tuple(z for z in Z.generators if v.dot(z) == 0)
        offset = vector_sum((z for z in Z.generators if v.dot(z) > 0), Z.dim)
        return cls(v, zero, offset)

    @property
    def part(self) -> Zonotope:
        return zonotope(frozenset(self.zero_set), self.offset.dim)

    @property
    def dim(self) -> int:
        return self.part.span_rank

    def contains(self, p: RationalVector) -> bool:
        return self.part.contains(p - self.offset)

    def relint_contains(self, p: RationalVector) -> bool:
        return self.part.relint_contains(p - self.offset)

    def normal_cone_contains(self, Z: Zonotope, n: RationalVector) -> bool:
        for z in Z.generators:
            side, value = self.witness.dot(z), n.dot(z)
            if side * value < 0 or (side == 0 and value != 0):
                return False
        return True


def project_onto_zonotope(
    x: RationalVector, Z: Zonotope
) -> Tuple[RationalVector, SqrtRational]:
    """Exact closest point of ``Z`` and the distance to it.

    Examples:
        >>> box = Zonotope.of([RationalVector.of(*v) for v in
        ...     [(1, 0), (-1, 0), (0, 1), (0, -1)]], 2)
        >>> point, dist = project_onto_zonotope(RationalVector.of(3, 0), box)
        >>> str(point), dist.square
        ('(1, 0)', Fraction(4, 1))
    """
    if x.dim != Z.dim:
        raise ValueError("dimension mismatch: %d != %d" % (x.dim, Z.dim))
    point, _ = Z.project(x)
    return point, SqrtRational((x - point).norm_sq())


@dataclass(frozen=True)
class Decomposition:
    face: FaceDescriptor
    f: RationalVector
    n: RationalVector


def decompose_point(x: RationalVector, Z: Zonotope) -> Decomposition:
    """Split ``x = f + n`` with ``f`` in the relative interior of a face ``F``
    and ``n`` in its normal cone.

    Raises:
        InvariantViolation: If no face has ``f`` in its relative interior.
    """
    f, _ = Z.project(x)
    for covector in Z.covectors:
        face = FaceDescriptor.for_direction(Z, Z.witness(covector))
        if face.relint_contains(f):
            return Decomposition(face, f, x - f)
    raise InvariantViolation("%s lies in no relative interior" % f)


# -- generator sets -----------------------------------------------------------


def differences(vertices: Sequence[RationalVector]) -> List[RationalVector]:
    return [w - v for v in vertices for w in vertices if w != v]


def is_sufficiently_rich(
    D: Iterable[RationalVector], vertices: Sequence[RationalVector]
) -> bool:
    gens = set(D)
    return all(d in gens for d in differences(vertices))


def sum_rich_generators(
    D1: Iterable[RationalVector], D2: Iterable[RationalVector]
) -> Tuple[RationalVector, ...]:
    """``((D1 + {0}) + (D2 + {0})) - {0}``; empty inputs contribute nothing."""
    a, b = list(D1), list(D2)
    dims = [v.dim for v in a + b]
    if not dims:
        return ()
    zero = RationalVector.zero(dims[0])
    out = {x + y for x in a + [zero] for y in b + [zero]}
    out.discard(zero)
    return tuple(sorted(out, key=lambda v: v.coords))


def _require_rich(D: Iterable[RationalVector], vertices: Sequence[RationalVector]) -> None:
    if not is_sufficiently_rich(D, vertices):
        missing = [d for d in differences(vertices) if d not in set(D)]
        raise InsufficientGenerators(
            "generators miss %d vertex differences, e.g. %s" % (len(missing), missing[0])
        )


# -- parallel translates ------------------------------------------------------


@dataclass(frozen=True)
class EmbeddingCertificate:
    """Vertex ``v`` of a polytope with ``x + Z(E_v)`` inside ``Z(D)``."""

    vertex_index: int
    vertex: RationalVector
    coefficients: Tuple[Tuple[RationalVector, Fraction], ...]
    extreme_points: Tuple[RationalVector, ...]

    def verify(self, Z: Zonotope) -> bool:
        return all(Z.contains(p) for p in self.extreme_points)


def subunit_coefficients(x: RationalVector, Z: Zonotope) -> Dict[RationalVector, Fraction]:
    """Write ``x = sum a_z z`` with every ``a_z`` in ``[0, 1]``.

    Generators are peeled in canonical order; each takes the lowest value
    keeping the remainder inside the zonotope of the remaining generators.
    """
    coeffs: Dict[RationalVector, Fraction] = {}
    rest = x
    gens = list(Z.generators)
    for i, z in enumerate(gens):
        remaining = zonotope(frozenset(gens[i + 1 :]), Z.dim)
        lo, hi = Fraction(0), Fraction(1)
        forced = None
        for m in remaining.complement:
            if m.dot(z) != 0:
                forced = m.dot(rest) / m.dot(z)
                break
            if m.dot(rest) != 0:
                raise NotInZonotope("%s is not in the zonotope" % x)
        if forced is not None:
            lo = hi = forced
        elif remaining.span_rank:
            for u in remaining.rays:
                # <u, rest - a z> <= support(u)
                slope, slack = u.dot(z), remaining.support(u) - u.dot(rest)
                if slope > 0:
                    lo = max(lo, -slack / slope)
                elif slope < 0:
                    hi = min(hi, slack / -slope)
                elif slack < 0:
                    lo, hi = Fraction(1), Fraction(0)
        if lo > hi or lo < 0 or hi > 1:
            raise NotInZonotope("%s is not in the zonotope" % x)
        coeffs[z] = lo
        rest = rest - z.scale(lo)
    if not rest.is_zero():
        raise NotInZonotope("%s is not in the zonotope" % x)
    return coeffs


def embed_parallel_translate(
    x: RationalVector, vertices: Sequence[RationalVector], D: Iterable[RationalVector]
) -> EmbeddingCertificate:
    """Find a vertex ``v`` with ``x + Z(E_v)`` inside ``Z(D)``, ``E_v = {w - v}``.

    The labels ``a_{w-v}`` of a subunit representation of ``x`` sit on the
    complete digraph on the vertices. Positive cycles are cancelled by
    subtracting the least label (cycle vectors sum to zero, so ``x`` is
    unchanged); afterwards some vertex has only zero outgoing labels.

    Raises:
        NotInZonotope: If ``x`` is outside ``Z(D)``.
        InsufficientGenerators: If some vertex difference is not in ``D``.
    """
    gens = list(D)
    dim = x.dim
    _require_rich(gens, vertices)
    Z = zonotope(frozenset(gens), dim)
    if not Z.contains(x):
        raise NotInZonotope("%s is not in the zonotope" % x)
    alpha = subunit_coefficients(x, Z)
    order = range(len(vertices))

    def label_graph() -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(order)
        for i in order:
            for j in order:
                if i != j and alpha[vertices[j] - vertices[i]] > 0:
                    graph.add_edge(i, j)
        return graph

    graph = label_graph()
    while True:
        try:
            cycle = nx.find_cycle(graph, source=list(order))
        except nx.NetworkXNoCycle:
            break
        mult: Dict[RationalVector, int] = {}
        for i, j in cycle:
            z = vertices[j] - vertices[i]
            mult[z] = mult.get(z, 0) + 1
        m = min(alpha[z] / k for z, k in mult.items())
        for z, k in mult.items():
            alpha[z] -= m * k
        graph = label_graph()
    sink = min(i for i in order if graph.out_degree(i) == 0)
    v = vertices[sink]
    edges = [w - v for w in vertices if w != v]
    extremes = tuple(
        x + vector_sum(subset, dim)
        for size in range(len(edges) + 1)
        for subset in combinations(edges, size)
    )
    cert = EmbeddingCertificate(
        sink, v, tuple(sorted(alpha.items(), key=lambda kv: kv[0].coords)), extremes
    )
    if not cert.verify(Z):
        raise InvariantViolation("translate at vertex %s leaves the zonotope" % v)
    debug("parallel translate of %d-vertex polytope at vertex %d" % (len(vertices), sink))
    return cert


# -- extrema over polytopes ---------------------------------------------------


@lru_cache(maxsize=65536)
def distance_sq(x: RationalVector, Z: Zonotope) -> Fraction:
    return project_onto_zonotope(x, Z)[1].square


def exact_min_over_polytope(vertices: Sequence[RationalVector], Z: Zonotope) -> Fraction:
    """Exact minimum of the squared distance to ``Z`` over ``conv(vertices)``.

    A closest pair can be chosen with the point of the polytope in the
    relative interior of an affinely independent vertex simplex and the
    point of ``Z`` in the relative interior of a face, with jointly
    independent directions; each such pair is one least-squares solve.
    """
    if not vertices:
        raise ValueError("empty polytope")
    best: Optional[Fraction] = None
    dim = Z.dim
    for size in range(1, len(vertices) + 1):
        for subset in combinations(vertices, size):
            base = subset[0]
            edges = [w - base for w in subset[1:]]
            if rank(edges, dim) < len(edges):
                continue
            for covector in Z.covectors:
                offset, zero_set = Z.face_of(covector)
                basis = [zero_set[i] for i in independent_subset(zero_set)]
                columns = edges + [-b for b in basis]
                if rank(columns, dim) < len(columns):
                    continue
                coeffs = least_squares(columns, offset - base) if columns else []
                lam = coeffs[: len(edges)]
                if any(c < 0 for c in lam) or sum(lam) > 1:
                    continue
                s = base + vector_sum((e.scale(c) for e, c in zip(edges, lam)), dim)
                z = offset + vector_sum(
                    (b.scale(c) for b, c in zip(basis, coeffs[len(edges) :])), dim
                )
                if not Z.contains(z):
                    continue
                value = (s - z).norm_sq()
                if best is None or value < best:
                    best = value
    assert best is not None
    return best


@dataclass(frozen=True)
class MinMax:
    min_index: int
    min_sq: Fraction
    max_indices: Tuple[int, ...]
    max_sq: Fraction


def minmax_over_polytope(
    vertices: Sequence[RationalVector],
    Z: Zonotope,
    faces: Optional[Iterable[FrozenSet[int]]] = None,
    verify_min: bool = False,
) -> MinMax:
    """Vertex minimizing and vertex face maximizing the distance to ``Z``.

    ``faces`` lists the vertex-index sets of the faces of the polytope; when
    omitted the polytope is a simplex and every subset is a face.

    Raises:
        InsufficientGenerators: If the generators of ``Z`` are not
            sufficiently rich for the polytope.
        InvariantViolation: If the maxima do not form a face, the distance is
            not constant on it, or the vertex minimum is not the minimum.
    """
    _require_rich(Z.generators, vertices)
    values = [distance_sq(v, Z) for v in vertices]
    low, high = min(values), max(values)
    min_index = values.index(low)
    top = tuple(i for i, value in enumerate(values) if value == high)
    if faces is not None and frozenset(top) not in set(faces):
        raise InvariantViolation("maximal vertices %s do not span a face" % (top,))
    centre = vector_sum((vertices[i] for i in top), Z.dim).scale(Fraction(1, len(top)))
    if distance_sq(centre, Z) != high:
        raise InvariantViolation("distance is not constant on the maximal face")
    if verify_min and exact_min_over_polytope(vertices, Z) != low:
        raise InvariantViolation("minimum over the polytope is not at a vertex")
    return MinMax(min_index, low, top, high)


# -- Weyl chambers ------------------------------------------------------------


def wchamber_contains(
    roots: Sequence[RationalVector], chamber_of: RationalVector, candidate: RationalVector
) -> bool:
    """Whether every closed Weyl chamber containing ``chamber_of`` contains ``candidate``.

    ``roots`` are the positive roots of the reflection group.
    """
    for alpha in roots:
        side, value = alpha.dot(chamber_of), alpha.dot(candidate)
        if side > 0 and value < 0:
            return False
        if side < 0 and value > 0:
            return False
        if side == 0 and value != 0:
            return False
    return True
