"""
Finite spherical buildings, polar classes and hemisphere complexes.

Copyright (c) 2025 Max Qian <astro_air@126.com>
Available under the terms of MIT license
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from typing import (
    Any,
    Dict,
    FrozenSet,
    Hashable,
    Iterable,
    Iterator,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
    Union,
)

from sympy.polys.domains import GF
from sympy.polys.matrices import DomainMatrix

from .coxcomplex import (
    CoxeterSystem,
    RootSystem,
    coxeter_system_for,
    parse_type_label,
    root_system,
)
from .errors import DegenerateSpan, InvariantViolation, UnsupportedType
from .exactgeom import (
    Ordering,
    RationalVector,
    apply_map,
    project_onto_cone,
    rank,
    solve_linear,
    vector_sum,
)
from .logging_utils import debug
from .parser import BuildingSpec, parse_building_spec
from .polycomplex import SimplicialComplex, json_label, order_complex, sort_key
from .utils import subsets

Vertex = Hashable
Simplex = FrozenSet[Vertex]
Subspace = Tuple[Tuple[int, ...], ...]

_NO_SIMPLEX: Simplex = frozenset()


@dataclass(frozen=True)
class Apartment:
    """Thin subcomplex with a rational realization; directions are unnormalized."""

    positions: Mapping[Vertex, RationalVector]

    @cached_property
    def vertices(self) -> FrozenSet[Vertex]:
        return frozenset(self.positions)

    def contains(self, simplex: Iterable[Vertex]) -> bool:
        return all(v in self.positions for v in simplex)

    def position(self, v: Vertex) -> RationalVector:
        return self.positions[v]

    @property
    def dim(self) -> int:
        return next(iter(self.positions.values())).dim


class SphericalBuilding(object):
    """A finite spherical building regarded as a simplicial complex.

    Subclasses provide the apartment system. Every pair of simplices lies
    in a common apartment, found constructively by ``apartment_containing``.
    """

    def __init__(
        self,
        spec: BuildingSpec,
        complex_: SimplicialComplex,
        types: Dict[Vertex, int],
        coxeter: CoxeterSystem,
    ) -> None:
        self.spec = spec
        self.complex = complex_
        self.types = types
        self.coxeter = coxeter

    def __str__(self) -> str:
        return str(self.spec)

    @property
    def dim(self) -> int:
        return self.complex.dim

    @property
    def ambient_dim(self) -> int:
        raise NotImplementedError

    def vertices(self) -> List[Vertex]:
        return self.complex.vertices()

    @cached_property
    def _chambers(self) -> List[Simplex]:
        return [s for s in self.complex.ordered() if len(s) == self.coxeter.rank]

    def chambers(self) -> List[Simplex]:
        return list(self._chambers)

    def chambers_containing(self, simplex: Simplex) -> List[Simplex]:
        return [c for c in self._chambers if simplex <= c]

    def typ(self, simplex: Iterable[Vertex]) -> FrozenSet[int]:
        return frozenset(self.types[v] for v in simplex)

    @cached_property
    def _component_of_type(self) -> Dict[int, int]:
        out = {}
        for index, nodes in enumerate(self.coxeter.components()):
            for node in nodes:
                out[node] = index
        return out

    def component_of(self, v: Vertex) -> int:
        """Index of the join factor (diagram component) containing ``v``."""
        return self._component_of_type[self.types[v]]

    def join_factors(self) -> List[List[Vertex]]:
        groups: Dict[int, List[Vertex]] = {}
        for v in self.vertices():
            groups.setdefault(self.component_of(v), []).append(v)
        return [groups[i] for i in sorted(groups)]

    def apartment_containing(
        self,
        first: Simplex,
        second: Simplex = _NO_SIMPLEX,
        rng: Optional[random.Random] = None,
    ) -> Apartment:
        raise NotImplementedError

    def apartments_containing(self, simplices: Sequence[Simplex]) -> Iterator[Apartment]:
        raise NotImplementedError

    def to_json(self) -> Dict[str, Any]:
        data = self.complex.to_json()
        data["spec"] = str(self.spec)
        data["types"] = [[json_label(v), self.types[v]] for v in self.vertices()]
        return data


# -- thin Coxeter complexes ----------------------------------------------------


class ThinBuilding(SphericalBuilding):
    """A building that is its own single apartment."""

    def __init__(
        self,
        spec: BuildingSpec,
        complex_: SimplicialComplex,
        types: Dict[Vertex, int],
        coxeter: CoxeterSystem,
        positions: Mapping[Vertex, RationalVector],
    ) -> None:
        super().__init__(spec, complex_, types, coxeter)
        self.apartment = Apartment(positions)

    @property
    def ambient_dim(self) -> int:
        return self.apartment.dim

    def apartment_containing(
        self,
        first: Simplex,
        second: Simplex = _NO_SIMPLEX,
        rng: Optional[random.Random] = None,
    ) -> Apartment:
        return self.apartment

    def apartments_containing(self, simplices: Sequence[Simplex]) -> Iterator[Apartment]:
        if all(self.apartment.contains(s) for s in simplices):
            yield self.apartment


class ThinCoxeterBuilding(ThinBuilding):
    """Coxeter complex of a finite Weyl group.

    Vertices are integers ordered by (type, coordinates); vertex ``v``
    sits at ``w . omega_i`` for a fundamental coweight ``omega_i``.
    """

    def __init__(self, spec: BuildingSpec, roots: RootSystem) -> None:
        coweights = roots.fundamental_coweights
        placed: Dict[RationalVector, int] = {}
        chambers = []
        for w in roots.weyl_group:
            chamber = []
            for i, omega in enumerate(coweights):
                p = apply_map(w, omega)
                placed.setdefault(p, i)
                chamber.append(p)
            chambers.append(chamber)
        ordered = sorted(placed, key=lambda p: (placed[p], p.coords))
        ids = {p: i for i, p in enumerate(ordered)}
        super().__init__(
            spec,
            SimplicialComplex.from_facets([ids[p] for p in c] for c in chambers),
            {ids[p]: placed[p] for p in ordered},
            roots.coxeter_system(),
            {ids[p]: p for p in ordered},
        )
        self.roots = roots


# -- rank-1 buildings ----------------------------------------------------------


_RANK_ONE = CoxeterSystem(((1,),))


class PointBuilding(SphericalBuilding):
    """``k`` points; every pair of distinct points is an apartment."""

    def __init__(self, spec: BuildingSpec, k: int) -> None:
        if k < 2:
            raise UnsupportedType("a rank-1 building needs at least two points")
        super().__init__(
            spec,
            SimplicialComplex.from_facets([v] for v in range(k)),
            {v: 0 for v in range(k)},
            _RANK_ONE,
        )
        self.k = k

    @property
    def ambient_dim(self) -> int:
        return 1

    @staticmethod
    def _pair(a: int, b: int) -> Apartment:
        return Apartment({a: RationalVector.of(1), b: RationalVector.of(-1)})

    def apartment_containing(
        self,
        first: Simplex,
        second: Simplex = _NO_SIMPLEX,
        rng: Optional[random.Random] = None,
    ) -> Apartment:
        wanted = sorted(first | second, key=sort_key)
        if len(wanted) > 2:
            raise ValueError("%d points are not in one apartment" % len(wanted))
        if len(wanted) == 2:
            return self._pair(wanted[0], wanted[1])
        anchor = wanted[0] if wanted else 0
        others = [v for v in range(self.k) if v != anchor]
        partner = others[0] if rng is None else rng.choice(others)
        return self._pair(anchor, partner)

    def apartments_containing(self, simplices: Sequence[Simplex]) -> Iterator[Apartment]:
        for a, b in combinations(range(self.k), 2):
            apartment = self._pair(a, b)
            if all(apartment.contains(s) for s in simplices):
                yield apartment


# -- flag complexes over finite fields -----------------------------------------


def _add(x: Tuple[int, ...], y: Tuple[int, ...], q: int) -> Tuple[int, ...]:
    return tuple((a + b) % q for a, b in zip(x, y))


def _span(
    vectors: Iterable[Tuple[int, ...]], q: int, n: int
) -> FrozenSet[Tuple[int, ...]]:
    out = {(0,) * n}
    for v in vectors:
        out = {_add(x, tuple(c * a for a in v), q) for x in out for c in range(q)}
    return frozenset(out)


def _sum(
    u: FrozenSet[Tuple[int, ...]], w: FrozenSet[Tuple[int, ...]], q: int
) -> FrozenSet[Tuple[int, ...]]:
    return frozenset(_add(x, y, q) for x in u for y in w)


def canonical_subspace(rows: Sequence[Sequence[int]], q: int, n: int) -> Subspace:
    """Reduced row echelon basis over GF(q), zero rows dropped."""
    field = GF(q)
    m = DomainMatrix([[field(int(x)) for x in r] for r in rows], (len(rows), n), field)
    reduced, pivots = m.rref()
    return tuple(
        tuple(int(x) % q for x in row) for row in reduced.to_list()[: len(pivots)]
    )


def enumerate_subspaces(q: int, n: int) -> List[Subspace]:
    """All proper nonzero subspaces of GF(q)^n in reduced row echelon form."""
    out = []
    for k in range(1, n):
        for pivots in combinations(range(n), k):
            free = [
                (i, c)
                for i, p in enumerate(pivots)
                for c in range(p + 1, n)
                if c not in pivots
            ]
            for values in product(range(q), repeat=len(free)):
                rows = [[0] * n for _ in pivots]
                for i, p in enumerate(pivots):
                    rows[i][p] = 1
                for (i, c), x in zip(free, values):
                    rows[i][c] = x
                out.append(tuple(tuple(r) for r in rows))
    return out


class FlagBuilding(SphericalBuilding):
    """Flag complex of GF(q)^(n+1); vertices are subspaces, type = dimension - 1.

    Apartments are frames: a basis up to scaling gives the subspaces spanned
    by its proper nonempty subsets, subset ``I`` realized at
    ``1_I - |I|/(n+1) * 1``.
    """

    def __init__(self, spec: BuildingSpec, q: int, n: int) -> None:
        if q not in (2, 3) or not 1 <= n <= 3:
            raise UnsupportedType("flag complexes need q in (2, 3) and 1 <= n <= 3")
        self.q = q
        self.n = n
        self.size = n + 1
        spaces = enumerate_subspaces(q, self.size)
        self.elements = {s: _span(s, q, self.size) for s in spaces}
        self.whole = _span(
            [tuple(int(i == j) for j in range(self.size)) for i in range(self.size)],
            q,
            self.size,
        )
        ordered = sorted(spaces, key=lambda s: (len(s), s))
        super().__init__(
            spec,
            order_complex(ordered, lambda s, t: self.elements[s] < self.elements[t]),
            {s: len(s) - 1 for s in ordered},
            coxeter_system_for("A%d" % n),
        )
        debug("flags(%d,%d): %d subspaces" % (q, n, len(ordered)))

    @property
    def ambient_dim(self) -> int:
        return self.size

    def frame_apartment(self, basis: Sequence[Tuple[int, ...]]) -> Apartment:
        positions = {}
        for subset in subsets(range(self.size), 1, self.size - 1):
            key = canonical_subspace([basis[i] for i in subset], self.q, self.size)
            shift = Fraction(len(subset), self.size)
            positions[key] = RationalVector(
                tuple(Fraction(int(i in subset)) - shift for i in range(self.size))
            )
        return Apartment(positions)

    def _levels(self, simplex: Simplex) -> List[FrozenSet[Tuple[int, ...]]]:
        chain = sorted(simplex, key=len)  # type: ignore[arg-type]
        zero = frozenset({(0,) * self.size})
        return [zero] + [self.elements[s] for s in chain] + [self.whole]

    def apartment_containing(
        self,
        first: Simplex,
        second: Simplex = _NO_SIMPLEX,
        rng: Optional[random.Random] = None,
    ) -> Apartment:
        """Frame adapted to two flags.

        For each pair of levels, vectors of ``A_i & B_j`` are added until they
        span it together with ``A_{i-1} & B_j + A_i & B_{j-1}``.
        """
        a, b = self._levels(first), self._levels(second)
        basis: List[Tuple[int, ...]] = []
        for i in range(1, len(a)):
            for j in range(1, len(b)):
                target = a[i] & b[j]
                current = _sum(a[i - 1] & b[j], a[i] & b[j - 1], self.q)
                while current != target:
                    candidates = sorted(target - current)
                    v = candidates[0] if rng is None else rng.choice(candidates)
                    basis.append(v)
                    current = _sum(current, _span([v], self.q, self.size), self.q)
        if len(basis) != self.size:
            raise InvariantViolation("adapted frame has %d vectors" % len(basis))
        return self.frame_apartment(basis)

    def apartments_containing(self, simplices: Sequence[Simplex]) -> Iterator[Apartment]:
        points = [s for s in self.vertices() if len(s) == 1]  # type: ignore[arg-type]
        for frame in combinations(points, self.size):
            basis = [p[0] for p in frame]  # type: ignore[index]
            if len(canonical_subspace(basis, self.q, self.size)) < self.size:
                continue
            apartment = self.frame_apartment(basis)
            if all(apartment.contains(s) for s in simplices):
                yield apartment


# -- joins ---------------------------------------------------------------------


class JoinBuilding(SphericalBuilding):
    """Spherical join; factor ``i`` contributes vertices ``(i, v)``."""

    def __init__(self, spec: BuildingSpec, parts: Sequence[SphericalBuilding]) -> None:
        self.parts = tuple(parts)
        pieces = [[_NO_SIMPLEX] + list(p.complex.simplices) for p in self.parts]
        simplices = set()
        for combo in product(*pieces):
            joined = frozenset((i, v) for i, s in enumerate(combo) for v in s)
            if joined:
                simplices.add(joined)
        types = {}
        offset = 0
        for i, part in enumerate(self.parts):
            for v, t in part.types.items():
                types[(i, v)] = offset + t
            offset += part.coxeter.rank
        super().__init__(
            spec,
            SimplicialComplex(frozenset(simplices)),
            types,
            CoxeterSystem.block_sum([p.coxeter for p in self.parts]),
        )

    @property
    def ambient_dim(self) -> int:
        return sum(p.ambient_dim for p in self.parts)

    def _split(self, simplex: Simplex, index: int) -> Simplex:
        return frozenset(v for i, v in simplex if i == index)  # type: ignore[misc]

    def _combine(self, apartments: Sequence[Apartment]) -> Apartment:
        positions = {}
        before = 0
        total = self.ambient_dim
        for i, (part, apartment) in enumerate(zip(self.parts, apartments)):
            after = total - before - part.ambient_dim
            for v, p in apartment.positions.items():
                positions[(i, v)] = RationalVector.zero(before).concat(p).concat(
                    RationalVector.zero(after)
                )
            before += part.ambient_dim
        return Apartment(positions)

    def apartment_containing(
        self,
        first: Simplex,
        second: Simplex = _NO_SIMPLEX,
        rng: Optional[random.Random] = None,
    ) -> Apartment:
        return self._combine(
            [
                part.apartment_containing(
                    self._split(first, i), self._split(second, i), rng
                )
                for i, part in enumerate(self.parts)
            ]
        )

    def apartments_containing(self, simplices: Sequence[Simplex]) -> Iterator[Apartment]:
        per_part = [
            list(part.apartments_containing([self._split(s, i) for s in simplices]))
            for i, part in enumerate(self.parts)
        ]
        for combo in product(*per_part):
            yield self._combine(combo)


def build_building(spec: Union[str, BuildingSpec]) -> SphericalBuilding:
    """Construct a building from ``coxeter(T)``, ``flags(q,n)``, ``points(k)`` or ``join``.

    Raises:
        UnsupportedType: If the specification names an unsupported building.

    Examples:
        >>> fano = build_building("flags(2,2)")
        >>> fano.complex.f_vector()
        [14, 21]
    """
    if isinstance(spec, str):
        spec = parse_building_spec(spec)
    if spec.kind == "join":
        return JoinBuilding(spec, [build_building(p) for p in spec.parts])
    if spec.kind == "points":
        if len(spec.args) != 1 or not isinstance(spec.args[0], int):
            raise UnsupportedType("points(k) takes one integer")
        return PointBuilding(spec, spec.args[0])
    if spec.kind == "flags":
        if len(spec.args) != 2 or not all(isinstance(a, int) for a in spec.args):
            raise UnsupportedType("flags(q,n) takes two integers")
        return FlagBuilding(spec, int(spec.args[0]), int(spec.args[1]))
    if spec.kind == "coxeter":
        if len(spec.args) != 1:
            raise UnsupportedType("coxeter(T) takes one type label")
        parts = parse_type_label(str(spec.args[0]))
        if any(p.affine for p in parts):
            raise UnsupportedType("%s is not spherical" % spec.args[0])
        if len(parts) == 1:
            return ThinCoxeterBuilding(spec, root_system(str(parts[0])))
        sub = [BuildingSpec("coxeter", (str(p),)) for p in parts]
        return JoinBuilding(spec, [build_building(s) for s in sub])
    raise UnsupportedType("unknown building kind %s" % spec.kind)


def thin_building(roots: RootSystem) -> ThinCoxeterBuilding:
    return ThinCoxeterBuilding(BuildingSpec("coxeter", (roots.label,)), roots)


# -- north poles and polar classes ---------------------------------------------


@dataclass(frozen=True)
class NorthPole:
    """A point of the building: a carrier simplex with barycentric weights."""

    carrier: Tuple[Vertex, ...]
    weights: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.carrier) != len(self.weights) or not self.carrier:
            raise ValueError("carrier and weights must be nonempty and of equal length")
        if any(w < 0 for w in self.weights) or sum(self.weights) <= 0:
            raise ValueError("weights must be nonnegative with positive sum")

    @classmethod
    def at_vertex(cls, v: Vertex) -> "NorthPole":
        return cls((v,), (Fraction(1),))

    @property
    def simplex(self) -> Simplex:
        return frozenset(v for v, w in zip(self.carrier, self.weights) if w > 0)

    def direction(self, apartment: Apartment) -> RationalVector:
        return vector_sum(
            (apartment.position(v).scale(w) for v, w in zip(self.carrier, self.weights)),
            apartment.dim,
        )

    @classmethod
    def from_direction(
        cls, building: SphericalBuilding, apartment: Apartment, direction: RationalVector
    ) -> "NorthPole":
        """Recover carrier and weights of a direction inside ``apartment``.

        Raises:
            ValueError: If the direction is zero or outside the realization.
        """
        if direction.is_zero():
            raise ValueError("zero direction has no carrier")
        thin = building.complex.full_subcomplex(apartment.vertices)
        for chamber in thin.facets():
            verts = sorted(chamber, key=sort_key)
            coeffs = solve_linear([apartment.position(v) for v in verts], direction)
            if coeffs is None or any(c < 0 for c in coeffs):
                continue
            keep = [(v, c) for v, c in zip(verts, coeffs) if c > 0]
            return cls(tuple(v for v, _ in keep), tuple(c for _, c in keep))
        raise ValueError("direction %s is not realized in the apartment" % direction)


@dataclass(frozen=True)
class PolarClass:
    """Per-vertex position relative to the equator.

    ``LT`` means closer than a right angle to the pole, ``EQ`` exactly at a
    right angle, ``GT`` farther.
    """

    labels: Mapping[Vertex, Ordering]

    def of(self, v: Vertex) -> Ordering:
        return self.labels[v]

    def with_label(self, label: Ordering) -> List[Vertex]:
        return sorted((v for v, c in self.labels.items() if c is label), key=sort_key)

    @property
    def equatorial(self) -> List[Vertex]:
        return self.with_label(Ordering.EQ)

    def to_json(self) -> Dict[str, List[Any]]:
        return {
            name: [json_label(v) for v in self.with_label(o)]
            for name, o in (("lt", Ordering.LT), ("eq", Ordering.EQ), ("gt", Ordering.GT))
        }


def _cos_class(u: RationalVector, v: RationalVector) -> Ordering:
    return Ordering.of(Fraction(0), u.dot(v))


def polar_class(building: SphericalBuilding, pole: NorthPole) -> PolarClass:
    """Classify every vertex by the sign of its inner product with the pole.

    Examples:
        >>> k33 = build_building("join(points(3),points(3))")
        >>> pc = polar_class(k33, NorthPole.at_vertex((0, 0)))
        >>> [str(v) for v in pc.equatorial]
        ['(1, 0)', '(1, 1)', '(1, 2)']
    """
    carrier = frozenset(pole.carrier)
    labels = {}
    for v in building.vertices():
        apartment = building.apartment_containing(carrier, frozenset([v]))
        labels[v] = _cos_class(pole.direction(apartment), apartment.position(v))
    return PolarClass(labels)


def direction_class(building: ThinBuilding, direction: RationalVector) -> PolarClass:
    """Polar classes of a thin building for a pole given as a direction.

    A zero direction makes every vertex equatorial.
    """
    apartment = building.apartment
    return PolarClass(
        {v: _cos_class(direction, apartment.position(v)) for v in building.vertices()}
    )


def check_apartment_independence(
    building: SphericalBuilding,
    pole: NorthPole,
    classes: PolarClass,
    limit: int = 2,
    rng: Optional[random.Random] = None,
) -> int:
    """Re-evaluate every vertex in other apartments; returns the number compared.

    Raises:
        InvariantViolation: If some apartment disagrees with ``classes``.
    """
    carrier = frozenset(pole.carrier)
    compared = 0
    for v in building.vertices():
        found = [building.apartment_containing(carrier, frozenset([v]), rng)]
        for apartment in building.apartments_containing([carrier, frozenset([v])]):
            if len(found) >= limit:
                break
            found.append(apartment)
        for apartment in found:
            label = _cos_class(pole.direction(apartment), apartment.position(v))
            if label is not classes.of(v):
                raise InvariantViolation(
                    "vertex %r classified %s and %s" % (v, classes.of(v).name, label.name)
                )
            compared += 1
    return compared


# -- hemisphere complexes ------------------------------------------------------


@dataclass(frozen=True)
class HemisphereComplexes:
    classes: PolarClass
    equator: SimplicialComplex
    closed: SimplicialComplex
    open: SimplicialComplex
    horizontal: SimplicialComplex
    vertical: SimplicialComplex

    def check(self, building: SphericalBuilding) -> None:
        """Verify the horizontal/vertical join decomposition.

        Raises:
            InvariantViolation: If the building is not the join of the two
                parts or a horizontal simplex is not equatorial.
        """
        hor = set(self.horizontal.vertices())
        for s in building.complex.simplices:
            a, b = s & hor, s - hor
            if (a and a not in self.horizontal) or (b and b not in self.vertical):
                raise InvariantViolation(
                    "simplex %r does not split as a join" % sorted(s, key=sort_key)
                )
        if not self.horizontal.simplices <= self.equator.simplices:
            raise InvariantViolation("horizontal part leaves the equator")


def hemisphere_complexes(
    building: SphericalBuilding,
    pole: Optional[NorthPole],
    classes: Optional[PolarClass] = None,
) -> HemisphereComplexes:
    """Equator, far hemisphere complexes and the horizontal/vertical parts.

    A simplex is at least a right angle from the pole exactly when each of
    its vertices is, and strictly farther only when every vertex is ``GT``.
    """
    if classes is None:
        if pole is None:
            raise ValueError("either a pole or its polar classes are required")
        classes = polar_class(building, pole)
    eq = classes.with_label(Ordering.EQ)
    gt = classes.with_label(Ordering.GT)
    horizontal_vertices: List[Vertex] = []
    vertical_vertices: List[Vertex] = []
    for factor in building.join_factors():
        if all(classes.of(v) is Ordering.EQ for v in factor):
            horizontal_vertices.extend(factor)
        else:
            vertical_vertices.extend(factor)
    full = building.complex.full_subcomplex
    return HemisphereComplexes(
        classes,
        full(eq),
        full(eq + gt),
        full(gt),
        full(horizontal_vertices),
        full(vertical_vertices),
    )


def horizontality_criteria(
    building: SphericalBuilding,
    pole: Optional[NorthPole],
    sigma: Iterable[Vertex],
    classes: Optional[PolarClass] = None,
) -> Tuple[bool, bool]:
    """Evaluate the metric and the diagram criterion for ``sigma`` being horizontal.

    The metric test requires ``sigma`` equatorial and orthogonal to every
    adjacent non-equatorial vertex. The diagram test looks, in each chamber
    containing ``sigma``, at the vertices whose type is connected to a type
    of ``sigma`` in the diagram.

    Raises:
        InvariantViolation: If chambers containing ``sigma`` disagree.
    """
    simplex = frozenset(sigma)
    if classes is None:
        if pole is None:
            raise ValueError("either a pole or its polar classes are required")
        classes = polar_class(building, pole)
    eq = Ordering.EQ

    geometric = all(classes.of(w) is eq for w in simplex)
    if geometric:
        for v in building.complex.link(simplex).vertices():
            if classes.of(v) is eq:
                continue
            apartment = building.apartment_containing(simplex | {v})
            pv = apartment.position(v)
            if any(apartment.position(w).dot(pv) != 0 for w in simplex):
                geometric = False
                break

    components = {building.component_of(w) for w in simplex}
    verdicts = set()
    for chamber in building.chambers_containing(simplex):
        verdicts.add(
            all(
                classes.of(v) is eq
                for v in chamber
                if building.component_of(v) in components
            )
        )
    if len(verdicts) != 1:
        raise InvariantViolation("chambers disagree on %r" % sorted(simplex, key=sort_key))
    return geometric, verdicts.pop()


def random_pole(building: SphericalBuilding, rng: random.Random) -> NorthPole:
    """Pole with random positive weights on a random face of a random chamber."""
    chamber = sorted(rng.choice(building.chambers()), key=sort_key)
    size = rng.randint(1, len(chamber))
    carrier = sorted(rng.sample(chamber, size), key=sort_key)
    return NorthPole(tuple(carrier), tuple(Fraction(rng.randint(1, 6)) for _ in carrier))


# -- spherical geometry on exact vectors -----------------------------------------


def side_class(a: RationalVector, b: RationalVector) -> Ordering:
    """Compare ``d(a, b)`` with a right angle."""
    return _cos_class(a, b)


def tangent(at: RationalVector, x: RationalVector) -> RationalVector:
    """Direction from ``at`` toward ``x``, as a vector orthogonal to ``at``."""
    t = x - at.scale(x.dot(at) / at.norm_sq())
    if t.is_zero():
        raise DegenerateSpan("%s is parallel to %s" % (x, at))
    return t


def angle_class(at: RationalVector, x: RationalVector, y: RationalVector) -> Ordering:
    """Compare the angle at ``at`` between ``x`` and ``y`` with a right angle."""
    return _cos_class(tangent(at, x), tangent(at, y))


def triangle_facts(a: RationalVector, b: RationalVector, c: RationalVector) -> List[str]:
    """Names of the right-angle triangle facts violated by ``(a, b, c)``.

    Only nondegenerate triangles are examined; others yield no violations.
    """
    if rank([a, b, c], a.dim) < 3:
        return []
    lt, eq = Ordering.LT, Ordering.EQ
    ab, ac, bc = side_class(a, b), side_class(a, c), side_class(b, c)
    beta = angle_class(b, a, c)
    gamma = angle_class(c, a, b)
    failed = []
    if ab is eq and bc is not Ordering.GT and ac is not Ordering.GT and gamma is lt:
        failed.append("edge_gives_angle")
    if ab is eq and beta is eq and (ac is not eq or gamma is not eq):
        failed.append("edge_and_angle_give_edge_and_angle")
    if ab is eq and beta is lt and ac is not lt:
        failed.append("edge_and_angle_give_edge_and_angle")
    if ab is eq and ac is eq and (beta is not eq or gamma is not eq):
        failed.append("edges_give_angles")
    if beta is eq and gamma is eq and (ab is not eq or ac is not eq):
        failed.append("angles_give_edges")
    return failed


def spherical_projection(
    p: RationalVector, cell: Sequence[RationalVector]
) -> Optional[RationalVector]:
    """Closest point of the spherical cell spanned by ``cell`` to ``p``.

    Returns None when every point of the cell is at least a right angle away.
    """
    point = project_onto_cone(p, cell)
    if point.is_zero() or p.dot(point) <= 0:
        return None
    return point


def projection_angle_holds(
    p: RationalVector, foot: RationalVector, m: RationalVector
) -> bool:
    """Whether the angle at ``foot`` between ``p`` and ``m`` is at least a right angle."""
    try:
        return angle_class(foot, p, m) is not Ordering.LT
    except DegenerateSpan:
        return True
