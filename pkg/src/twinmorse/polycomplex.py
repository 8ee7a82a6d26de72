"""
Polysimplicial and simplicial complexes.

A polysimplicial cell is a product of simplices, one per factor, each given
by its sorted vertex ids. Complexes are finite sets of cells closed under
taking faces.

Copyright (c) 2025 Max Qian <astro_air@126.com>
Available under the terms of MIT license
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import (
    Any,
    Callable,
    Dict,
    FrozenSet,
    Hashable,
    Iterable,
    Iterator,
    List,
    Optional,
    Sequence,
    Tuple,
)

import networkx as nx

from .errors import ComplexFormatError, InvariantViolation

Simplex = FrozenSet[Hashable]


def _nonempty_subsets(vertices: Sequence[Any]) -> Iterator[Tuple[Any, ...]]:
    for k in range(1, len(vertices) + 1):
        yield from combinations(vertices, k)


def sort_key(item: Any) -> Tuple[int, Any]:
    """Total order on heterogeneous vertex ids, used for reproducible output."""
    if isinstance(item, int) and not isinstance(item, bool):
        return (0, item)
    return (1, repr(item))


@dataclass(frozen=True, order=True)
class PolyCell:
    """A product of simplices; ``factors[i]`` is the sorted vertex tuple of factor i.

    The dataclass ordering is lexicographic and only serves reproducible
    enumeration; the face relation is :meth:`is_face_of`.
    """

    factors: Tuple[Tuple[Any, ...], ...]

    def __post_init__(self) -> None:
        canon = tuple(tuple(sorted(set(f), key=sort_key)) for f in self.factors)
        if not canon or any(not f for f in canon):
            raise ComplexFormatError("every factor of a cell must be nonempty")
        object.__setattr__(self, "factors", canon)

    @classmethod
    def of(cls, *factors: Iterable[Any]) -> "PolyCell":
        return cls(tuple(tuple(f) for f in factors))

    @classmethod
    def simplex(cls, vertices: Iterable[Any]) -> "PolyCell":
        return cls((tuple(vertices),))

    @property
    def rank(self) -> int:
        """Number of factors."""
        return len(self.factors)

    @property
    def dim(self) -> int:
        return sum(len(f) - 1 for f in self.factors)

    def vertices(self) -> List[Tuple[Any, ...]]:
        """Vertices of the cell as tuples with one id per factor."""
        return list(product(*self.factors))

    def vertex_cells(self) -> List["PolyCell"]:
        return [PolyCell(tuple((v,) for v in vertex)) for vertex in self.vertices()]

    def faces(self) -> List["PolyCell"]:
        """All faces including the cell itself."""
        choices = [list(_nonempty_subsets(f)) for f in self.factors]
        return [PolyCell(combo) for combo in product(*choices)]

    def proper_faces(self) -> List["PolyCell"]:
        return [f for f in self.faces() if f != self]

    def facets(self) -> List["PolyCell"]:
        return [f for f in self.faces() if f.dim == self.dim - 1]

    def is_face_of(self, other: "PolyCell") -> bool:
        return self.rank == other.rank and all(
            set(a) <= set(b) for a, b in zip(self.factors, other.factors)
        )

    def is_proper_face_of(self, other: "PolyCell") -> bool:
        return self != other and self.is_face_of(other)

    def difference(self, face: "PolyCell") -> Tuple[Tuple[Any, ...], ...]:
        """Per-factor vertices of the cell not in ``face`` (the link directions)."""
        return tuple(
            tuple(v for v in mine if v not in set(theirs))
            for mine, theirs in zip(self.factors, face.factors)
        )

    def factor(self, index: int) -> "PolyCell":
        return PolyCell((self.factors[index],))

    @property
    def key(self) -> Tuple[Any, ...]:
        """Sort key: dimension first, then vertex ids."""
        return (self.dim, tuple(tuple(sort_key(v) for v in f) for f in self.factors))

    def to_json(self) -> List[List[Any]]:
        return [list(f) for f in self.factors]

    def __str__(self) -> str:
        return " x ".join("[%s]" % ",".join(map(str, f)) for f in self.factors)


def meet_and_faces(sigma: PolyCell, tau: PolyCell) -> Tuple[Optional[PolyCell], bool]:
    """Return the largest common face of two cells and whether ``sigma <= tau``.

    The meet exists only when the vertex sets intersect in every factor.
    """
    parts = tuple(
        tuple(v for v in a if v in set(b)) for a, b in zip(sigma.factors, tau.factors)
    )
    meet = PolyCell(parts) if all(parts) else None
    return meet, sigma.is_face_of(tau)


@dataclass(frozen=True)
class FlagCell:
    """A strictly increasing chain of cells, i.e. a simplex of the subdivision."""

    chain: Tuple[PolyCell, ...]

    def __post_init__(self) -> None:
        ordered = tuple(sorted(self.chain, key=lambda c: c.key))
        for lower, upper in zip(ordered, ordered[1:]):
            if not lower.is_proper_face_of(upper):
                raise InvariantViolation("%s is not a proper face of %s" % (lower, upper))
        object.__setattr__(self, "chain", ordered)

    @property
    def dim(self) -> int:
        return len(self.chain) - 1

    @property
    def top(self) -> PolyCell:
        return self.chain[-1]


@dataclass(frozen=True)
class PolyComplex:
    """A face-closed finite set of polysimplicial cells over a fixed factor count."""

    cells: FrozenSet[PolyCell]
    flag_factors: bool = False
    _cofaces: Dict[PolyCell, Tuple[PolyCell, ...]] = field(
        default_factory=dict, compare=False, repr=False
    )

    @classmethod
    def from_cells(
        cls, cells: Iterable[PolyCell], flag_factors: bool = False
    ) -> "PolyComplex":
        closed = set()
        for cell in cells:
            if cell not in closed:
                closed.update(cell.faces())
        ranks = {c.rank for c in closed}
        if len(ranks) > 1:
            raise ComplexFormatError(
                "cells with different factor counts: %s" % sorted(ranks)
            )
        return cls(frozenset(closed), flag_factors)

    @classmethod
    def product(cls, complexes: Sequence["PolyComplex"]) -> "PolyComplex":
        """Cartesian product, factors concatenated in order."""
        cells = [
            PolyCell(sum((c.factors for c in combo), ()))
            for combo in product(*(list(k) for k in complexes))
        ]
        return cls(frozenset(cells), all(k.flag_factors for k in complexes))

    def __contains__(self, cell: object) -> bool:
        return cell in self.cells

    def __len__(self) -> int:
        return len(self.cells)

    def __iter__(self) -> Iterator[PolyCell]:
        return iter(sorted(self.cells, key=lambda c: c.key))

    @property
    def dim(self) -> int:
        return max((c.dim for c in self.cells), default=-1)

    def cells_of_dim(self, dim: int) -> List[PolyCell]:
        return [c for c in self if c.dim == dim]

    def vertices(self) -> List[PolyCell]:
        return self.cells_of_dim(0)

    def maximal_cells(self) -> List[PolyCell]:
        return [c for c in self if not self.cofaces(c)]

    def cofaces(self, cell: PolyCell) -> Tuple[PolyCell, ...]:
        """Cells having ``cell`` as a proper face."""
        if not self._cofaces and self.cells:
            index: Dict[PolyCell, List[PolyCell]] = {c: [] for c in self.cells}
            for c in self:
                for face in c.proper_faces():
                    index.setdefault(face, []).append(c)
            self._cofaces.update((k, tuple(v)) for k, v in index.items())
        return self._cofaces.get(cell, ())

    def star(self, cell: PolyCell) -> List[PolyCell]:
        """The cell together with its cofaces."""
        return [cell, *self.cofaces(cell)]

    def closed_star(self, cell: PolyCell) -> "PolyComplex":
        return PolyComplex.from_cells(self.star(cell), self.flag_factors)

    def restrict(self, keep: Callable[[PolyCell], bool]) -> "PolyComplex":
        """Subcomplex of cells passing ``keep``; ``keep`` must be face-hereditary."""
        return PolyComplex(frozenset(c for c in self.cells if keep(c)), self.flag_factors)

    def join_exists(self, cells: Sequence[PolyCell]) -> Optional[PolyCell]:
        """Return the smallest cell containing all ``cells``, if there is one.

        Joins of products are taken factorwise, so the candidate is the
        factorwise union. When factors are flag complexes, pairwise joinability
        forces the candidate to be present.

        Raises:
            InvariantViolation: If a flag complex has pairwise joins but no
                join of the whole family.
        """
        if not cells:
            return None
        candidate = PolyCell(
            tuple(
                tuple(set().union(*(c.factors[i] for c in cells)))
                for i in range(cells[0].rank)
            )
        )
        if candidate in self.cells:
            return candidate
        if self.flag_factors and all(
            self.join_exists([a, b]) is not None for a, b in combinations(cells, 2)
        ):
            raise InvariantViolation(
                "pairwise joins exist but %s is missing" % candidate
            )
        return None

    def euler(self) -> int:
        return sum((-1) ** c.dim for c in self.cells)

    def to_json(self) -> Dict[str, Any]:
        ids = set()
        for cell in self.cells:
            for f in cell.factors:
                ids.update(f)
        return {
            "vertices": sorted(ids, key=sort_key),
            "cells": [c.to_json() for c in self.maximal_cells()],
        }

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "PolyComplex":
        try:
            cells = [
                PolyCell(tuple(tuple(_hashable(v) for v in f) for f in c))
                for c in data["cells"]
            ]
        except (KeyError, TypeError) as e:
            raise ComplexFormatError("malformed complex: %s" % e) from e
        return cls.from_cells(cells)


def _hashable(value: Any) -> Hashable:
    if isinstance(value, list):
        return tuple(_hashable(v) for v in value)
    return value


@dataclass(frozen=True)
class SimplicialComplex:
    """A finite abstract simplicial complex; the empty complex is allowed."""

    simplices: FrozenSet[Simplex]

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable[Hashable]]) -> "SimplicialComplex":
        closed: set = set()
        for facet in facets:
            verts = tuple(sorted(set(facet), key=sort_key))
            if frozenset(verts) in closed:
                continue
            closed.update(frozenset(s) for s in _nonempty_subsets(verts))
        return cls(frozenset(closed))

    @classmethod
    def empty(cls) -> "SimplicialComplex":
        return cls(frozenset())

    def __contains__(self, simplex: object) -> bool:
        return simplex in self.simplices

    def __len__(self) -> int:
        return len(self.simplices)

    def __iter__(self) -> Iterator[Simplex]:
        return iter(self.ordered())

    def ordered(self) -> List[Simplex]:
        return sorted(
            self.simplices, key=lambda s: (len(s), sorted(map(sort_key, s)))
        )

    @property
    def dim(self) -> int:
        return max((len(s) - 1 for s in self.simplices), default=-1)

    def vertices(self) -> List[Hashable]:
        verts = {v for s in self.simplices for v in s}
        return sorted(verts, key=sort_key)

    def of_dim(self, dim: int) -> List[Simplex]:
        return [s for s in self.ordered() if len(s) == dim + 1]

    def facets(self) -> List[Simplex]:
        verts = self.vertices()
        return [
            s
            for s in self.ordered()
            if not any(v not in s and s | {v} in self.simplices for v in verts)
        ]

    def f_vector(self) -> List[int]:
        counts = [0] * (self.dim + 1)
        for s in self.simplices:
            counts[len(s) - 1] += 1
        return counts

    def euler(self) -> int:
        return sum((-1) ** i * n for i, n in enumerate(self.f_vector()))

    def full_subcomplex(self, vertices: Iterable[Hashable]) -> "SimplicialComplex":
        keep = set(vertices)
        return SimplicialComplex(frozenset(s for s in self.simplices if s <= keep))

    def link(self, simplex: Iterable[Hashable]) -> "SimplicialComplex":
        base = frozenset(simplex)
        return SimplicialComplex(frozenset(s - base for s in self.simplices if base < s))

    def closed_star(self, simplex: Iterable[Hashable]) -> "SimplicialComplex":
        base = frozenset(simplex)
        return SimplicialComplex.from_facets(s for s in self.simplices if base <= s)

    def join(self, other: "SimplicialComplex") -> "SimplicialComplex":
        """Join with vertices tagged ``(0, v)`` and ``(1, w)``."""
        left = [frozenset((0, v) for v in s) for s in self.simplices]
        right = [frozenset((1, v) for v in s) for s in other.simplices]
        joined = set(left) | set(right)
        joined.update(a | b for a in left for b in right)
        return SimplicialComplex(frozenset(joined))

    def relabel(self, mapping: Callable[[Hashable], Hashable]) -> "SimplicialComplex":
        return SimplicialComplex(
            frozenset(frozenset(mapping(v) for v in s) for s in self.simplices)
        )

    def one_skeleton(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices())
        graph.add_edges_from(tuple(s) for s in self.simplices if len(s) == 2)
        return graph

    def to_json(self) -> Dict[str, Any]:
        label = json_label
        return {
            "vertices": [label(v) for v in self.vertices()],
            "cells": [
                [[label(v) for v in sorted(s, key=sort_key)]] for s in self.facets()
            ],
        }

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "SimplicialComplex":
        try:
            cells = data["cells"]
            facets = []
            for cell in cells:
                if len(cell) != 1:
                    raise ComplexFormatError("simplicial cells have one factor")
                facets.append([_hashable(v) for v in cell[0]])
            extra = [[_hashable(v)] for v in data.get("vertices", [])]
        except (KeyError, TypeError) as e:
            raise ComplexFormatError("malformed complex: %s" % e) from e
        return cls.from_facets(facets + extra)


def json_label(v: Hashable) -> Any:
    if isinstance(v, (int, str)):
        return v
    if isinstance(v, tuple):
        return [json_label(x) for x in v]
    return repr(v)


def clique_complex(graph: nx.Graph) -> SimplicialComplex:
    """Flag complex of a graph: every clique spans a simplex."""
    return SimplicialComplex(
        frozenset(frozenset(c) for c in nx.enumerate_all_cliques(graph))
    )


def order_complex(
    elements: Iterable[Hashable], less: Callable[[Any, Any], bool]
) -> SimplicialComplex:
    """Simplicial complex of chains of a finite poset.

    Chains are the cliques of the comparability graph.
    """
    items = list(elements)
    graph = nx.Graph()
    graph.add_nodes_from(items)
    graph.add_edges_from(
        (a, b) for a, b in combinations(items, 2) if less(a, b) or less(b, a)
    )
    return clique_complex(graph)


def barycentric_subdivide(c: PolyComplex) -> SimplicialComplex:
    """Order complex of the face poset; its vertices are the cells of ``c``.

    Examples:
        >>> edge = PolyComplex.from_cells([PolyCell.simplex([0, 1])])
        >>> barycentric_subdivide(edge).f_vector()
        [3, 2]
    """
    return order_complex(c.cells, PolyCell.is_proper_face_of)


def flag_of(simplex: Simplex) -> FlagCell:
    """Read a simplex of a subdivision back as its chain of cells."""
    return FlagCell(tuple(simplex))  # type: ignore[arg-type]
