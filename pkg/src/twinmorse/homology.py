"""
Integral simplicial homology.

Copyright (c) 2025 Max Qian <astro_air@126.com>
Available under the terms of MIT license
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Any, Dict, List, Tuple

from sympy import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors

from .errors import DimensionMismatch, InvariantViolation
from .logging_utils import debug
from .polycomplex import Simplex, SimplicialComplex, sort_key


class Verdict(enum.Enum):
    SPHERICAL = "spherical_homology"
    PROPERLY_SPHERICAL = "properly_spherical_homology"
    ACYCLIC = "acyclic"
    OTHER = "other"


@dataclass(frozen=True)
class ChainComplex:
    """Augmented simplicial chain complex over the integers.

    ``bases[k + 1]`` lists the k-simplices (``bases[0]`` is the empty simplex)
    and ``boundaries[k]`` is the matrix of the boundary map from degree k
    to degree k - 1, rows indexed by the lower basis.
    """

    bases: Tuple[Tuple[Simplex, ...], ...]
    boundaries: Tuple[DomainMatrix, ...]

    @classmethod
    def from_complex(cls, K: SimplicialComplex) -> "ChainComplex":
        empty: Simplex = frozenset()
        bases: List[Tuple[Simplex, ...]] = [(empty,)]
        for k in range(K.dim + 1):
            bases.append(tuple(K.of_dim(k)))
        boundaries = []
        for k in range(K.dim + 1):
            lower = {s: i for i, s in enumerate(bases[k])}
            rows: List[List[Any]] = [[ZZ(0)] * len(bases[k + 1]) for _ in lower]
            for j, simplex in enumerate(bases[k + 1]):
                ordered = sorted(simplex, key=sort_key)
                for i, _ in enumerate(ordered):
                    face = frozenset(ordered[:i] + ordered[i + 1 :])
                    rows[lower[face]][j] = ZZ((-1) ** i)
            boundaries.append(DomainMatrix(rows, (len(lower), len(bases[k + 1])), ZZ))
        return cls(tuple(bases), tuple(boundaries))

    @property
    def top(self) -> int:
        return len(self.bases) - 2

    def rank_of(self, degree: int) -> int:
        """Rank of the boundary map out of ``degree``; zero outside the range."""
        if degree < 0 or degree > self.top:
            return 0
        m = self.boundaries[degree]
        if 0 in m.shape:
            return 0
        return int(m.to_field().rank())

    def torsion_of(self, degree: int) -> Tuple[int, ...]:
        """Torsion coefficients of reduced homology in ``degree``."""
        if degree + 1 > self.top or degree < 0:
            return ()
        m = self.boundaries[degree + 1]
        if 0 in m.shape:
            return ()
        factors = (abs(int(x)) for x in invariant_factors(m))
        return tuple(f for f in factors if f > 1)

    def check_boundary_squared(self) -> None:
        """Raise InvariantViolation unless every composite boundary vanishes."""
        for k in range(1, len(self.boundaries)):
            lower, upper = self.boundaries[k - 1], self.boundaries[k]
            if 0 in lower.shape or 0 in upper.shape:
                continue
            if not lower.matmul(upper).is_zero_matrix:
                raise InvariantViolation("boundary squared is nonzero in degree %d" % k)


@dataclass(frozen=True)
class BettiReport:
    """Reduced Betti numbers (degree 0 first) and torsion per degree.

    ``empty`` records the single class in degree -1 of the empty complex.
    """

    betti: Tuple[int, ...]
    torsion: Tuple[Tuple[int, ...], ...]
    empty: bool = False

    def betti_at(self, degree: int) -> int:
        """Reduced Betti number; degree -1 is 1 exactly for the empty complex."""
        if degree == -1:
            return int(self.empty)
        if 0 <= degree < len(self.betti):
            return self.betti[degree]
        return 0

    def vanishes_below(self, degree: int) -> bool:
        """True if reduced homology, torsion included, is zero in degrees
        ``-1 .. degree - 1``.

        Args:
            degree (int): First degree that may carry homology.

        Returns:
            bool: ``False`` for the empty complex, whose degree -1 is nonzero.
        """
        return not self.empty and all(
            self.betti_at(k) == 0 and not self.torsion_at(k) for k in range(degree)
        )

    def torsion_at(self, degree: int) -> Tuple[int, ...]:
        if 0 <= degree < len(self.torsion):
            return self.torsion[degree]
        return ()

    def is_acyclic(self) -> bool:
        return self.vanishes_below(len(self.betti))

    def euler_reduced(self) -> int:
        return sum((-1) ** k * b for k, b in enumerate(self.betti)) - int(self.empty)

    def to_json(self) -> Dict[str, Any]:
        return {
            "betti": list(self.betti),
            "torsion": [list(t) for t in self.torsion],
            "empty": self.empty,
        }


def reduced_homology(K: SimplicialComplex) -> BettiReport:
    """Exact reduced integral homology via ranks and Smith invariants.

    Examples:
        >>> circle = SimplicialComplex.from_facets([[0, 1], [1, 2], [0, 2]])
        >>> reduced_homology(circle).betti
        (0, 1)
    """
    if not K.simplices:
        return BettiReport((), (), empty=True)
    chains = ChainComplex.from_complex(K)
    betti = []
    torsion = []
    for k in range(K.dim + 1):
        size = len(chains.bases[k + 1])
        betti.append(size - chains.rank_of(k) - chains.rank_of(k + 1))
        torsion.append(chains.torsion_of(k))
    debug("homology of %d simplices: betti %s" % (len(K), betti))
    return BettiReport(tuple(betti), tuple(torsion))


@dataclass(frozen=True)
class SphericityReport:
    verdict: Verdict
    homology: BettiReport
    dim: int


def sphericity_report(K: SimplicialComplex, n: int) -> SphericityReport:
    """Classify an ``n``-dimensional complex by its reduced homology.

    Raises:
        DimensionMismatch: If ``K`` is not ``n``-dimensional.
    """
    if K.dim != n:
        raise DimensionMismatch("complex has dimension %d, expected %d" % (K.dim, n))
    homology = reduced_homology(K)
    if homology.is_acyclic():
        verdict = Verdict.ACYCLIC
    elif not homology.vanishes_below(n):
        verdict = Verdict.OTHER
    elif homology.betti_at(n) or homology.torsion_at(n):
        verdict = Verdict.PROPERLY_SPHERICAL
    else:
        verdict = Verdict.SPHERICAL
    return SphericityReport(verdict, homology, n)


@dataclass(frozen=True)
class CollapseOutcome:
    collapsed: bool
    remaining: int

    def __str__(self) -> str:
        if self.collapsed:
            return "collapsed_to_point"
        return "stuck(%d)" % self.remaining


def greedy_collapse(K: SimplicialComplex) -> CollapseOutcome:
    """Remove free faces until none is left.

    A face is free when it lies in exactly one other simplex; the pair is
    removed. Candidates are scanned from the top dimension down in the
    complex's canonical order, so the outcome is reproducible.
    """
    alive = set(K.simplices)
    verts = K.vertices()
    progress = True
    while progress and len(alive) > 1:
        progress = False
        for simplex in sorted(alive, key=lambda s: (-len(s), sorted(map(sort_key, s)))):
            if simplex not in alive:
                continue
            cofaces = [
                simplex | {v} for v in verts if v not in simplex and simplex | {v} in alive
            ]
            if len(cofaces) != 1:
                continue
            coface = cofaces[0]
            if any(coface | {v} in alive for v in verts if v not in coface):
                continue
            alive.discard(simplex)
            alive.discard(coface)
            progress = True
    return CollapseOutcome(len(alive) == 1, len(alive))
