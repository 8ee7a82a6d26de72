"""
Exact rational vectors, square-root comparisons and linear algebra.

All metric quantities are carried as squares so that every comparison
reduces to rational arithmetic. Linear algebra runs on sympy's
``DomainMatrix`` over ``QQ``.

Copyright (c) 2025 Max Qian <astro_air@126.com>
Available under the terms of MIT license
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .errors import DegenerateSpan
from .utils import as_fraction, fraction_str


class Ordering(enum.Enum):
    """Outcome of an exact comparison."""

    LT = "lt"
    EQ = "eq"
    GT = "gt"

    @classmethod
    def of(cls, a: Fraction, b: Fraction) -> "Ordering":
        if a < b:
            return cls.LT
        if a > b:
            return cls.GT
        return cls.EQ


@dataclass(frozen=True)
class RationalVector:
    """A vector with exact rational coordinates."""

    coords: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "coords", tuple(as_fraction(c) for c in self.coords)
        )

    @classmethod
    def of(cls, *values: object) -> "RationalVector":
        return cls(tuple(as_fraction(v) for v in values))

    @classmethod
    def zero(cls, dim: int) -> "RationalVector":
        return cls((Fraction(0),) * dim)

    @classmethod
    def unit(cls, dim: int, index: int) -> "RationalVector":
        return cls(tuple(Fraction(int(i == index)) for i in range(dim)))

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coords)

    def __getitem__(self, index: int) -> Fraction:
        return self.coords[index]

    def _check(self, other: "RationalVector") -> None:
        if other.dim != self.dim:
            raise ValueError("dimension mismatch: %d != %d" % (self.dim, other.dim))

    def __add__(self, other: "RationalVector") -> "RationalVector":
        self._check(other)
        return RationalVector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "RationalVector") -> "RationalVector":
        self._check(other)
        return RationalVector(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "RationalVector":
        return RationalVector(tuple(-a for a in self.coords))

    def scale(self, factor: object) -> "RationalVector":
        f = as_fraction(factor)
        return RationalVector(tuple(f * a for a in self.coords))

    def dot(self, other: "RationalVector") -> Fraction:
        self._check(other)
        return sum((a * b for a, b in zip(self.coords, other.coords)), Fraction(0))

    def norm_sq(self) -> Fraction:
        return self.dot(self)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def concat(self, other: "RationalVector") -> "RationalVector":
        return RationalVector(self.coords + other.coords)

    def split(self, at: int) -> Tuple["RationalVector", "RationalVector"]:
        return RationalVector(self.coords[:at]), RationalVector(self.coords[at:])

    def to_json(self) -> List[str]:
        return [fraction_str(c) for c in self.coords]

    def __str__(self) -> str:
        return "(%s)" % ", ".join(fraction_str(c) for c in self.coords)


def vector_sum(vectors: Iterable[RationalVector], dim: int) -> RationalVector:
    total = RationalVector.zero(dim)
    for v in vectors:
        total = total + v
    return total


@dataclass(frozen=True, order=True)
class SqrtRational:
    """The nonnegative square root of an exact rational, stored by its square."""

    square: Fraction

    def __post_init__(self) -> None:
        square = as_fraction(self.square)
        if square < 0:
            raise ValueError("negative square: %s" % square)
        object.__setattr__(self, "square", square)

    @classmethod
    def of_length(cls, v: RationalVector) -> "SqrtRational":
        return cls(v.norm_sq())

    def is_zero(self) -> bool:
        return self.square == 0

    def __str__(self) -> str:
        return "sqrt(%s)" % fraction_str(self.square)


def cmp_sqrt(a: SqrtRational, b: SqrtRational) -> Ordering:
    """Compare two square roots exactly.

    Examples:
        >>> cmp_sqrt(SqrtRational(Fraction(5)), SqrtRational(Fraction(49, 10)))
        <Ordering.GT: 'gt'>
    """
    return Ordering.of(a.square, b.square)


def cmp_sum_sqrt(a: SqrtRational, b: SqrtRational, c: SqrtRational) -> Ordering:
    """Compare ``(sqrt(A) + sqrt(B)) / 2`` against ``sqrt(C)`` exactly.

    Squaring ``sqrt(A) + sqrt(B)`` against ``2 sqrt(C)`` leaves
    ``2 sqrt(AB)`` against ``R = 4C - A - B``. A negative ``R`` settles the
    comparison; otherwise both sides are nonnegative and may be squared again.
    """
    rest = 4 * c.square - a.square - b.square
    if rest < 0:
        return Ordering.GT
    return Ordering.of(4 * a.square * b.square, rest * rest)


# -- matrices ---------------------------------------------------------------


def _qq(value: Fraction) -> object:
    return QQ(value.numerator, value.denominator)


def _fraction(element: object) -> Fraction:
    return Fraction(int(element.numerator), int(element.denominator))  # type: ignore


def to_domain_matrix(rows: Sequence[Sequence[Fraction]], ncols: int) -> DomainMatrix:
    data = [[_qq(as_fraction(x)) for x in row] for row in rows]
    return DomainMatrix(data, (len(data), ncols), QQ)


def from_domain_matrix(m: DomainMatrix) -> List[List[Fraction]]:
    return [[_fraction(x) for x in row] for row in m.to_list()]


def _width(vectors: Sequence[RationalVector], dim: Optional[int]) -> int:
    if dim is not None:
        return dim
    if not vectors:
        raise ValueError("dimension required for an empty vector list")
    return vectors[0].dim


def rank(vectors: Sequence[RationalVector], dim: Optional[int] = None) -> int:
    if not vectors:
        return 0
    return int(to_domain_matrix([v.coords for v in vectors], _width(vectors, dim)).rank())


def rref(
    rows: Sequence[RationalVector], dim: Optional[int] = None
) -> Tuple[List[RationalVector], Tuple[int, ...]]:
    """Reduced row echelon form; zero rows are dropped."""
    if not rows:
        return [], ()
    width = _width(rows, dim)
    reduced, pivots = to_domain_matrix([r.coords for r in rows], width).rref()
    out = [RationalVector(tuple(r)) for r in from_domain_matrix(reduced)]
    return out[: len(pivots)], tuple(int(p) for p in pivots)


def nullspace(rows: Sequence[RationalVector], dim: int) -> List[RationalVector]:
    """Basis of ``{x : <r, x> = 0 for every row r}``, one vector per free column."""
    reduced, pivots = rref(rows, dim)
    basis = []
    for free in range(dim):
        if free in pivots:
            continue
        coords = [Fraction(0)] * dim
        coords[free] = Fraction(1)
        for row, pivot in zip(reduced, pivots):
            coords[pivot] = -row[free]
        basis.append(RationalVector(tuple(coords)))
    return basis


orthogonal_complement = nullspace


def solve_linear(
    columns: Sequence[RationalVector], target: RationalVector
) -> Optional[List[Fraction]]:
    """Find coefficients ``c`` with ``sum c_i columns_i = target``.

    Free variables are set to zero. Returns None when no solution exists.
    """
    dim = target.dim
    if not columns:
        return [] if target.is_zero() else None
    augmented = [
        RationalVector(tuple(col[i] for col in columns) + (target[i],))
        for i in range(dim)
    ]
    reduced, pivots = rref(augmented, len(columns) + 1)
    if len(columns) in pivots:
        return None
    coeffs = [Fraction(0)] * len(columns)
    for row, pivot in zip(reduced, pivots):
        coeffs[pivot] = row[len(columns)]
    return coeffs


def independent_subset(vectors: Sequence[RationalVector]) -> List[int]:
    """Indices of a greedy maximal linearly independent subfamily."""
    if not vectors:
        return []
    dim = vectors[0].dim
    columns = [RationalVector(tuple(v[i] for v in vectors)) for i in range(dim)]
    return list(rref(columns, len(vectors))[1])


def in_span(v: RationalVector, span: Sequence[RationalVector]) -> bool:
    return solve_linear(span, v) is not None


def least_squares(
    columns: Sequence[RationalVector], target: RationalVector
) -> List[Fraction]:
    """Coefficients of the projection of ``target`` onto independent ``columns``."""
    return _gram_solve(target, columns)


def _gram_solve(v: RationalVector, basis: Sequence[RationalVector]) -> List[Fraction]:
    if not basis:
        return []
    k = len(basis)
    gram = to_domain_matrix([[a.dot(b) for b in basis] for a in basis], k)
    rhs = to_domain_matrix([[b.dot(v)] for b in basis], 1)
    solution = gram.lu_solve(rhs)
    return [row[0] for row in from_domain_matrix(solution)]


def perp_component(v: RationalVector, span: Sequence[RationalVector]) -> RationalVector:
    """Return ``v`` minus its orthogonal projection onto ``span``.

    Raises:
        DegenerateSpan: If the spanning vectors are linearly dependent.

    Examples:
        >>> str(perp_component(RationalVector.of(1, 2, 3),
        ...     [RationalVector.of(1, 1, 0), RationalVector.of(0, 0, 1)]))
        '(-1/2, 1/2, 0)'
    """
    if not span:
        return v
    if rank(span, v.dim) < len(span):
        raise DegenerateSpan("%d spanning vectors are dependent" % len(span))
    coeffs = _gram_solve(v, span)
    return v - vector_sum((b.scale(c) for b, c in zip(span, coeffs)), v.dim)


def project_onto_span(
    v: RationalVector, span: Sequence[RationalVector]
) -> RationalVector:
    """Orthogonal projection onto the span of possibly dependent vectors."""
    basis = [span[i] for i in independent_subset(span)]
    return v - perp_component(v, basis)


def project_onto_cone(
    v: RationalVector, generators: Sequence[RationalVector]
) -> RationalVector:
    """Exact closest point of the cone spanned by ``generators``.

    The projection lies in the relative interior of a face spanned by some
    linearly independent subfamily; each candidate subfamily is solved
    exactly and accepted when its coefficients are nonnegative and the
    residual has nonpositive inner product with every generator.
    """
    gens = [g for g in generators if not g.is_zero()]
    for size in range(0, min(len(gens), v.dim) + 1):
        for subset in combinations(gens, size):
            if size and rank(subset, v.dim) < size:
                continue
            coeffs = _gram_solve(v, subset) if size else []
            if any(c < 0 for c in coeffs):
                continue
            point = vector_sum((g.scale(c) for g, c in zip(subset, coeffs)), v.dim)
            residual = v - point
            if all(residual.dot(g) <= 0 for g in gens):
                return point
    raise AssertionError("cone projection has no feasible active set")


def solve_system(
    rows: Sequence[RationalVector], rhs: Sequence[Fraction], dim: int
) -> Optional[RationalVector]:
    """Solve ``<rows[i], x> = rhs[i]``; free coordinates are set to zero."""
    columns = [RationalVector(tuple(r[j] for r in rows)) for j in range(dim)]
    coeffs = solve_linear(columns, RationalVector(tuple(as_fraction(b) for b in rhs)))
    return None if coeffs is None else RationalVector(tuple(coeffs))


LinearMap = Tuple[Tuple[Fraction, ...], ...]


def identity_map(dim: int) -> LinearMap:
    return tuple(
        tuple(Fraction(int(i == j)) for j in range(dim)) for i in range(dim)
    )


def apply_map(m: LinearMap, v: RationalVector) -> RationalVector:
    return RationalVector(
        tuple(sum((a * x for a, x in zip(row, v)), Fraction(0)) for row in m)
    )


def compose_maps(a: LinearMap, b: LinearMap) -> LinearMap:
    """Matrix of ``a`` after ``b``."""
    n = len(b[0]) if b else 0
    return tuple(
        tuple(
            sum((row[k] * b[k][j] for k in range(len(b))), Fraction(0))
            for j in range(n)
        )
        for row in a
    )
