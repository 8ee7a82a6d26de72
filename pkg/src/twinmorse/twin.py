"""
Thin Euclidean twin model: codistance, perturbed height and gradients.

Both halves of a twin apartment are copies of one affine Coxeter complex,
identified with the common model space by the identity, so that opposite
points have the same image. The height of a pair is the distance of the
image difference to a W-invariant zonotope.

Copyright (c) 2025 Max Qian <astro_air@126.com>
Available under the terms of MIT license
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .constants import ALMOST_RICH, RICH
from .coxcomplex import (
    AffineMap,
    AffineRealization,
    Window,
    affine_walls_through,
    build_affine_window,
)
from .errors import InvariantViolation, ZeroHeight
from .exactgeom import (
    Ordering,
    RationalVector,
    SqrtRational,
    apply_map,
    cmp_sqrt,
    cmp_sum_sqrt,
    vector_sum,
)
from .logging_utils import debug
from .polycomplex import PolyCell
from .utils import fraction_str
from .zonotope import (
    Zonotope,
    differences,
    minmax_over_polytope,
    project_onto_zonotope,
    sum_rich_generators,
    zonotope,
)

VertexPair = Tuple[int, int]


@dataclass(frozen=True, order=True)
class ProductCell:
    """Cell ``plus x minus`` of the product of the two halves."""

    plus: PolyCell
    minus: PolyCell

    @classmethod
    def of(cls, plus: Iterable[int], minus: Iterable[int]) -> "ProductCell":
        return cls(PolyCell.simplex(plus), PolyCell.simplex(minus))

    @classmethod
    def from_polycell(cls, cell: PolyCell) -> "ProductCell":
        if cell.rank != 2:
            raise ValueError("%s is not a cell of a two-factor product" % cell)
        return cls(cell.factor(0), cell.factor(1))

    def as_polycell(self) -> PolyCell:
        return PolyCell(self.plus.factors + self.minus.factors)

    @property
    def dim(self) -> int:
        return self.plus.dim + self.minus.dim

    def vertex_pairs(self) -> List[VertexPair]:
        return [(p[0], m[0]) for p in self.plus.vertices() for m in self.minus.vertices()]

    def faces(self) -> List["ProductCell"]:
        return [
            ProductCell(a, b) for a in self.plus.faces() for b in self.minus.faces()
        ]

    def is_face_of(self, other: "ProductCell") -> bool:
        return self.plus.is_face_of(other.plus) and self.minus.is_face_of(other.minus)

    def to_json(self) -> Dict[str, Any]:
        return {"plus": self.plus.to_json(), "minus": self.minus.to_json()}

    def __str__(self) -> str:
        return "%s x %s" % (self.plus, self.minus)


@dataclass(frozen=True)
class GradientDir:
    """Direction ``(n, -n)`` of steepest ascent; ``n`` lives in the model space."""

    n: RationalVector

    @property
    def in_general_position(self) -> bool:
        return not self.n.is_zero()

    def components(self) -> Tuple[RationalVector, RationalVector]:
        return self.n, -self.n

    def pairing(self, plus: RationalVector, minus: RationalVector) -> Fraction:
        """Inner product of ``(n, -n)`` with a product vector."""
        return self.n.dot(plus) - self.n.dot(minus)

    def busemann(self, plus: RationalVector, minus: RationalVector) -> Fraction:
        """Busemann function of the direction, up to scale and an additive constant."""
        return -self.pairing(plus, minus)


def is_w_invariant(D: Iterable[RationalVector], realization: AffineRealization) -> bool:
    gens = set(D)
    return all(apply_map(g, d) in gens for g in realization.roots.weyl_group for d in gens)


def make_rich_generators(
    realization: AffineRealization,
    level: str = ALMOST_RICH,
    window: Optional[Window] = None,
) -> Tuple[RationalVector, ...]:
    """Vertex differences closed under the finite Weyl group and negation.

    ``almost_rich`` uses vertices of a common alcove, ``rich`` vertices of a
    common closed vertex star. Every alcove is a translate of a Weyl image
    of the fundamental one, so the fundamental alcove and its vertex stars
    suffice.

    Examples:
        >>> from twinmorse.coxcomplex import affine_realization
        >>> [str(d) for d in make_rich_generators(affine_realization("A~1"), "rich")]
        ['(-2)', '(-1)', '(1)', '(2)']
    """
    if level not in (ALMOST_RICH, RICH):
        raise ValueError("unknown generator level %r" % level)
    seeds = set(differences(list(realization.fundamental_alcove)))
    if level == RICH:
        if window is None:
            _, window = build_affine_window(realization.label, 0)
        for corner in realization.fundamental_alcove:
            vid = window.vertex_id(corner)
            star = {
                window.position(v)
                for chamber in window.chambers_containing(PolyCell.simplex([vid]))
                for v in chamber
            }
            seeds.update(differences(sorted(star, key=lambda p: p.coords)))
    closed = set()
    for d in seeds:
        closed.update(realization.roots.orbit(d))
        closed.update(realization.roots.orbit(-d))
    return tuple(sorted(closed, key=lambda v: v.coords))


class ThinTwinModel(object):
    """Twin apartment over one affine window with a perturbation zonotope.

    ``generators`` is the set ``D``; the zonotope is ``Z((D + D) u D)``.
    """

    def __init__(
        self,
        realization: AffineRealization,
        window: Window,
        generators: Sequence[RationalVector],
        level: str = ALMOST_RICH,
    ) -> None:
        gens = set(generators)
        if not gens or any(-d not in gens for d in gens):
            raise InvariantViolation("generator set is empty or not symmetric")
        if not is_w_invariant(gens, realization):
            raise InvariantViolation("generator set is not Weyl invariant")
        self.realization = realization
        self.window = window
        self.level = level
        self.generators = tuple(sorted(gens, key=lambda v: v.coords))
        self.zonotope: Zonotope = zonotope(
            frozenset(sum_rich_generators(self.generators, self.generators)),
            realization.ambient_dim,
        )
        self._heights: Dict[RationalVector, Tuple[RationalVector, SqrtRational]] = {}
        debug(
            "twin model %s: |D| = %d, %d zonotope generators"
            % (realization.label, len(self.generators), len(self.zonotope.generators))
        )

    @classmethod
    def build(
        cls, label: str, radius: object, level: str = ALMOST_RICH
    ) -> "ThinTwinModel":
        realization, window = build_affine_window(label, radius)
        generators = make_rich_generators(realization, level, window)
        return cls(realization, window, generators, level)

    @property
    def dim(self) -> int:
        return self.realization.ambient_dim

    # -- identifications -------------------------------------------------------

    def iota_plus(self, x: RationalVector) -> RationalVector:
        return x

    def iota_minus(self, x: RationalVector) -> RationalVector:
        return x

    def opposite(self, x: RationalVector) -> RationalVector:
        """Opposite point in the other half."""
        return self.iota_minus(self.iota_plus(x))

    def difference(self, plus: RationalVector, minus: RationalVector) -> RationalVector:
        return self.iota_plus(plus) - self.iota_minus(minus)

    def pair_position(self, pair: VertexPair) -> Tuple[RationalVector, RationalVector]:
        return self.window.position(pair[0]), self.window.position(pair[1])

    # -- metric ----------------------------------------------------------------

    def codistance(self, plus: RationalVector, minus: RationalVector) -> SqrtRational:
        return SqrtRational.of_length(self.difference(plus, minus))

    def _project(self, v: RationalVector) -> Tuple[RationalVector, SqrtRational]:
        if v not in self._heights:
            self._heights[v] = project_onto_zonotope(v, self.zonotope)
        return self._heights[v]

    def perturbed_height(
        self, plus: RationalVector, minus: RationalVector
    ) -> SqrtRational:
        """Distance of the image difference to the zonotope.

        Examples:
            >>> model = ThinTwinModel.build("A~1", 6)
            >>> model.perturbed_height(RationalVector.of(5), RationalVector.of(0)).square
            Fraction(4, 1)
        """
        return self._project(self.difference(plus, minus))[1]

    def height_readings(
        self, plus: RationalVector, minus: RationalVector
    ) -> Tuple[SqrtRational, SqrtRational, SqrtRational]:
        """The perturbed codistance read three ways.

        Distance of the difference to ``Z``, of ``plus`` to ``minus + Z`` and
        of ``minus`` to ``plus - Z`` (the last through the negated zonotope).
        """
        first = self.perturbed_height(plus, minus)
        foot, _ = self._project(self.iota_plus(plus) - self.iota_minus(minus))
        gap = self.iota_plus(plus) - (self.iota_minus(minus) + foot)
        second = SqrtRational(gap.norm_sq())
        _, third = project_onto_zonotope(
            self.iota_minus(minus) - self.iota_plus(plus), self.zonotope.negated
        )
        return first, second, third

    def vertex_height(self, pair: VertexPair) -> SqrtRational:
        return self.perturbed_height(*self.pair_position(pair))

    def gradient_direction(
        self, plus: RationalVector, minus: RationalVector
    ) -> GradientDir:
        """Raises ZeroHeight when the pair lies in the zero level set."""
        v = self.difference(plus, minus)
        foot, height = self._project(v)
        if height.is_zero():
            raise ZeroHeight("height vanishes at difference %s" % v)
        return GradientDir(v - foot)

    def vertex_gradient(self, pair: VertexPair) -> GradientDir:
        return self.gradient_direction(*self.pair_position(pair))

    # -- cells -------------------------------------------------------------------

    def cell_images(self, cell: ProductCell) -> List[RationalVector]:
        return [self.difference(*self.pair_position(p)) for p in cell.vertex_pairs()]

    def is_horizontal(self, cell: ProductCell) -> bool:
        return len({self.vertex_height(p).square for p in cell.vertex_pairs()}) == 1

    def roof(self, cell: ProductCell, verify_min: bool = False) -> ProductCell:
        """Face of ``cell`` where the height is maximal.

        Raises:
            InsufficientGenerators: If ``D`` is too poor for the cell.
            InvariantViolation: If the maxima do not form a face.
        """
        pairs = cell.vertex_pairs()
        index = {p: i for i, p in enumerate(pairs)}
        faces = [
            frozenset(index[p] for p in face.vertex_pairs()) for face in cell.faces()
        ]
        found = minmax_over_polytope(
            self.cell_images(cell), self.zonotope, faces, verify_min=verify_min
        )
        top = [pairs[i] for i in found.max_indices]
        return ProductCell.of({p for p, _ in top}, {m for _, m in top})

    def product_cells(self, max_dim: Optional[int] = None) -> List[ProductCell]:
        cells = self.window.cells
        out = [ProductCell(a, b) for a, b in product(cells, cells)]
        if max_dim is not None:
            out = [c for c in out if c.dim <= max_dim]
        return out

    # -- symmetries -----------------------------------------------------------------

    def reflect_plus(
        self, wall: Tuple[RationalVector, Fraction], x: RationalVector
    ) -> RationalVector:
        """Reflect a point of the positive half in a wall, fixing the negative half."""
        return AffineMap.reflection(*wall)(x)

    def summary(self) -> Dict[str, Any]:
        return {
            "type": self.realization.label,
            "radius": fraction_str(self.window.radius),
            "level": self.level,
            "generators": len(self.generators),
            "zonotope_generators": len(self.zonotope.generators),
        }


# -- sampling and checks ----------------------------------------------------------


def random_point(
    window: Window, chamber: Sequence[int], rng: random.Random
) -> RationalVector:
    """Random rational point of a closed chamber."""
    weights = [Fraction(rng.randint(0, 6)) for _ in chamber]
    if not any(weights):
        weights[0] = Fraction(1)
    total = sum(weights)
    return vector_sum(
        (window.position(v).scale(w / total) for v, w in zip(chamber, weights)),
        window.positions[0].dim,
    )


def midpoint(a: RationalVector, b: RationalVector) -> RationalVector:
    return (a + b).scale(Fraction(1, 2))


def midpoint_convex(
    model: ThinTwinModel,
    a: Tuple[RationalVector, RationalVector],
    b: Tuple[RationalVector, RationalVector],
) -> bool:
    """``h(a) + h(b) >= 2 h(midpoint)`` along a segment of the product."""
    mid = (midpoint(a[0], b[0]), midpoint(a[1], b[1]))
    order = cmp_sum_sqrt(
        model.perturbed_height(*a),
        model.perturbed_height(*b),
        model.perturbed_height(*mid),
    )
    return order is not Ordering.LT


def edge_monotone(model: ThinTwinModel, v: VertexPair, w: VertexPair) -> Optional[bool]:
    """Whether ``h(v) > h(w)`` matches an obtuse angle between gradient and edge.

    Returns None when the height vanishes at ``v``.
    """
    hv, hw = model.vertex_height(v), model.vertex_height(w)
    if hv.is_zero():
        return None
    grad = model.vertex_gradient(v)
    pv, pw = model.pair_position(v), model.pair_position(w)
    pairing = grad.pairing(pw[0] - pv[0], pw[1] - pv[1])
    higher = cmp_sqrt(hv, hw) is Ordering.GT
    if higher != (pairing < 0):
        return False
    if pairing > 0 and cmp_sqrt(hw, hv) is not Ordering.GT:
        return False
    return True


def gradient_constant_on(model: ThinTwinModel, cell: ProductCell) -> bool:
    """On a horizontal cell of positive height the gradient agrees at every vertex."""
    grads = {model.vertex_gradient(p).n for p in cell.vertex_pairs()}
    return len(grads) == 1


def perpendicular_iff_constant(
    grad: GradientDir, points: Sequence[Tuple[RationalVector, RationalVector]]
) -> bool:
    """Busemann values are constant on ``points`` exactly when ``(n, -n)`` is
    orthogonal to all of their differences."""
    base = points[0]
    values = {grad.busemann(*p) for p in points}
    orthogonal = all(
        grad.pairing(p[0] - base[0], p[1] - base[1]) == 0 for p in points[1:]
    )
    return (len(values) == 1) == orthogonal


def common_walls(
    model: ThinTwinModel, plus: FrozenSet[int], minus: FrozenSet[int]
) -> List[Tuple[RationalVector, Fraction]]:
    """Walls of the model space containing both cells' images."""
    points = [model.window.position(v) for v in sorted(plus | minus)]
    return affine_walls_through(model.realization, points)


def reflection_preserves_height(
    model: ThinTwinModel,
    plus: FrozenSet[int],
    minus: FrozenSet[int],
    wall: Tuple[RationalVector, Fraction],
    rng: random.Random,
    samples: int = 5,
) -> bool:
    """Reflecting the positive half at a wall through both cells keeps the height.

    Sample points are drawn from chambers of the two vertex stars.
    """
    stars_plus = model.window.chambers_containing(PolyCell.simplex(plus))
    stars_minus = model.window.chambers_containing(PolyCell.simplex(minus))
    for _ in range(samples):
        xp = random_point(model.window, rng.choice(stars_plus), rng)
        xm = random_point(model.window, rng.choice(stars_minus), rng)
        before = model.perturbed_height(xp, xm)
        after = model.perturbed_height(model.reflect_plus(wall, xp), xm)
        if before != after:
            return False
    return True


def height_profile(model: ThinTwinModel, cell: ProductCell) -> Dict[str, Any]:
    return {
        "cell": cell.to_json(),
        "heights_sq": [
            fraction_str(model.vertex_height(p).square) for p in cell.vertex_pairs()
        ],
    }
