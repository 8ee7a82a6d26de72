"""
Lexicographic Morse function on the barycentric subdivision of a twin product.

A cell is valued by the triple (maximal squared height, depth, dimension).
Its descending link is the join of a face part and a coface part; at an
essential cell the coface part splits further into the horizontal and the
vertical part of the link.

Copyright (c) 2025 Max Qian <astro_air@126.com>
Available under the terms of MIT license
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .errors import BoundaryTruncated
from .homology import greedy_collapse, reduced_homology
from .horolinks import HorizontalLinks, TwinDepths
from .logging_utils import debug, info
from .polycomplex import SimplicialComplex, order_complex
from .sphbuild import NorthPole, hemisphere_complexes
from .twin import ProductCell, ThinTwinModel
from .utils import fraction_str

ZERO_LEVEL = "zero"
ESSENTIAL = "essential"
NON_ESSENTIAL = "non-essential"
NON_HORIZONTAL = "non-horizontal"
CELL_KINDS = (ZERO_LEVEL, ESSENTIAL, NON_ESSENTIAL, NON_HORIZONTAL)


@dataclass(frozen=True, order=True)
class MorseValue:
    """Compared lexicographically; heights through their squares."""

    h_sq: Fraction
    depth: Fraction
    dim: int

    def to_json(self) -> List[Any]:
        return [fraction_str(self.h_sq), fraction_str(self.depth), self.dim]

    def __str__(self) -> str:
        return "(%s, %s, %d)" % (
            fraction_str(self.h_sq),
            fraction_str(self.depth),
            self.dim,
        )


def _proper_face(a: ProductCell, b: ProductCell) -> bool:
    return a != b and a.is_face_of(b)


def flag_complex(cells: Iterable[ProductCell]) -> SimplicialComplex:
    """Chains of cells under the face relation."""
    return order_complex(cells, _proper_face)


@dataclass(frozen=True)
class DescendingLink:
    """Descending link of the barycenter of ``cell``.

    ``faces`` and ``cofaces`` are the descending neighbours. The horizontal
    and vertical parts are complexes of link simplices ``tau \\ cell`` and
    stay empty unless the cell is horizontal at positive height.
    """

    cell: ProductCell
    value: MorseValue
    kind: str
    faces: Tuple[ProductCell, ...]
    cofaces: Tuple[ProductCell, ...]
    horizontal_part: SimplicialComplex
    vertical_part: SimplicialComplex

    @property
    def essential(self) -> bool:
        return self.kind == ESSENTIAL

    @cached_property
    def face_part(self) -> SimplicialComplex:
        return flag_complex(self.faces)

    @cached_property
    def coface_part(self) -> SimplicialComplex:
        return flag_complex(self.cofaces)

    @cached_property
    def full(self) -> SimplicialComplex:
        return self.face_part.join(self.coface_part)

    def to_json(self) -> Dict[str, Any]:
        return {
            "cell": self.cell.to_json(),
            "morse_value": self.value.to_json(),
            "kind": self.kind,
            "essential": self.essential,
            "betti": {
                "face": reduced_homology(self.face_part).to_json(),
                "coface": reduced_homology(self.coface_part).to_json(),
                "horizontal": reduced_homology(self.horizontal_part).to_json(),
                "vertical": reduced_homology(self.vertical_part).to_json(),
            },
        }


class MorseFunction(object):
    """Morse values and descending links over a thin twin model."""

    def __init__(self, model: ThinTwinModel) -> None:
        self.model = model
        self.depths = TwinDepths(model)
        self.space = self.depths.space
        self._values: Dict[ProductCell, MorseValue] = {}

    def max_height_sq(self, cell: ProductCell) -> Fraction:
        """Squared height of the roof, the first entry of the Morse value."""
        return max(self.model.vertex_height(p).square for p in cell.vertex_pairs())

    def morse_value(self, cell: ProductCell) -> MorseValue:
        """Raises BoundaryTruncated when the depth needs cells outside the window."""
        if cell not in self._values:
            self._values[cell] = MorseValue(
                self.max_height_sq(cell), self.depths.depth(cell).value, cell.dim
            )
        return self._values[cell]

    def links_at(self, cell: ProductCell) -> HorizontalLinks:
        """Horizontal links for the gradient at ``cell``, or at its roof.

        Raises:
            ValueError: If ``cell`` lies in the zero level set.
        """
        links = self.depths.links_at(cell)
        if links is None:
            raise ValueError("%s lies in the zero level set" % cell)
        return links

    def kind(self, cell: ProductCell) -> str:
        """One of ``CELL_KINDS``."""
        if self.max_height_sq(cell) == 0:
            return ZERO_LEVEL
        if not self.model.is_horizontal(cell):
            return NON_HORIZONTAL
        if self.links_at(cell).is_essential(cell.as_polycell()):
            return ESSENTIAL
        return NON_ESSENTIAL

    def cofaces(self, cell: ProductCell) -> List[ProductCell]:
        poly = cell.as_polycell()
        if not self.space.star_inside(poly):
            raise BoundaryTruncated("star of %s leaves the window" % cell)
        return sorted(ProductCell.from_polycell(c) for c in self.space.cells.cofaces(poly))

    def descending_link(self, cell: ProductCell) -> DescendingLink:
        """Faces and cofaces of ``cell`` with smaller Morse value.

        Only horizontal cells get the split of the coface part into the
        horizontal part, away from the down directions of the gradient,
        and the vertical part spanned by them.

        Args:
            cell (ProductCell): A cell of the twin product.

        Returns:
            DescendingLink: Face part, coface part and their classification.

        Raises:
            BoundaryTruncated: If the star or a depth leaves the window.

        Example:
            >>> mf = MorseFunction(ThinTwinModel.build("A~1", 10))
            >>> dl = mf.descending_link(ProductCell.of([10], [0]))
            >>> dl.kind, str(dl.value)
            ('essential', '(4, 0, 0)')
        """
        value = self.morse_value(cell)
        faces = tuple(f for f in cell.faces() if f != cell and self.morse_value(f) < value)
        cofaces = tuple(c for c in self.cofaces(cell) if self.morse_value(c) < value)
        kind = self.kind(cell)
        horizontal = vertical = SimplicialComplex.empty()
        if kind in (ESSENTIAL, NON_ESSENTIAL):
            poly = cell.as_polycell()
            link = self.space.link(poly)
            down = self.links_at(cell).vertical_directions(poly)
            simplices = [link.simplex(c.as_polycell()) for c in cofaces]
            horizontal = SimplicialComplex(frozenset(s for s in simplices if not s & down))
            vertical = SimplicialComplex(frozenset(s for s in simplices if s <= down))
        return DescendingLink(
            cell, value, kind, tuple(sorted(faces)), cofaces, horizontal, vertical
        )


# -- checks -------------------------------------------------------------------------


@dataclass(frozen=True)
class LinkCheck:
    """Outcome of checking one descending link."""

    violations: Tuple[str, ...]
    warnings: Tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def _punctured_at(cell: ProductCell, center: ProductCell) -> FrozenSet[ProductCell]:
    """Proper faces of ``cell`` except ``center``: the boundary flag sphere
    with the barycenter of ``center`` removed."""
    return frozenset(f for f in cell.faces() if f != cell and f != center)


def _essential_roof(mf: MorseFunction, cell: ProductCell) -> Optional[ProductCell]:
    roof = mf.model.roof(cell)
    if mf.links_at(roof).is_essential(roof.as_polycell()):
        return roof
    return None


def check_descending_link(mf: MorseFunction, dl: DescendingLink) -> LinkCheck:
    """Compare a descending link with the structure it must have for its kind.

    Essential cells get exact set comparisons, and so does the face part of
    a non-horizontal cell with an essential roof: it is the boundary sphere
    punctured at the roof. Every other descending link must be acyclic; a
    greedy collapse that gets stuck only warns.

    Raises:
        BoundaryTruncated: If a star needed for the check leaves the window.
    """
    violations: List[str] = []
    warnings: List[str] = []
    cell = dl.cell
    if dl.kind == ESSENTIAL:
        violations.extend(_check_essential(mf, dl))
    elif dl.kind in (NON_ESSENTIAL, NON_HORIZONTAL):
        roof = _essential_roof(mf, cell) if dl.kind == NON_HORIZONTAL else None
        if roof is not None and frozenset(dl.faces) != _punctured_at(cell, roof):
            violations.append("face part of %s is not punctured at %s" % (cell, roof))
        if not reduced_homology(dl.full).is_acyclic():
            violations.append("descending link of %s is not acyclic" % cell)
        outcome = greedy_collapse(dl.full)
        if not outcome.collapsed:
            warnings.append("greedy collapse of %s: %s" % (cell, outcome))
    if dl.kind in (ESSENTIAL, NON_ESSENTIAL):
        violations.extend(_check_moves_descend(mf, cell))
    return LinkCheck(tuple(violations), tuple(warnings))


def _check_essential(mf: MorseFunction, dl: DescendingLink) -> List[str]:
    out: List[str] = []
    cell = dl.cell
    poly = cell.as_polycell()
    descending = set(dl.cofaces)
    for tau in dl.cofaces:
        for between in tau.faces():
            if _proper_face(cell, between) and between not in descending:
                out.append("coface part of %s subdivides at %s" % (cell, between))
    if len(dl.faces) != len(cell.faces()) - 1:
        out.append("face part of %s is not the whole boundary" % cell)

    links = mf.links_at(cell)
    link = mf.space.link(poly)
    if link.building is not None:
        building = link.building
        pole = NorthPole.from_direction(building, building.apartment, link.pole(links.xi))
        ohc = hemisphere_complexes(building, pole).open
        if ohc.simplices != dl.vertical_part.simplices:
            out.append("vertical part of %s is not the open hemisphere complex" % cell)

    height = mf.max_height_sq(cell)
    expected = set()
    for tau in mf.cofaces(cell):
        tp = tau.as_polycell()
        if (
            links.is_horizontal(tp)
            and mf.max_height_sq(tau) == height
            and links.tau_min(tp) == poly
        ):
            expected.add(link.simplex(tp))
    if expected != set(dl.horizontal_part.simplices):
        out.append("horizontal part of %s differs from its up moves" % cell)

    parts = [
        [frozenset()] + list(dl.horizontal_part.simplices),
        [frozenset()] + list(dl.vertical_part.simplices),
    ]
    joined = {a | b for a, b in product(*parts) if a or b}
    actual = {link.simplex(t.as_polycell()) for t in dl.cofaces}
    if joined != actual:
        out.append("coface part of %s is not the join of its parts" % cell)
    return out


def _check_moves_descend(mf: MorseFunction, cell: ProductCell) -> List[str]:
    out: List[str] = []
    links = mf.links_at(cell)
    value = mf.morse_value(cell)
    system = mf.depths.system(links.xi)
    for move in system.moves(cell.as_polycell()):
        if move.kind != "down":
            continue
        face = ProductCell.from_polycell(move.target)
        if mf.max_height_sq(face) == value.h_sq and not mf.morse_value(face) < value:
            out.append("down move %s does not descend" % move)
    return out


# -- filtration -------------------------------------------------------------------


@dataclass(frozen=True)
class FiltrationLevel:
    """``value`` is None for the zero level set."""

    value: Optional[MorseValue]
    added: Tuple[ProductCell, ...]
    complex: SimplicialComplex

    def to_json(self) -> Dict[str, Any]:
        """Value, number of added barycenters and the f-vector of the level."""
        return {
            "value": None if self.value is None else self.value.to_json(),
            "added": len(self.added),
            "f_vector": self.complex.f_vector(),
        }


class Filtration(object):
    """Sublevel complexes of the barycentric subdivision, in increasing order."""

    def __init__(
        self,
        subdivision: SimplicialComplex,
        values: Dict[ProductCell, MorseValue],
        levels: Sequence[FiltrationLevel],
        skipped: Sequence[ProductCell],
    ) -> None:
        self.subdivision = subdivision
        self.values = values
        self.levels = list(levels)
        self.skipped = list(skipped)

    def __len__(self) -> int:
        return len(self.levels)

    def check(self) -> List[str]:
        """Strict growth, and every new barycenter attached along its descending link."""
        out: List[str] = []
        for before, level in zip(self.levels, self.levels[1:]):
            if not before.complex.simplices < level.complex.simplices:
                out.append("level %s does not grow" % level.value)
            for cell in level.added:
                value = self.values[cell]
                below = [c for c, v in self.values.items() if v < value]
                expected = self.subdivision.link([cell]).full_subcomplex(below)
                if level.complex.link([cell]).simplices != expected.simplices:
                    out.append("%s is not attached along its descending link" % cell)
        return out

    def to_json(self) -> Dict[str, Any]:
        return {
            "levels": [level.to_json() for level in self.levels],
            "skipped": len(self.skipped),
        }


def filtration(
    mf: MorseFunction, cells: Optional[Sequence[ProductCell]] = None
) -> Filtration:
    """Filter the window by Morse value, starting from the zero level set.

    Cells whose depth reaches outside the window are left out.
    """
    cells = list(cells) if cells is not None else mf.model.product_cells()
    values: Dict[ProductCell, MorseValue] = {}
    skipped: List[ProductCell] = []
    for cell in cells:
        try:
            values[cell] = mf.morse_value(cell)
        except BoundaryTruncated:
            skipped.append(cell)
    subdivision = flag_complex(values)
    zero = sorted(c for c, v in values.items() if v.h_sq == 0)
    levels = [FiltrationLevel(None, tuple(zero), subdivision.full_subcomplex(zero))]
    included = set(zero)
    for value in sorted({v for v in values.values() if v.h_sq > 0}):
        added = tuple(sorted(c for c, v in values.items() if v == value))
        included.update(added)
        levels.append(FiltrationLevel(value, added, subdivision.full_subcomplex(included)))
    debug("filtration: %d levels, %d cells skipped" % (len(levels), len(skipped)))
    if skipped:
        info("%d cells need moves outside the window" % len(skipped))
    return Filtration(subdivision, values, levels, skipped)
