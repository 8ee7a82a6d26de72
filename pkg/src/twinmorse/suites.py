"""
Verification suites over the library.

Each suite runs one battery of exact checks on seeded random or exhaustively
enumerated instances and records the outcome in a ``SuiteReport``.

Copyright (c) 2025 Max Qian <astro_air@126.com>
Available under the terms of MIT license
"""

from __future__ import annotations

import random
import time
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Tuple

from .api import product_window, twin_model
from .constants import (
    DEFAULT_Q,
    DEFAULT_SEED,
    EXPECTED_FAILURE,
    FAIL,
    HEMISPHERES,
    HOROLINKS,
    MORSE,
    PASS,
    RICH,
    SUITE_DEFAULTS,
    SUITES,
    TWIN_METRIC,
    ZONOTOPES,
)
from .coxcomplex import parse_type_label, root_system
from .errors import (
    BoundaryTruncated,
    InsufficientGenerators,
    InvariantViolation,
    MoveCycle,
    NotInZonotope,
    TwinMorseError,
)
from .exactgeom import RationalVector, rank
from .homology import reduced_homology
from .horolinks import (
    HorizontalLinks,
    MoveSystem,
    ProductWindow,
    check_horizontal_properties,
    check_move_lemmas,
    disjoint_cohorizontal_faces,
    missing_minimal_face,
    move_bound,
    random_xi,
)
from .logging_utils import debug, info
from .morse import (
    CELL_KINDS,
    ESSENTIAL,
    NON_ESSENTIAL,
    NON_HORIZONTAL,
    ZERO_LEVEL,
    MorseFunction,
    check_descending_link,
    filtration,
)
from .polycomplex import PolyCell, sort_key
from .report import SuiteReport
from .sphbuild import (
    NorthPole,
    SphericalBuilding,
    build_building,
    check_apartment_independence,
    hemisphere_complexes,
)
from .twin import (
    ProductCell,
    ThinTwinModel,
    common_walls,
    edge_monotone,
    midpoint_convex,
    random_point,
    reflection_preserves_height,
)
from .utils import as_fraction, fraction_str, make_rng, random_fraction
from .zonotope import (
    Zonotope,
    decompose_point,
    differences,
    embed_parallel_translate,
    exact_min_over_polytope,
    minmax_over_polytope,
    project_onto_zonotope,
    wchamber_contains,
    zonotope,
)

# Weyl groups for the chamber lemma, sampled at 300 points each by default
NF_TYPES = ("A2", "B2", "G2")
NF_SAMPLES = 300

# cells checked for an exact minimum have at most this many vertex pairs
MIN_CHECK_PAIRS = 4
# cells containing the origin given an exact minimum check, drawn at random
EXACT_MIN_SAMPLES = 50
# orbit samples per wall, and vertex pairs whose common walls are reflected in
REFLECTION_SAMPLES = 200
REFLECTION_PAIRS = 6

HEMISPHERE_BUILDINGS = (
    "points(3)",
    "points(4)",
    "join(points(3),points(3))",
    "join(points(4),points(4))",
    "flags(2,2)",
    "flags(3,2)",
)


@dataclass(frozen=True)
class SuiteConfig:
    """Parameters of a suite run; ``label`` is the affine type."""

    label: str
    radius: Fraction
    q: int = DEFAULT_Q
    seed: int = DEFAULT_SEED
    trials: int = 1
    strict_window: bool = False

    @classmethod
    def defaults(cls, suite: str, **overrides: Any) -> "SuiteConfig":
        """Suite defaults with every override that is not None applied.

        Raises:
            ValueError: For an unknown suite or an invalid value.
        """
        if suite not in SUITES:
            raise ValueError("unknown suite %r" % suite)
        base = SUITE_DEFAULTS[suite]
        values = {
            "label": base["type"],
            "radius": as_fraction(base["radius"]),
            "trials": base["trials"],
        }
        values.update((k, v) for k, v in overrides.items() if v is not None)
        values["radius"] = as_fraction(values["radius"])
        config = cls(**values)
        config.validate()
        return config

    def validate(self) -> None:
        """Check the configuration before a run.

        Raises:
            ComplexFormatError: If the type label does not parse.
            ValueError: For a negative radius or trial count, or ``q < 2``.
        """
        parse_type_label(self.label)
        if as_fraction(self.radius) < 0:
            raise ValueError("negative radius %s" % self.radius)
        if self.trials < 0:
            raise ValueError("negative trial count %d" % self.trials)
        if self.q < 2:
            raise ValueError("q must be a prime power, got %d" % self.q)

    def to_json(self) -> Dict[str, Any]:
        return {
            "type": self.label,
            "radius": fraction_str(as_fraction(self.radius)),
            "q": self.q,
            "seed": self.seed,
            "trials": self.trials,
            "strict_window": self.strict_window,
        }


def _attempt(violations: List[str], name: str, check: Callable[[], bool]) -> None:
    """Run one check; an exception from the library counts as a violation."""
    try:
        if not check():
            violations.append(name)
    except (InvariantViolation, NotInZonotope, InsufficientGenerators) as e:
        violations.append("%s: %s" % (name, e))


# -- zonotopes --------------------------------------------------------------------


def _random_vector(rng: random.Random, dim: int, bound: int = 20) -> RationalVector:
    return RationalVector(tuple(random_fraction(rng, bound) for _ in range(dim)))


def _random_simplex(rng: random.Random, dim: int) -> List[RationalVector]:
    """Affinely independent integer points, two or three of them."""
    while True:
        size = rng.randint(2, 3)
        verts = [RationalVector.zero(dim)] + [
            RationalVector(tuple(Fraction(rng.randint(-3, 3)) for _ in range(dim)))
            for _ in range(size - 1)
        ]
        if rank([v - verts[0] for v in verts[1:]], dim) == size - 1:
            return verts


def _point_of(Z: Zonotope, rng: random.Random) -> RationalVector:
    coeffs = [Fraction(rng.randint(0, 8), 8) for _ in Z.generators]
    out = RationalVector.zero(Z.dim)
    for c, z in zip(coeffs, Z.generators):
        out = out + z.scale(c)
    return out


def run_zonotopes(config: SuiteConfig) -> SuiteReport:
    """Decomposition, projection, parallel translates, vertex minima and the
    chamber lemma on seeded random instances."""
    report = SuiteReport(ZONOTOPES, config.to_json())
    rng = make_rng(config.seed)
    recompose: List[str] = []
    project: List[str] = []
    embed: List[str] = []
    minmax: List[str] = []
    for trial in range(config.trials):
        dim = rng.randint(2, 4)
        gens = [_random_vector(rng, dim) for _ in range(rng.randint(1, 4))]
        Z = Zonotope.of(gens, dim)
        x = _random_vector(rng, dim)
        tag = "trial %d" % trial

        def recomposed() -> bool:
            dec = decompose_point(x, Z)
            return (
                dec.f + dec.n == x
                and dec.face.relint_contains(dec.f)
                and dec.face.normal_cone_contains(Z, dec.n)
            )

        def projected() -> bool:
            point, dist = project_onto_zonotope(x, Z)
            return Z.contains(point) and exact_min_over_polytope([x], Z) == dist.square

        _attempt(recompose, tag, recomposed)
        _attempt(project, tag, projected)

        verts = _random_simplex(rng, dim)
        D = differences(verts)
        ZD = zonotope(frozenset(D), dim)
        y = _point_of(ZD, rng)
        _attempt(embed, tag, lambda: embed_parallel_translate(y, verts, D).verify(ZD))
        offset = _random_vector(rng, dim, 6)
        shifted = [v + offset for v in verts]
        _attempt(
            minmax,
            tag,
            lambda: minmax_over_polytope(shifted, ZD, verify_min=True) is not None,
        )
    report.check("space_decomposition", recompose, config.trials)
    report.check("projection_oracle", project, config.trials)
    report.check("parallel_translate", embed, config.trials)
    report.check("vertex_minimum", minmax, config.trials)

    samples = min(NF_SAMPLES, 3 * config.trials)
    for label in NF_TYPES:
        roots = root_system(label)
        seeds = [
            roots.project_to_span(_random_vector(rng, roots.dim, 4)) for _ in range(2)
        ]
        D = set()
        for s in seeds:
            D |= roots.orbit(s) | roots.orbit(-s)
        Z = zonotope(frozenset(D), roots.dim)
        violations: List[str] = []
        for i in range(samples):
            v = roots.project_to_span(_random_vector(rng, roots.dim, 6))
            foot, _ = project_onto_zonotope(v, Z)
            if not wchamber_contains(roots.positive_roots, v, v - foot):
                violations.append("%s sample %d: %s" % (label, i, v))
        report.check("chamber_lemma_%s" % label, violations, samples, generators=len(D))
    return report


# -- horizontal links -----------------------------------------------------------------


def _deep_cells(space: ProductWindow) -> List[PolyCell]:
    return [c for c in space.cells if space.star_inside(c)]


def run_horolinks(config: SuiteConfig) -> SuiteReport:
    """Lemmas on the relation, minimal faces and moves over all deep
    horizontal cells, for ``trials`` random points at infinity."""
    report = SuiteReport(HOROLINKS, config.to_json())
    rng = make_rng(config.seed)
    space = product_window(config.label, config.radius)
    cells = _deep_cells(space)
    bound = move_bound(space)
    properties: List[str] = []
    criteria: List[str] = []
    errors: List[str] = []
    lemmas: List[str] = []
    brute: List[str] = []
    cycles: List[str] = []
    pairs = checked = skipped = longest = 0
    for trial in range(config.trials):
        xi = random_xi(space, rng)
        links = HorizontalLinks(space, xi)
        system = MoveSystem(links)
        for tau in (c for c in cells if links.is_horizontal(c)):
            checked += 1
            try:
                for sigma in tau.faces():
                    geometric, diagrammatic = links.cohorizontal(tau, sigma)
                    pairs += 1
                    if geometric != diagrammatic:
                        criteria.append("%s -o %s for %s" % (tau, sigma, xi))
                properties.extend(check_horizontal_properties(links, tau))
                links.tau_min(tau)
                lemmas.extend(check_move_lemmas(system, tau))
                depth = system.depth(tau)
                longest = max(longest, depth)
                if trial == 0 and system.brute_force_depth(tau) != depth:
                    brute.append("%s: memoized %d" % (tau, depth))
                if not system.is_acyclic(tau):
                    cycles.append(str(tau))
            except BoundaryTruncated:
                skipped += 1
            except InvariantViolation as e:
                errors.append("%s: %s" % (tau, e))
            except MoveCycle as e:
                cycles.append(str(e))
    # cells whose move chains leave the window are counted, never hidden
    complete = checked - skipped
    coverage = {
        "horizontal": checked,
        "skipped": skipped,
        "coverage": Fraction(complete, checked) if checked else Fraction(0),
    }
    report.check("criteria_agree", criteria, pairs)
    report.check("horizontal_properties", properties, complete, **coverage)
    report.check("tau_min_interval", errors, complete, **coverage)
    report.check("move_lemmas", lemmas, complete, **coverage)
    report.check("depth_brute_force", brute, complete, **coverage)
    report.check("move_digraph_acyclic", cycles, complete, **coverage)
    over: List[str] = []
    if longest > bound:
        over.append("longest sequence %d exceeds %d" % (longest, bound))
    report.check(
        "move_bound", over, complete, bound=bound, longest=longest, **coverage
    )
    for example in (disjoint_cohorizontal_faces(), missing_minimal_face()):
        status = EXPECTED_FAILURE if example.reproduced else FAIL
        detail = example.to_json()
        del detail["name"]
        report.add(example.name, status, **detail)
    return report


# -- hemisphere complexes ---------------------------------------------------------------


def _poles(
    building: SphericalBuilding, rng: random.Random, count: int
) -> List[Tuple[str, NorthPole]]:
    """A vertex, an edge midpoint and ``count`` random chamber interiors."""
    verts = sorted(building.chambers()[0], key=sort_key)
    poles = [("vertex", NorthPole.at_vertex(verts[0]))]
    if len(verts) > 1:
        poles.append(("edge", NorthPole(tuple(verts[:2]), (Fraction(1), Fraction(1)))))
    for i in range(count):
        interior = sorted(rng.choice(building.chambers()), key=sort_key)
        weights = tuple(Fraction(rng.randint(1, 9)) for _ in interior)
        poles.append(("chamber%d" % i, NorthPole(tuple(interior), weights)))
    return poles


def run_hemispheres(config: SuiteConfig) -> SuiteReport:
    """Homology of closed and open hemisphere complexes in thick buildings."""
    report = SuiteReport(HEMISPHERES, config.to_json())
    rng = make_rng(config.seed)
    specs = list(HEMISPHERE_BUILDINGS)
    extra = "flags(%d,2)" % config.q
    if extra not in specs:
        specs.append(extra)
    for spec in specs:
        building = build_building(spec)
        n = building.dim
        closed: List[str] = []
        opened: List[str] = []
        flagged: List[str] = []
        profiles: Dict[str, Any] = {}
        poles = _poles(building, rng, config.trials)
        for name, pole in poles:
            try:
                hc = hemisphere_complexes(building, pole)
                hc.check(building)
                check_apartment_independence(building, pole, hc.classes, rng=rng)
            except InvariantViolation as e:
                closed.append("%s: %s" % (name, e))
                continue
            top = reduced_homology(hc.closed)
            if not (top.vanishes_below(n) and (top.betti_at(n) or top.torsion_at(n))):
                closed.append("%s: %s" % (name, top.betti))
            low = reduced_homology(hc.open)
            if not low.vanishes_below(hc.vertical.dim):
                opened.append("%s: %s" % (name, low.betti))
            elif not (low.betti_at(hc.vertical.dim) or low.torsion_at(hc.vertical.dim)):
                flagged.append("%s: open complex acyclic in top degree" % name)
            profiles[name] = {"closed": top.to_json(), "open": low.to_json()}
        report.check("closed:%s" % spec, closed, len(poles))
        report.check(
            "open:%s" % spec, opened, len(profiles), warnings=flagged, betti=profiles
        )
    return report


# -- Morse function -------------------------------------------------------------------


def morse_margin(label: str) -> int:
    """Extra window radius so that depths of central cells stay inside."""
    return len(parse_type_label(label)) * 2


def _in_core(model: ThinTwinModel, cell: ProductCell, radius: Fraction) -> bool:
    bound = radius * radius
    window = model.window
    return all(
        window.position(v).norm_sq() <= bound
        for part in (cell.plus, cell.minus)
        for v in part.factors[0]
    )


def run_morse(config: SuiteConfig) -> SuiteReport:
    """Classify barycenters, check every descending link and the filtration."""
    report = SuiteReport(MORSE, config.to_json())
    radius = as_fraction(config.radius)
    margin = 0 if config.strict_window else morse_margin(config.label)
    model = twin_model(config.label, radius + margin, RICH)
    mf = MorseFunction(model)
    cells = [c for c in model.product_cells() if _in_core(model, c, radius)]
    info("morse: %d cells in the core, window margin %d" % (len(cells), margin))

    kinds: Counter = Counter()
    checked: Counter = Counter()
    violations: Dict[str, List[str]] = {k: [] for k in CELL_KINDS}
    warnings: Dict[str, List[str]] = {k: [] for k in CELL_KINDS}
    order: List[str] = []
    collapsed = attempts = skipped = 0
    records = []
    for cell in cells:
        try:
            dl = mf.descending_link(cell)
            for face in cell.faces():
                if face != cell and mf.morse_value(face) == dl.value:
                    order.append("%s and %s share %s" % (face, cell, dl.value))
        except BoundaryTruncated:
            skipped += 1
            continue
        kinds[dl.kind] += 1
        if dl.kind == ZERO_LEVEL:
            continue
        try:
            outcome = check_descending_link(mf, dl)
        except BoundaryTruncated:
            skipped += 1
            continue
        except InvariantViolation as e:
            checked[dl.kind] += 1
            violations[dl.kind].append("%s: %s" % (cell, e))
            continue
        checked[dl.kind] += 1
        violations[dl.kind].extend(outcome.violations)
        warnings[dl.kind].extend(outcome.warnings)
        if dl.kind in (NON_ESSENTIAL, NON_HORIZONTAL):
            attempts += 1
            collapsed += not outcome.warnings
        records.append(dl.to_json())

    report.add("classification", PASS, kinds=dict(kinds), skipped=skipped)
    report.check("morse_order", order, sum(kinds.values()))
    for kind in (ESSENTIAL, NON_ESSENTIAL, NON_HORIZONTAL):
        if not checked[kind]:
            warnings[kind].append("no %s cell in the core was checked" % kind)
        report.check(
            "descending_links:%s" % kind,
            violations[kind],
            checked[kind],
            warnings[kind],
            classified=kinds[kind],
        )
    report.add(
        "greedy_collapse",
        PASS,
        collapsed=collapsed,
        attempts=attempts,
        rate=fraction_str(Fraction(collapsed, attempts)) if attempts else "0",
    )
    report.add("descending_link_records", PASS, records=records)

    filt = filtration(mf, cells)
    problems = filt.check()
    if filt.levels and filt.levels[-1].complex.simplices != filt.subdivision.simplices:
        problems.append("filtration does not exhaust the window")
    report.check("filtration", problems, len(filt), **filt.to_json())
    return report


# -- twin metric ------------------------------------------------------------------------


def _random_pair(
    model: ThinTwinModel, rng: random.Random
) -> Tuple[RationalVector, RationalVector]:
    chambers = model.window.chambers
    return (
        random_point(model.window, rng.choice(chambers), rng),
        random_point(model.window, rng.choice(chambers), rng),
    )


def _origin_cells(model: ThinTwinModel) -> List[ProductCell]:
    """Product cells whose positive factor contains vertex 0.

    Translating both factors by a vertex keeps every difference, so these
    cells carry every image polytope of the cells near the centre.
    """
    window = model.window
    star = [c for c in window.cells if 0 in c.factors[0]]
    return [ProductCell(a, b) for a in star for b in window.cells]


def run_twin_metric(config: SuiteConfig) -> SuiteReport:
    """Convexity, edge monotonicity, roofs, reflections and the three
    readings of the height on a thin twin model.

    ``trials`` segments are tested for convexity and the height readings.
    Edge monotonicity and roofs cover every cell of the window. Each wall
    through a sampled vertex pair gets ``min(trials, REFLECTION_SAMPLES)``
    orbit samples.
    """
    report = SuiteReport(TWIN_METRIC, config.to_json())
    rng = make_rng(config.seed)
    model = twin_model(config.label, config.radius, RICH)

    convex: List[str] = []
    readings: List[str] = []
    for i in range(config.trials):
        a, b = _random_pair(model, rng), _random_pair(model, rng)
        if not midpoint_convex(model, a, b):
            convex.append("segment %d" % i)
        first, second, third = model.height_readings(*a)
        if not first == second == third:
            readings.append("sample %d" % i)
    report.check("midpoint_convexity", convex, config.trials)
    report.check("height_readings", readings, config.trials)

    cells = model.product_cells()
    monotone: List[str] = []
    roofs: List[str] = []
    edges = 0
    for cell in cells:
        if cell.dim == 1:
            v, w = cell.vertex_pairs()
            for x, y in ((v, w), (w, v)):
                edges += 1
                if edge_monotone(model, x, y) is False:
                    monotone.append("%s -> %s" % (x, y))
        try:
            roof = model.roof(cell)
            if not roof.is_face_of(cell):
                roofs.append("%s: roof %s" % (cell, roof))
        except (InvariantViolation, InsufficientGenerators) as e:
            roofs.append("%s: %s" % (cell, e))
    report.check("edge_monotone", monotone, edges)
    report.check("roof_in_vertex", roofs, len(cells))

    # the exact minimum over a polytope is expensive, so only a sample
    small = [
        c for c in _origin_cells(model) if len(c.vertex_pairs()) <= MIN_CHECK_PAIRS
    ]
    sample = rng.sample(small, min(len(small), EXACT_MIN_SAMPLES))
    minima: List[str] = []
    for cell in sample:
        _attempt(minima, str(cell), lambda: model.roof(cell, verify_min=True) is not None)
    report.check("minimum_in_vertex", minima, len(sample))

    reflections: List[str] = []
    samples = max(1, min(config.trials, REFLECTION_SAMPLES))
    checked = pairs = 0
    verts = [v.factors[0][0] for v in model.window.cells.vertices()]
    for _ in range(REFLECTION_PAIRS * 10):
        if pairs == REFLECTION_PAIRS:
            break
        plus, minus = frozenset([rng.choice(verts)]), frozenset([rng.choice(verts)])
        try:
            walls = common_walls(model, plus, minus)
            if not walls:
                continue
            pairs += 1
            for wall in walls:
                checked += 1
                if not reflection_preserves_height(
                    model, plus, minus, wall, rng, samples
                ):
                    reflections.append(
                        "%s, %s at %s" % (set(plus), set(minus), wall[0])
                    )
        except TwinMorseError as e:
            reflections.append(str(e))
    report.check(
        "reflection_preserves_height",
        reflections,
        checked,
        pairs=pairs,
        samples_per_wall=samples,
    )
    return report


RUNNERS: Dict[str, Callable[[SuiteConfig], SuiteReport]] = {
    ZONOTOPES: run_zonotopes,
    HOROLINKS: run_horolinks,
    HEMISPHERES: run_hemispheres,
    MORSE: run_morse,
    TWIN_METRIC: run_twin_metric,
}


def run_suite(name: str, config: Optional[SuiteConfig] = None) -> SuiteReport:
    """Run a suite and record its wall time in milliseconds.

    Raises:
        ValueError: If ``name`` is not a suite.
    """
    if name not in RUNNERS:
        raise ValueError(
            "unknown suite %r, expected one of %s" % (name, ", ".join(SUITES))
        )
    if config is None:
        config = SuiteConfig.defaults(name)
    debug("running %s with %s" % (name, config.to_json()))
    start = time.monotonic()
    report = RUNNERS[name](config)
    report.wall_ms = int((time.monotonic() - start) * 1000)
    info(report.summary())
    return report
