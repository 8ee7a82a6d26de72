"""
Exact combinatorics of Morse functions on twin buildings

Rational realizations of Coxeter complexes, perturbation zonotopes,
horizontal links and descending links, with verification suites.

Copyright (c) 2025 Max Qian <astro_air@126.com>
Available under the terms of MIT license
"""

from .api import (
    complex_fromfile,
    complex_fromstring,
    load_window,
    product_window,
    twin_model,
)
from .cli import main
from .constants import (
    ALMOST_RICH,
    RICH,
    SUITES,
    __author__,
    __license__,
    __url__,
    __version__,
)
from .coxcomplex import build_affine_window, parse_type_label, root_system
from .errors import (
    BoundaryTruncated,
    InvariantViolation,
    NotGeneralPosition,
    NotHorizontal,
    TwinMorseError,
)
from .homology import greedy_collapse, reduced_homology, sphericity_report
from .horolinks import HorizontalLinks, MoveSystem, ProductWindow, TwinDepths, Xi
from .logging_utils import debug, debugmode, info, setdebug, warning
from .morse import MorseFunction, MorseValue, filtration
from .polycomplex import PolyCell, PolyComplex, SimplicialComplex
from .report import SuiteReport, emit_report
from .sphbuild import NorthPole, build_building, hemisphere_complexes
from .suites import SuiteConfig, run_suite
from .twin import ProductCell, ThinTwinModel
from .zonotope import Zonotope, project_onto_zonotope

__all__ = [
    # Entry points
    "complex_fromfile",
    "complex_fromstring",
    "load_window",
    "product_window",
    "twin_model",
    "main",
    "run_suite",
    "SuiteConfig",
    "SuiteReport",
    "emit_report",
    # Geometry and complexes
    "build_affine_window",
    "parse_type_label",
    "root_system",
    "Zonotope",
    "project_onto_zonotope",
    "PolyCell",
    "PolyComplex",
    "SimplicialComplex",
    "NorthPole",
    "build_building",
    "hemisphere_complexes",
    "ThinTwinModel",
    "ProductCell",
    # Horizontal links and Morse data
    "Xi",
    "ProductWindow",
    "HorizontalLinks",
    "MoveSystem",
    "TwinDepths",
    "MorseFunction",
    "MorseValue",
    "filtration",
    # Homology
    "reduced_homology",
    "sphericity_report",
    "greedy_collapse",
    # Errors
    "TwinMorseError",
    "BoundaryTruncated",
    "InvariantViolation",
    "NotGeneralPosition",
    "NotHorizontal",
    # Constants
    "ALMOST_RICH",
    "RICH",
    "SUITES",
    # Logging
    "setdebug",
    "debug",
    "info",
    "warning",
    "debugmode",
    # Metadata
    "__author__",
    "__version__",
    "__license__",
    "__url__",
]
