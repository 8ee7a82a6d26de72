"""
Constants for suite names, verdicts and report defaults.

Copyright (c) 2025 Max Qian <astro_air@126.com>
Available under the terms of MIT license
"""

# Verification suites
ZONOTOPES = "zonotopes"
HOROLINKS = "horolinks"
HEMISPHERES = "hemispheres"
MORSE = "morse"
TWIN_METRIC = "twin-metric"
SUITES = (ZONOTOPES, HOROLINKS, HEMISPHERES, MORSE, TWIN_METRIC)

# Case outcomes recorded in reports
PASS = "pass"
FAIL = "fail"
WARN = "warn"
# a case that reproduces a documented counterexample
EXPECTED_FAILURE = "expected-failure"
STATUSES = (PASS, FAIL, WARN, EXPECTED_FAILURE)

# Generator-set levels
ALMOST_RICH = "almost_rich"
RICH = "rich"

# Per-suite defaults: affine type label, window radius, random trials
SUITE_DEFAULTS = {
    ZONOTOPES: {"type": "A~2", "radius": 2, "trials": 200},
    HOROLINKS: {"type": "A~1xA~2", "radius": 2, "trials": 20},
    HEMISPHERES: {"type": "A2", "radius": 0, "trials": 3},
    # the morse model pairs two halves of this type, so A~1 gives A~1xA~1
    MORSE: {"type": "A~1", "radius": 6, "trials": 1},
    TWIN_METRIC: {"type": "A~2", "radius": 3, "trials": 500},
}
DEFAULT_SEED = 0
DEFAULT_Q = 2

# Environment variable naming the window cache directory
CACHE_ENV = "TWINMORSE_CACHE_DIR"

# Report format version
REPORT_VERSION = 1

# Module metadata
__author__ = "Max Qian <astro_air@126.com>"
__version__ = "1.0.0"
__license__ = "MIT"
__url__ = "https://github.com/AstroAir/twinmorse"
