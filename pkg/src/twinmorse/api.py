"""
Entry points that read files, strings and the window cache.

Copyright (c) 2025 Max Qian <astro_air@126.com>
Available under the terms of MIT license
"""

import json
import os
import re
from typing import Optional, Tuple, Union

from .constants import ALMOST_RICH, CACHE_ENV
from .coxcomplex import AffineRealization, Window, build_affine_window, parse_type_label
from .errors import ComplexFormatError, UnsupportedType
from .horolinks import ProductWindow
from .logging_utils import debug, info, warning
from .polycomplex import SimplicialComplex
from .twin import ThinTwinModel, make_rich_generators
from .utils import as_fraction, fraction_str

_UNSAFE = re.compile(r"[^A-Za-z0-9]+")


def cache_path(
    label: str, radius: object, cache_dir: Optional[str] = None
) -> Optional[str]:
    """File caching the window of ``label`` and ``radius``, or None without a cache.

    Example:
        >>> cache_path("A~2", "3/2", "/tmp/w")
        '/tmp/w/A_2-r3_2.json'
    """
    cache_dir = cache_dir if cache_dir is not None else os.environ.get(CACHE_ENV)
    if not cache_dir:
        return None
    r = fraction_str(as_fraction(radius))
    name = "%s-r%s.json" % (_UNSAFE.sub("_", label), _UNSAFE.sub("_", r))
    return os.path.join(cache_dir, name)


def load_window(label: str, radius: object) -> Tuple[AffineRealization, Window]:
    """Build the affine window, going through the cache when one is configured.

    Args:
        label (str): Irreducible affine type such as ``"A~2"``.
        radius (object): Euclidean ball radius, anything ``as_fraction`` reads.

    Returns:
        Tuple[AffineRealization, Window]: The realization and the window of
            every alcove meeting the ball.

    Raises:
        UnsupportedType: If ``label`` has no rational realization.

    Note:
        A cached file that cannot be read, or that holds another radius, is
        rebuilt and overwritten. Failing to write the cache only warns.
    """
    path = cache_path(label, radius)
    if path is not None and os.path.isfile(path):
        debug("reading cached window %s" % path)
        try:
            with open(path, encoding="utf-8") as fp:
                window = Window.from_json(json.load(fp))
            if window.radius == as_fraction(radius):
                return window.realization, window
            warning("cached window %s has radius %s" % (path, window.radius))
        except (OSError, ValueError, ComplexFormatError) as e:
            warning("ignoring cached window %s: %s" % (path, e))
    realization, window = build_affine_window(label, radius)
    if path is not None:
        try:
            os.makedirs(os.path.dirname(path), exist_ok=True)
            with open(path, "w", encoding="utf-8") as fp:
                json.dump(window.to_json(), fp, sort_keys=True)
            info("cached window %s" % path)
        except OSError as e:
            warning("cannot write window cache %s: %s" % (path, e))
    return realization, window


def product_window(label: str, radius: object) -> ProductWindow:
    """Product of cached windows, one per component of ``label``.

    Raises:
        UnsupportedType: If a component is not affine.
    """
    parts = parse_type_label(label)
    if not all(p.affine for p in parts):
        raise UnsupportedType("%s is not a product of affine types" % label)
    return ProductWindow(tuple(load_window(str(p), radius)[1] for p in parts))


def twin_model(label: str, radius: object, level: str = ALMOST_RICH) -> ThinTwinModel:
    """Thin twin model over a cached window with Weyl-invariant generators.

    Args:
        label (str): Irreducible affine type of both halves.
        radius (object): Window radius.
        level (str): ``"almost_rich"`` or ``"rich"`` generator set.

    Example:
        >>> model = twin_model("A~1", 6)
        >>> [str(d) for d in model.generators]
        ['(-1)', '(1)']
    """
    realization, window = load_window(label, radius)
    return ThinTwinModel(
        realization, window, make_rich_generators(realization, level, window), level
    )


def complex_fromstring(s: Union[str, bytes]) -> SimplicialComplex:
    """Parse the shared JSON complex format.

    Raises:
        ComplexFormatError: If the text is not a JSON complex.

    Example:
        >>> K = complex_fromstring('{"vertices": [1, 2], "cells": [[[1, 2]]]}')
        >>> K.f_vector()
        [2, 1]
    """
    if isinstance(s, bytes):
        s = s.decode("utf-8")
    try:
        data = json.loads(s)
    except ValueError as e:
        raise ComplexFormatError("not JSON: %s" % e) from e
    if not isinstance(data, dict):
        raise ComplexFormatError("a complex is a JSON object")
    return SimplicialComplex.from_json(data)


def complex_fromfile(filename: str) -> SimplicialComplex:
    """Read a complex in the shared JSON format from a file.

    Args:
        filename (str): Path of the JSON file.

    Returns:
        SimplicialComplex: The complex generated by the listed cells.

    Raises:
        OSError: If the file cannot be read.
        ComplexFormatError: If its content is not a JSON complex.
    """
    debug("reading %s" % filename)
    with open(filename, "rb") as fp:
        return complex_fromstring(fp.read())
