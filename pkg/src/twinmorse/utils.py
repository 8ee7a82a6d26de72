"""
Utility functions for exact numbers, subsets and seeded randomness.

Copyright (c) 2025 Max Qian <astro_air@126.com>
Available under the terms of MIT license
"""

import random
import re
from fractions import Fraction
from itertools import chain, combinations
from typing import Iterable, Iterator, Optional, Sequence, Tuple, TypeVar, Union

T = TypeVar("T")

Rational = Union[int, Fraction]

_RATIONAL_RE = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+))?\s*$")


def as_fraction(value: object) -> Fraction:
    """Convert an exact number to ``Fraction``.

    Args:
        value: An ``int``, ``Fraction`` or a ``"p/q"`` string.

    Returns:
        Fraction: The same number.

    Raises:
        TypeError: If ``value`` is a float or any other inexact type.

    Examples:
        >>> as_fraction(3)
        Fraction(3, 1)
        >>> as_fraction("-7/4")
        Fraction(-7, 4)
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_fraction(value)
    raise TypeError("exact rational expected, got %s" % type(value).__name__)


def parse_fraction(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` into a ``Fraction``.

    Raises:
        ValueError: If the text is not an integer or an integer ratio.
    """
    match = _RATIONAL_RE.match(text)
    if not match or match.group(2) == "0":
        raise ValueError("not a rational: %r" % text)
    num, den = match.groups()
    return Fraction(int(num), int(den or 1))


def fraction_str(value: Fraction) -> str:
    """Render a rational as ``"p"`` or ``"p/q"``."""
    if value.denominator == 1:
        return str(value.numerator)
    return "%d/%d" % (value.numerator, value.denominator)


def subsets(
    items: Sequence[T], min_size: int = 0, max_size: Optional[int] = None
) -> Iterator[Tuple[T, ...]]:
    """Yield subsets of ``items`` by increasing size, in index order."""
    top = len(items) if max_size is None else min(max_size, len(items))
    return chain.from_iterable(
        combinations(items, k) for k in range(min_size, top + 1)
    )


def unique_sorted(items: Iterable[T]) -> Tuple[T, ...]:
    """Deduplicate and sort ``items`` into a tuple."""
    return tuple(sorted(set(items)))  # type: ignore[type-var]


def make_rng(seed: int) -> random.Random:
    """Return an isolated generator so suites never touch global state."""
    return random.Random(seed)


def random_fraction(rng: random.Random, bound: int = 20) -> Fraction:
    """Draw a rational with numerator and denominator bounded by ``bound``."""
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
