"""
Parsing of building specifications and rational point notation.

Copyright (c) 2025 Max Qian <astro_air@126.com>
Available under the terms of MIT license
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterator, List, NamedTuple, Tuple, Union

from .errors import ComplexFormatError
from .exactgeom import RationalVector
from .logging_utils import debug
from .utils import parse_fraction

BUILDING_KINDS = ("coxeter", "flags", "points", "join")

_TOKEN_RE = re.compile(r"\s*(?:([A-Za-z][A-Za-z0-9~̃×]*)|(\d+)|([(),]))")


class BuildingSpec(NamedTuple):
    """Parsed ``kind(args)`` term; ``parts`` holds the operands of a join."""

    kind: str
    args: Tuple[Union[int, str], ...] = ()
    parts: Tuple["BuildingSpec", ...] = ()

    def __str__(self) -> str:
        if self.kind == "join":
            return "join(%s)" % ",".join(str(p) for p in self.parts)
        return "%s(%s)" % (self.kind, ",".join(str(a) for a in self.args))


class tokenstream(object):
    """Token cursor with boolean end-of-input status.

    Example:
        >>> tokens = tokenstream("points(3)")
        >>> while tokens.next():
        ...     print(tokens.token)
        points
        (
        3
        )
    """

    def __init__(self, text: str) -> None:
        self._tokens = enumerate(self._split(text))
        self._exhausted = False
        self.token: Union[str, bool] = False
        self.position: Union[int, bool] = False

    @staticmethod
    def _split(text: str) -> Iterator[str]:
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            match = _TOKEN_RE.match(text, pos)
            if not match or match.end() == pos:
                raise ComplexFormatError("unexpected character at %d in %r" % (pos, text))
            yield next(g for g in match.groups() if g is not None)
            pos = match.end()

    def next(self) -> bool:
        if self._exhausted:
            return False
        try:
            self.position, self.token = next(self._tokens)
        except StopIteration:
            self._exhausted = True
            self.token = False
            return False
        return True

    @property
    def is_empty(self) -> bool:
        return self._exhausted

    def expect(self, literal: str) -> None:
        if not self.next() or self.token != literal:
            raise ComplexFormatError("expected %r, got %r" % (literal, self.token))


def _parse_term(tokens: tokenstream) -> BuildingSpec:
    if not tokens.next() or not isinstance(tokens.token, str):
        raise ComplexFormatError("missing building kind")
    kind = tokens.token.lower()
    if kind not in BUILDING_KINDS:
        raise ComplexFormatError("unknown building kind %r" % tokens.token)
    tokens.expect("(")
    args: List[Union[int, str]] = []
    parts: List[BuildingSpec] = []
    if kind == "join":
        parts.append(_parse_term(tokens))
        while tokens.next() and tokens.token == ",":
            parts.append(_parse_term(tokens))
        if tokens.token != ")":
            raise ComplexFormatError("unterminated join")
        if len(parts) < 2:
            raise ComplexFormatError("join needs at least two operands")
        return BuildingSpec(kind, (), tuple(parts))
    while tokens.next() and tokens.token != ")":
        if tokens.token == ",":
            continue
        assert isinstance(tokens.token, str)
        args.append(int(tokens.token) if tokens.token.isdigit() else tokens.token)
    if tokens.token != ")":
        raise ComplexFormatError("unterminated %s(...)" % kind)
    return BuildingSpec(kind, tuple(args))


def parse_building_spec(text: str) -> BuildingSpec:
    """Parse ``coxeter(A2xA1)``, ``flags(2,2)``, ``points(3)`` or a nested ``join``.

    Raises:
        ComplexFormatError: On malformed text. Argument validity is left to
            the building constructor.

    Examples:
        >>> parse_building_spec("join(points(3),points(3))").parts[0]
        BuildingSpec(kind='points', args=(3,), parts=())
    """
    tokens = tokenstream(text)
    spec = _parse_term(tokens)
    if tokens.next():
        raise ComplexFormatError("trailing input after %s" % (spec,))
    debug("building spec %s" % (spec,))
    return spec


def parse_vector(text: str) -> RationalVector:
    """Parse ``"1, -1/2, 0"`` (optionally parenthesized) into a vector."""
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    try:
        return RationalVector(tuple(parse_fraction(x) for x in body.split(",")))
    except ValueError as e:
        raise ComplexFormatError("bad vector %r: %s" % (text, e)) from e


def parse_product_point(text: str) -> Tuple[RationalVector, ...]:
    """Parse a point of a product, factors separated by ``;``: ``"(1; 0, 1, -1)"``."""
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    return tuple(parse_vector(part) for part in body.split(";"))


def format_product_point(point: Tuple[RationalVector, ...]) -> str:
    def one(v: RationalVector) -> str:
        return ", ".join(str(Fraction(x)) for x in v)

    return "(%s)" % "; ".join(one(v) for v in point)
