"""
Exception hierarchy for twinmorse.

Copyright (c) 2025 Max Qian <astro_air@126.com>
Available under the terms of MIT license
"""


class TwinMorseError(Exception):
    """Base class for every error raised by the library."""


class DegenerateSpan(TwinMorseError):
    """Spanning vectors are linearly dependent."""


class InvalidMatrix(TwinMorseError):
    """A Coxeter matrix is malformed."""


class UnsupportedType(TwinMorseError):
    """A type label or building specification is not supported."""


class BoundaryTruncated(TwinMorseError):
    """The star of a cell leaves the explored window."""


class NotInZonotope(TwinMorseError):
    """A point lies outside the zonotope it was required to be in."""


class InsufficientGenerators(TwinMorseError):
    """A generator set is not rich enough for the polytope at hand."""


class ZeroHeight(TwinMorseError):
    """A gradient was requested at a point of height zero."""


class NotHorizontal(TwinMorseError):
    """A cell is not horizontal with respect to the given direction."""


class NotGeneralPosition(TwinMorseError):
    """A direction is not in general position, so no minimal face exists."""


class MoveCycle(TwinMorseError):
    """The move digraph contains a cycle."""


class DimensionMismatch(TwinMorseError):
    """A complex does not have the dimension it was checked against."""


class InvariantViolation(TwinMorseError):
    """A structural property that must always hold was found violated."""


class ComplexFormatError(TwinMorseError):
    """A serialized complex, label or building specification is malformed."""
