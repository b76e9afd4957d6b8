"""Exception hierarchy shared across the package.

Every error the CLI can surface derives from MapvecError so the entry point
can render a single machine-parsable line and pick an exit code.
"""

from __future__ import annotations


class MapvecError(Exception):
    """Base class for all package errors."""


class ConfigError(MapvecError):
    """Invalid or inconsistent configuration (bad value, unknown key, ...)."""


class ShapeError(MapvecError):
    """Tensor/array shape violates an operation's contract."""


class FrameMismatchError(MapvecError):
    """A feature map arrived in the wrong coordinate frame (uv vs bev)."""


class OutOfRangeError(MapvecError):
    """Geometry lies outside the configured BEV range."""


class DomainError(MapvecError):
    """Numeric input outside the mathematical domain (e.g. probs not in [0,1])."""


class GeometryError(MapvecError):
    """Degenerate geometry: zero-length polyline, too few points, ..."""


class FormatError(MapvecError):
    """Dataset/manifest on disk is missing, corrupt, or inconsistent."""


class NumericError(MapvecError):
    """Non-finite value where a finite one is required; names the offender."""


class CheckpointMismatchError(MapvecError):
    """Checkpoint incompatible with the requested architecture."""
