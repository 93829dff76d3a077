"""Circular-arc graphs: longest paths, circle covers and chain reordering."""

from ._core import (
    ArcFamily,
    ArcpathError,
    canonicalize,
    covers_circle,
    enumerate_longest,
    generate,
    hunt,
    longest_path_length,
    minimal_cover,
    parse_instance,
    verify,
)

__all__ = [
    "ArcFamily",
    "ArcpathError",
    "canonicalize",
    "covers_circle",
    "enumerate_longest",
    "generate",
    "hunt",
    "longest_path_length",
    "minimal_cover",
    "parse_instance",
    "verify",
]
