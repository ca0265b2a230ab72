"""Shared exception types."""

from __future__ import annotations

from typing import Iterable


class TopomodalError(Exception):
    """Base class for every error raised by this package."""


class GuardError(TopomodalError):
    """A search or enumeration exceeded its configured resource guard."""


class TopologyError(TopomodalError, ValueError):
    """An open-set family violates the topology axioms, or a point is foreign."""


class RegionError(TopomodalError, ValueError):
    """Malformed region component or region text."""


class ParseError(TopomodalError, ValueError):
    """Malformed formula text, with the offset and the tokens that were legal there."""

    def __init__(self, message: str, position: int, expected: Iterable[str] = ()):
        self.position = position
        self.expected = tuple(sorted(expected))
        detail = f"{message} at position {position}"
        if self.expected:
            detail += " (expected: " + ", ".join(self.expected) + ")"
        super().__init__(detail)


class UnboundVariableError(TopomodalError, KeyError):
    """A formula mentions a variable the model valuation does not bind."""

    def __init__(self, name: str):
        self.name = name
        super().__init__(f"variable {name!r} is not bound by the valuation")
