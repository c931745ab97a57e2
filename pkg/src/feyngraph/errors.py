"""Exception hierarchy shared by every module."""

from __future__ import annotations


class FeynGraphError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(FeynGraphError, ValueError):
    """An operation was applied outside its domain (open graph, odd count, ...)."""


class CompositionError(DomainError):
    """Arity mismatch when stacking two graphs."""


class DegeneracyError(DomainError):
    """A bilinear form that must be nondegenerate is singular."""


class ConfigurationError(DomainError):
    """An algebra lacks a tensor required by a graph or request."""


class ParseError(DomainError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvariantViolation(FeynGraphError, AssertionError):
    """Two independent computations that must agree did not."""
