"""Exception hierarchy for the engine.

Structural errors indicate misuse (mixed symbol tables, malformed input);
computation errors indicate a legitimate input on which the requested
operation is undefined or unsupported.  The CLI maps these onto distinct
exit codes.
"""

from __future__ import annotations


class InstvolError(Exception):
    """Base class for engine errors."""


class StructureError(InstvolError):
    """Malformed object or incompatible operands (e.g. mixed symbol tables)."""


class ValidationError(InstvolError):
    """A weight system failed validation; carries the offending items."""

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class VanishingFactor(InstvolError):
    """A substitution made a denominator factor identically zero."""

    def __init__(self, factor):
        super().__init__(f"denominator factor vanishes identically: {factor}")
        self.factor = factor


class PoleAtAssignment(InstvolError):
    """A numeric evaluation hit a zero of a denominator factor."""

    def __init__(self, factor):
        super().__init__(f"assignment lies on the pole of: {factor}")
        self.factor = factor


class UnsupportedFeature(InstvolError):
    """A stated, deliberate scope limit of some operation."""


class BetaOrderMismatch(InstvolError):
    """Cohomological limit does not balance; wrong dimension or bad input."""
