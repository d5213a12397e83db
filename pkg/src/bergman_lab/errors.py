"""Error types shared across the package.

Every operation distinguishes three failure classes: bad mathematical inputs
(DomainError), a quadrature or search budget that could not reach the
requested tolerance (AccuracyError, which still carries the best estimate),
and malformed configuration (ConfigError). Regions whose sampler cannot
produce usable points raise DegenerateRegionError.
"""

from __future__ import annotations


class BergmanLabError(Exception):
    """Base class for package errors."""


class DomainError(BergmanLabError, ValueError):
    """Input outside the mathematical domain of an operation."""


class UnsupportedRegimeError(DomainError):
    """Parameter combination the implementation deliberately refuses,
    e.g. the exact square-function identity with p < 2."""


class ConfigError(BergmanLabError, ValueError):
    """Malformed configuration or schema violation. CLI exit code 2."""


class AccuracyError(BergmanLabError, RuntimeError):
    """Requested tolerance not reached. Carries the best estimate so a
    partial report can still be emitted. CLI exit code 3."""

    def __init__(self, message: str, estimate: float | None = None,
                 achieved_tol: float | None = None):
        super().__init__(message)
        self.estimate = estimate
        self.achieved_tol = achieved_tol


class DegenerateRegionError(BergmanLabError, RuntimeError):
    """Region sampler produced no usable points (zero volume or zero hits)."""
