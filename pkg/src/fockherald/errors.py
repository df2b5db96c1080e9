"""Exception hierarchy shared by every backend."""

from __future__ import annotations


class FockHeraldError(Exception):
    """Base class for all errors raised by this package."""


class CutoffExceeded(FockHeraldError, IndexError):
    """A photon number lies beyond the per-mode truncation."""


class DimensionMismatch(FockHeraldError, ValueError):
    """Two states live on different truncated spaces."""


class ParameterOutOfRange(FockHeraldError, ValueError):
    """An interaction parameter is outside its valid (or trustworthy) range."""


class HeraldImpossible(FockHeraldError):
    """The heralding event has (numerically) zero probability."""

    def __init__(self, message: str, probability: float | None = None):
        super().__init__(message)
        self.probability = probability


class UnsupportedScheme(FockHeraldError, ValueError):
    """No closed-form result exists for the requested herald scheme."""


class VarMismatch(FockHeraldError, ValueError):
    """Two jets are defined over different variable sets or caps."""


class NotNilpotent(FockHeraldError, ValueError):
    """Exponential requested of a jet with a non-zero constant term."""


class CapExceeded(FockHeraldError, ValueError):
    """A requested derivative order exceeds the jet's truncation cap."""
