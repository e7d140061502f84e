"""Solid rings and subterminal schemes: descriptions, spectra and decision procedures."""

from . import finring, primes, scheme, solid, spectrum, textio
from .errors import (
    AxiomViolation, ConstraintViolation, IncompatibleCharts, InvariantBreach, LemmaViolation,
    NotAPoint, NotASubset, ParseError, SizeBound, SolidError, Unrepresentable,
)

__version__ = "0.1.0"
