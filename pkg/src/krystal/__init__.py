"""Exact affine crystal combinatorics and verification tools."""

from .errors import BudgetError, ConfigurationError, KrystalError, ModelError, TheoremViolation, UsageError
from .rootdata import CartanDatum, RealRoot, Weight, load_datum, parse_weight

__version__ = "0.1.0"
