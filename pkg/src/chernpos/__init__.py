"""Exact Chern-class calculus, positivity checks and the tableau plethysm construction."""

from . import bundlecalc, chowring, plethysm, riemannroch, splitcurve, symfunc
from .errors import ChernposError

__version__ = "0.1.0"

__all__ = ["ChernposError", "bundlecalc", "chowring", "plethysm", "riemannroch", "splitcurve", "symfunc"]
