"""Exact Bethe ansatz solutions, populations and discrete Miura opers."""

from __future__ import annotations

from .bethe import BetheProblem, ParameterSet, PolyTuple, is_bethe, is_fertile, is_generic
from .liealg import CartanData, Weight, WeylWord, cartan_matrix, degrees_for, langlands_dual
from .ratpoly import RatPoly, Rational, solve_wronskian

__all__ = [
    "BetheProblem",
    "CartanData",
    "ParameterSet",
    "PolyTuple",
    "RatPoly",
    "Rational",
    "Weight",
    "WeylWord",
    "cartan_matrix",
    "degrees_for",
    "is_bethe",
    "is_fertile",
    "is_generic",
    "langlands_dual",
    "solve_wronskian",
]

__version__ = "0.1.0"
