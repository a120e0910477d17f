"""Fixpoint equation systems over complete lattices, solved through powerset games.

Models and systems are passed as text in the same formats the ``fixgame``
command line tool reads. Exact values come back as ``fractions.Fraction``.
"""

from fractions import Fraction
from pathlib import Path

from . import _core
from ._core import ParseError, bisimilarity, check, model_check, nfa_equiv, similarity

__all__ = [
    "ParseError",
    "bisimilarity",
    "check",
    "lukas_epsilon",
    "lukas_grid",
    "model_check",
    "nfa_equiv",
    "read",
    "similarity",
    "solve",
]


def read(path):
    return Path(path).read_text()


def _exact(value):
    if isinstance(value, str) and "/" in value:
        return Fraction(value)
    if isinstance(value, dict):
        return {k: _exact(v) for k, v in value.items()}
    return value


def solve(system, *, ts=None, relations=False, grid=0, pndt=None):
    """Solution per equation name: state lists, pair labels or grid values."""
    out = _core.solve(system, ts=ts, relations=relations, grid=grid, pndt=pndt)
    return {name: _exact(v) for name, v in out.items()}


def _evaluation(raw):
    raw["values"] = {name: _exact(per) for name, per in raw["values"].items()}
    return raw


def lukas_grid(term, n, pndt=None):
    return _evaluation(_core.lukas_grid(term, n, pndt))


def lukas_epsilon(term, tolerance, pndt=None, max_iter=100000):
    tol = Fraction(tolerance).limit_denominator(10**18) if isinstance(tolerance, float) else Fraction(tolerance)
    return _evaluation(_core.lukas_epsilon(term, f"{tol.numerator}/{tol.denominator}", pndt, max_iter))
