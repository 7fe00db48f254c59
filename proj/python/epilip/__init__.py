"""Exact Lipschitz analysis of right-hand-side parameterized multiobjective LPs.

Rationals are returned as ``fractions.Fraction``; vector arguments accept
ints, strings such as ``"5/3"`` or Fractions.
"""

from pathlib import Path

from ._core import (
    EpilipError,
    Problem,
    convexity_check,
    dominate,
    eliminate,
    empirical_lip,
    epigraph_system,
    image_epigraph_system,
    is_nondominated,
    modulus,
    pareto_point,
    parse_problem,
    run_cli,
    solve,
    subdiff,
    value_function,
)


def load_problem(path):
    """Reads a problem file."""
    return parse_problem(Path(path).read_text())


__all__ = [
    "EpilipError",
    "Problem",
    "convexity_check",
    "dominate",
    "eliminate",
    "empirical_lip",
    "epigraph_system",
    "image_epigraph_system",
    "is_nondominated",
    "load_problem",
    "modulus",
    "pareto_point",
    "parse_problem",
    "run_cli",
    "solve",
    "subdiff",
    "value_function",
]
