"""The scalar transfer function F_d(t) and its fixed point.

F_d(t) = -(1/(d+1)) (d coth(d atanh t) - 1/t) is the sigma coefficient of
the normalized site map applied to a boundary aligned with one axis. It is
evaluated as the ratio -N1(t)/N0(t) of the trace polynomials, which is exact
at t = 0; the coth form is consulted as a cross-check away from 0.
"""
import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

import numpy as np
from scipy import optimize

from src.aklt_trees.config import (
    BISECTION_MAX_ITER,
    BISECTION_TOLERANCE,
    FIXED_POINT_GRID,
    FORM_TOLERANCE,
    SMALL_T,
)
from src.aklt_trees.site.moments import validate_degree
from src.aklt_trees.site.transfer import trace_polynomials
from src.aklt_trees.utils.errors import BackendMismatchError, BoundViolationError, ContractViolation

logger = logging.getLogger(__name__)

EPS = np.finfo(float).eps


def _check_t(t: float) -> float:
    t = float(t)
    if not abs(t) <= 1.0:
        raise ContractViolation(
            f"F_d is defined on [-1, 1], got t = {t}",
            "Pass the norm of a Bloch vector.",
        )
    return t


def _rational_form(d: int, t: float) -> float:
    n0, n1 = trace_polynomials(d)
    num = 0.0
    den = 0.0
    for c in reversed(n1):
        num = num * t + float(c)
    for c in reversed(n0):
        den = den * t + float(c)
    return -num / den


def coth_form(d: int, t: float) -> float:
    d = validate_degree(d)
    t = _check_t(t)
    if t == 0.0:
        raise ContractViolation("the coth form is singular at t = 0")
    if abs(t) == 1.0:
        coth = math.copysign(1.0, t)
    else:
        coth = 1.0 / math.tanh(d * math.atanh(t))
    return -(d * coth - 1.0 / t) / (d + 1)


def eval_F(d: int, t: float) -> float:
    """F_d(t) for |t| <= 1; both closed forms must agree."""
    d = validate_degree(d)
    t = _check_t(t)
    if t == 0.0:
        return 0.0
    value = _rational_form(d, t)
    if abs(t) >= SMALL_T:
        other = coth_form(d, t)
        # the coth form loses about d/|t| ulps to the 1/t cancellation
        tol = max(FORM_TOLERANCE, 8 * EPS * d / abs(t))
        if abs(value - other) > tol:
            raise BackendMismatchError(
                f"F_{d}({t}): rational form {value!r} vs coth form {other!r}",
                "Report the degree and argument; one of the forms lost precision.",
            )
    return value


def continued_fraction_F(d: int, t: float) -> float:
    """F_d from the continued fraction of coth, free of the 1/t cancellation.

    With x = atanh t and CF_a(x) = a x / (3 + a x^2 / (5 + a x^2 / (7 + ...))),
    F_d(t) = -(CF_(d^2)(x) - CF_1(x)) / (d + 1).
    """
    d = validate_degree(d)
    t = _check_t(t)
    if t == 0.0:
        return 0.0
    if abs(t) == 1.0:
        return -math.copysign((d - 1) / (d + 1), t)
    x = math.atanh(abs(t))
    terms = math.ceil(3 * d * x) + 50

    def cf(a: float) -> float:
        z2 = a * x * x
        acc = 2.0 * terms + 3.0
        for j in range(terms, 0, -1):
            acc = (2 * j + 1) + z2 / acc
        return a * x / acc

    value = -(cf(d * d) - cf(1.0)) / (d + 1)
    return math.copysign(value, t)


def two_sided_bounds(d: int, t: float) -> Tuple[float, float]:
    """(lower, upper) with lower <= F_d(t) <= upper on [0, 1].

    lower = -((d-1)/3) t, upper = -(3/((d-1)t) + 1)^(-1).
    """
    d = validate_degree(d)
    t = _check_t(t)
    if t < 0:
        raise ContractViolation("two_sided_bounds is stated for t in [0, 1]")
    lower = -(d - 1) * t / 3.0
    upper = -(d - 1) * t / (3.0 + (d - 1) * t)
    return lower, upper


@dataclass
class FixedPointResult:
    """Smallest positive solution of F_d(t) = -t, if any."""
    degree: int
    t_star: Optional[float] = None
    residual: Optional[float] = None
    bracket: Optional[Tuple[float, float]] = None

    @property
    def present(self) -> bool:
        return self.t_star is not None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "d": self.degree,
            "t_star": self.t_star,
            "residual": self.residual,
            "bracket": list(self.bracket) if self.bracket else None,
        }


def bracket_first_root(func, grid: np.ndarray) -> Optional[Tuple[float, float]]:
    """First adjacent pair of grid points where func changes sign."""
    prev_t = grid[0]
    prev_v = func(prev_t)
    for t in grid[1:]:
        v = func(t)
        if prev_v == 0.0:
            return float(prev_t), float(prev_t)
        if (prev_v < 0) != (v < 0):
            return float(prev_t), float(t)
        prev_t, prev_v = t, v
    return None


def fixed_point(d: int) -> FixedPointResult:
    d = validate_degree(d)

    def gap(t: float) -> float:
        return eval_F(d, t) + t

    grid = np.linspace(0.0, 1.0, FIXED_POINT_GRID + 1)[1:]
    bracket = bracket_first_root(gap, grid)
    if bracket is None:
        logger.debug(f"No sign change of F_{d}(t) + t on (0, 1]")
        return FixedPointResult(degree=d)

    lo, hi = bracket
    if lo == hi:
        t_star = lo
    else:
        t_star = optimize.bisect(gap, lo, hi, xtol=BISECTION_TOLERANCE, maxiter=BISECTION_MAX_ITER)
    residual = abs(gap(t_star))

    floor = 1.0 - 3.0 / (d - 1)
    if t_star < floor - BISECTION_TOLERANCE:
        raise BoundViolationError(
            f"fixed point {t_star} of F_{d} lies below the bound {floor}",
        )
    logger.info(f"F_{d} fixed point t* = {t_star:.15f} (residual {residual:.2e})")
    return FixedPointResult(degree=d, t_star=float(t_star), residual=float(residual), bracket=bracket)
