"""Multi-start damped Newton on the bilayer fixed-point equations.

Starts are drawn up front from one seeded generator and solved
independently, so the result does not depend on the worker count. Every
converged root is re-checked against the dense Kraus map before it is
reported.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np
import sympy
from scipy import optimize

from src.aklt_trees.bilayer.map import BilayerVector, build_bilayer_map, staggered_image
from src.aklt_trees.bilayer.system import X1, X2, X3, BilayerSystem, Cycle, extract_system
from src.aklt_trees.config import (
    BISECTION_MAX_ITER,
    BISECTION_TOLERANCE,
    DEDUP_TOLERANCE,
    DEFAULT_SEED,
    DENSE_RESIDUAL_TOLERANCE,
    FIXED_POINT_GRID,
    NEWTON_BOX,
    NEWTON_HALVINGS,
    NEWTON_JACOBIAN_STEP,
    NEWTON_MAX_ITER,
    NEWTON_STARTS,
    NEWTON_TOLERANCE,
    get_thread_count,
)
from src.aklt_trees.transfer.function import bracket_first_root
from src.aklt_trees.utils.errors import ContractViolation, ConvergenceError

logger = logging.getLogger(__name__)

# iterates leaving this box are treated as diverged
DIVERGENCE_BOX = 10.0
SYMMETRY_TOLERANCE = 1e-8


class Subspace(str, Enum):
    """Unknowns of the search: (x1, x2, x3) or all 15 components."""
    SYMMETRIC = "symmetric"
    FULL = "full"


@dataclass
class NewtonOutcome:
    z: np.ndarray
    residual: float
    iterations: int
    converged: bool


def forward_jacobian(func: Callable[[np.ndarray], np.ndarray], z: np.ndarray, f0: np.ndarray,
                     step: float = NEWTON_JACOBIAN_STEP) -> np.ndarray:
    jac = np.empty((f0.size, z.size))
    for j in range(z.size):
        shifted = z.copy()
        shifted[j] += step
        jac[:, j] = (func(shifted) - f0) / step
    return jac


def damped_newton(func: Callable[[np.ndarray], np.ndarray], z0: np.ndarray,
                  tol: float = NEWTON_TOLERANCE, max_iter: int = NEWTON_MAX_ITER) -> NewtonOutcome:
    """Newton with a forward-difference Jacobian and step halving on residual increase."""
    z = np.asarray(z0, dtype=float).copy()
    f = func(z)
    norm = float(np.abs(f).max())
    for it in range(1, max_iter + 1):
        if norm < tol:
            return NewtonOutcome(z, norm, it - 1, True)
        jac = forward_jacobian(func, z, f)
        step = np.linalg.lstsq(jac, -f, rcond=None)[0]
        lam = 1.0
        for _ in range(NEWTON_HALVINGS + 1):
            trial = z + lam * step
            f_trial = func(trial)
            trial_norm = float(np.abs(f_trial).max())
            if np.isfinite(trial_norm) and trial_norm < norm:
                break
            lam *= 0.5
        else:
            # no halving reduced the residual: stalled
            return NewtonOutcome(z, norm, it, norm < tol)
        z, f, norm = trial, f_trial, trial_norm
        if np.abs(z).max() > DIVERGENCE_BOX:
            return NewtonOutcome(z, norm, it, False)
    return NewtonOutcome(z, norm, max_iter, norm < tol)


@dataclass
class BilayerSolution:
    g: int
    cycle: Cycle
    x: BilayerVector
    residual: float  # dense map, max |F(B(x)) - B(x')|
    equation_residual: float
    psd: bool
    symmetric: bool

    @property
    def x1(self) -> float:
        return self.x.symmetric_coords()[0]

    def to_dict(self) -> Dict[str, Any]:
        x1, x2, x3 = self.x.symmetric_coords()
        return {
            "g": self.g,
            "cycle": self.cycle,
            "x1": x1,
            "x2": x2,
            "x3": x3,
            "residual": self.residual,
            "equation_residual": self.equation_residual,
            "psd": self.psd,
            "symmetric": self.symmetric,
        }


@dataclass
class SolveReport:
    g: int
    cycle: Cycle
    subspace: Subspace
    starts: int
    seed: int
    converged: int = 0
    solutions: List[BilayerSolution] = field(default_factory=list)

    def nearest(self, x1: float, x2: float, x3: float) -> Optional[Tuple[BilayerSolution, float]]:
        """Closest reported solution to a symmetric point, with its distance."""
        if not self.solutions:
            return None
        target = np.array([x1, x2, x3])
        ranked = [(s, float(np.abs(np.array(s.x.symmetric_coords()) - target).max())) for s in self.solutions]
        return min(ranked, key=lambda item: item[1])

    def to_dict(self) -> Dict[str, Any]:
        return {
            "g": self.g,
            "cycle": self.cycle,
            "subspace": self.subspace,
            "starts": self.starts,
            "seed": self.seed,
            "converged": self.converged,
            "solutions": [s.to_dict() for s in self.solutions],
        }


def dense_cycle_residual(g: int, x: BilayerVector, cycle: Cycle) -> float:
    """max |F(B(x)^(x g)) - B(x')| through the dense Kraus map."""
    image = build_bilayer_map(g).apply_vector(x)
    target = x.flipped() if Cycle(cycle) is Cycle.PERIOD2 else x
    return image.distance(target)


def _full_residual(g: int, cycle: Cycle) -> Callable[[np.ndarray], np.ndarray]:
    def func(z: np.ndarray) -> np.ndarray:
        x = BilayerVector(tuple(z))
        target = x.flipped() if cycle is Cycle.PERIOD2 else x
        return np.asarray(staggered_image(x, g).x) - np.asarray(target.x)
    return func


def _dedup(solutions: List[BilayerSolution]) -> List[BilayerSolution]:
    kept: List[BilayerSolution] = []
    for sol in sorted(solutions, key=lambda s: s.residual):
        if all(sol.x.distance(other.x) > DEDUP_TOLERANCE for other in kept):
            kept.append(sol)
    return sorted(kept, key=lambda s: s.x.symmetric_coords())


def solve_fixed_points(g: int, cycle: Cycle = Cycle.PERIOD1, starts: int = NEWTON_STARTS,
                       seed: int = DEFAULT_SEED, subspace: Subspace = Subspace.SYMMETRIC,
                       system: Optional[BilayerSystem] = None,
                       workers: Optional[int] = None) -> SolveReport:
    """Roots of the period-1 or period-2 equations from `starts` uniform starts in the NEWTON_BOX cube."""
    cycle = Cycle(cycle)
    subspace = Subspace(subspace)
    if starts < 1:
        raise ContractViolation(f"need at least one start, got {starts}")
    dim = 3 if subspace is Subspace.SYMMETRIC else 15
    rng = np.random.default_rng(seed)
    points = rng.uniform(-NEWTON_BOX, NEWTON_BOX, size=(starts, dim))

    if subspace is Subspace.SYMMETRIC:
        system = system or extract_system(g)

        def func(z: np.ndarray) -> np.ndarray:
            return system.residual(z, cycle)
    else:
        build_bilayer_map(g)
        func = _full_residual(g, cycle)

    workers = workers or get_thread_count()
    with ThreadPoolExecutor(max_workers=workers) as pool:
        outcomes = list(pool.map(lambda z0: damped_newton(func, z0), points))

    report = SolveReport(g, cycle, subspace, starts, seed)
    found = []
    for outcome in outcomes:
        if not outcome.converged:
            continue
        report.converged += 1
        z = outcome.z
        x = BilayerVector.from_symmetric(*z) if subspace is Subspace.SYMMETRIC else BilayerVector(tuple(z))
        residual = dense_cycle_residual(g, x, cycle)
        if residual > DENSE_RESIDUAL_TOLERANCE:
            logger.warning(
                f"g={g} {cycle.value}: root {z} has dense residual {residual:.3e}, discarded"
            )
            continue
        found.append(BilayerSolution(
            g=g,
            cycle=cycle,
            x=x,
            residual=residual,
            equation_residual=outcome.residual,
            psd=x.is_psd(),
            symmetric=x.symmetric_defect() < SYMMETRY_TOLERANCE,
        ))
    report.solutions = _dedup(found)
    logger.info(
        f"g={g} {cycle.value} {subspace.value}: {report.converged}/{starts} starts converged, "
        f"{len(report.solutions)} distinct solutions"
    )
    return report


@dataclass
class SymmetricFixedPoint:
    """The SU(2)-symmetric fixed point (0, 0, u) and the x1 slope there."""
    g: int
    u: float
    slope: float

    @property
    def unstable(self) -> bool:
        return self.slope < -1

    def to_dict(self) -> Dict[str, Any]:
        return {"g": self.g, "x3": self.u, "slope": self.slope, "unstable": self.unstable}


def symmetric_fixed_point(g: int, system: Optional[BilayerSystem] = None) -> SymmetricFixedPoint:
    """Root u in (0, 1) of n3(u) - u f0(u) on the line (0, 0, u), and d f1/d x1 there."""
    system = system or extract_system(g)
    line = system.axis_restriction()
    gap_expr = line["n3"].as_expr() - X3 * line["f0"].as_expr()
    gap = sympy.lambdify(X3, gap_expr, modules="numpy")

    grid = np.linspace(0.0, 1.0, FIXED_POINT_GRID + 1)[1:]
    bracket = bracket_first_root(lambda u: float(gap(u)), grid)
    if bracket is None:
        raise ConvergenceError(f"g={g}: no SU(2)-symmetric fixed point on (0, 1]")
    lo, hi = bracket
    u = lo if lo == hi else optimize.bisect(
        lambda v: float(gap(v)), lo, hi, xtol=BISECTION_TOLERANCE, maxiter=BISECTION_MAX_ITER
    )
    u = float(u)
    # n1 vanishes at x1 = 0, so d f1/d x1 = (d n1/d x1) / f0
    point = {X1: 0, X2: 0, X3: u}
    dn1 = sympy.diff(system.n1.as_expr(), X1).subs(point)
    f0 = system.f0.as_expr().subs(point)
    slope = float(dn1) / float(f0)
    logger.debug(f"g={g}: symmetric fixed point x3 = {u:.12f}, x1 slope {slope:.6f}")
    return SymmetricFixedPoint(g, u, slope)


def staggered_slope(g: int) -> float:
    return symmetric_fixed_point(g).slope


@dataclass
class DynamicsTrace:
    """Iterates of the normalized bilayer map from one start."""
    g: int
    iterates: List[BilayerVector]
    steps: List[float]  # max-norm distance between consecutive iterates

    @property
    def contraction(self) -> float:
        """Geometric mean ratio of the last few consecutive steps."""
        tail = [s for s in self.steps[-6:] if s > 0]
        if len(tail) < 2:
            return 0.0
        ratios = [b / a for a, b in zip(tail, tail[1:])]
        return float(math.exp(sum(math.log(r) for r in ratios) / len(ratios)))

    @property
    def final(self) -> BilayerVector:
        return self.iterates[-1]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "g": self.g,
            "steps": self.steps,
            "contraction": self.contraction,
            "final": self.final.to_dict(),
        }


def iterate_dynamics(g: int, x: BilayerVector, steps: int) -> DynamicsTrace:
    if steps < 1:
        raise ContractViolation(f"steps must be positive, got {steps}")
    iterates = [x]
    gaps = []
    for _ in range(steps):
        nxt = staggered_image(iterates[-1], g)
        gaps.append(nxt.distance(iterates[-1]))
        iterates.append(nxt)
    return DynamicsTrace(g, iterates, gaps)
