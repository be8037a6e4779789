"""Order-parameter scans over tree families.

For a boundary B(t e_axis) every operator of the sweep stays diagonal in the
same axis, so the whole contraction collapses to one number per vertex. A
vertex whose incoming legs carry t_1, ..., t_m maps them to

    -sum_{k odd} e_k / (k + 2)  /  sum_{k even} e_k / (k + 1)

with e_k the elementary symmetric polynomials of the t_j. With all t_j = t
this is F_d(t); the scan tabulates it next to the tensor sweep.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence

import numpy as np
import pandas as pd

from src.aklt_trees.config import ORACLE_TOLERANCE, get_thread_count
from src.aklt_trees.core.paths import get_report_path
from src.aklt_trees.oracle.boundary import BoundaryAssignment
from src.aklt_trees.oracle.sweep import contract_expectation
from src.aklt_trees.oracle.trees import FiniteTree, TreeKind, tree_families
from src.aklt_trees.utils.errors import BackendMismatchError, ContractViolation

logger = logging.getLogger(__name__)

SCAN_COLUMNS = ["family", "params", "t", "depth", "expectation", "scalar_map_value"]


def vertex_scalar_map(inputs: Sequence[float]) -> float:
    """Normalized axis coefficient leaving a vertex with the given incoming values."""
    e = np.array([1.0])
    for t in inputs:
        e = np.convolve(e, [1.0, t])
    k = np.arange(e.size)
    odd = k % 2 == 1
    num = float(np.sum(e[odd] / (k[odd] + 2)))
    den = float(np.sum(e[~odd] / (k[~odd] + 1)))
    return -num / den


def scalar_sweep(tree: FiniteTree, t: float) -> float:
    """Root value of the scalar map for B(t e_axis), legs of sign s carrying s t."""
    if tree.kind is not TreeKind.SITES:
        raise ContractViolation("the scalar map covers site trees only")
    if not -1.0 <= t <= 1.0:
        raise ContractViolation(f"t must lie in [-1, 1], got {t}")
    done: Dict[int, float] = {}
    for v in tree.postorder():
        inputs = [done.pop(c) for c in tree.children(v)] + [s * t for s in tree.legs(v)]
        done[v] = vertex_scalar_map(inputs)
    return done[tree.root]


def _params_label(params: Dict[str, Any]) -> str:
    parts = []
    for key, value in params.items():
        name = getattr(value, "name", None)
        parts.append(f"{key}={name or value}")
    return ";".join(parts)


def family_factory(family: str, params: Dict[str, Any]) -> Callable[[int], FiniteTree]:
    families = tree_families()
    if family not in families:
        raise ContractViolation(f"unknown tree family {family!r}", f"Choose one of {sorted(families)}.")
    if family == "bilayer_cayley":
        raise ContractViolation(
            "bilayer trees have no scalar map",
            "Use contract_expectation with a 4x4 boundary instead.",
        )
    build = families[family]
    return lambda depth: build(**params, depth=depth)


def _scan_depth(family: str, label: str, tree: FiniteTree, depth: int,
                t_grid: Sequence[float], axis: int) -> List[Dict[str, Any]]:
    rows = []
    for t in t_grid:
        expectation = contract_expectation(tree, BoundaryAssignment.along(axis, t), axis)
        scalar = scalar_sweep(tree, t)
        if abs(expectation - scalar) > ORACLE_TOLERANCE:
            raise BackendMismatchError(
                f"{family}({label}) depth {depth}, t={t}: sweep {expectation!r} vs scalar map {scalar!r}"
            )
        rows.append({
            "family": family,
            "params": label,
            "t": float(t),
            "depth": depth,
            "expectation": expectation,
            "scalar_map_value": scalar,
        })
    return rows


def order_parameter_scan(family: str, params: Dict[str, Any], t_grid: Iterable[float],
                         depths: Iterable[int], axis: int = 3,
                         workers: Optional[int] = None) -> pd.DataFrame:
    """Root expectation of sigma_axis for every (depth, t), with the scalar map beside it.

    Rows are ordered by depth, then by t, whatever the worker count.
    """
    if axis not in (1, 2, 3):
        raise ContractViolation(f"axis must be 1, 2 or 3, got {axis}")
    factory = family_factory(family, params)
    t_grid = [float(t) for t in t_grid]
    depths = list(depths)
    label = _params_label(params)
    trees = [factory(n) for n in depths]

    workers = workers or get_thread_count()
    with ThreadPoolExecutor(max_workers=workers) as pool:
        chunks = list(pool.map(
            lambda item: _scan_depth(family, label, item[1], item[0], t_grid, axis),
            zip(depths, trees),
        ))
    df = pd.DataFrame([row for chunk in chunks for row in chunk], columns=SCAN_COLUMNS)
    logger.info(f"Scanned {family}({label}): {len(depths)} depths x {len(t_grid)} values of t")
    return df


def save_scan(df: pd.DataFrame, path: Optional[Path] = None, stem: str = "scan") -> Path:
    path = path or get_report_path("scans", stem, ".csv")
    path.parent.mkdir(parents=True, exist_ok=True)
    df.to_csv(path, index=False, columns=SCAN_COLUMNS)
    logger.info(f"Wrote scan table to {path}")
    return path
