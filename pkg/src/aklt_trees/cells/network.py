"""Dense contraction of a cell's valence-bond network.

For a cell with sites x, symmetric projectors P_x on their half-spin legs,
singlet projectors on internal edges, pendant operators 1 + s_x t sigma_1 on
boundary legs and sigma_a on the top site's root leg,

    N_a(t) = Tr[ (prod P_x) (prod |s><s|) (prod pendants) sigma_a ].

The cell transfer function is F(t) = -N_1(t)/N_0(t). Every factor is real
and symmetric, so the network is contracted in exact rationals (object
arrays of Fractions) or in floats with the same code.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Hashable, List, Sequence, Tuple

import numpy as np
import sympy

from src.aklt_trees.cells.graph import CellGraph
from src.aklt_trees.config import MAX_ORACLE_CELL_SITES
from src.aklt_trees.utils.errors import BudgetExceededError

logger = logging.getLogger(__name__)

Label = Tuple[str, Hashable]


@dataclass
class Tensor:
    data: np.ndarray
    labels: List[Label]


def projector_tensor(d: int, exact: bool = True) -> np.ndarray:
    """Symmetric projector on d half-spins as a (2,)*2d tensor [kets, bras]."""
    dim = 2 ** d
    popcount = [bin(i).count("1") for i in range(dim)]
    dtype = object if exact else float
    out = np.zeros((dim, dim), dtype=dtype)
    if exact:
        out[:] = Fraction(0)
    for i in range(dim):
        for j in range(dim):
            if popcount[i] == popcount[j]:
                value = Fraction(1, comb(d, popcount[i]))
                out[i, j] = value if exact else float(value)
    return out.reshape((2,) * (2 * d))


def singlet_tensor(exact: bool = True) -> np.ndarray:
    """|s><s| on two half-spins as a (2,2,2,2) tensor [row_u, row_v, col_u, col_v]."""
    half = Fraction(1, 2) if exact else 0.5
    zero = Fraction(0) if exact else 0.0
    mat = np.array(
        [
            [zero, zero, zero, zero],
            [zero, half, -half, zero],
            [zero, -half, half, zero],
            [zero, zero, zero, zero],
        ],
        dtype=object if exact else float,
    )
    return mat.reshape(2, 2, 2, 2)


def _one_leg(a: int, scale, exact: bool) -> np.ndarray:
    """identity (a=0) or scale * sigma_1 (a=1) as a 2x2 array."""
    one = Fraction(1) if exact else 1.0
    zero = Fraction(0) if exact else 0.0
    if a == 0:
        rows = [[one, zero], [zero, one]]
    else:
        rows = [[zero, scale], [scale, zero]]
    return np.array(rows, dtype=object if exact else float)


def _pendant(sign: int, t, exact: bool) -> np.ndarray:
    return _one_leg(0, None, exact) + _one_leg(1, sign * t, exact)


def contract(tensors: List[Tensor]):
    """Contract a closed network greedily; returns the scalar."""
    tensors = list(tensors)
    while len(tensors) > 1:
        best = None
        for i in range(len(tensors)):
            for j in range(i + 1, len(tensors)):
                shared = set(tensors[i].labels) & set(tensors[j].labels)
                if not shared:
                    continue
                size = len(tensors[i].labels) + len(tensors[j].labels) - 2 * len(shared)
                if best is None or size < best[0]:
                    best = (size, i, j, shared)
        if best is None:
            # disconnected pieces: outer product of the first two
            a, b = tensors[0], tensors[1]
            merged = Tensor(np.multiply.outer(a.data, b.data), a.labels + b.labels)
            tensors = [merged] + tensors[2:]
            continue
        _, i, j, shared = best
        a, b = tensors[i], tensors[j]
        shared = sorted(shared, key=str)
        axes_a = [a.labels.index(s) for s in shared]
        axes_b = [b.labels.index(s) for s in shared]
        data = np.tensordot(a.data, b.data, axes=(axes_a, axes_b))
        labels = [l for l in a.labels if l not in shared] + [l for l in b.labels if l not in shared]
        tensors = [t for k, t in enumerate(tensors) if k not in (i, j)] + [Tensor(data, labels)]
    result = tensors[0]
    if result.labels:
        raise BudgetExceededError(f"network left open labels {result.labels}")
    return result.data[()] if isinstance(result.data, np.ndarray) else result.data


def _site_legs(cell: CellGraph) -> dict:
    """Leg names per site: one per incident edge, one per boundary entry."""
    legs = {x: [] for x in cell.sites}
    for e in cell.edges:
        for x in e:
            if x != cell.root:
                legs[x].append(("edge", e, x))
    for k, x in enumerate(cell.boundary):
        legs[x].append(("pendant", k, x))
    return legs


def network_value(cell: CellGraph, a: int, t, exact: bool = True):
    """N_a(t) for a in {0, 1}."""
    if len(cell.sites) > MAX_ORACLE_CELL_SITES:
        raise BudgetExceededError(
            f"cell {cell.name} has {len(cell.sites)} sites, dense limit is {MAX_ORACLE_CELL_SITES}",
            "Use the diagram convention or a smaller cell.",
        )
    legs = _site_legs(cell)
    tensors = []
    for x, xlegs in legs.items():
        labels = [("ket", leg) for leg in xlegs] + [("bra", leg) for leg in xlegs]
        tensors.append(Tensor(projector_tensor(len(xlegs), exact), labels))

    # operators enter the trace transposed: rows on bra labels, columns on kets
    for u, v in cell.internal_edges():
        e = (u, v)
        lu, lv = ("edge", e, u), ("edge", e, v)
        labels = [("bra", lu), ("bra", lv), ("ket", lu), ("ket", lv)]
        tensors.append(Tensor(singlet_tensor(exact), labels))
    for k, x in enumerate(cell.boundary):
        leg = ("pendant", k, x)
        op = _pendant(cell.pendant_sign(x), t, exact)
        tensors.append(Tensor(op, [("bra", leg), ("ket", leg)]))
    root_edge = next(e for e in cell.edges if cell.root in e)
    leg = ("edge", root_edge, cell.top)
    tensors.append(Tensor(_one_leg(a, Fraction(1) if exact else 1.0, exact), [("bra", leg), ("ket", leg)]))
    return contract(tensors)


def dense_ratio(cell: CellGraph, t: float) -> float:
    """F_cell(t) = -N_1(t)/N_0(t) from a float contraction."""
    n0 = network_value(cell, 0, float(t), exact=False)
    n1 = network_value(cell, 1, float(t), exact=False)
    return -float(n1) / float(n0)


def interpolate_exact(samples: Sequence[Tuple[int, Fraction]]) -> List[Fraction]:
    """Ascending coefficients of the polynomial through integer samples."""
    T = sympy.Symbol("t")
    points = [(sympy.Integer(x), sympy.Rational(v.numerator, v.denominator)) for x, v in samples]
    poly = sympy.Poly(sympy.interpolate(points, T), T, domain=sympy.QQ)
    coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs())]
    return coeffs or [Fraction(0)]


def network_polynomials(cell: CellGraph) -> Tuple[List[Fraction], List[Fraction]]:
    """Exact N_0 and N_1 as coefficient lists in t.

    Each pendant is linear in t, so |boundary| + 1 samples determine both.
    """
    samples = range(len(cell.boundary) + 1)
    n0 = interpolate_exact([(t, network_value(cell, 0, Fraction(t))) for t in samples])
    n1 = interpolate_exact([(t, network_value(cell, 1, Fraction(t))) for t in samples])
    logger.debug(f"{cell.name or 'cell'}: N0 = {n0}, N1 = {n1}")
    return n0, n1
