"""Dense backend of the single-site map.

Built from explicit symmetric (Dicke) states in the computational basis of
d half-spins, with leg 0 the outgoing half-spin and |up> = |0>. No symmetry
shortcuts are used, so this backend is independent of the closed form.
"""
import logging
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from src.aklt_trees.config import MAX_DENSE_DEGREE, MAX_TABLE_DEGREE
from src.aklt_trees.core.cache import TableCache, cached_table
from src.aklt_trees.pauli.operators import PAULI
from src.aklt_trees.site.moments import validate_degree
from src.aklt_trees.utils.errors import BudgetExceededError

logger = logging.getLogger(__name__)

# singlet pairing |up down> - |down up>, as an operator on one leg
SINGLET = np.array([[0.0, 1.0], [-1.0, 0.0]])

_FACTOR_CACHE = TableCache("intertwiners")
_TABLE_CACHE = TableCache("site_tables")


def dicke_state(n: int, k: int) -> np.ndarray:
    """Normalized symmetric state of n half-spins with k spins down."""
    popcount = np.array([bin(i).count("1") for i in range(2 ** n)])
    state = np.where(popcount == k, 1.0, 0.0)
    return state / math.sqrt(math.comb(n, k))


def symmetric_projector(n: int) -> np.ndarray:
    """Projector onto the symmetric subspace of n half-spins, dense."""
    basis = np.stack([dicke_state(n, k) for k in range(n + 1)])
    return basis.T @ basis


@dataclass(frozen=True)
class IntertwinerFactors:
    """The operators W_k = S P_k, k = 0..d, each 2 x 2^(d-1).

    P_k = <D_k| read as a map from the incoming legs to the outgoing one,
    i.e. (|up><w_k| + |down><w_(k-1)|) / sqrt(C(d, k)) with w_j the
    unnormalized sum of incoming strings with j spins down.
    """
    degree: int
    factors: Tuple[np.ndarray, ...]

    @property
    def scale(self) -> float:
        return 2.0 / (self.degree + 1)

    def apply(self, matrix: np.ndarray) -> np.ndarray:
        """Normalized image (2/(d+1)) sum_k W_k M W_k^* of a dense operator."""
        matrix = np.asarray(matrix)
        out = np.zeros((2, 2), dtype=complex)
        for w in self.factors:
            out += w @ matrix @ w.conj().T
        return self.scale * out

    def normalization_defect(self) -> float:
        """max |(2/(d+1)) sum_k W_k W_k^* - 1|; zero up to rounding."""
        dim = 2 ** (self.degree - 1)
        return float(np.abs(self.apply(np.eye(dim)) - np.eye(2)).max())


def _build_factors(d: int) -> IntertwinerFactors:
    half = 2 ** (d - 1)
    factors = []
    for k in range(d + 1):
        # row a of P_k holds the amplitudes <a, rest|D_k>
        p_k = dicke_state(d, k).reshape(2, half)
        factors.append(SINGLET @ p_k)
    logger.debug(f"Built {d + 1} intertwiners for degree {d}")
    return IntertwinerFactors(d, tuple(factors))


def intertwiners(d: int) -> IntertwinerFactors:
    d = validate_degree(d)
    if d > MAX_DENSE_DEGREE:
        raise BudgetExceededError(
            f"dense intertwiners for degree {d} exceed the limit {MAX_DENSE_DEGREE}",
            "Use the closed form or the scalar transfer function for large degrees.",
        )
    return cached_table(_FACTOR_CACHE, d, lambda: _build_factors(d))


def pauli_components(matrix: np.ndarray, n: int) -> np.ndarray:
    """Pauli coefficients c[a1..an] of a 2^n x 2^n matrix, M = sum c_w sigma_w."""
    tensor = np.asarray(matrix, dtype=complex).reshape((2,) * (2 * n))
    # interleave (row_i, col_i) per qubit
    order = [axis for i in range(n) for axis in (i, n + i)]
    tensor = tensor.transpose(order).reshape((4,) * n)
    # c_a = Tr[sigma_a m] / 2 = sum_ij (sigma_a)_ji m_ij / 2
    basis = np.stack([p.T.reshape(4) for p in PAULI]) / 2.0
    for axis in range(n):
        tensor = np.moveaxis(np.tensordot(basis, tensor, axes=([1], [axis])), 0, axis)
    return tensor


def _build_table(d: int) -> np.ndarray:
    factors = intertwiners(d)
    n = d - 1
    table = np.zeros((4,) * n + (4,))
    for b in range(4):
        q_b = sum(w.conj().T @ PAULI[b] @ w for w in factors.factors)
        # c_b(sigma_w) = Tr[Q_b sigma_w] / (d + 1) = 2^n q_w / (d + 1)
        comps = pauli_components(q_b, n) * (2 ** n) / (d + 1)
        if np.abs(comps.imag).max() > 1e-12:
            raise BudgetExceededError(f"transfer table for degree {d} is not real")
        table[..., b] = comps.real
    logger.debug(f"Built Pauli transfer table for degree {d}")
    return table


def dense_transfer_table(d: int) -> np.ndarray:
    """table[w1, ..., w_(d-1), b]: coefficient of sigma_b in the image of sigma_w."""
    d = validate_degree(d)
    if d > MAX_TABLE_DEGREE:
        raise BudgetExceededError(
            f"Pauli transfer table for degree {d} exceeds the limit {MAX_TABLE_DEGREE}",
            "Apply the intertwiners to dense operators instead.",
        )
    return cached_table(_TABLE_CACHE, d, lambda: _build_table(d))
