"""The bilayer-node transfer map.

A bilayer node is two sites a and b of degree g + 2 joined by a rung singlet.
Each site has one parent leg and g child legs; child pair j is (a_j, b_j) and
the output lives on the parent pair (a, b). The map is normalized so that the
identity coefficient of the image of the identity is 1; it is not unital.

Coordinates are staggered: a Pauli letter on the b layer carries an extra
sign, because b sits on the other sublattice. In that frame the image of the
identity is 1 + (1/9) sum_i sigma_i x sigma_i.

Two independent constructions are kept:

* BilayerMap: dense Kraus operators built from Dicke states, used to verify
  every reported solution;
* pauli_table: exact integer Pauli transfer table from the moment rule,
  T[(l_1 k_1), ..., (l_g k_g), (l k)] = sum_rho eps_rho a[rho, l.., l] a[rho, k.., k],
  used to extract the exact polynomial systems.
"""
import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np

from src.aklt_trees.config import MAX_BILAYER_G, PSD_FLOOR
from src.aklt_trees.core.cache import TableCache, cached_table
from src.aklt_trees.pauli.operators import PAULI, is_psd
from src.aklt_trees.site.dense import SINGLET, dicke_state, pauli_components
from src.aklt_trees.site.moments import site_coefficient
from src.aklt_trees.utils.errors import BudgetExceededError, ContractViolation

logger = logging.getLogger(__name__)

# rung singlet as (1/4) sum_rho eps_rho sigma_rho x sigma_rho
RUNG_SIGNS = (1, -1, -1, -1)

# staggered frame sign of coefficient (l, k)
STAGGER = np.array([[1.0 if k == 0 else -1.0 for k in range(4)] for _ in range(4)])

_MAP_CACHE = TableCache("bilayer_maps")
_TABLE_CACHE = TableCache("bilayer_tables")

PAIR_WORDS = tuple(itertools.product(range(4), repeat=2))


def validate_splitting(g: int) -> int:
    if isinstance(g, bool) or int(g) != g or g < 1:
        raise ContractViolation(f"splitting number must be a positive integer, got {g}")
    if g > MAX_BILAYER_G:
        raise BudgetExceededError(
            f"bilayer map for g={g} exceeds the dense limit {MAX_BILAYER_G}",
            "Bilayer trees are only handled for g <= 4.",
        )
    return int(g)


def pair_operator(coeffs: np.ndarray) -> np.ndarray:
    """4x4 operator sum c[l, k] sigma_l x sigma_k from raw coefficients."""
    out = np.zeros((4, 4), dtype=complex)
    for l, k in PAIR_WORDS:
        if coeffs[l, k] != 0:
            out += coeffs[l, k] * np.kron(PAULI[l], PAULI[k])
    return out


@dataclass(frozen=True)
class BilayerVector:
    """B = 1 x 1 + sum x_lk sigma_l x sigma_k in staggered coordinates.

    `x` holds the 15 components (l, k) != (0, 0) in row-major order.
    """
    x: Tuple[float, ...]

    def __post_init__(self):
        x = tuple(float(v) for v in self.x)
        if len(x) != 15:
            raise ContractViolation(f"a bilayer vector has 15 components, got {len(x)}")
        object.__setattr__(self, "x", x)

    @classmethod
    def zero(cls) -> "BilayerVector":
        return cls((0.0,) * 15)

    @classmethod
    def from_grid(cls, grid: np.ndarray) -> "BilayerVector":
        """From a 4x4 staggered coefficient grid, dividing by its [0, 0] entry."""
        grid = np.asarray(grid, dtype=float)
        if grid[0, 0] == 0:
            raise ContractViolation("identity coefficient vanishes")
        return cls(tuple((grid / grid[0, 0]).reshape(16)[1:]))

    @classmethod
    def from_symmetric(cls, x1: float, x2: float, x3: float) -> "BilayerVector":
        grid = np.zeros((4, 4))
        grid[0, 0] = 1.0
        for i in (1, 2, 3):
            grid[0, i] = grid[i, 0] = x1
            grid[i, i] = x3
            for j in (1, 2, 3):
                if i != j:
                    grid[i, j] = x2
        return cls.from_grid(grid)

    @classmethod
    def from_dense(cls, matrix: np.ndarray) -> "BilayerVector":
        raw = pauli_components(matrix, 2)
        if np.abs(raw.imag).max() > 1e-10:
            raise ContractViolation("pair operator is not Hermitian")
        return cls.from_grid(raw.real * STAGGER)

    def grid(self) -> np.ndarray:
        return np.concatenate([[1.0], self.x]).reshape(4, 4)

    def raw_grid(self) -> np.ndarray:
        return self.grid() * STAGGER

    def to_dense(self) -> np.ndarray:
        """The physical 4x4 operator."""
        return pair_operator(self.raw_grid())

    def is_psd(self, floor: float = PSD_FLOOR) -> bool:
        return is_psd(self.to_dense(), floor)

    def symmetric_coords(self) -> Tuple[float, float, float]:
        """Averages of the x1, x2 and x3 classes."""
        grid = self.grid()
        block = grid[1:, 1:]
        x1 = (grid[0, 1:].sum() + grid[1:, 0].sum()) / 6.0
        x3 = np.trace(block) / 3.0
        x2 = (block.sum() - np.trace(block)) / 6.0
        return float(x1), float(x2), float(x3)

    def symmetric_defect(self) -> float:
        """Max distance from the symmetric embedding of symmetric_coords()."""
        sym = BilayerVector.from_symmetric(*self.symmetric_coords())
        return float(np.abs(self.grid() - sym.grid()).max())

    def flipped(self) -> "BilayerVector":
        """x1 block (single-sigma components) negated."""
        grid = self.grid()
        grid[0, 1:] *= -1
        grid[1:, 0] *= -1
        return BilayerVector.from_grid(grid)

    def distance(self, other: "BilayerVector") -> float:
        return float(np.abs(np.asarray(self.x) - np.asarray(other.x)).max())

    def to_dict(self) -> Dict[str, Any]:
        x1, x2, x3 = self.symmetric_coords()
        return {
            "x": list(self.x),
            "x1": x1,
            "x2": x2,
            "x3": x3,
            "symmetric_defect": self.symmetric_defect(),
            "psd": self.is_psd(),
        }


@dataclass(frozen=True)
class BilayerMap:
    """Dense Kraus form: T(M) = scale * sum_kl V_kl M V_kl^*.

    V_kl maps the 2g child half-spins (ordered a_1, b_1, ..., a_g, b_g) to the
    parent pair (a, b).
    """
    g: int
    kraus: Tuple[np.ndarray, ...]
    scale: float

    def raw_apply(self, matrix: np.ndarray) -> np.ndarray:
        out = np.zeros((4, 4), dtype=complex)
        for v in self.kraus:
            out += v @ matrix @ v.conj().T
        return out

    def apply(self, matrix: np.ndarray) -> np.ndarray:
        return self.scale * self.raw_apply(np.asarray(matrix, dtype=complex))

    def apply_product(self, operators: Sequence[np.ndarray]) -> np.ndarray:
        if len(operators) != self.g:
            raise ContractViolation(f"g={self.g} map takes {self.g} pair operators, got {len(operators)}")
        matrix = operators[0]
        for op in operators[1:]:
            matrix = np.kron(matrix, op)
        return self.apply(matrix)

    def apply_vector(self, x: BilayerVector) -> BilayerVector:
        """Normalized image of B(x)^(x g), in staggered coordinates."""
        dense = x.to_dense()
        return BilayerVector.from_dense(self.apply_product([dense] * self.g))

    def image_of_identity(self) -> np.ndarray:
        """Staggered coefficient grid of T(1)."""
        out = self.apply(np.eye(4 ** self.g))
        return pauli_components(out, 2).real * STAGGER


def _build_map(g: int) -> BilayerMap:
    d = g + 2
    half = 2 ** g
    kraus = []
    for k in range(d + 1):
        a_k = dicke_state(d, k).reshape(2, 2, half)  # parent, rung, children
        for l in range(d + 1):
            b_l = dicke_state(d, l).reshape(2, 2, half)
            # S on both parent legs, the rung pairs r with s
            v = np.einsum("xa,yb,rs,arc,bse->xyce", SINGLET, SINGLET, SINGLET, a_k, b_l)
            # split children into single legs and interleave the two layers
            v = v.reshape((2, 2) + (2,) * g + (2,) * g)
            order = [0, 1] + [axis for j in range(g) for axis in (2 + j, 2 + g + j)]
            kraus.append(v.transpose(order).reshape(4, 4 ** g))
    bare = BilayerMap(g, tuple(kraus), 1.0)
    trace = np.trace(bare.raw_apply(np.eye(4 ** g))).real
    logger.debug(f"Built {len(kraus)} bilayer Kraus operators for g={g}")
    return BilayerMap(g, tuple(kraus), 4.0 / trace)


def build_bilayer_map(g: int) -> BilayerMap:
    g = validate_splitting(g)
    return cached_table(_MAP_CACHE, ("dense", g), lambda: _build_map(g))


def _site_table(g: int) -> List[List[List[Fraction]]]:
    """a[rho][children word index][output letter] for a site of degree g + 2."""
    words = list(itertools.product(range(4), repeat=g))
    return [
        [[site_coefficient((rho,) + w, out) for out in range(4)] for w in words]
        for rho in range(4)
    ]


@dataclass(frozen=True)
class PauliTable:
    """Exact raw-frame table as integers over a common denominator."""
    g: int
    numerators: np.ndarray  # shape (16,) * g + (16,), int64
    denominator: int

    def as_float(self) -> np.ndarray:
        return self.numerators / float(self.denominator)

    def entry(self, inputs: Sequence[int], output: int) -> Fraction:
        return Fraction(int(self.numerators[tuple(inputs) + (output,)]), self.denominator)


def _build_table(g: int) -> PauliTable:
    a = _site_table(g)
    lcm = 1
    for plane in a:
        for row in plane:
            for value in row:
                lcm = math.lcm(lcm, value.denominator)
    a_int = np.array(
        [[[int(v * lcm) for v in row] for row in plane] for plane in a], dtype=np.int64
    ).reshape((4,) + (4,) * g + (4,))
    table = np.zeros((4,) * (g + 1) + (4,) * (g + 1), dtype=np.int64)
    for rho, sign in enumerate(RUNG_SIGNS):
        table += sign * np.multiply.outer(a_int[rho], a_int[rho])
    # axes (l_1..l_g, l, k_1..k_g, k) -> (l_1 k_1, ..., l_g k_g, l k)
    order = [axis for j in range(g + 1) for axis in (j, g + 1 + j)]
    table = table.transpose(order).reshape((16,) * (g + 1))
    logger.debug(f"Built exact bilayer table for g={g}, denominator {lcm * lcm}")
    return PauliTable(g, table, lcm * lcm)


def pauli_table(g: int) -> PauliTable:
    g = validate_splitting(g)
    return cached_table(_TABLE_CACHE, ("table", g), lambda: _build_table(g))


def table_apply(table: np.ndarray, vectors: Sequence[np.ndarray]) -> np.ndarray:
    """Contract a (16,)*(g+1) table with g raw 16-vectors; returns the raw 16-vector."""
    out = table
    for vec in vectors:
        out = np.tensordot(vec, out, axes=([0], [0]))
    return out


def staggered_image(x: BilayerVector, g: int) -> BilayerVector:
    """Normalized image of B(x)^(x g) through the float Pauli table."""
    raw = x.raw_grid().reshape(16)
    out = table_apply(pauli_table(g).as_float(), [raw] * g).reshape(4, 4)
    return BilayerVector.from_grid(out * STAGGER)
