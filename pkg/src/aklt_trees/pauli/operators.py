"""Pauli-basis operators, Bloch vectors and product boundary conditions.

An operator on m qubits is stored as a sparse map from Pauli words (letters
0..3, 0 being the identity) to real coefficients. Coefficients may be floats
or Fractions; nothing here forces one or the other.
"""
import itertools
import logging
import math
from dataclasses import dataclass, field
from functools import reduce
from numbers import Real
from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple

import numpy as np

from src.aklt_trees.config import PSD_FLOOR
from src.aklt_trees.utils.errors import BoundaryError, ContractViolation

logger = logging.getLogger(__name__)

PAULI = (
    np.array([[1, 0], [0, 1]], dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)

# Slack on |x| <= 1 for vectors assembled from floats
NORM_SLACK = 1e-12


@dataclass(frozen=True, order=True)
class PauliWord:
    """A tensor product of Pauli letters, one per qubit."""
    letters: Tuple[int, ...]

    def __post_init__(self):
        letters = tuple(int(a) for a in self.letters)
        for a in letters:
            if a not in (0, 1, 2, 3):
                raise ContractViolation(
                    f"Pauli letter {a} outside 0..3",
                    "Use 0 for the identity and 1, 2, 3 for sigma_1..sigma_3.",
                )
        object.__setattr__(self, "letters", letters)

    @property
    def arity(self) -> int:
        return len(self.letters)

    @property
    def counts(self) -> Tuple[int, int, int]:
        """How many times sigma_1, sigma_2, sigma_3 occur."""
        return tuple(self.letters.count(a) for a in (1, 2, 3))

    @property
    def weight(self) -> int:
        return sum(1 for a in self.letters if a)

    @classmethod
    def identity(cls, arity: int) -> "PauliWord":
        return cls((0,) * arity)

    def to_dense(self) -> np.ndarray:
        if not self.letters:
            return np.ones((1, 1), dtype=complex)
        return reduce(np.kron, (PAULI[a] for a in self.letters))

    def __str__(self) -> str:
        return "".join("I123"[a] for a in self.letters) or "-"


@dataclass(frozen=True)
class HSOperator:
    """Hermitian operator on `arity` qubits with real Pauli coefficients.

    Zero coefficients are dropped on construction.
    """
    arity: int
    coeffs: Mapping[PauliWord, Real] = field(default_factory=dict)

    def __post_init__(self):
        if self.arity < 1:
            raise ContractViolation(f"operator arity must be positive, got {self.arity}")
        cleaned: Dict[PauliWord, Real] = {}
        for word, value in self.coeffs.items():
            if not isinstance(word, PauliWord):
                word = PauliWord(tuple(word))
            if word.arity != self.arity:
                raise ContractViolation(
                    f"word {word} has arity {word.arity}, operator has {self.arity}"
                )
            if isinstance(value, complex):
                raise ContractViolation(
                    f"coefficient of {word} is complex",
                    "Pauli coefficients of a Hermitian operator are real.",
                )
            if value != 0:
                cleaned[word] = cleaned.get(word, 0) + value
        object.__setattr__(self, "coeffs", cleaned)

    @classmethod
    def identity(cls, arity: int) -> "HSOperator":
        return cls(arity, {PauliWord.identity(arity): 1})

    @classmethod
    def from_terms(cls, arity: int, terms: Iterable[Tuple[PauliWord, Real]]) -> "HSOperator":
        acc: Dict[PauliWord, Real] = {}
        for word, value in terms:
            acc[word] = acc.get(word, 0) + value
        return cls(arity, acc)

    @classmethod
    def from_dense(cls, matrix: np.ndarray, tol: float = 1e-14) -> "HSOperator":
        """Project a 2^n x 2^n matrix onto the Pauli basis (small n only)."""
        matrix = np.asarray(matrix, dtype=complex)
        dim = matrix.shape[0]
        arity = int(round(math.log2(dim)))
        if matrix.shape != (dim, dim) or 2 ** arity != dim:
            raise ContractViolation(f"expected a 2^n square matrix, got shape {matrix.shape}")
        terms = {}
        for letters in itertools.product(range(4), repeat=arity):
            word = PauliWord(letters)
            value = np.trace(word.to_dense() @ matrix) / dim
            if abs(value.imag) > 1e-10:
                raise ContractViolation("matrix is not Hermitian")
            if abs(value.real) > tol:
                terms[word] = float(value.real)
        return cls(arity, terms)

    def coefficient(self, word) -> Real:
        if not isinstance(word, PauliWord):
            word = PauliWord(tuple(word))
        return self.coeffs.get(word, 0)

    def items(self) -> Iterator[Tuple[PauliWord, Real]]:
        return iter(sorted(self.coeffs.items()))

    def scaled(self, factor: Real) -> "HSOperator":
        return HSOperator(self.arity, {w: factor * v for w, v in self.coeffs.items()})

    def __add__(self, other: "HSOperator") -> "HSOperator":
        if other.arity != self.arity:
            raise ContractViolation(f"cannot add arity {self.arity} and {other.arity}")
        return HSOperator.from_terms(
            self.arity, itertools.chain(self.coeffs.items(), other.coeffs.items())
        )

    def bloch(self) -> np.ndarray:
        """(sigma_1, sigma_2, sigma_3) coefficients of a one-qubit operator."""
        if self.arity != 1:
            raise ContractViolation(f"bloch() needs arity 1, got {self.arity}")
        return np.array([float(self.coefficient((a,))) for a in (1, 2, 3)])

    def to_dict(self) -> Dict[str, Real]:
        return {str(w): v for w, v in self.items()}


@dataclass(frozen=True)
class BlochVector:
    """Real 3-vector x with |x| <= 1."""
    x: Tuple[float, float, float]

    def __post_init__(self):
        x = tuple(float(v) for v in self.x)
        if len(x) != 3:
            raise BoundaryError(f"Bloch vector needs 3 components, got {len(x)}")
        if math.fsum(v * v for v in x) > (1.0 + NORM_SLACK) ** 2:
            raise BoundaryError(
                f"Bloch vector {x} has norm above 1",
                "Product boundaries 1 + x.sigma are positive only for |x| <= 1.",
            )
        object.__setattr__(self, "x", x)

    @classmethod
    def along(cls, axis: int, t: float) -> "BlochVector":
        """t * e_axis, axis in 1..3."""
        if axis not in (1, 2, 3):
            raise ContractViolation(f"axis must be 1, 2 or 3, got {axis}")
        x = [0.0, 0.0, 0.0]
        x[axis - 1] = t
        return cls(tuple(x))

    @property
    def norm(self) -> float:
        return math.sqrt(math.fsum(v * v for v in self.x))

    def component(self, letter: int) -> float:
        return 1.0 if letter == 0 else self.x[letter - 1]


@dataclass(frozen=True)
class ProductBoundary:
    """B(x) = tensor over sites of (1 + sign_site * x.sigma)."""
    x: BlochVector
    site_count: int
    signs: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.site_count < 1:
            raise BoundaryError(f"site_count must be positive, got {self.site_count}")
        signs = tuple(self.signs) if self.signs else (1,) * self.site_count
        if len(signs) != self.site_count:
            raise BoundaryError(
                f"{len(signs)} signs for {self.site_count} sites",
                "Give one sign per boundary site or none at all.",
            )
        if any(s not in (1, -1) for s in signs):
            raise BoundaryError(f"signs must be +1 or -1, got {signs}")
        object.__setattr__(self, "signs", signs)

    @classmethod
    def alternating(cls, x: BlochVector, site_count: int, start: int = 1) -> "ProductBoundary":
        signs = tuple(start * (-1) ** i for i in range(site_count))
        return cls(x, site_count, signs)


def site_matrix(x: Sequence[float], sign: int = 1) -> np.ndarray:
    """Dense 2x2 matrix 1 + sign * x.sigma."""
    out = PAULI[0].copy()
    for a in (1, 2, 3):
        out = out + sign * x[a - 1] * PAULI[a]
    return out


def to_dense(op: HSOperator) -> np.ndarray:
    dim = 2 ** op.arity
    out = np.zeros((dim, dim), dtype=complex)
    for word, value in op.coeffs.items():
        out += float(value) * word.to_dense()
    return out


def traceless_norm(op: HSOperator) -> float:
    """Euclidean norm of the sigma coefficients of a one-qubit operator.

    For arity 1 this is the spectral norm of the traceless part.
    """
    if op.arity != 1:
        raise ContractViolation(
            f"traceless_norm needs a one-qubit operator, got arity {op.arity}"
        )
    return float(np.linalg.norm(op.bloch()))


def boundary_expand(b: ProductBoundary) -> List[Tuple[PauliWord, float]]:
    """Expand B(x) into Pauli words.

    Each word carries prod over its non-identity letters of sign_site * x_letter;
    words that would carry an exactly zero coefficient are skipped.
    """
    live = [0] + [a for a in (1, 2, 3) if b.x.component(a) != 0.0]
    terms = []
    for letters in itertools.product(live, repeat=b.site_count):
        value = 1.0
        for sign, a in zip(b.signs, letters):
            if a:
                value *= sign * b.x.component(a)
        terms.append((PauliWord(letters), value))
    return terms


def boundary_operator(b: ProductBoundary) -> HSOperator:
    return HSOperator.from_terms(b.site_count, boundary_expand(b))


def is_psd(matrix: np.ndarray, floor: float = PSD_FLOOR) -> bool:
    return bool(np.linalg.eigvalsh(np.asarray(matrix, dtype=complex)).min() >= floor)
