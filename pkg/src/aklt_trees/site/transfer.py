"""The normalized single-site transfer map and its boundary traces.

The map is unital: the identity word on the d-1 incoming legs goes to the
identity on the outgoing leg with coefficient 1.
"""
import logging
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb
from typing import List, Tuple

import numpy as np

from src.aklt_trees.pauli.operators import BlochVector, HSOperator, PauliWord
from src.aklt_trees.site.closed_form import NotCovered, closed_form_coefficient
from src.aklt_trees.site.dense import dense_transfer_table
from src.aklt_trees.site.moments import validate_degree
from src.aklt_trees.utils.errors import ContractViolation

logger = logging.getLogger(__name__)

# dense table entries below this are rounding noise
TABLE_NOISE = 1e-14


def _add_row(out: dict, row: np.ndarray, value) -> None:
    for b in range(4):
        if abs(row[b]) > TABLE_NOISE:
            key = PauliWord((b,))
            out[key] = out.get(key, 0) + float(value) * float(row[b])


class Backend(str, Enum):
    """How the single-site map is evaluated."""
    CLOSED_FORM = "closed_form"
    DENSE = "dense"


def apply_site_transfer(d: int, op: HSOperator, backend: Backend = Backend.CLOSED_FORM) -> HSOperator:
    """Image of an operator on the d-1 incoming legs, as a one-qubit operator."""
    d = validate_degree(d)
    if op.arity != d - 1:
        raise ContractViolation(
            f"degree-{d} site takes {d - 1} incoming legs, operator has arity {op.arity}"
        )
    backend = Backend(backend)
    out = {}
    if backend is Backend.DENSE:
        table = dense_transfer_table(d)
        for word, value in op.coeffs.items():
            _add_row(out, table[word.letters], value)
        return HSOperator(1, out)

    fallback = 0
    for word, value in op.coeffs.items():
        coeff = closed_form_coefficient(d, *word.counts)
        if isinstance(coeff, NotCovered):
            fallback += 1
            _add_row(out, dense_transfer_table(d)[word.letters], value)
            continue
        out[coeff.output] = out.get(coeff.output, 0) + value * coeff.value
    if fallback:
        logger.debug(f"{fallback} words outside the closed form took the dense path (d={d})")
    return HSOperator(1, out)


@lru_cache(maxsize=None)
def trace_polynomials(d: int) -> Tuple[Tuple[Fraction, ...], Tuple[Fraction, ...]]:
    """Coefficient lists of N0(t) = f_d(t) and N1(t) = f'_(d+1)(t) / d.

    N0 = sum over even k of C(d-1, k) t^k / (k+1)
    N1 = sum over odd k of C(d-1, k) t^k / (k+2)
    """
    d = validate_degree(d)
    n0 = [Fraction(0)] * d
    n1 = [Fraction(0)] * d
    for k in range(d):
        if k % 2 == 0:
            n0[k] = Fraction(comb(d - 1, k), k + 1)
        else:
            n1[k] = Fraction(comb(d - 1, k), k + 2)
    return tuple(n0), tuple(n1)


def _horner(coeffs, t: float) -> float:
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * t + float(c)
    return acc


def f_d(d: int, t: float) -> float:
    """((1+t)^d - (1-t)^d) / (2 d t), with f_d(0) = 1."""
    return _horner(trace_polynomials(d)[0], t)


def f_prime_next(d: int, t: float) -> float:
    """Derivative of f_(d+1) at t."""
    return d * _horner(trace_polynomials(d)[1], t)


def boundary_trace(d: int, x: BlochVector) -> Tuple[float, np.ndarray]:
    """Identity and sigma coefficients of the map applied to B(x).

    Returns (f_d(|x|), -x f'_(d+1)(|x|) / (d |x|)); the second entry is
    evaluated as -x * N1(t)/t so that |x| = 0 needs no special case.
    """
    d = validate_degree(d)
    t = x.norm
    _, n1 = trace_polynomials(d)
    # N1 has only odd powers
    n1_over_t = _horner(list(n1[1:]), t)
    return f_d(d, t), -np.asarray(x.x) * n1_over_t


def site_word_image(d: int, word: PauliWord, backend: Backend = Backend.CLOSED_FORM) -> HSOperator:
    return apply_site_transfer(d, HSOperator(d - 1, {word: 1}), backend)


def all_words(arity: int) -> List[PauliWord]:
    return [PauliWord(letters) for letters in product(range(4), repeat=arity)]
