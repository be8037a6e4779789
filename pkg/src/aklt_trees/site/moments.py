"""Symmetric-subspace moments of Pauli strings.

For the projector P_d onto the symmetric subspace of d half-spins and a
Pauli string with k_i copies of sigma_i (padded with identities),

    Tr[P_d string] / (d + 1)

does not depend on d. It vanishes unless every k_i is even, in which case
it equals (1/(k+1)) * multinom(k/2; k_i/2) / multinom(k; k_i).
"""
import math
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Tuple

from src.aklt_trees.config import MIN_DEGREE
from src.aklt_trees.utils.errors import ContractViolation


def validate_degree(d: int) -> int:
    if isinstance(d, bool) or int(d) != d or d < MIN_DEGREE:
        raise ContractViolation(
            f"site degree must be an integer >= {MIN_DEGREE}, got {d}",
            "A site has one outgoing and at least one incoming edge.",
        )
    return int(d)


def multinomial(total: int, parts: Sequence[int]) -> int:
    if sum(parts) != total or any(p < 0 for p in parts):
        raise ContractViolation(f"parts {tuple(parts)} do not split {total}")
    out = math.factorial(total)
    for p in parts:
        out //= math.factorial(p)
    return out


@lru_cache(maxsize=None)
def _moment(counts: Tuple[int, int, int]) -> Fraction:
    if any(c % 2 for c in counts):
        return Fraction(0)
    k = sum(counts)
    halves = tuple(c // 2 for c in counts)
    return Fraction(multinomial(k // 2, halves), (k + 1) * multinomial(k, counts))


def symmetric_moment(counts: Sequence[int]) -> Fraction:
    """Normalized symmetric trace of a string with the given axis counts."""
    counts = tuple(int(c) for c in counts)
    if len(counts) != 3 or any(c < 0 for c in counts):
        raise ContractViolation(f"axis counts must be three nonnegative ints, got {counts}")
    return _moment(counts)


def site_coefficient(letters: Sequence[int], output: int) -> Fraction:
    """Exact coefficient of sigma_output in the image of sigma_letters.

    c_b = s_b * Tr[P_d (sigma_b x word)] / (d+1), s_0 = +1 and s_b = -1 otherwise;
    the degree only enters through len(letters) + 1.
    """
    counts = [0, 0, 0]
    for a in tuple(letters) + (output,):
        if a:
            counts[a - 1] += 1
    value = symmetric_moment(counts)
    return value if output == 0 else -value
