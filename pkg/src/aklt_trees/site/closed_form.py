"""Closed-form Pauli matrix elements of the normalized single-site map.

A Pauli input word is classified by its axis counts (k1, k2, k3). When all
counts are even the word maps to a multiple of the identity; when exactly
one count is odd it maps to a multiple of that axis' sigma with a minus
sign. Words with two or three odd counts are outside the closed form.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Tuple, Union

from src.aklt_trees.pauli.operators import PauliWord
from src.aklt_trees.site.moments import symmetric_moment, validate_degree
from src.aklt_trees.utils.errors import ContractViolation


@dataclass(frozen=True)
class TransferCoefficient:
    """Nonzero image coefficient of one input class."""
    degree: int
    counts: Tuple[int, int, int]
    value: Fraction
    output: PauliWord

    def to_dict(self) -> Dict[str, Any]:
        return {
            "d": self.degree,
            "counts": list(self.counts),
            "value": self.value,
            "output": str(self.output),
        }


@dataclass(frozen=True)
class NotCovered:
    """Input class whose image the closed form does not describe."""
    degree: int
    counts: Tuple[int, int, int]
    odd_axes: Tuple[int, ...]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "d": self.degree,
            "counts": list(self.counts),
            "covered": False,
            "odd_axes": list(self.odd_axes),
        }


def closed_form_coefficient(d: int, k1: int, k2: int, k3: int) -> Union[TransferCoefficient, NotCovered]:
    d = validate_degree(d)
    counts = (int(k1), int(k2), int(k3))
    if any(c < 0 for c in counts):
        raise ContractViolation(f"axis counts must be nonnegative, got {counts}")
    if sum(counts) > d - 1:
        raise ContractViolation(
            f"k = {sum(counts)} exceeds the {d - 1} incoming legs of a degree-{d} site"
        )

    odd_axes = tuple(axis for axis, c in zip((1, 2, 3), counts) if c % 2)
    if not odd_axes:
        return TransferCoefficient(d, counts, symmetric_moment(counts), PauliWord((0,)))
    if len(odd_axes) > 1:
        return NotCovered(d, counts, odd_axes)

    # promote the odd axis to even; the output letter carries the minus sign
    axis = odd_axes[0]
    promoted = list(counts)
    promoted[axis - 1] += 1
    return TransferCoefficient(d, counts, -symmetric_moment(promoted), PauliWord((axis,)))
