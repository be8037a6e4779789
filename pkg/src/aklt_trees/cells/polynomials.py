"""Exact transfer polynomials F_cell = p/q in two conventions.

The oracle convention comes from the dense network contraction and is
authoritative: q = N_0/N_0(0), p = -N_1/N_0(0). The diagram convention sums
loop diagrams with weight prod -1/(deg+1) over touched sites; it is kept
for comparison and reported through PolynomialDiff.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import zip_longest
from typing import Any, Dict, List, Optional, Sequence, Tuple

import sympy

from src.aklt_trees.cells.diagrams import enumerate_diagrams
from src.aklt_trees.cells.graph import CellGraph, CellReference
from src.aklt_trees.cells.network import network_polynomials
from src.aklt_trees.core.report import rational_to_str
from src.aklt_trees.utils.errors import CellGraphError, ContractViolation
from src.aklt_trees.utils.logging import log_reference_diff

logger = logging.getLogger(__name__)


class Convention(str, Enum):
    """Where the transfer polynomials come from."""
    PAPER = "paper"
    ORACLE = "oracle"


def _trim(coeffs: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    coeffs = [Fraction(c) for c in coeffs]
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs) or (Fraction(0),)


@dataclass(frozen=True)
class TransferPoly:
    """p(t) and q(t) as ascending exact coefficient tuples."""
    p: Tuple[Fraction, ...]
    q: Tuple[Fraction, ...]
    convention: Convention = Convention.ORACLE

    def __post_init__(self):
        object.__setattr__(self, "p", _trim(self.p))
        object.__setattr__(self, "q", _trim(self.q))
        if self.q[0] == 0:
            raise ContractViolation("q(0) must be nonzero")

    @property
    def slope(self) -> Fraction:
        """F'(0) = p'(0) / q(0)."""
        p1 = self.p[1] if len(self.p) > 1 else Fraction(0)
        return p1 / self.q[0]

    def normalized(self) -> "TransferPoly":
        """Same ratio with q(0) = 1."""
        q0 = self.q[0]
        return TransferPoly(tuple(c / q0 for c in self.p), tuple(c / q0 for c in self.q), self.convention)

    def p_at(self, t: float) -> float:
        return _horner(self.p, t)

    def q_at(self, t: float) -> float:
        return _horner(self.q, t)

    def evaluate(self, t: float) -> float:
        return self.p_at(t) / self.q_at(t)

    def has_parity(self) -> bool:
        """p has only odd powers, q only even powers."""
        return all(c == 0 for c in self.p[0::2]) and all(c == 0 for c in self.q[1::2])

    def as_sympy(self, symbol: Optional[sympy.Symbol] = None) -> sympy.Expr:
        t = symbol or sympy.Symbol("t")
        p = sum(sympy.Rational(c.numerator, c.denominator) * t ** i for i, c in enumerate(self.p))
        q = sum(sympy.Rational(c.numerator, c.denominator) * t ** i for i, c in enumerate(self.q))
        return p / q

    def same_function(self, other: "TransferPoly") -> bool:
        """p/q == p'/q' as rational functions (cross-multiplied)."""
        t = sympy.Symbol("t")
        a = self.as_sympy(t)
        b = other.as_sympy(t)
        return sympy.cancel(a - b) == 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "convention": self.convention,
            "p": [rational_to_str(c) for c in self.p],
            "q": [rational_to_str(c) for c in self.q],
            "slope": rational_to_str(self.slope),
        }


def _horner(coeffs: Sequence[Fraction], t: float) -> float:
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * t + float(c)
    return acc


def diagram_polynomials(cell: CellGraph) -> TransferPoly:
    """p = sum over odd k of t^k W(G_k), q = sum over even k."""
    classes = enumerate_diagrams(cell)
    top = max(classes) if classes else 0
    p = [Fraction(0)] * (top + 1)
    q = [Fraction(0)] * (top + 1)
    for k, diagrams in classes.items():
        total = sum((d.weight for d in diagrams), Fraction(0))
        if k % 2:
            p[k] += total
        else:
            q[k] += total
    return TransferPoly(tuple(p), tuple(q), Convention.PAPER)


def oracle_polynomials(cell: CellGraph) -> TransferPoly:
    n0, n1 = network_polynomials(cell)
    scale = n0[0]
    if scale == 0:
        raise CellGraphError(f"{cell.name or 'cell'}: N_0(0) vanishes")
    p = tuple(-c / scale for c in n1)
    q = tuple(c / scale for c in n0)
    return TransferPoly(p, q, Convention.ORACLE)


def transfer_polynomials(cell: CellGraph, convention: Convention = Convention.ORACLE) -> TransferPoly:
    convention = Convention(convention)
    if convention is Convention.PAPER:
        return diagram_polynomials(cell)
    return oracle_polynomials(cell)


@dataclass
class PolynomialDiff:
    """Per-coefficient comparison of a reference against the oracle.

    Both sides are normalized to q(0) = 1 before comparing.
    """
    label: str
    reference: TransferPoly
    computed: TransferPoly
    p_diff: List[Fraction] = field(default_factory=list)
    q_diff: List[Fraction] = field(default_factory=list)
    slope_reference: Optional[Fraction] = None

    def __post_init__(self):
        ref = self.reference.normalized()
        got = self.computed.normalized()
        zero = Fraction(0)
        self.p_diff = [a - b for a, b in zip_longest(ref.p, got.p, fillvalue=zero)]
        self.q_diff = [a - b for a, b in zip_longest(ref.q, got.q, fillvalue=zero)]
        if self.slope_reference is None:
            self.slope_reference = ref.slope

    @property
    def matches(self) -> bool:
        return not any(self.p_diff) and not any(self.q_diff)

    @property
    def slope_matches(self) -> bool:
        return self.slope_reference == self.computed.slope

    def to_dict(self) -> Dict[str, Any]:
        return {
            "label": self.label,
            "matches": self.matches,
            "reference": self.reference.normalized().to_dict(),
            "computed": self.computed.normalized().to_dict(),
            "p_diff": [rational_to_str(c) for c in self.p_diff],
            "q_diff": [rational_to_str(c) for c in self.q_diff],
            "slope_reference": rational_to_str(self.slope_reference),
            "slope_computed": rational_to_str(self.computed.slope),
            "slope_matches": self.slope_matches,
        }


def diff_against_oracle(label: str, reference: TransferPoly, oracle: TransferPoly,
                        slope_reference: Optional[Fraction] = None) -> PolynomialDiff:
    diff = PolynomialDiff(label, reference, oracle, slope_reference=slope_reference)
    if not diff.matches or not diff.slope_matches:
        ref = reference.normalized()
        got = oracle.normalized()
        log_reference_diff(
            logger,
            label,
            f"p={[rational_to_str(c) for c in ref.p]} q={[rational_to_str(c) for c in ref.q]} "
            f"slope={rational_to_str(diff.slope_reference)}",
            f"p={[rational_to_str(c) for c in got.p]} q={[rational_to_str(c) for c in got.q]} "
            f"slope={rational_to_str(got.slope)}",
            "oracle polynomials are used downstream",
        )
    return diff


def reference_poly(reference: CellReference) -> TransferPoly:
    return TransferPoly(reference.p, reference.q, Convention.PAPER)


@dataclass
class ConventionReport:
    """Oracle polynomials with every available comparison."""
    cell: str
    oracle: TransferPoly
    diagram: TransferPoly
    diagram_diff: PolynomialDiff
    printed_diff: Optional[PolynomialDiff] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "cell": self.cell,
            "oracle": self.oracle.to_dict(),
            "diagram": self.diagram.to_dict(),
            "diagram_diff": self.diagram_diff.to_dict(),
            "printed_diff": self.printed_diff.to_dict() if self.printed_diff else None,
        }


def convention_report(cell: CellGraph) -> ConventionReport:
    oracle = oracle_polynomials(cell)
    diagram = diagram_polynomials(cell)
    label = cell.name or "cell"
    diagram_diff = diff_against_oracle(f"{label} diagram weights", diagram, oracle)
    printed = None
    if cell.reference is not None and cell.reference.q:
        printed = diff_against_oracle(
            f"{label} printed polynomials",
            reference_poly(cell.reference),
            oracle,
            slope_reference=cell.reference.slope,
        )
    return ConventionReport(label, oracle, diagram, diagram_diff, printed)
