"""Exact fixed-point polynomial systems of the bilayer map.

On the symmetric subspace (x1, x2, x3) the normalized bilayer map reads
f_c = n_c / f0 with four exact polynomials. The x1 class is represented by
the (0, 1) component, x2 by (1, 2) and x3 by (1, 1); every other component of
a class must agree exactly, which is checked during extraction.
"""
import itertools
import json
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple, Union

import numpy as np
import sympy

from src.aklt_trees.bilayer.map import STAGGER, pauli_table, table_apply, validate_splitting
from src.aklt_trees.core.paths import get_bilayer_reference_path
from src.aklt_trees.core.report import rational_to_str
from src.aklt_trees.utils.errors import BackendMismatchError, ContractViolation
from src.aklt_trees.utils.logging import log_reference_diff

logger = logging.getLogger(__name__)

X1, X2, X3 = sympy.symbols("x1 x2 x3")
SYMBOLS = (X1, X2, X3)

# representative (l, k) of each output class
CLASS_WORDS = {"f0": (0, 0), "n1": (0, 1), "n2": (1, 2), "n3": (1, 1)}


class Cycle(str, Enum):
    """Fixed points of the map or of its square up to the x1 flip."""
    PERIOD1 = "period1"
    PERIOD2 = "period2"


def _class_members(name: str) -> List[Tuple[int, int]]:
    if name == "f0":
        return [(0, 0)]
    if name == "n1":
        return [(0, i) for i in (1, 2, 3)] + [(i, 0) for i in (1, 2, 3)]
    if name == "n3":
        return [(i, i) for i in (1, 2, 3)]
    return [(i, j) for i in (1, 2, 3) for j in (1, 2, 3) if i != j]


def _direction_vectors() -> List[np.ndarray]:
    """Raw 16-vectors of 1, and of the x1, x2, x3 directions."""
    grids = [np.zeros((4, 4), dtype=np.int64) for _ in range(4)]
    grids[0][0, 0] = 1
    for name, grid in zip(("n1", "n2", "n3"), grids[1:]):
        for l, k in _class_members(name):
            grid[l, k] = 1
    return [(grid * STAGGER.astype(np.int64)).reshape(16) for grid in grids]


def _to_poly(coeffs: Dict[Tuple[int, int, int], Fraction]) -> sympy.Poly:
    expr = sum(
        (sympy.Rational(c.numerator, c.denominator) * X1 ** a * X2 ** b * X3 ** e
         for (a, b, e), c in coeffs.items() if c != 0),
        sympy.Integer(0),
    )
    return sympy.Poly(expr, *SYMBOLS, domain=sympy.QQ)


def poly_terms(poly: sympy.Poly) -> List[Dict[str, Any]]:
    """[{"monomial": [a, b, c], "coefficient": "p/q"}, ...] in graded order."""
    out = []
    for monom, coeff in sorted(poly.terms(), key=lambda item: (sum(item[0]), item[0])):
        if coeff == 0:
            continue
        out.append({
            "monomial": list(monom),
            "coefficient": rational_to_str(Fraction(int(coeff.p), int(coeff.q))),
        })
    return out


def poly_from_terms(terms: List[Dict[str, Any]]) -> sympy.Poly:
    coeffs = {tuple(t["monomial"]): Fraction(t["coefficient"]) for t in terms}
    return _to_poly(coeffs)


@dataclass
class BilayerSystem:
    """f0, n1, n2, n3 as exact polynomials in (x1, x2, x3)."""
    g: int
    f0: sympy.Poly
    n1: sympy.Poly
    n2: sympy.Poly
    n3: sympy.Poly
    _numeric: Callable = field(init=False, repr=False)

    def __post_init__(self):
        if self.f0.eval({X1: 0, X2: 0, X3: 0}) == 0:
            raise ContractViolation(f"g={self.g}: f0 vanishes at the origin")
        exprs = [p.as_expr() for p in (self.f0, self.n1, self.n2, self.n3)]
        self._numeric = sympy.lambdify(SYMBOLS, exprs, modules="numpy")

    def polynomials(self) -> Dict[str, sympy.Poly]:
        return {"f0": self.f0, "n1": self.n1, "n2": self.n2, "n3": self.n3}

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        """[f0, n1, n2, n3] at x = (x1, x2, x3)."""
        return np.asarray(self._numeric(*np.asarray(x, dtype=float)), dtype=float)

    def image(self, x: np.ndarray) -> np.ndarray:
        values = self.evaluate(x)
        return values[1:] / values[0]

    def equations(self, cycle: Cycle) -> List[sympy.Poly]:
        """n_c -/+ x_c f0, the x1 sign flipped for period-2 cycles."""
        cycle = Cycle(cycle)
        sign = -1 if cycle is Cycle.PERIOD2 else 1
        return [
            self.n1 - sign * sympy.Poly(X1, *SYMBOLS, domain=sympy.QQ) * self.f0,
            self.n2 - sympy.Poly(X2, *SYMBOLS, domain=sympy.QQ) * self.f0,
            self.n3 - sympy.Poly(X3, *SYMBOLS, domain=sympy.QQ) * self.f0,
        ]

    def residual(self, x: np.ndarray, cycle: Cycle) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        f0, n1, n2, n3 = self.evaluate(x)
        target = x.copy()
        if Cycle(cycle) is Cycle.PERIOD2:
            target[0] = -target[0]
        return np.array([n1, n2, n3]) - target * f0

    def axis_restriction(self) -> Dict[str, sympy.Poly]:
        """The polynomials on the SU(2)-symmetric line (0, 0, u), in x3."""
        out = {}
        for name, poly in self.polynomials().items():
            expr = poly.as_expr().subs({X1: 0, X2: 0})
            out[name] = sympy.Poly(expr, X3, domain=sympy.QQ)
        return out

    def to_dict(self) -> Dict[str, Any]:
        return {"g": self.g, **{name: poly_terms(p) for name, p in self.polynomials().items()}}


def extract_system(g: int) -> BilayerSystem:
    """Expand B(x)^(x g) over monomials and push each through the exact table."""
    g = validate_splitting(g)
    table = pauli_table(g)
    directions = _direction_vectors()
    accum: Dict[Tuple[int, int, int], np.ndarray] = defaultdict(lambda: np.zeros(16, dtype=np.int64))
    for choice in itertools.product(range(4), repeat=g):
        exps = tuple(choice.count(m) for m in (1, 2, 3))
        out = table_apply(table.numerators, [directions[m] for m in choice])
        accum[exps] = accum[exps] + out

    stagger = STAGGER.astype(np.int64)
    classes: Dict[str, Dict[Tuple[int, int, int], Fraction]] = {name: {} for name in CLASS_WORDS}
    for exps, raw in accum.items():
        grid = raw.reshape(4, 4) * stagger
        for name, (l, k) in CLASS_WORDS.items():
            members = {int(grid[a, b]) for a, b in _class_members(name)}
            if len(members) != 1:
                raise BackendMismatchError(
                    f"g={g}: class {name} is not closed at monomial {exps}: {sorted(members)}"
                )
            classes[name][exps] = Fraction(int(grid[l, k]), table.denominator)

    system = BilayerSystem(g, *(_to_poly(classes[name]) for name in CLASS_WORDS))
    logger.debug(f"Extracted bilayer system for g={g}: f0 = {system.f0.as_expr()}")
    return system


@dataclass
class SystemDiff:
    """Coefficient differences between a printed polynomial and the extracted one."""
    label: str
    reference: sympy.Poly
    computed: sympy.Poly

    @property
    def difference(self) -> sympy.Poly:
        return self.reference - self.computed

    @property
    def matches(self) -> bool:
        return self.difference.is_zero

    def to_dict(self) -> Dict[str, Any]:
        return {
            "label": self.label,
            "matches": self.matches,
            "reference": poly_terms(self.reference),
            "computed": poly_terms(self.computed),
            "difference": poly_terms(self.difference),
        }


@dataclass
class PrintedSystem:
    """A published system in symmetric coordinates.

    form "map" lists f0 and the numerators n1..n3; form "cycle" lists the
    three period-2 equations e1..e3.
    """
    g: int
    form: str
    polynomials: Dict[str, sympy.Poly]
    two_cycle: Optional[Tuple[float, float, float]] = None
    note: str = ""


def load_printed_system(g: Union[int, Path]) -> PrintedSystem:
    path = Path(g) if isinstance(g, (str, Path)) else get_bilayer_reference_path(g)
    if not path.exists():
        raise ContractViolation(f"no printed system at {path}")
    with open(path, "r", encoding="utf-8") as f:
        data = json.load(f)
    polys = {name: poly_from_terms(terms) for name, terms in data["polynomials"].items()}
    cycle = tuple(data["two_cycle"]) if data.get("two_cycle") else None
    return PrintedSystem(int(data["g"]), data["form"], polys, cycle, data.get("note", ""))


def compare_printed(system: BilayerSystem, printed: Optional[PrintedSystem] = None) -> List[SystemDiff]:
    """Diff every printed polynomial against the extracted one; mismatches are logged."""
    printed = printed or load_printed_system(system.g)
    if printed.g != system.g:
        raise ContractViolation(f"printed system is for g={printed.g}, extracted one for g={system.g}")
    if printed.form == "cycle":
        computed = dict(zip(("e1", "e2", "e3"), system.equations(Cycle.PERIOD2)))
    else:
        computed = system.polynomials()
    diffs = []
    for label, reference in printed.polynomials.items():
        diff = SystemDiff(f"g={system.g} {label}", reference, computed[label])
        if not diff.matches:
            log_reference_diff(
                logger,
                diff.label,
                str(reference.as_expr()),
                str(diff.computed.as_expr()),
                "extracted coefficients are used by the solver",
            )
        diffs.append(diff)
    return diffs
