"""Layer degree sequences: loading, composition of F along layers, growth.

Layer 1 is the root layer. A sequence is a finite list of degrees, optionally
eventually periodic: the last `period` entries repeat forever.
"""
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from src.aklt_trees.config import GROWTH_BAND, MIN_DEGREE
from src.aklt_trees.core.paths import get_sequence_path
from src.aklt_trees.transfer.function import eval_F
from src.aklt_trees.utils.errors import BoundViolationError, ContractViolation, DegreeSequenceError

logger = logging.getLogger(__name__)

# relative slack when checking iterates against the analytic lower bound
BOUND_SLACK = 1e-12


@dataclass(frozen=True)
class DegreeSequence:
    """Degrees d_1, d_2, ... by layer; the last `period` entries repeat."""
    degrees: Tuple[int, ...]
    period: int = 0
    name: str = ""

    def __post_init__(self):
        degrees = tuple(int(d) for d in self.degrees)
        if not degrees:
            raise DegreeSequenceError("degree sequence is empty")
        bad = [d for d in degrees if d < MIN_DEGREE]
        if bad:
            raise DegreeSequenceError(
                f"degrees {bad} are below {MIN_DEGREE}",
                "Every layer vertex needs a parent edge and at least one child edge.",
            )
        if not 0 <= self.period <= len(degrees):
            raise DegreeSequenceError(
                f"repeat {self.period} exceeds the {len(degrees)} listed degrees"
            )
        object.__setattr__(self, "degrees", degrees)

    @classmethod
    def constant(cls, d: int) -> "DegreeSequence":
        return cls((d,), period=1, name=f"constant{d}")

    @property
    def is_periodic(self) -> bool:
        return self.period > 0

    @property
    def tail(self) -> Tuple[int, ...]:
        return self.degrees[len(self.degrees) - self.period:] if self.period else ()

    def degree(self, layer: int) -> int:
        """Degree of layer `layer` (1-based)."""
        if layer < 1:
            raise ContractViolation(f"layers start at 1, got {layer}")
        if layer <= len(self.degrees):
            return self.degrees[layer - 1]
        if not self.period:
            raise DegreeSequenceError(
                f"layer {layer} is past the {len(self.degrees)} listed degrees",
                "Add a 'repeat k' line to make the sequence infinite.",
            )
        offset = (layer - len(self.degrees) - 1) % self.period
        return self.tail[offset]

    def expand(self, n: int) -> List[int]:
        return [self.degree(i) for i in range(1, n + 1)]

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "degrees": list(self.degrees), "period": self.period}


def parse_degree_sequence(text: str, name: str = "") -> DegreeSequence:
    """Parse one integer per line, with an optional trailing 'repeat k'.

    Blank lines and '#' comments are ignored.
    """
    degrees: List[int] = []
    period = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if period:
            raise DegreeSequenceError(f"line {lineno}: content after the 'repeat' directive")
        if line.startswith("repeat"):
            parts = line.split()
            if len(parts) != 2 or not parts[1].isdigit() or int(parts[1]) < 1:
                raise DegreeSequenceError(
                    f"line {lineno}: malformed directive {line!r}",
                    "Write 'repeat k' with k a positive integer.",
                )
            period = int(parts[1])
            continue
        try:
            degrees.append(int(line))
        except ValueError:
            raise DegreeSequenceError(f"line {lineno}: {line!r} is not an integer")
    return DegreeSequence(tuple(degrees), period=period, name=name)


def load_degree_sequence(path: Union[str, Path]) -> DegreeSequence:
    """Load a bundled sequence by name or any sequence file by path."""
    resolved = get_sequence_path(path)
    if not resolved.exists():
        raise DegreeSequenceError(
            f"degree sequence file not found: {resolved}",
            "Pass a path or the name of a file in data/sequences.",
        )
    logger.debug(f"Loading degree sequence from {resolved}")
    return parse_degree_sequence(resolved.read_text(encoding="utf-8"), name=resolved.stem)


def counterexample_sequence(n: int, tail_degree: int = 5) -> DegreeSequence:
    """n layers of degree 2 followed by tail_degree forever."""
    if n < 0:
        raise ContractViolation(f"n must be nonnegative, got {n}")
    return DegreeSequence((2,) * n + (tail_degree,), period=1, name=f"counterexample_{n}")


def partial_products(degrees: Sequence[int]) -> List[float]:
    """a_k = prod over i <= k of 3/(d_i - 1)."""
    out = []
    acc = 1.0
    for d in degrees:
        acc *= 3.0 / (d - 1)
        out.append(acc)
    return out


def composition_lower_bound(degrees: Sequence[int], t0: float) -> float:
    """(a_n/t0 + 1 + sum_{k<n} a_k)^(-1), the floor on |F_d1 o ... o F_dn (t0)|."""
    if t0 == 0.0:
        return 0.0
    a = partial_products(degrees)
    return 1.0 / (a[-1] / t0 + 1.0 + math.fsum(a[:-1]))


@dataclass
class ComposeTrace:
    """Iterates of F along the layers, innermost layer first."""
    degrees: List[int]
    t0: float
    steps: List[float] = field(default_factory=list)
    lower_bound: float = 0.0

    @property
    def value(self) -> float:
        return self.steps[-1] if self.steps else self.t0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "degrees": self.degrees,
            "t0": self.t0,
            "value": self.value,
            "steps": self.steps,
            "lower_bound": self.lower_bound,
        }


def compose_sequence(seq: DegreeSequence, t0: float, n: int) -> ComposeTrace:
    """F_(d_1) o ... o F_(d_n) (t0), applying the innermost layer n first."""
    if not 0.0 <= t0 <= 1.0:
        raise ContractViolation(f"t0 must lie in [0, 1], got {t0}")
    if n < 1:
        raise ContractViolation(f"layer count must be positive, got {n}")
    degrees = seq.expand(n)
    trace = ComposeTrace(degrees=degrees, t0=float(t0))
    value = float(t0)
    for d in reversed(degrees):
        value = eval_F(d, value)
        trace.steps.append(value)
    trace.lower_bound = composition_lower_bound(degrees, t0)
    if abs(value) < trace.lower_bound * (1.0 - BOUND_SLACK):
        raise BoundViolationError(
            f"|iterate| {abs(value)!r} fell below the lower bound {trace.lower_bound!r}"
        )
    return trace


class Growth(str, Enum):
    """Phase read off the growth exponent of a layered tree."""
    ORDERED = "ordered"
    UNIQUE = "unique"
    INCONCLUSIVE = "inconclusive"


@dataclass
class GrowthStats:
    """Partial products and growth exponent ln(mu) of a degree sequence."""
    partial_products: List[float]
    log_mu: float
    classification: Growth
    exact: bool

    @property
    def mu(self) -> float:
        return math.exp(self.log_mu)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "partial_products": self.partial_products,
            "log_mu": self.log_mu,
            "mu": self.mu,
            "classification": self.classification,
            "exact": self.exact,
        }


def classify_growth(seq: DegreeSequence, band: float = GROWTH_BAND) -> GrowthStats:
    """Classify by ln(mu) = mean of ln((d_i - 1)/3).

    A periodic tail decides the Cesaro limit exactly: the product of (d-1)
    over one period is compared with 3^period. A bare prefix only gives a
    running mean, inconclusive within `band` of 0.
    """
    products = partial_products(seq.degrees)
    if seq.is_periodic:
        tail = seq.tail
        log_mu = math.fsum(math.log((d - 1) / 3.0) for d in tail) / len(tail)
        growth = Fraction(math.prod(d - 1 for d in tail), 3 ** len(tail))
        classification = Growth.ORDERED if growth > 1 else Growth.UNIQUE
        return GrowthStats(products, log_mu, classification, exact=True)

    log_mu = math.fsum(math.log((d - 1) / 3.0) for d in seq.degrees) / len(seq.degrees)
    if log_mu > band:
        classification = Growth.ORDERED
    elif log_mu < -band:
        classification = Growth.UNIQUE
    else:
        classification = Growth.INCONCLUSIVE
    logger.debug(f"prefix of {len(seq.degrees)} layers: ln mu = {log_mu:.6f} -> {classification.value}")
    return GrowthStats(products, log_mu, classification, exact=False)
