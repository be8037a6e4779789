"""JSON-friendly conversion of results.

Exact rationals are written as "p/q" strings so that no exact result passes
through a float on its way out.
"""
import dataclasses
import json
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any

import numpy as np
import sympy


def rational_to_str(value: Fraction) -> str:
    """Fraction(-13, 42) -> "-13/42"; integers keep the "/1"."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def str_to_rational(text: str) -> Fraction:
    return Fraction(text)


def to_jsonable(obj: Any) -> Any:
    """Recursively convert results into JSON-serializable values."""
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, Fraction):
        return rational_to_str(obj)
    if isinstance(obj, sympy.Rational):
        return rational_to_str(Fraction(int(obj.p), int(obj.q)))
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    if hasattr(obj, "to_dict"):
        return to_jsonable(obj.to_dict())
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, Path):
        return str(obj)
    raise TypeError(f"Cannot serialize {type(obj).__name__}")


def dumps(obj: Any) -> str:
    return json.dumps(to_jsonable(obj), indent=2, sort_keys=False)


def save_json(obj: Any, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(dumps(obj))
        f.write("\n")
