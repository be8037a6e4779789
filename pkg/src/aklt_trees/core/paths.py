"""Path utilities for bundled inputs and generated reports.

Cells and degree sequences ship under data/; reports (scan tables, solver
records) go under reports/<kind>/.
"""
from pathlib import Path
from typing import Union

from src.aklt_trees.config import BILAYER_DIR, CELLS_DIR, SEQUENCES_DIR, REPORTS_DIR


def _sanitize_filename_part(text: str) -> str:
    """Sanitize a string for use in filenames."""
    safe = "".join(c if c.isalnum() or c in (' ', '-', '_', '.') else '_' for c in text)
    return safe.strip().replace(' ', '_')


def get_cell_path(name: Union[str, Path]) -> Path:
    """Resolve a cell file: an existing path is returned as is, a bare name
    is looked up in the bundled cells directory (".json" optional)."""
    path = Path(name)
    if path.exists():
        return path
    stem = path.name if path.suffix == ".json" else f"{path.name}.json"
    return CELLS_DIR / stem


def get_sequence_path(name: Union[str, Path]) -> Path:
    """Resolve a degree sequence file, bundled ones by bare name."""
    path = Path(name)
    if path.exists():
        return path
    stem = path.name if path.suffix == ".txt" else f"{path.name}.txt"
    return SEQUENCES_DIR / stem


def get_bilayer_reference_path(g: int) -> Path:
    return BILAYER_DIR / f"printed_g{g}.json"


def get_report_path(kind: str, stem: str, suffix: str = ".json") -> Path:
    """Path of a generated report, e.g. get_report_path("scan", "cayley_d5", ".csv")."""
    return REPORTS_DIR / _sanitize_filename_part(kind) / f"{_sanitize_filename_part(stem)}{suffix}"
