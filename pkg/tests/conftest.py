import sys
from pathlib import Path

# Ensure repository root is on sys.path so tests can import `src.*` packages
ROOT = Path(__file__).resolve().parent.parent
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

# Shared test fixtures
import numpy as np
import pytest

from src.aklt_trees.config import DEFAULT_SEED


# ============================================================
# Randomness
# ============================================================
@pytest.fixture
def rng():
    """Seeded generator so random boundaries repeat across runs."""
    return np.random.default_rng(DEFAULT_SEED)


# ============================================================
# Bundled inputs
# ============================================================
@pytest.fixture(scope="session")
def bundled_cells():
    """Every cell under data/cells, loaded and validated, by name."""
    from src.aklt_trees.cells.graph import load_cell
    from src.aklt_trees.config import CELLS_DIR

    return {path.stem: load_cell(path) for path in sorted(CELLS_DIR.glob("*.json"))}
