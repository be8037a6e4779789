import os
from pathlib import Path

# Project root (where this repo lives)
PROJECT_ROOT = Path(__file__).parent.parent.parent

# Directory paths
DATA_DIR = PROJECT_ROOT / "data"
CELLS_DIR = DATA_DIR / "cells"
SEQUENCES_DIR = DATA_DIR / "sequences"
BILAYER_DIR = DATA_DIR / "bilayer"  # printed reference systems
LOGS_DIR = PROJECT_ROOT / "logs"
REPORTS_DIR = PROJECT_ROOT / "reports"

# Site transfer
MIN_DEGREE = 2
BACKEND_TOLERANCE = 1e-12  # closed form vs dense backend
MAX_DENSE_DEGREE = 12  # dense intertwiners hold 2**(d-1) columns
MAX_TABLE_DEGREE = 9  # Pauli transfer tables hold 4**(d-1) entries per output letter

# Scalar transfer function
SMALL_T = 1e-4  # below this the coth form is not consulted
FORM_TOLERANCE = 1e-12
BISECTION_TOLERANCE = 1e-13
BISECTION_MAX_ITER = 200
FIXED_POINT_GRID = 2048
GROWTH_BAND = 1e-3  # |mean log growth| inside this band is inconclusive
LOG_SLACK = 1e-12  # slack for log-space product comparisons

# Cells
ENUMERATION_EDGE_CAP = 32
MAX_ORACLE_CELL_SITES = 10
CRITERION_GRID = 2048

# Oracle
PSD_FLOOR = -1e-12
ORACLE_TOLERANCE = 1e-10
DEPTH_CONVERGENCE = 1e-9
STATEVECTOR_BUDGET = 2 ** 22  # complex entries held by the dense state
MAX_TREE_VERTICES = 2 ** 20  # vertices a generated tree may hold

# Bilayer
MAX_BILAYER_G = 4
NEWTON_STARTS = 100
NEWTON_BOX = 0.9
NEWTON_MAX_ITER = 100
NEWTON_JACOBIAN_STEP = 1e-7
NEWTON_HALVINGS = 30
NEWTON_TOLERANCE = 1e-13
DEDUP_TOLERANCE = 1e-8
DENSE_RESIDUAL_TOLERANCE = 1e-10
DEFAULT_SEED = 20240501

# Environment variable names
LOG_LEVEL_ENV = "AKLT_TREES_LOG_LEVEL"
THREADS_ENV = "AKLT_TREES_THREADS"

# Logging
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
LOG_LEVEL = "INFO"


def get_thread_count() -> int:
    """Worker count for independent solver starts and scan rows.

    Reads AKLT_TREES_THREADS; falls back to 1 on missing or invalid values.
    """
    raw = os.getenv(THREADS_ENV, "1")
    try:
        count = int(raw)
    except ValueError:
        return 1
    return max(1, count)
