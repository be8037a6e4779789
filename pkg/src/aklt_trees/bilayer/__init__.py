"""Bilayer-node transfer map, its exact polynomial systems and their roots."""
from src.aklt_trees.bilayer.map import (
    BilayerMap,
    BilayerVector,
    PauliTable,
    build_bilayer_map,
    pauli_table,
    staggered_image,
)
from src.aklt_trees.bilayer.solver import (
    BilayerSolution,
    DynamicsTrace,
    SolveReport,
    Subspace,
    SymmetricFixedPoint,
    iterate_dynamics,
    solve_fixed_points,
    staggered_slope,
    symmetric_fixed_point,
)
from src.aklt_trees.bilayer.system import (
    BilayerSystem,
    Cycle,
    PrintedSystem,
    SystemDiff,
    compare_printed,
    extract_system,
    load_printed_system,
)

__all__ = [
    "BilayerMap",
    "BilayerSolution",
    "BilayerSystem",
    "BilayerVector",
    "Cycle",
    "DynamicsTrace",
    "PauliTable",
    "PrintedSystem",
    "SolveReport",
    "Subspace",
    "SymmetricFixedPoint",
    "SystemDiff",
    "build_bilayer_map",
    "compare_printed",
    "extract_system",
    "iterate_dynamics",
    "load_printed_system",
    "pauli_table",
    "solve_fixed_points",
    "staggered_image",
    "staggered_slope",
    "symmetric_fixed_point",
]
