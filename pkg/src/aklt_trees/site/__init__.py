"""Single-site AKLT transfer map: closed form, dense backend and boundary traces."""
from src.aklt_trees.site.closed_form import NotCovered, TransferCoefficient, closed_form_coefficient
from src.aklt_trees.site.dense import IntertwinerFactors, dense_transfer_table, intertwiners
from src.aklt_trees.site.transfer import (
    Backend,
    apply_site_transfer,
    boundary_trace,
    f_d,
    trace_polynomials,
)

__all__ = [
    "Backend",
    "IntertwinerFactors",
    "NotCovered",
    "TransferCoefficient",
    "apply_site_transfer",
    "boundary_trace",
    "closed_form_coefficient",
    "dense_transfer_table",
    "f_d",
    "intertwiners",
    "trace_polynomials",
]
