"""ffkit: tree-connected factors of multigraphs with degree constraints.

Core objects live in :mod:`ffkit.graph`; solvers, orientations and the
theorem pipelines build on them, and :mod:`ffkit.harness` audits the lot.
"""

from .contract import FactorContract
from .errors import CapacityError, ContractViolation, FactorError, InvalidInput, PreconditionUnmet
from .graph import Bipartition, Multigraph, Orientation, ResidueTarget

__version__ = "0.1.0"

__all__ = [
    "Bipartition",
    "CapacityError",
    "ContractViolation",
    "FactorContract",
    "FactorError",
    "InvalidInput",
    "Multigraph",
    "Orientation",
    "PreconditionUnmet",
    "ResidueTarget",
]
