"""Stable maximum nullity of digraphs: directed minors, Kelly-width,
bipartite correspondences and exact matrix certificates."""

from .bipartite import BipartiteMultigraph, from_bipartite, to_bipartite
from .classify import NU_AT_LEAST_TWO, NU_ONE, NU_ZERO, ClassificationReport, classify, survey
from .digraph import Digraph, is_acyclic, reverse
from .errors import (
    CapacityError,
    ContractError,
    InputError,
    InternalConsistencyError,
    ReduceError,
    SingularPivotError,
    StableNuError,
)
from .kelly import kelly_width_exact, ordering_width, recognize_width1
from .matrixlab import RationalMatrix, asap_check, check_matrix, nullity, sp_check
from .minors import CATALOG, forbidden_scan, has_directed_minor

__version__ = "0.1.0"
