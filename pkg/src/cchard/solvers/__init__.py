from .partition import (Block, Chi1Result, Decomposition, SolverTimeout, block_decompose, chi0,
                        chi1, fooling_lower_bound, is_fooling_set, verify_partition)
from .protocol_search import CCResult, cc_exact, l_exact

__all__ = [
    "Block", "CCResult", "Chi1Result", "Decomposition", "SolverTimeout", "block_decompose",
    "cc_exact", "chi0", "chi1", "fooling_lower_bound", "is_fooling_set", "l_exact",
    "verify_partition",
]
