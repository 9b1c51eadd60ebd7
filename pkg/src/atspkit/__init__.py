"""atspkit: asymmetric TSP toolkit.

Seeded instance generation, tabu-search warm starts, exact branch-and-bound
with lazy subtour elimination, ground-truth oracles, MIP model export, a
benchmark harness, and SVG reporting.  Hot kernels run through a compiled
extension with a pure-Python fallback (see atspkit._kernels.IMPLEMENTATION).
"""

from ._kernels import IMPLEMENTATION as KERNEL_IMPLEMENTATION
from .exact import (ApSolution, AssignmentInfeasibleError, BnbNode,
                    SolveReport, branch, cycles, gap_percent,
                    heuristic_gap_percent, hungarian, solve_exact)
from .heuristic import (TabuParams, Tour, nearest_neighbor, or_opt_move,
                        reverse_segment, swap_move, tabu_search, tour_cost,
                        warm_start)
from .instance import (CostMatrix, GenSpec, InstanceError, NodeLayout,
                       SplitMix64, TsplibFormatError, generate, parse_csv,
                       parse_tsplib, scale, write_csv, write_tsplib)
from .oracle import brute_force, greedy_edge, held_karp, two_opt_descent

__version__ = "0.1.0"

__all__ = [
    "ApSolution", "AssignmentInfeasibleError", "BnbNode", "CostMatrix",
    "GenSpec", "InstanceError", "KERNEL_IMPLEMENTATION", "NodeLayout",
    "SolveReport", "SplitMix64", "TabuParams", "Tour", "TsplibFormatError",
    "branch", "brute_force", "cycles", "gap_percent", "generate",
    "greedy_edge", "held_karp", "heuristic_gap_percent", "hungarian",
    "nearest_neighbor", "or_opt_move", "parse_csv", "parse_tsplib",
    "reverse_segment", "scale", "solve_exact", "swap_move", "tabu_search",
    "tour_cost", "two_opt_descent", "warm_start", "write_csv",
    "write_tsplib",
]
