from .local_search import LocalSearchConfig, is_locally_optimal, local_search_stab
from .problems import (
    FaceSolution,
    PointSolution,
    all_minimum_dominating_sets,
    exact_mds,
    exact_mis,
    exact_stab,
    greedy_mds,
    greedy_mis,
    greedy_stab,
    naive_mds,
    naive_mis,
    naive_stab,
)
from .setcover import SearchBudget
from .verify import MalformedSolution, VerificationReport, verify_solution

__all__ = [
    "FaceSolution",
    "LocalSearchConfig",
    "MalformedSolution",
    "PointSolution",
    "SearchBudget",
    "VerificationReport",
    "all_minimum_dominating_sets",
    "exact_mds",
    "exact_mis",
    "exact_stab",
    "greedy_mds",
    "greedy_mis",
    "greedy_stab",
    "is_locally_optimal",
    "local_search_stab",
    "naive_mds",
    "naive_mis",
    "naive_stab",
    "verify_solution",
]
