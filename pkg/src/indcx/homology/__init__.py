from ..sparse import SparseIntMatrix
from .snf import SmithForm, rank_mod_p, rational_rank, smith_normal_form
from .profile import HomologyProfile, join, prime_powers, profile_algebra, suspend, wedge
from .compute import (
    ChainComplexError,
    HomologyRun,
    betti_mod_p,
    homology_of_graph,
    homology_via_star_cluster,
    reduced_homology,
    run_graph_homology,
)

__all__ = [
    "ChainComplexError", "HomologyProfile", "HomologyRun", "SmithForm", "SparseIntMatrix",
    "betti_mod_p", "homology_of_graph", "homology_via_star_cluster", "join", "prime_powers",
    "profile_algebra", "rank_mod_p", "rational_rank", "reduced_homology", "run_graph_homology",
    "smith_normal_form", "suspend", "wedge",
]
