"""Exact power indices, cooperative games and axiom checks on graphs with
a priori unions."""

from .axioms import (
    AXIOMS,
    AxiomReport,
    IndependenceMatrix,
    IndexFunction,
    UniverseSpec,
    alpha_beta_index,
    check_axiom,
    check_axioms,
    independence_matrix,
    is_local_unanimity_graph,
    is_unanimity_graph,
    monotonicity_demo,
    violating_index,
)
from .fixtures import demo_graph, demo_names
from .game import (
    Coalition,
    DividendTable,
    GameValueTable,
    characteristic,
    coalition_potential,
    harsanyi_dividends,
    one_step_worth,
    shapley_bruteforce,
    shapley_via_dividends,
    shapley_via_potential,
    subadditivity_witness,
    two_step_worth,
    verify_potential_identity,
)
from .graph import (
    DegreeProfile,
    UnionGraph,
    from_file_dict,
    load_graph,
    to_file_dict,
    validate,
)
from .index import MarketParams, evaluate, power_index, symmetric_index, total_power
from .linform import LinearForm, parse_rational
from .ranking import (
    Ranking,
    RankSweep,
    rank_sweep,
    ranking_at,
    reversal_threshold,
    spillover_invariance_check,
)

__version__ = "0.1.0"

__all__ = [
    "AXIOMS",
    "AxiomReport",
    "Coalition",
    "DegreeProfile",
    "DividendTable",
    "GameValueTable",
    "IndependenceMatrix",
    "IndexFunction",
    "LinearForm",
    "MarketParams",
    "Ranking",
    "RankSweep",
    "UnionGraph",
    "UniverseSpec",
    "alpha_beta_index",
    "characteristic",
    "check_axiom",
    "check_axioms",
    "coalition_potential",
    "demo_graph",
    "demo_names",
    "evaluate",
    "from_file_dict",
    "harsanyi_dividends",
    "independence_matrix",
    "is_local_unanimity_graph",
    "is_unanimity_graph",
    "load_graph",
    "monotonicity_demo",
    "one_step_worth",
    "parse_rational",
    "power_index",
    "rank_sweep",
    "ranking_at",
    "reversal_threshold",
    "shapley_bruteforce",
    "shapley_via_dividends",
    "shapley_via_potential",
    "spillover_invariance_check",
    "subadditivity_witness",
    "symmetric_index",
    "to_file_dict",
    "total_power",
    "two_step_worth",
    "validate",
    "verify_potential_identity",
    "violating_index",
]
