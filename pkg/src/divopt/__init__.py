"""Diversity indicators on finite similarity spaces: evaluation,
contributions, subset selection, property checking, and the NOAH
diversity optimizer."""

from .contributions import (
    all_contributions,
    all_contributions_maxmin,
    all_contributions_riesz,
    all_contributions_sp,
    contribution,
)
from .indicators import (
    MaxMin,
    RieszEnergy,
    SolowPolasky,
    SumIndicator,
    evaluate,
    max_min,
    parse_indicator,
    riesz_energy,
    solow_polasky,
    sum_indicator,
)
from .noah import NoahConfig, run_noah
from .properties import regenerate_property_table
from .selection import (
    CliqueInstance,
    DiverseSubsetSelector,
    brute_force_select,
    clique_via_energy,
    greedy_select,
)
from .spaces import (
    DistanceMatrix,
    Graph,
    SpaceKind,
    build_distance_matrix,
    graph_metric,
    load_graph,
    load_matrix_csv,
    save_matrix_csv,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "MaxMin",
    "RieszEnergy",
    "SolowPolasky",
    "SumIndicator",
    "evaluate",
    "max_min",
    "riesz_energy",
    "solow_polasky",
    "sum_indicator",
    "parse_indicator",
    "contribution",
    "all_contributions",
    "all_contributions_maxmin",
    "all_contributions_riesz",
    "all_contributions_sp",
    "brute_force_select",
    "greedy_select",
    "clique_via_energy",
    "CliqueInstance",
    "DiverseSubsetSelector",
    "regenerate_property_table",
    "NoahConfig",
    "run_noah",
    "DistanceMatrix",
    "Graph",
    "SpaceKind",
    "build_distance_matrix",
    "graph_metric",
    "validate",
    "load_matrix_csv",
    "save_matrix_csv",
    "load_graph",
    "__version__",
]
