from .electrical import (
    FlowDistribution,
    UnitFlow,
    edge_distribution,
    edge_key,
    effective_resistance,
    flow_report,
    graph_laplacian,
    optimal_unit_flow,
)
from .network import Network, pseudoinverse
from .series_parallel import (
    Leaf,
    LeafProbabilities,
    Parallel,
    Series,
    Term,
    leaf_count,
    random_term,
    series_parallel_probabilities,
    sp_compose,
    sp_dual,
    sp_realize,
    sp_st_direction,
    term_to_json,
)
from .trees import (
    count_separating_forests,
    count_trees_using_directed_edge,
    flow_via_trees,
    q_via_trees,
    spanning_tree_count,
)
from .walks import FlowEstimate, random_walk_flow, random_walk_flows

__all__ = (
    "FlowDistribution",
    "FlowEstimate",
    "Leaf",
    "LeafProbabilities",
    "Network",
    "Parallel",
    "Series",
    "Term",
    "UnitFlow",
    "count_separating_forests",
    "count_trees_using_directed_edge",
    "edge_distribution",
    "edge_key",
    "effective_resistance",
    "flow_report",
    "flow_via_trees",
    "graph_laplacian",
    "leaf_count",
    "optimal_unit_flow",
    "pseudoinverse",
    "q_via_trees",
    "random_term",
    "random_walk_flow",
    "random_walk_flows",
    "series_parallel_probabilities",
    "spanning_tree_count",
    "sp_compose",
    "sp_dual",
    "sp_realize",
    "sp_st_direction",
    "term_to_json",
)
