"""Exact and simulated analysis of randomized Boolean gossip."""

from ._bgossip import (
    ConstructionError,
    ParseError,
    PreconditionError,
    Graph,
    GraphShape,
    absorption_probabilities,
    all_rule_sets_count,
    analyze,
    classify_shape,
    classify_state,
    closed_form,
    consensus_value_positive,
    eval_op,
    is_absorbing_chain_oracle,
    is_absorbing_state,
    is_member,
    k_reduce,
    l_reduce,
    make_graph,
    meanfield_recursion,
    parse_edge_list,
    predict_chi,
    predict_classes,
    simulate,
    step_pair,
    transition_row,
)

__all__ = [
    "ConstructionError",
    "ParseError",
    "PreconditionError",
    "Graph",
    "GraphShape",
    "absorption_probabilities",
    "all_rule_sets_count",
    "analyze",
    "classify_shape",
    "classify_state",
    "closed_form",
    "consensus_value_positive",
    "eval_op",
    "is_absorbing_chain_oracle",
    "is_absorbing_state",
    "is_member",
    "k_reduce",
    "l_reduce",
    "make_graph",
    "meanfield_recursion",
    "parse_edge_list",
    "predict_chi",
    "predict_classes",
    "simulate",
    "step_pair",
    "transition_row",
]
