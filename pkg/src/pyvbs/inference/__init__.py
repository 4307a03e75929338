"""
Inference module for pyvbs - propagation, set chains and queries
"""
from .counters import OperationCounter
from .propagation import (
    TreeAssignment, MessageStore, PropagationResult,
    assign_factors, message, marginal_at, propagate_all, schedule,
)
from .setchain import (
    Numbering, SetChainFactor, SetChain, ChainState, ChainReport, NodeDeviation,
    order_nodes, build_setchain, reconstruct_joint, verify_node_marginals, verify_chain,
)
from .expressions import Expression, Equals, And, Or, Not, parse_query, query_domain
from .query import (
    QueryPlan, QueryAnswer, plan_query, union_marginal, evaluate_query, answer_query,
)

__all__ = [
    'OperationCounter',
    'TreeAssignment', 'MessageStore', 'PropagationResult',
    'assign_factors', 'message', 'marginal_at', 'propagate_all', 'schedule',
    'Numbering', 'SetChainFactor', 'SetChain', 'ChainState', 'ChainReport',
    'NodeDeviation', 'order_nodes', 'build_setchain', 'reconstruct_joint',
    'verify_node_marginals', 'verify_chain',
    'Expression', 'Equals', 'And', 'Or', 'Not', 'parse_query', 'query_domain',
    'QueryPlan', 'QueryAnswer', 'plan_query', 'union_marginal', 'evaluate_query',
    'answer_query',
]
