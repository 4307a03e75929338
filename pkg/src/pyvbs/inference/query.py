"""
Query answering from node marginals

A query only needs the marginal of the joint on the variables it mentions.
The modified Graham reduction picks the smallest subtree of the Markov tree
whose nodes cover those variables, and the marginal on that subtree's union
is assembled from the cached node marginals without touching the rest.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Type, Union

import numpy as np

from ..core.errors import CapabilityError, ModelError, PreconditionError
from ..core.frames import VarSet, Variable
from ..core.valuation import Valuation
from ..instances.tabular import DenseTable
from ..structure.hypergraph import GrahamTrace, modified_graham
from ..structure.markov_tree import MarkovTree
from .counters import OperationCounter, counted
from .expressions import Expression, parse_query, query_domain
from .propagation import PropagationResult
from .setchain import SetChain

logger = logging.getLogger(__name__)

Marginals = Union[SetChain, PropagationResult, Mapping[int, Valuation]]


@dataclass(frozen=True)
class QueryPlan:
    """Subtree of a Markov tree that is enough to answer a query"""
    tree: MarkovTree
    query_scope: VarSet
    nodes: Tuple[int, ...]
    projected: Dict[int, VarSet]
    root: int
    trace: GrahamTrace = field(repr=False)

    @property
    def parents(self) -> Dict[int, Optional[int]]:
        return self.tree.parents(self.root, self.nodes)

    @property
    def order(self) -> List[int]:
        """Plan nodes from the root outward"""
        return self.tree.bfs_order(self.root, self.nodes)

    @property
    def union_scope(self) -> VarSet:
        """∪N, the variables of the selected hyperedges"""
        return VarSet(v for i in self.nodes for v in self.tree[i])

    @property
    def projected_scope(self) -> VarSet:
        return VarSet(v for p in self.projected.values() for v in p)

    def describe(self) -> List[str]:
        names = self.tree.names
        lines = []
        for node in self.order:
            scope = "{" + ", ".join(names.get(v, str(v)) for v in self.projected[node]) + "}"
            marker = " (root)" if node == self.root else ""
            lines.append(f"node {node} {self.tree.label(node)} -> {scope}{marker}")
        return lines


def plan_query(tree: MarkovTree, target: Iterable[int]) -> QueryPlan:
    """
    Select the subtree for the variables ``target``.

    Nodes are the hyperedges that survive the modified Graham reduction
    keeping ``target``, plus any tree nodes on paths between them. Each node
    keeps only the variables shared with the query or another plan node. The
    root is the node with the largest projected scope (lowest index on ties).
    """
    keep = VarSet(target)
    if not len(keep):
        raise ModelError("query mentions no variables")
    unknown = keep - tree.variables
    if len(unknown):
        names = tree.names
        raise ModelError("query variables not in the model: "
                         + ", ".join(names.get(v, str(v)) for v in unknown))
    trace = modified_graham(tree.hypergraph(), keep)
    nodes = tuple(sorted(tree.steiner_nodes(trace.residual)))
    projected = {}
    for node in nodes:
        others = VarSet(v for j in nodes if j != node for v in tree[j])
        projected[node] = tree[node] & (keep | others)
    root = min(nodes, key=lambda i: (-len(projected[i]), i))
    plan = QueryPlan(tree, keep, nodes, projected, root, trace)
    logger.debug("plan for %s: %s", keep, "; ".join(plan.describe()))
    return plan


def _node_marginals(marginals: Marginals) -> Mapping[int, Valuation]:
    if isinstance(marginals, SetChain):
        return marginals.marginals()
    if isinstance(marginals, PropagationResult):
        return dict(enumerate(marginals.marginals))
    return marginals


def union_marginal(plan: QueryPlan, marginals: Marginals, project: bool = True,
                   counter: Optional[OperationCounter] = None) -> Valuation:
    """
    The joint marginalized to the plan's union, from plan nodes only.

    With removal this is R_r ⊗ (⊗ R_i Ⓡ S_i), S_i being the marginal of R_i
    on the separator toward its parent in the plan. Idempotent instances
    combine the R_i directly. With ``project`` every R_i is first reduced to
    its projected scope and the result covers the projected union.
    """
    counter = counted(counter)
    available = _node_marginals(marginals)
    missing = [i for i in plan.nodes if i not in available]
    if missing:
        raise PreconditionError(f"no marginal for plan nodes {missing}")
    instance = type(available[plan.root])
    if not (instance.supports_removal or instance.idempotent):
        raise CapabilityError(f"{instance.kind} valuations can neither remove nor "
                              "combine idempotently")

    parents = plan.parents
    result: Optional[Valuation] = None
    for node in plan.order:
        local = available[node]
        if project:
            local = counter.marginalize(local, plan.projected[node])
        parent = parents[node]
        if parent is not None and instance.supports_removal:
            separator = counter.marginalize(local, plan.tree.separator(node, parent))
            local = counter.remove(local, separator)
        result = local if result is None else counter.combine(result, local)
    assert result is not None
    return result


def require_scalar(instance: Type[Valuation]) -> None:
    if not issubclass(instance, DenseTable):
        raise CapabilityError(f"{instance.kind} valuations have no scalar query semantics")


def evaluate_query(plan: QueryPlan, marginals: Marginals, expression: Expression,
                   counter: Optional[OperationCounter] = None) -> float:
    """Σ of the query-scope marginal over the configurations satisfying the query"""
    root = _node_marginals(marginals).get(plan.root)
    if root is not None:
        require_scalar(type(root))
    union = union_marginal(plan, marginals, counter=counter)
    assert isinstance(union, DenseTable)
    variables = {v.name: v for v in union.domain.variables}
    domain = query_domain(expression, variables)
    rho = counted(counter).marginalize(union, domain.scope)
    return float(np.sum(rho.table, where=expression.mask(rho.domain)))


@dataclass
class QueryAnswer:
    value: float
    plan: QueryPlan
    counter: OperationCounter


def answer_query(tree: MarkovTree, marginals: Marginals, query: Union[str, Expression],
                 variables: Mapping[str, Variable]) -> QueryAnswer:
    """Parse, plan and evaluate a query against cached node marginals"""
    expression = parse_query(query) if isinstance(query, str) else query
    domain = query_domain(expression, variables)
    plan = plan_query(tree, domain.scope)
    counter = OperationCounter()
    value = evaluate_query(plan, marginals, expression, counter)
    logger.info("query %s = %s over %d plan nodes", expression, value, len(plan.nodes))
    return QueryAnswer(value, plan, counter)
