"""
Message passing on a Markov tree: node valuations in, node marginals out
"""
import logging
from dataclasses import dataclass
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Type

from ..core.errors import InvariantError, ModelError, PreconditionError, SchedulingError
from ..core.frames import Domain, Variable
from ..core.valuation import Valuation
from ..structure.markov_tree import MarkovTree
from .counters import OperationCounter, counted

logger = logging.getLogger(__name__)


# ============================================================================
# Factor assignment
# ============================================================================

@dataclass(frozen=True)
class TreeAssignment:
    """Markov tree with a valuation V_i on every node, scope(V_i) ⊆ h_i"""
    tree: MarkovTree
    valuations: Tuple[Valuation, ...]
    domains: Tuple[Domain, ...]
    instance: Type[Valuation]
    factor_nodes: Tuple[Tuple[int, ...], ...] = ()

    def __post_init__(self):
        if len(self.valuations) != len(self.tree) or len(self.domains) != len(self.tree):
            raise ModelError("one valuation and one domain per tree node are required")
        for node, (valuation, domain) in enumerate(zip(self.valuations, self.domains)):
            if type(valuation) is not self.instance:
                raise ModelError(f"node {node} holds a {type(valuation).__name__}")
            if domain.scope != self.tree[node]:
                raise ModelError(f"domain of node {node} does not match its hyperedge")
            if not valuation.scope <= self.tree[node]:
                raise ModelError(
                    f"valuation scope {valuation.scope} exceeds node {self.tree.label(node)}"
                )

    def __len__(self) -> int:
        return len(self.valuations)

    def joint(self) -> Valuation:
        """⊗ V_i over all nodes; exponential in the number of variables"""
        result = self.instance.identity(Domain())
        for valuation in self.valuations:
            result = result.combine(valuation)
        return result


def node_domains(tree: MarkovTree, variables: Mapping[int, Variable]) -> Tuple[Domain, ...]:
    domains = []
    for node, edge in enumerate(tree.nodes):
        missing = [v for v in edge if v not in variables]
        if missing:
            raise ModelError(f"node {tree.label(node)} uses undeclared variables {missing}")
        domains.append(Domain(variables[v] for v in edge))
    return tuple(domains)


def assign_factors(tree: MarkovTree, factors: Sequence[Valuation],
                   instance: Optional[Type[Valuation]] = None,
                   variables: Optional[Mapping[int, Variable]] = None,
                   pad: str = "empty") -> TreeAssignment:
    """
    Put every factor on the lowest-index node whose hyperedge contains its
    scope and combine the factors sharing a node.

    Nodes without factors hold the empty-scope identity (``pad="empty"``) or
    the identity over their hyperedge (``pad="full"``).
    """
    if pad not in ("empty", "full"):
        raise ValueError(f"Unsupported padding: {pad}. Use 'empty' or 'full'.")
    if instance is None:
        if not factors:
            raise ModelError("an instance is required for a model without factors")
        instance = type(factors[0])
    known: Dict[int, Variable] = dict(variables or {})
    for factor in factors:
        if type(factor) is not instance:
            raise ModelError(f"cannot assign a {type(factor).__name__} to a {instance.kind} model")
        for var in factor.domain.variables:
            known.setdefault(var.id, var)
    domains = node_domains(tree, known)

    placed: List[List[int]] = [[] for _ in tree.nodes]
    for index, factor in enumerate(factors):
        node = next((i for i, h in enumerate(tree.nodes) if factor.scope <= h), None)
        if node is None:
            raise PreconditionError(f"no tree node contains the factor scope {factor.scope}")
        placed[node].append(index)

    valuations = []
    for node, indices in enumerate(placed):
        neutral = instance.identity(domains[node] if pad == "full" else Domain())
        value = neutral
        for index in indices:
            value = value.combine(factors[index])
        valuations.append(value)
        logger.debug("node %s holds factors %s", tree.label(node), indices)
    return TreeAssignment(tree, tuple(valuations), domains, instance,
                          tuple(tuple(p) for p in placed))


# ============================================================================
# Messages
# ============================================================================

class MessageStore:
    """Messages keyed by directed tree link; a message is never replaced"""

    def __init__(self):
        self._messages: Dict[Tuple[int, int], Valuation] = {}

    def __contains__(self, link: object) -> bool:
        return link in self._messages

    def __getitem__(self, link: Tuple[int, int]) -> Valuation:
        return self._messages[link]

    def __len__(self) -> int:
        return len(self._messages)

    def __iter__(self) -> Iterator[Tuple[int, int]]:
        return iter(self._messages)

    def put(self, sender: int, receiver: int, message: Valuation) -> None:
        if (sender, receiver) in self._messages:
            raise InvariantError(f"message {sender}->{receiver} was already computed")
        self._messages[(sender, receiver)] = message

    def incoming(self, node: int, tree: MarkovTree, exclude: Optional[int] = None) -> List[Valuation]:
        """Messages into ``node`` from every neighbour but ``exclude``"""
        result = []
        for other in tree.neighbors(node):
            if other == exclude:
                continue
            if (other, node) not in self._messages:
                raise SchedulingError(f"message {other}->{node} has not been computed yet")
            result.append(self._messages[(other, node)])
        return result


def message(sender: int, receiver: int, assignment: TreeAssignment, store: MessageStore,
            counter: Optional[OperationCounter] = None) -> Valuation:
    """
    V_i combined with the messages from every neighbour but the receiver,
    marginalized to the separator.
    """
    counter = counted(counter)
    tree = assignment.tree
    separator = tree.separator(sender, receiver)
    result = assignment.valuations[sender]
    for incoming in store.incoming(sender, tree, exclude=receiver):
        result = counter.combine(result, incoming)
    result = counter.marginalize(result, separator & result.scope)
    counter.messages += 1
    logger.debug("message %d->%d over %s", sender, receiver, result.scope)
    return result


def marginal_at(node: int, assignment: TreeAssignment, store: MessageStore,
                counter: Optional[OperationCounter] = None) -> Valuation:
    """R_j = V_j ⊗ all incoming messages, over the full hyperedge h_j"""
    counter = counted(counter)
    result = assignment.valuations[node]
    for incoming in store.incoming(node, assignment.tree):
        result = counter.combine(result, incoming)
    return result.extend(assignment.domains[node])


@dataclass(frozen=True)
class PropagationResult:
    store: MessageStore
    marginals: Tuple[Valuation, ...]
    root: int

    def __getitem__(self, node: int) -> Valuation:
        return self.marginals[node]


def schedule(tree: MarkovTree, root: int) -> List[Tuple[int, int]]:
    """Inward links toward ``root`` (leaves first), then the same links outward"""
    parents = tree.parents(root)
    order = tree.bfs_order(root)
    inward = [(node, parents[node]) for node in reversed(order) if parents[node] is not None]
    outward = [(parent, node) for node, parent in reversed(inward)]
    return inward + outward  # type: ignore[return-value]


def propagate_all(assignment: TreeAssignment, root: Optional[int] = None,
                  counter: Optional[OperationCounter] = None) -> PropagationResult:
    """Compute each directed message once and every node marginal"""
    tree = assignment.tree
    if not len(tree):
        raise PreconditionError("cannot propagate on an empty tree")
    root = tree.center() if root is None else root
    store = MessageStore()
    for sender, receiver in schedule(tree, root):
        store.put(sender, receiver, message(sender, receiver, assignment, store, counter))
    marginals = tuple(marginal_at(j, assignment, store, counter) for j in range(len(tree)))
    logger.info("propagated %d messages over %d nodes from root %d", len(store), len(tree), root)
    return PropagationResult(store, marginals, root)
