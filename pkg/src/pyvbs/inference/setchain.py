"""
Set-chain representation of a joint valuation

The joint R = ⊗ V_i of a tree assignment is rewritten as
R_1 ⊗ (⊗ R_k Ⓡ S_k), where R_k is the marginal of R on node k and S_k its
marginal on the separator toward the predecessor of k. Every step works on a
single node or a single separator.
"""
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Optional, Tuple, Type

from ..core.errors import CapabilityError, InvariantError, PreconditionError
from ..core.frames import Domain, VarSet
from ..core.settings import Presets, Settings
from ..core.valuation import Valuation
from ..structure.markov_tree import MarkovTree
from .counters import OperationCounter, counted
from .propagation import TreeAssignment

logger = logging.getLogger(__name__)


# ============================================================================
# Node numbering
# ============================================================================

@dataclass(frozen=True)
class Numbering:
    """
    Tree nodes numbered 1..n so that every node k >= 2 has exactly one
    neighbour with a smaller number, its predecessor.
    """
    order: Tuple[int, ...]
    predecessor: Dict[int, Optional[int]]

    def __len__(self) -> int:
        return len(self.order)

    def node(self, position: int) -> int:
        """Tree node numbered ``position`` (1-based)"""
        return self.order[position - 1]

    def number(self, node: int) -> int:
        return self.order.index(node) + 1

    def prefix(self, position: int) -> Tuple[int, ...]:
        """Nodes numbered 1..position"""
        return self.order[:position]


def order_nodes(tree: MarkovTree, root: Optional[int] = None) -> Numbering:
    """Breadth-first numbering from ``root`` (the tree center by default)"""
    if not len(tree):
        raise PreconditionError("cannot number an empty tree")
    root = tree.center() if root is None else root
    order = tuple(tree.bfs_order(root))
    return Numbering(order, tree.parents(root))


# ============================================================================
# Chain types
# ============================================================================

@dataclass(frozen=True)
class SetChainFactor:
    """R_k on node k and, for k >= 2, S_k = R_k↓(h_k ∩ h_{k+})"""
    position: int
    node: int
    marginal: Valuation
    separator: Optional[Valuation] = None
    predecessor: Optional[int] = None

    def conditional(self) -> Valuation:
        """R_k Ⓡ S_k, or R_1 itself for the first factor"""
        if self.separator is None:
            return self.marginal
        return self.marginal.remove(self.separator)


@dataclass
class SetChain:
    instance: Type[Valuation]
    numbering: Numbering
    factors: List[SetChainFactor] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.factors)

    def __iter__(self) -> Iterator[SetChainFactor]:
        return iter(self.factors)

    def at(self, position: int) -> SetChainFactor:
        return self.factors[position - 1]

    def for_node(self, node: int) -> SetChainFactor:
        for factor in self.factors:
            if factor.node == node:
                return factor
        raise PreconditionError(f"chain has no factor for node {node}")

    def marginals(self) -> Dict[int, Valuation]:
        """R_k keyed by tree node"""
        return {f.node: f.marginal for f in self.factors}


@dataclass
class ChainState:
    """Working valuations after outer step ``position`` and the factors finalized so far"""
    position: int
    working: Dict[int, Valuation]
    finalized: List[SetChainFactor]
    instance: Type[Valuation]

    def combined(self) -> Valuation:
        """⊗ working V_i ⊗ (⊗ R_m Ⓡ S_m for the finalized m)"""
        result = self.instance.identity(Domain())
        for valuation in self.working.values():
            result = result.combine(valuation)
        for factor in self.finalized:
            result = result.combine(factor.conditional())
        return result


# ============================================================================
# Construction
# ============================================================================

class _MessageCache:
    """Reuses a message only when its inputs are bitwise identical"""

    def __init__(self, counter: OperationCounter):
        self._entries: Dict[tuple, Valuation] = {}
        self._counter = counter

    @staticmethod
    def _key(sender: int, receiver: int, parts: List[Valuation]) -> tuple:
        return (sender, receiver) + tuple((p.scope.ids, p.table.tobytes()) for p in parts)

    def lookup(self, sender: int, receiver: int, parts: List[Valuation]) -> Optional[Valuation]:
        hit = self._entries.get(self._key(sender, receiver, parts))
        if hit is not None:
            self._counter.bump("reused-messages")
        return hit

    def store(self, sender: int, receiver: int, parts: List[Valuation], value: Valuation) -> None:
        self._entries[self._key(sender, receiver, parts)] = value


def _inward_order(tree: MarkovTree, root: int, members: Tuple[int, ...]) -> List[Tuple[int, int]]:
    """(node, parent) links of the subtree on ``members`` hanging from ``root``, leaves first"""
    parents = tree.parents(root, members)
    order = tree.bfs_order(root, members)
    return [(node, parents[node]) for node in reversed(order)  # type: ignore[misc]
            if parents[node] is not None]


def build_setchain(assignment: TreeAssignment, root: Optional[int] = None,
                   counter: Optional[OperationCounter] = None,
                   on_step: Optional[Callable[[ChainState], None]] = None,
                   memoize: bool = True) -> SetChain:
    """
    Transform a tree assignment into its set chain.

    For k = n..2, an inward pass over the nodes numbered 1..k moves all
    information toward node k, stripping every sender except the predecessor
    k+ of what it sent. Node k then takes R_k = V_k ⊗ M_{k+→k}, and k+ keeps
    its own share plus S_k. Finally R_1 is the working valuation of node 1.
    """
    instance = assignment.instance
    if not instance.supports_removal:
        raise CapabilityError(f"{instance.kind} valuations do not support removal, "
                              "a set chain needs it")
    tree = assignment.tree
    counter = counted(counter)
    cache = _MessageCache(counter) if memoize else None
    numbering = order_nodes(tree, root)
    working: Dict[int, Valuation] = dict(enumerate(assignment.valuations))
    finalized: List[SetChainFactor] = []

    for position in range(len(numbering), 1, -1):
        node = numbering.node(position)
        successor = numbering.predecessor[node]
        assert successor is not None
        members = numbering.prefix(position - 1)

        combined: Dict[int, Valuation] = {}
        incoming: Dict[int, List[Valuation]] = {m: [] for m in members}
        outgoing: Dict[int, Valuation] = {}
        for sender, receiver in _inward_order(tree, successor, members):
            parts = [working[sender]] + incoming[sender]
            value = _combine_parts(parts, counter)
            combined[sender] = value
            sent = cache.lookup(sender, receiver, parts) if cache else None
            if sent is None:
                sent = counter.marginalize(value, tree.separator(sender, receiver) & value.scope)
                if cache:
                    cache.store(sender, receiver, parts, sent)
            incoming[receiver].append(sent)
            outgoing[sender] = sent
            counter.messages += 1

        for sender, sent in outgoing.items():
            working[sender] = counter.remove(combined[sender], sent)

        last = _combine_parts([working[successor]] + incoming[successor], counter)
        to_node = counter.marginalize(last, tree.separator(successor, node) & last.scope)
        counter.messages += 1
        marginal = counter.combine(working[node], to_node).extend(assignment.domains[node])
        separator = counter.marginalize(marginal, tree.separator(node, successor))
        working[successor] = counter.combine(counter.remove(last, to_node), separator)
        del working[node]

        finalized.insert(0, SetChainFactor(position, node, marginal, separator, successor))
        logger.debug("finalized node %s at position %d, separator %s",
                     tree.label(node), position, separator.scope)
        if on_step is not None:
            on_step(ChainState(position, dict(working), list(finalized), instance))

    first = numbering.node(1)
    finalized.insert(0, SetChainFactor(1, first, working[first].extend(assignment.domains[first])))
    logger.info("built set chain of %d factors with %d operations", len(finalized),
                counter.operations)
    return SetChain(instance, numbering, finalized)


def _combine_parts(parts: List[Valuation], counter: OperationCounter) -> Valuation:
    result = parts[0]
    for part in parts[1:]:
        result = counter.combine(result, part)
    return result


# ============================================================================
# Reconstruction and verification
# ============================================================================

def reconstruct_joint(chain: SetChain, counter: Optional[OperationCounter] = None) -> Valuation:
    """R_1 ⊗ (⊗ R_k Ⓡ S_k); exponential in the number of variables"""
    counter = counted(counter)
    result = chain.at(1).marginal
    for factor in chain.factors[1:]:
        assert factor.separator is not None
        result = counter.combine(result, counter.remove(factor.marginal, factor.separator))
    return result


@dataclass
class NodeDeviation:
    node: int
    scope: VarSet
    deviation: float


@dataclass
class ChainReport:
    """Deviations of a chain against the joint it was built from"""
    nodes: List[NodeDeviation]
    reconstruction: Optional[float]
    tolerance: float

    @property
    def max_deviation(self) -> float:
        values = [n.deviation for n in self.nodes]
        if self.reconstruction is not None:
            values.append(self.reconstruction)
        return max(values, default=0.0)

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tolerance

    def check(self) -> "ChainReport":
        if not self.passed:
            worst = max(self.nodes, key=lambda n: n.deviation, default=None)
            where = f" (node {worst.node})" if worst and worst.deviation > self.tolerance else ""
            raise InvariantError(
                f"set chain deviates by {self.max_deviation:.3g}{where}, "
                f"tolerance {self.tolerance:.3g}"
            )
        return self


def verify_node_marginals(chain: SetChain, assignment: TreeAssignment,
                          settings: Settings = Presets.default,
                          joint: Optional[Valuation] = None) -> ChainReport:
    """Max deviation per node between R_i and the brute-force joint marginal"""
    joint = assignment.joint() if joint is None else joint
    nodes = []
    for factor in sorted(chain.factors, key=lambda f: f.node):
        scope = assignment.tree[factor.node]
        expected = joint.extend(joint.domain.union(assignment.domains[factor.node]))
        deviation = factor.marginal.deviation(expected.marginalize(scope))
        nodes.append(NodeDeviation(factor.node, scope, deviation))
    return ChainReport(nodes, None, settings.tolerance)


def verify_chain(chain: SetChain, assignment: TreeAssignment,
                 settings: Settings = Presets.default) -> ChainReport:
    """Node-marginal deviations plus the deviation of the reconstructed joint"""
    joint = assignment.joint()
    report = verify_node_marginals(chain, assignment, settings, joint)
    report.reconstruction = reconstruct_joint(chain).deviation(joint)
    return report
