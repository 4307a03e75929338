"""
Markov trees built from the Graham reduction of a hypertree
"""
import logging
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx

from ..core.errors import ModelError, PreconditionError
from ..core.frames import VarSet
from .hypergraph import Hypergraph, graham_test

logger = logging.getLogger(__name__)


class MarkovTree:
    """
    Tree whose nodes are the hyperedges h_0..h_{n-1} of a hypertree.

    The separator of a tree edge {i, j} is h_i ∩ h_j. ``construction_order``
    lists every node after exactly one of its neighbours.
    """

    def __init__(self, nodes: Sequence[Iterable[int]], links: Iterable[Tuple[int, int]],
                 construction_order: Optional[Sequence[int]] = None,
                 names: Optional[Dict[int, str]] = None):
        self._nodes: Tuple[VarSet, ...] = tuple(VarSet(h) for h in nodes)
        self._graph = nx.Graph()
        self._graph.add_nodes_from(range(len(self._nodes)))
        for i, j in links:
            if not (0 <= i < len(self._nodes) and 0 <= j < len(self._nodes)) or i == j:
                raise ModelError(f"tree link ({i}, {j}) does not join two nodes")
            self._graph.add_edge(i, j)
        if self._nodes and not nx.is_tree(self._graph):
            raise ModelError("links do not form a tree over the nodes")
        self._names = dict(names or {})
        if construction_order is None:
            construction_order = self.bfs_order(0) if self._nodes else []
        self._order = tuple(construction_order)
        if sorted(self._order) != list(range(len(self._nodes))):
            raise ModelError("construction order is not a permutation of the nodes")

    # ─────────────────────────────────────────────────────────── properties
    @property
    def nodes(self) -> Tuple[VarSet, ...]:
        return self._nodes

    @property
    def graph(self) -> nx.Graph:
        """Read-only view of the tree graph"""
        return self._graph.copy(as_view=True)

    @property
    def construction_order(self) -> Tuple[int, ...]:
        return self._order

    @property
    def names(self) -> Dict[int, str]:
        return dict(self._names)

    def __len__(self) -> int:
        return len(self._nodes)

    def __getitem__(self, index: int) -> VarSet:
        return self._nodes[index]

    def __repr__(self) -> str:
        links = ", ".join(f"{i}-{j}" for i, j in self.edges)
        return f"MarkovTree({len(self)} nodes: {links})"

    @property
    def edges(self) -> List[Tuple[int, int]]:
        """Tree links as sorted pairs, in ascending order"""
        return sorted(tuple(sorted(e)) for e in self._graph.edges)  # type: ignore[misc]

    @property
    def variables(self) -> VarSet:
        return VarSet(v for h in self._nodes for v in h)

    def neighbors(self, node: int) -> List[int]:
        return sorted(self._graph.neighbors(node))

    def separator(self, i: int, j: int) -> VarSet:
        if not self._graph.has_edge(i, j):
            raise PreconditionError(f"nodes {i} and {j} are not adjacent")
        return self._nodes[i] & self._nodes[j]

    def label(self, node: int) -> str:
        return "{" + ", ".join(self._names.get(v, str(v)) for v in self._nodes[node]) + "}"

    def hypergraph(self) -> Hypergraph:
        return Hypergraph(self._nodes, names=self._names)

    # ─────────────────────────────────────────────────────────── traversal
    def center(self) -> int:
        """Lowest-index node of the tree center"""
        if len(self._nodes) == 1:
            return 0
        return min(nx.center(self._graph))

    def bfs_order(self, root: int, within: Optional[Iterable[int]] = None) -> List[int]:
        """
        Breadth-first order from ``root``, neighbours in ascending index,
        optionally restricted to the nodes ``within``.
        """
        self._check_node(root)
        allowed = set(range(len(self._nodes)) if within is None else within)
        order = [root]
        seen = {root}
        for node in order:
            for other in self.neighbors(node):
                if other in allowed and other not in seen:
                    seen.add(other)
                    order.append(other)
        return order

    def parents(self, root: int,
                within: Optional[Iterable[int]] = None) -> Dict[int, Optional[int]]:
        """Parent of every node when the tree (or the part ``within``) hangs from ``root``"""
        allowed = set(range(len(self._nodes)) if within is None else within)
        parents: Dict[int, Optional[int]] = {root: None}
        for node in self.bfs_order(root, allowed):
            for other in self.neighbors(node):
                if other in allowed and other not in parents:
                    parents[other] = node
        return parents

    def path(self, i: int, j: int) -> List[int]:
        return nx.shortest_path(self._graph, i, j)

    def steiner_nodes(self, nodes: Iterable[int]) -> Set[int]:
        """Smallest connected set of tree nodes containing ``nodes``"""
        nodes = sorted(set(nodes))
        if not nodes:
            return set()
        result = {nodes[0]}
        for node in nodes[1:]:
            result.update(self.path(nodes[0], node))
        return result

    def _check_node(self, node: int) -> None:
        if not 0 <= node < len(self._nodes):
            raise PreconditionError(f"tree has no node {node}")

    # ─────────────────────────────────────────────────────────── checks
    def has_running_intersection(self, order: Optional[Sequence[int]] = None) -> bool:
        """
        Every node after the first meets the union of the earlier nodes
        only inside one earlier neighbour.
        """
        order = list(self._order if order is None else order)
        seen: List[int] = []
        for node in order:
            if seen:
                earlier = [j for j in self.neighbors(node) if j in seen]
                if len(earlier) != 1:
                    return False
                union = VarSet(v for j in seen for v in self._nodes[j])
                if not (self._nodes[node] & union) <= self._nodes[earlier[0]]:
                    return False
            seen.append(node)
        return True

    def has_separator_property(self) -> bool:
        """Cutting any link leaves two sides that share exactly its separator"""
        for i, j in self.edges:
            cut = nx.Graph(self._graph)
            cut.remove_edge(i, j)
            left = VarSet(v for k in nx.node_connected_component(cut, i) for v in self._nodes[k])
            right = VarSet(v for k in nx.node_connected_component(cut, j) for v in self._nodes[k])
            if left & right != self.separator(i, j):
                return False
        return True


def build_markov_tree(hypergraph: Hypergraph) -> MarkovTree:
    """
    Markov tree of a hypertree: every deleted edge is linked to the edge that
    absorbed it, and the construction order is the deletion order reversed.
    """
    ok, trace = graham_test(hypergraph)
    if not ok:
        residual = ", ".join(hypergraph.label(e) for e in trace.residual.values())
        raise PreconditionError(
            f"hypergraph is not a hypertree, Graham reduction stops at {{{residual}}}"
        )
    links = [(s.edge, s.absorbed_into) for s in trace.steps
             if s.kind == "delete-edge" and s.absorbed_into is not None]
    order = list(reversed(trace.deletion_order))
    tree = MarkovTree(hypergraph.edges, links, order, hypergraph.names)
    logger.info("built Markov tree with %d nodes", len(tree))
    for i, j in tree.edges:
        logger.debug("link %s - %s, separator %s", tree.label(i), tree.label(j),
                     hypergraph.label(tree.separator(i, j)))
    return tree
