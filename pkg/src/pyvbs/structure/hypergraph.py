"""
Hypergraphs over model variables, the Graham reduction and hypertree covers
"""
import logging
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from ..core.errors import ModelError
from ..core.frames import VarSet

logger = logging.getLogger(__name__)


# ============================================================================
# Hypergraph
# ============================================================================

class Hypergraph:
    """
    Indexed list of hyperedges over a set of variable ids.

    Every edge is non-empty, no two edges are equal and every variable lies in
    at least one edge. ``names`` only affects rendering.
    """

    def __init__(self, edges: Iterable[Iterable[int]],
                 variables: Optional[Iterable[int]] = None,
                 names: Optional[Mapping[int, str]] = None):
        self._edges: Tuple[VarSet, ...] = tuple(VarSet(e) for e in edges)
        covered = VarSet(v for e in self._edges for v in e)
        self._variables = covered if variables is None else VarSet(variables)
        self._names: Dict[int, str] = dict(names or {})

        for index, edge in enumerate(self._edges):
            if not len(edge):
                raise ModelError(f"hyperedge {index} is empty")
            if not edge.issubset(self._variables):
                raise ModelError(f"hyperedge {self.label(edge)} uses unknown variables")
        if len(set(self._edges)) != len(self._edges):
            raise ModelError("hypergraph has duplicate hyperedges")
        missing = self._variables - covered
        if len(missing):
            raise ModelError(f"variables {self.label(missing)} are in no hyperedge")

    @classmethod
    def from_names(cls, edges: Iterable[Iterable[str]],
                   order: Optional[Sequence[str]] = None) -> "Hypergraph":
        """
        Hypergraph over named variables. Ids follow ``order`` when given,
        otherwise the order of first appearance.
        """
        edges = [list(e) for e in edges]
        ids: Dict[str, int] = {name: k for k, name in enumerate(order or [])}
        for edge in edges:
            for name in edge:
                if name not in ids:
                    if order is not None:
                        raise ModelError(f"unknown variable {name!r}")
                    ids[name] = len(ids)
        names = {k: name for name, k in ids.items()}
        return cls([[ids[name] for name in e] for e in edges], ids.values(), names)

    # ─────────────────────────────────────────────────────────── properties
    @property
    def edges(self) -> Tuple[VarSet, ...]:
        return self._edges

    @property
    def variables(self) -> VarSet:
        return self._variables

    @property
    def names(self) -> Dict[int, str]:
        return dict(self._names)

    def __len__(self) -> int:
        return len(self._edges)

    def __iter__(self) -> Iterator[VarSet]:
        return iter(self._edges)

    def __getitem__(self, index: int) -> VarSet:
        return self._edges[index]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Hypergraph):
            return self._edges == other._edges and self._variables == other._variables
        return NotImplemented

    def __repr__(self) -> str:
        return "Hypergraph(" + ", ".join(self.label(e) for e in self._edges) + ")"

    def name(self, var_id: int) -> str:
        return self._names.get(var_id, str(var_id))

    def label(self, edge: Iterable[int]) -> str:
        return "{" + ", ".join(self.name(v) for v in VarSet(edge)) + "}"

    # ─────────────────────────────────────────────────────────── structure
    def covers(self, other: "Hypergraph") -> bool:
        """Every edge of ``other`` lies inside some edge of this hypergraph"""
        return all(any(e.issubset(f) for f in self._edges) for e in other.edges)

    def primal_graph(self) -> nx.Graph:
        """Graph on the variables with an edge between any two sharing a hyperedge"""
        graph = nx.Graph()
        graph.add_nodes_from(self._variables)
        for edge in self._edges:
            graph.add_edges_from(combinations(edge, 2))
        return graph


# ============================================================================
# Graham reduction
# ============================================================================

@dataclass(frozen=True)
class GrahamStep:
    """Either a variable deleted from its only edge or an edge deleted"""
    kind: str  # "delete-variable" | "delete-edge"
    edge: int
    round: int
    variable: Optional[int] = None
    absorbed_into: Optional[int] = None


@dataclass(frozen=True)
class GrahamStage:
    """Live edges after one phase of one round"""
    round: int
    phase: str  # "vertices" | "edges"
    edges: Tuple[Tuple[int, VarSet], ...]


@dataclass
class GrahamTrace:
    steps: List[GrahamStep] = field(default_factory=list)
    stages: List[GrahamStage] = field(default_factory=list)
    residual: Dict[int, VarSet] = field(default_factory=dict)

    @property
    def deletion_order(self) -> List[int]:
        """Edge indices in the order they were deleted"""
        return [s.edge for s in self.steps if s.kind == "delete-edge"]

    def deleted_variables(self, round: int = 1) -> List[int]:
        """Variables deleted during the vertex phase of ``round``"""
        return [s.variable for s in self.steps
                if s.kind == "delete-variable" and s.round == round and s.variable is not None]

    def replay(self, hypergraph: Hypergraph) -> Dict[int, VarSet]:
        """Apply the recorded steps to ``hypergraph`` and return the live edges"""
        live = {i: set(e) for i, e in enumerate(hypergraph.edges)}
        for step in self.steps:
            if step.kind == "delete-variable":
                live[step.edge].discard(step.variable)
            else:
                del live[step.edge]
        return {i: VarSet(e) for i, e in live.items()}

    def describe(self, hypergraph: Hypergraph) -> List[str]:
        lines = []
        for stage in self.stages:
            edges = ", ".join(hypergraph.label(e) for _, e in stage.edges)
            lines.append(f"round {stage.round} after {stage.phase}: {{{edges}}}")
        return lines


def _absorber(index: int, live: Dict[int, set]) -> Optional[int]:
    """Lowest live edge containing edge ``index``; equal edges go to the lower index"""
    edge = live[index]
    for other in sorted(live):
        if other == index:
            continue
        if edge <= live[other] and (edge != live[other] or other < index):
            return other
    return None


def _reduce(hypergraph: Hypergraph, keep: Iterable[int]) -> GrahamTrace:
    """
    Graham reduction in rounds until nothing changes.

    Each round first deletes every vertex that lies in exactly one live edge
    and is not kept, all of them at once, then deletes every edge contained in
    another live edge. A round therefore removes all vertices eligible at its
    start, not just the ones a step-by-step walkthrough would pick first.
    """
    keep = set(keep)
    live = {i: set(e) for i, e in enumerate(hypergraph.edges)}
    trace = GrahamTrace()
    rounds = 0

    def snapshot(phase: str) -> None:
        edges = tuple((i, VarSet(live[i])) for i in sorted(live))
        trace.stages.append(GrahamStage(rounds, phase, edges))

    changed = True
    while changed and live:
        changed = False
        rounds += 1

        counts = Counter(v for e in live.values() for v in e)
        for var in sorted(counts):
            if counts[var] == 1 and var not in keep:
                index = next(i for i in sorted(live) if var in live[i])
                live[index].discard(var)
                trace.steps.append(GrahamStep("delete-variable", index, rounds, variable=var))
                changed = True
        snapshot("vertices")

        for index in sorted(live):
            if index not in live:
                continue
            target = _absorber(index, live)
            if target is None and not (live[index] or len(live) > 1):
                # the last edge, emptied
                del live[index]
                trace.steps.append(GrahamStep("delete-edge", index, rounds))
                changed = True
            elif target is not None:
                del live[index]
                trace.steps.append(GrahamStep("delete-edge", index, rounds, absorbed_into=target))
                changed = True
        snapshot("edges")

    trace.residual = {i: VarSet(live[i]) for i in sorted(live)}
    return trace


def graham_test(hypergraph: Hypergraph) -> Tuple[bool, GrahamTrace]:
    """
    Delete variables that lie in one edge only and edges contained in another
    edge until nothing changes. The hypergraph is a hypertree iff this empties it.
    """
    trace = _reduce(hypergraph, ())
    logger.debug("graham test: %d steps, residual %s", len(trace.steps), trace.residual)
    return not trace.residual, trace


def modified_graham(hypergraph: Hypergraph, keep: Iterable[int]) -> GrahamTrace:
    """Graham reduction that never deletes the variables in ``keep``"""
    trace = _reduce(hypergraph, keep)
    logger.debug("modified graham keeping %s: residual %s", VarSet(keep), trace.residual)
    return trace


def is_hypertree(hypergraph: Hypergraph) -> bool:
    return graham_test(hypergraph)[0]


# ============================================================================
# Covering
# ============================================================================

def _fill_in(graph: nx.Graph, var: int) -> int:
    neighbours = list(graph.neighbors(var))
    return sum(1 for a, b in combinations(neighbours, 2) if not graph.has_edge(a, b))


def elimination_cliques(hypergraph: Hypergraph) -> List[VarSet]:
    """
    Cliques of a min-fill elimination of the primal graph, ties broken by the
    smaller clique and then the lower variable id.
    """
    graph = hypergraph.primal_graph()
    cliques: List[VarSet] = []
    while graph.number_of_nodes():
        var = min(graph.nodes, key=lambda v: (_fill_in(graph, v), graph.degree(v), v))
        neighbours = list(graph.neighbors(var))
        graph.add_edges_from(combinations(neighbours, 2))
        cliques.append(VarSet([var, *neighbours]))
        graph.remove_node(var)
        logger.debug("eliminated %s, clique %s", hypergraph.name(var), hypergraph.label(cliques[-1]))
    return cliques


def cover_hypertree(hypergraph: Hypergraph) -> Hypergraph:
    """
    A hypertree covering ``hypergraph``: every edge lies inside some output
    edge. Hypertrees are returned unchanged.
    """
    if is_hypertree(hypergraph):
        return hypergraph
    cliques = elimination_cliques(hypergraph)
    maximal: List[VarSet] = []
    for clique in cliques:
        if any(clique < other for other in cliques) or clique in maximal:
            continue
        maximal.append(clique)
    maximal.sort(key=lambda e: (e.ids[0], e.ids))
    cover = Hypergraph(maximal, hypergraph.variables, hypergraph.names)
    logger.info("covered %d hyperedges with a hypertree of %d", len(hypergraph), len(cover))
    return cover
