"""
Model class - variables and factors of one valuation-based system
"""
import logging
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Type

from .core.errors import ModelError, PreconditionError
from .core.frames import Domain, Variable
from .core.settings import Presets, Settings
from .core.valuation import Valuation
from .instances import instance_for
from .inference.counters import OperationCounter
from .inference.propagation import PropagationResult, TreeAssignment, assign_factors, propagate_all
from .inference.query import Marginals, QueryAnswer, answer_query, require_scalar
from .inference.setchain import SetChain, build_setchain
from .structure.hypergraph import Hypergraph, cover_hypertree
from .structure.markov_tree import MarkovTree, build_markov_tree

logger = logging.getLogger(__name__)


class Model:
    """
    Container for variables and factors, with chaining mutators.

    Variables get ids in declaration order. The Markov tree is built on demand
    from a hypertree covering the factor scopes (or the explicit structure, if
    one was set) and cached until the model changes.
    """

    def __init__(self, kind: str = "probability", settings: Settings = Presets.default):
        self._instance: Type[Valuation] = instance_for(kind)
        self._settings = settings
        self._variables: Dict[str, Variable] = {}
        self._factors: List[Valuation] = []
        self._structure: Optional[Hypergraph] = None
        self._tree: Optional[MarkovTree] = None
        self._marginals: Dict[Optional[int], Marginals] = {}

    def __repr__(self) -> str:
        return (f"Model({self.kind}, {len(self._variables)} variables, "
                f"{len(self._factors)} factors)")

    # ─────────────────────────────────────────────────────────── properties
    @property
    def kind(self) -> str:
        return self._instance.kind

    @property
    def instance(self) -> Type[Valuation]:
        return self._instance

    @property
    def settings(self) -> Settings:
        return self._settings

    @property
    def variables(self) -> List[Variable]:
        return list(self._variables.values())

    @property
    def by_name(self) -> Dict[str, Variable]:
        return dict(self._variables)

    @property
    def factors(self) -> Tuple[Valuation, ...]:
        return tuple(self._factors)

    @property
    def structure(self) -> Optional[Hypergraph]:
        return self._structure

    def variable(self, name: str) -> Variable:
        if name not in self._variables:
            raise ModelError(f"unknown variable {name!r}")
        return self._variables[name]

    def domain(self, names: Iterable[str] = ()) -> Domain:
        return Domain(self.variable(n) for n in names)

    # ─────────────────────────────────────────────────────────── mutators
    def add_variable(self, name: str, frame: Sequence[str]):
        """Declare a variable with its frame of values"""
        if name in self._variables:
            raise ModelError(f"variable {name!r} is declared twice")
        self._variables[name] = Variable(len(self._variables), name, tuple(frame))
        self._changed()
        return self

    def add_factor(self, names: Sequence[str], values: Sequence[float]):
        """Add a table given over ``names`` in that order, last name fastest"""
        if len(set(names)) != len(names):
            raise ModelError(f"factor scope {list(names)} repeats a variable")
        variables = [self.variable(n) for n in names]
        return self.add_valuation(self._instance.from_values(variables, values))

    def add_valuation(self, valuation: Valuation):
        if type(valuation) is not self._instance:
            raise ModelError(f"cannot add a {valuation.kind} valuation to a {self.kind} model")
        for var in valuation.domain.variables:
            if self._variables.get(var.name) != var:
                raise ModelError(f"valuation uses undeclared variable {var.name!r}")
        self._factors.append(valuation)
        self._changed()
        return self

    def set_structure(self, hypergraph: Optional[Hypergraph]):
        """Use ``hypergraph`` (over variable ids) instead of the factor scopes"""
        self._structure = hypergraph
        self._changed()
        return self

    def _changed(self) -> None:
        self._tree = None
        self._marginals.clear()

    # ─────────────────────────────────────────────────────────── structure
    def hypergraph(self) -> Hypergraph:
        """The explicit structure, or the distinct factor scopes"""
        if self._structure is not None:
            return self._structure
        edges: List[Tuple[int, ...]] = []
        for factor in self._factors:
            if len(factor.scope) and factor.scope.ids not in edges:
                edges.append(factor.scope.ids)
        covered = {v for e in edges for v in e}
        edges.extend((v.id,) for v in self._variables.values() if v.id not in covered)
        names = {v.id: v.name for v in self._variables.values()}
        return Hypergraph(edges, names=names)

    def markov_tree(self) -> MarkovTree:
        if self._tree is None:
            cover = cover_hypertree(self.hypergraph())
            for factor in self._factors:
                if not any(factor.scope <= edge for edge in cover):
                    raise ModelError(f"structure does not cover the factor over {factor.domain.names}")
            self._tree = build_markov_tree(cover)
        return self._tree

    def assignment(self, pad: str = "empty") -> TreeAssignment:
        return assign_factors(self.markov_tree(), self._factors, self._instance,
                              {v.id: v for v in self._variables.values()}, pad)

    # ─────────────────────────────────────────────────────────── inference
    def joint(self) -> Valuation:
        """⊗ of all factors over every declared variable; exponential, for checks"""
        result = self._instance.identity(Domain(self._variables.values()))
        for factor in self._factors:
            result = result.combine(factor)
        return result

    def propagate(self, root: Optional[int] = None,
                  counter: Optional[OperationCounter] = None) -> PropagationResult:
        return propagate_all(self.assignment(), root, counter)

    def setchain(self, root: Optional[int] = None,
                 counter: Optional[OperationCounter] = None) -> SetChain:
        return build_setchain(self.assignment(), root, counter)

    def marginal(self, names: Iterable[str], root: Optional[int] = None) -> Valuation:
        """Marginal on variables that share a tree node"""
        target = self.domain(names).scope
        tree = self.markov_tree()
        node = next((i for i, h in enumerate(tree.nodes) if target <= h), None)
        if node is None:
            raise PreconditionError(
                f"no tree node contains {sorted(names)}; use a query for variables "
                "spread over several nodes"
            )
        return self.propagate(root)[node].marginalize(target)

    def node_marginals(self, root: Optional[int] = None) -> Marginals:
        """Set chain for removal instances, propagation results otherwise; cached"""
        if root not in self._marginals:
            if self._instance.supports_removal:
                self._marginals[root] = self.setchain(root)
            else:
                self._marginals[root] = self.propagate(root)
        return self._marginals[root]

    def query(self, text: str, root: Optional[int] = None) -> QueryAnswer:
        require_scalar(self._instance)
        return answer_query(self.markov_tree(), self.node_marginals(root), text, self._variables)

    # ─────────────────────────────────────────────────────────── persistence
    def save(self, filename: str, backend: str = "text") -> None:
        """Save the model to file with the specified backend"""
        if backend == "text":
            from .exporters import TextExporter
            TextExporter(self._settings).export(self, filename)
        else:
            raise ValueError(f"Unsupported backend: {backend}. Currently only 'text' is supported.")

    @classmethod
    def load(cls, filename: str, settings: Settings = Presets.default) -> "Model":
        from .exporters import ModelReader
        return ModelReader(settings).read_model(filename)
