"""
pyvbs - Local computation in valuation-based systems
"""

from .model import Model
from .core import (
    Settings, Presets, Variable, Domain, Valuation,
    ValuationError, ModelError, ModelFormatError, QuerySyntaxError,
    PreconditionError, InstanceMismatchError, CapabilityError,
    SchedulingError, InvariantError, run_axiom_suite,
)
from .instances import (
    ProbabilityPotential, BooleanRelation, CommonalityTable, instance_for,
)
from .structure import Hypergraph, MarkovTree, graham_test, build_markov_tree
from .inference import (
    OperationCounter, propagate_all, build_setchain, plan_query, answer_query,
)
from .exporters import TextExporter, ModelReader

# Short aliases for interactive use
model = Model
hypergraph = Hypergraph
probability = ProbabilityPotential
relation = BooleanRelation
commonality = CommonalityTable
load = Model.load

__all__ = [
    'Model', 'Settings', 'Presets', 'Variable', 'Domain', 'Valuation',
    'ValuationError', 'ModelError', 'ModelFormatError', 'QuerySyntaxError',
    'PreconditionError', 'InstanceMismatchError', 'CapabilityError',
    'SchedulingError', 'InvariantError', 'run_axiom_suite',
    'ProbabilityPotential', 'BooleanRelation', 'CommonalityTable', 'instance_for',
    'Hypergraph', 'MarkovTree', 'graham_test', 'build_markov_tree',
    'OperationCounter', 'propagate_all', 'build_setchain', 'plan_query', 'answer_query',
    'TextExporter', 'ModelReader',
    'model', 'hypergraph', 'probability', 'relation', 'commonality', 'load',
]
