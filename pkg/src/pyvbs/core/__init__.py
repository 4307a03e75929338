"""
Core module for pyvbs - variables, the valuation base class and the law checks
"""
from .settings import Settings, Presets
from .errors import (
    ValuationError, ModelError, ModelFormatError, QuerySyntaxError,
    PreconditionError, InstanceMismatchError, CapabilityError,
    SchedulingError, InvariantError,
)
from .frames import Variable, VarSet, Configuration, Domain
from .valuation import (
    Valuation, combine, combine_all, marginalize, remove, inverse,
    identity_for, consistent, inconsistent,
)
from .axioms import AxiomResult, AxiomReport, run_axiom_suite, laws

__all__ = [
    'Settings', 'Presets',
    'ValuationError', 'ModelError', 'ModelFormatError', 'QuerySyntaxError',
    'PreconditionError', 'InstanceMismatchError', 'CapabilityError',
    'SchedulingError', 'InvariantError',
    'Variable', 'VarSet', 'Configuration', 'Domain',
    'Valuation', 'combine', 'combine_all', 'marginalize', 'remove', 'inverse',
    'identity_for', 'consistent', 'inconsistent',
    'AxiomResult', 'AxiomReport', 'run_axiom_suite', 'laws',
]
