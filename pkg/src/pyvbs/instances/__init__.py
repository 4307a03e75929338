"""
Instances module for pyvbs - Concrete valuation algebras
"""
from typing import Dict, Type

from ..core.errors import ModelError
from ..core.valuation import Valuation
from .commonality import (
    CommonalityTable, commonality_combine, commonality_to_mass, mass_to_commonality,
)
from .probability import ProbabilityPotential
from .relation import BooleanRelation
from .tabular import DenseTable

INSTANCES: Dict[str, Type[Valuation]] = {
    ProbabilityPotential.kind: ProbabilityPotential,
    CommonalityTable.kind: CommonalityTable,
    BooleanRelation.kind: BooleanRelation,
}


def instance_for(kind: str) -> Type[Valuation]:
    """Valuation class registered under ``kind``"""
    try:
        return INSTANCES[kind]
    except KeyError:
        raise ModelError(
            f"unknown instance kind {kind!r}; expected one of {', '.join(INSTANCES)}"
        ) from None


__all__ = [
    'INSTANCES', 'instance_for',
    'DenseTable', 'ProbabilityPotential', 'BooleanRelation', 'CommonalityTable',
    'mass_to_commonality', 'commonality_to_mass', 'commonality_combine',
]
