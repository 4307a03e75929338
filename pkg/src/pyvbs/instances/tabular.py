"""
Dense tables over Θ(s), shared by the probability and boolean instances
"""
from typing import ClassVar, Sequence

import numpy as np

from ..core.errors import ModelError
from ..core.frames import Domain, Variable
from ..core.valuation import Valuation


def expand(table: np.ndarray, domain: Domain, target: Domain) -> np.ndarray:
    """View of ``table`` with singleton axes for the variables of ``target`` it lacks"""
    shape = [v.size if v.id in domain.scope else 1 for v in target.variables]
    return table.reshape(shape)


class DenseTable(Valuation):
    """Valuation whose table is a dense ndarray with one axis per variable"""

    dtype: ClassVar[type] = float

    def __init__(self, domain: Domain, table):
        table = np.asarray(table, dtype=self.dtype)
        if table.shape != domain.shape:
            if table.size != domain.size:
                raise ModelError(
                    f"table has {table.size} entries, scope {domain.names} needs {domain.size}"
                )
            table = table.reshape(domain.shape)
        super().__init__(domain, table)

    # ───────────────────────────────────────────────────────── constructors
    @classmethod
    def from_values(cls, variables: Sequence[Variable], values: Sequence[float]):
        """Table given in the listed variable order, last variable fastest"""
        domain = Domain(variables)
        flat = np.asarray(values, dtype=cls.dtype).ravel()
        if flat.size != domain.size:
            raise ModelError(
                f"table has {flat.size} entries, scope "
                f"{[v.name for v in variables]} needs {domain.size}"
            )
        canonical = np.empty(domain.size, dtype=cls.dtype)
        canonical[domain.permutation_from(variables)] = flat
        return cls(domain, canonical)

    @classmethod
    def identity(cls, domain: Domain):
        return cls(domain, np.ones(domain.shape, dtype=cls.dtype))

    @classmethod
    def zero(cls, domain: Domain):
        return cls(domain, np.zeros(domain.shape, dtype=cls.dtype))

    # ─────────────────────────────────────────────────────────── pointwise
    @staticmethod
    def _pointwise(left: np.ndarray, right: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    @staticmethod
    def _reduce(table: np.ndarray, axis: int) -> np.ndarray:
        raise NotImplementedError

    def _combine(self, other, domain: Domain):
        left = expand(self.table, self.domain, domain)
        right = expand(other.table, other.domain, domain)
        return type(self)(domain, self._pointwise(left, right))

    def _delete(self, var_id: int):
        axis = self.domain.axis(var_id)
        target = self.domain.restrict(self.scope.difference([var_id]))
        return type(self)(target, self._reduce(self.table, axis))

    def values(self) -> np.ndarray:
        """Flat table in canonical order"""
        return self.table.ravel()

    def value_at(self, **assignment: str) -> float:
        """Entry for a full assignment given as ``name=value`` keywords"""
        index = []
        for var in self.domain.variables:
            if var.name not in assignment:
                raise ModelError(f"no value given for {var.name!r}")
            index.append(var.index(assignment[var.name]))
        return float(self.table[tuple(index)])
