"""
Boolean relations: natural join and projection, no removal
"""
import numpy as np

from ..core.frames import Domain
from ..core.settings import Presets, Settings
from .tabular import DenseTable


class BooleanRelation(DenseTable):
    """
    Relation over Θ(s) stored as a boolean table.

    Combination is the natural join (pointwise AND), deletion is projection
    (OR over the deleted axis). Normal means "has a satisfying configuration".
    """

    kind = "boolean"
    dtype = bool
    idempotent = True

    @classmethod
    def random(cls, domain: Domain, rng: np.random.Generator, normal: bool = True,
               density: float = 0.6) -> "BooleanRelation":
        table = rng.random(domain.shape) < density
        if normal and not np.any(table):
            table.flat[rng.integers(domain.size)] = True
        return cls(domain, table)

    @classmethod
    def from_tuples(cls, domain: Domain, rows) -> "BooleanRelation":
        """Relation holding exactly the given tuples of value labels (canonical order)"""
        table = np.zeros(domain.shape, dtype=bool)
        for row in rows:
            table[tuple(v.index(label) for v, label in zip(domain.variables, row))] = True
        return cls(domain, table)

    @staticmethod
    def _pointwise(left, right):
        return np.logical_and(left, right)

    @staticmethod
    def _reduce(table, axis):
        return np.any(table, axis=axis)

    def total(self) -> float:
        """Number of tuples in the relation"""
        return float(np.count_nonzero(self.table))

    def normalize(self):
        return self

    def is_zero(self) -> bool:
        return not np.any(self.table)

    def is_normal(self, settings: Settings = Presets.default) -> bool:
        return bool(np.any(self.table))

    def is_positive_normal(self, settings: Settings = Presets.default) -> bool:
        return bool(np.all(self.table))
