"""
Probability potentials: multiplication, summation and pseudo-inverse division
"""
import numpy as np

from ..core.errors import ModelError
from ..core.frames import Domain
from ..core.settings import Presets, Settings
from .tabular import DenseTable


def pseudo_reciprocal(table: np.ndarray) -> np.ndarray:
    """Entrywise reciprocal with 0 ↦ 0"""
    out = np.zeros_like(table, dtype=float)
    np.divide(1.0, table, out=out, where=table != 0)
    return out


class ProbabilityPotential(DenseTable):
    """
    Unnormalized probability potential over Θ(s).

    Combination is pointwise multiplication without renormalization; call
    ``normalize`` explicitly when a distribution is wanted.
    """

    kind = "probability"
    supports_removal = True

    def __init__(self, domain: Domain, table):
        super().__init__(domain, table)
        if not np.all(np.isfinite(self.table)) or np.any(self.table < 0):
            raise ModelError("probability tables must be finite and non-negative")

    @classmethod
    def random(cls, domain: Domain, rng: np.random.Generator, normal: bool = True,
               zero_fraction: float = 0.0, low: float = 0.05) -> "ProbabilityPotential":
        """Random potential; entries drawn from [low, 1), some set to 0"""
        table = rng.uniform(low, 1.0, size=domain.shape)
        if zero_fraction > 0:
            table = np.where(rng.random(domain.shape) < zero_fraction, 0.0, table)
        potential = cls(domain, table)
        return potential.normalize() if normal else potential

    @staticmethod
    def _pointwise(left, right):
        return left * right

    @staticmethod
    def _reduce(table, axis):
        return table.sum(axis=axis)

    def _pseudo_inverse(self):
        return type(self)(self.domain, pseudo_reciprocal(self.table))

    def _scaled(self, factor: float):
        return type(self)(self.domain, self.table * factor)

    def total(self) -> float:
        return float(self.table.sum())

    def is_zero(self) -> bool:
        return not np.any(self.table)

    def is_normal(self, settings: Settings = Presets.default) -> bool:
        return abs(self.total() - 1.0) <= settings.normal_tolerance

    def conditional(self, given) -> "ProbabilityPotential":
        """σ Ⓡ σ↓given, the conditional table of the rest given ``given``"""
        return self.remove(self.marginalize(given))
