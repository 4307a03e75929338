"""
Base class for valuations and the operations of the valuation algebra
"""
from abc import ABC, abstractmethod
from typing import ClassVar, Iterable, Iterator, Optional, Tuple

import numpy as np

from .errors import CapabilityError, InstanceMismatchError, PreconditionError
from .frames import Domain, VarSet
from .settings import Presets, Settings


class Valuation(ABC):
    """
    Base class for all valuations.

    A valuation is an immutable table over D(s) for a variable set s. The
    concrete instance decides what D(s) is and how combination (⊗),
    single-variable deletion and, optionally, removal (Ⓡ) act on it.
    """

    kind: ClassVar[str] = "abstract"
    supports_removal: ClassVar[bool] = False
    idempotent: ClassVar[bool] = False

    def __init__(self, domain: Domain, table: np.ndarray):
        table = np.array(table, copy=True)
        table.setflags(write=False)
        self._domain = domain
        self._table = table

    # ─────────────────────────────────────────────────────────── properties
    @property
    def domain(self) -> Domain:
        return self._domain

    @property
    def scope(self) -> VarSet:
        return self._domain.scope

    @property
    def table(self) -> np.ndarray:
        """Read-only table in canonical layout"""
        return self._table

    def __repr__(self) -> str:
        names = ", ".join(self._domain.names)
        return f"{type(self).__name__}({names}: {np.array2string(self._table.ravel(), precision=6)})"

    # ─────────────────────────────────────────────────── instance interface
    @classmethod
    @abstractmethod
    def identity(cls, domain: Domain) -> "Valuation":
        """Neutral element ι_s of combination on ``domain``"""

    @classmethod
    @abstractmethod
    def zero(cls, domain: Domain) -> "Valuation":
        """Absorbing element ζ_s of combination on ``domain``"""

    @abstractmethod
    def _combine(self, other: "Valuation", domain: Domain) -> "Valuation":
        """Instance combination, both operands already checked"""

    @abstractmethod
    def _delete(self, var_id: int) -> "Valuation":
        """Marginalize one variable out"""

    @abstractmethod
    def is_zero(self) -> bool:
        pass

    @abstractmethod
    def is_normal(self, settings: Settings = Presets.default) -> bool:
        pass

    @abstractmethod
    def total(self) -> float:
        """Total mass (the value of the empty-scope marginal)"""

    def is_positive_normal(self, settings: Settings = Presets.default) -> bool:
        """Normal with all entries strictly positive"""
        return self.is_normal(settings) and bool(np.all(self._table > 0))

    def _pseudo_inverse(self) -> "Valuation":
        raise CapabilityError(f"{self.kind} valuations do not support removal")

    # ───────────────────────────────────────────────────────── the algebra
    def _check_compatible(self, other: "Valuation") -> None:
        if type(other) is not type(self):
            raise InstanceMismatchError(
                f"cannot mix {type(self).__name__} and {type(other).__name__}"
            )

    def combine(self, other: "Valuation") -> "Valuation":
        """σ ⊗ ρ over the union of both scopes"""
        self._check_compatible(other)
        return self._combine(other, self._domain.union(other._domain))

    def marginalize(self, target: Iterable[int]) -> "Valuation":
        """σ↓target as a sequence of single-variable deletions (ascending id)"""
        target = VarSet(target)
        if not target.issubset(self.scope):
            raise PreconditionError(
                f"marginalization target {target} is not a subset of scope {self.scope}"
            )
        result = self
        for var_id in self.scope.difference(target):
            result = result._delete(var_id)
        return result

    def delete(self, var_id: int) -> "Valuation":
        """Deletion of a single variable, σ↓(s − {X})"""
        if var_id not in self.scope:
            raise PreconditionError(f"variable {var_id} is not in scope {self.scope}")
        return self._delete(var_id)

    def inverse(self) -> "Valuation":
        """Pseudo-inverse ρ⁻¹ = ι_∅ Ⓡ ρ"""
        if not self.supports_removal:
            raise CapabilityError(f"{self.kind} valuations do not support removal")
        return self._pseudo_inverse()

    def remove(self, other: "Valuation") -> "Valuation":
        """σ Ⓡ ρ = σ ⊗ ρ⁻¹"""
        self._check_compatible(other)
        if not self.supports_removal:
            raise CapabilityError(f"{self.kind} valuations do not support removal")
        return self.combine(other.inverse())

    def extend(self, domain: Domain) -> "Valuation":
        """Vacuous extension to a larger domain"""
        if not self.scope.issubset(domain.scope):
            raise PreconditionError(f"cannot extend {self.scope} to {domain.scope}")
        if domain == self._domain:
            return self
        return self.combine(type(self).identity(domain))

    def normalize(self) -> "Valuation":
        """Rescale to total mass 1 (zero valuations are returned unchanged)"""
        mass = self.total()
        if mass == 0:
            return self
        return self._scaled(1.0 / mass)

    def _scaled(self, factor: float) -> "Valuation":
        raise CapabilityError(f"{self.kind} valuations cannot be rescaled")

    # ─────────────────────────────────────────────────────────── comparison
    def deviation(self, other: "Valuation") -> float:
        """Max absolute entry difference after aligning both scopes"""
        self._check_compatible(other)
        domain = self._domain.union(other._domain)
        left = self.extend(domain)._table.astype(float)
        right = other.extend(domain)._table.astype(float)
        if left.size == 0:
            return 0.0
        return float(np.max(np.abs(left - right)))

    def equals(self, other: "Valuation", tolerance: Optional[float] = None) -> bool:
        tol = Presets.default.tolerance if tolerance is None else tolerance
        return self.deviation(other) <= tol

    def identical(self, other: "Valuation") -> bool:
        """Bitwise equality of scope and table"""
        return (
            type(other) is type(self)
            and other._domain == self._domain
            and np.array_equal(other._table, self._table)
        )

    def entries(self) -> Iterator[Tuple[str, float]]:
        """(label, value) pairs in canonical order"""
        for index, value in enumerate(self._table.ravel()):
            yield " ".join(self._domain.labels(index)), float(value)


# ============================================================================
# Functional forms of the operations
# ============================================================================

def combine(a: Valuation, b: Valuation) -> Valuation:
    return a.combine(b)


def combine_all(valuations: Iterable[Valuation], neutral: Valuation) -> Valuation:
    """Combination of a sequence, ``neutral`` when the sequence is empty"""
    result = neutral
    for valuation in valuations:
        result = result.combine(valuation)
    return result


def marginalize(a: Valuation, target: Iterable[int]) -> Valuation:
    return a.marginalize(target)


def remove(a: Valuation, b: Valuation) -> Valuation:
    return a.remove(b)


def inverse(b: Valuation) -> Valuation:
    return b.inverse()


def identity_for(instance: type, domain: Domain) -> Valuation:
    """ι_s of ``instance`` on ``domain``; ι_∅ for the empty domain"""
    return instance.identity(domain)


def consistent(a: Valuation, b: Valuation) -> bool:
    """
    ρ and σ are consistent when their combination can be normalized.

    Combination never renormalizes here, so "normal after normalization" is
    the same as "not the zero valuation".
    """
    return not a.combine(b).is_zero()


def inconsistent(a: Valuation, b: Valuation) -> bool:
    """ρ and σ are inconsistent when their combination is the zero valuation"""
    return a.combine(b).is_zero()
