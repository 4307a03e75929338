"""
Dempster–Shafer commonality tables over the subset lattice of Θ(s)

Subsets of Θ(s) are bitmasks over configuration indices (bit c is the
configuration numbered c in canonical order). Tables skip the empty set:
entry k holds the subset with mask k + 1.
"""
from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple, cast

import numpy as np

from ..core.errors import CapabilityError, ModelError
from ..core.frames import Domain, Variable
from ..core.settings import Presets, Settings
from ..core.valuation import Valuation
from .probability import pseudo_reciprocal


# ============================================================================
# Subset lattice utilities
# ============================================================================

def lattice_size(domain: Domain) -> int:
    """Number of non-empty subsets of Θ(s)"""
    return (1 << domain.size) - 1


def image_masks(mapping: np.ndarray) -> np.ndarray:
    """
    For every subset mask of the source configurations, the mask of its image
    under ``mapping`` (source configuration index -> target configuration index).
    """
    images = np.zeros(1 << len(mapping), dtype=np.int64)
    for bit, target in enumerate(mapping):
        low = 1 << bit
        images[low:2 * low] = images[:low] | (np.int64(1) << np.int64(target))
    return images


def _superset_transform(padded: np.ndarray, sign: float) -> np.ndarray:
    """Sum (sign=+1) or Möbius-invert (sign=-1) over supersets, in place on a copy"""
    out = np.array(padded, dtype=float)
    n = int(out.size).bit_length() - 1
    cube = out.reshape((2,) * n)
    for axis in range(n):
        low = [slice(None)] * n
        high = [slice(None)] * n
        low[axis] = 0
        high[axis] = 1
        cube[tuple(low)] += sign * cube[tuple(high)]
    return out


def _pad(values: np.ndarray) -> np.ndarray:
    return np.concatenate(([0.0], np.asarray(values, dtype=float)))


def mass_to_commonality(masses: np.ndarray) -> np.ndarray:
    """Q(A) = Σ_{B ⊇ A} m(B) over non-empty subsets"""
    return _superset_transform(_pad(masses), 1.0)[1:]


def commonality_to_mass(commonalities: np.ndarray) -> np.ndarray:
    """m(A) = Σ_{B ⊇ A} (-1)^{|B − A|} Q(B) over non-empty subsets"""
    return _superset_transform(_pad(commonalities), -1.0)[1:]


def commonality_combine(a: "CommonalityTable", b: "CommonalityTable") -> "CommonalityTable":
    """Unnormalized Dempster combination over the union scope"""
    return cast("CommonalityTable", a.combine(b))


# ============================================================================
# Commonality tables
# ============================================================================

class CommonalityTable(Valuation):
    """
    Unnormalized commonality function.

    Combination is the pointwise product of the commonalities of the projected
    subsets (unnormalized Dempster rule, conflict is not tracked). Deletion goes
    through mass space: Möbius transform, project focal sets, transform back.
    """

    kind = "commonality"
    supports_removal = True

    def __init__(self, domain: Domain, table, settings: Settings = Presets.default):
        if domain.size > settings.max_commonality_frame:
            raise CapabilityError(
                f"commonality tables are limited to {settings.max_commonality_frame} "
                f"configurations, scope {domain.names} has {domain.size}"
            )
        table = np.asarray(table, dtype=float).ravel()
        if table.size != lattice_size(domain):
            raise ModelError(
                f"commonality table has {table.size} entries, scope {domain.names} "
                f"needs {lattice_size(domain)}"
            )
        if not np.all(np.isfinite(table)):
            raise ModelError("commonality tables must be finite")
        super().__init__(domain, table)

    # ───────────────────────────────────────────────────────── constructors
    @classmethod
    def identity(cls, domain: Domain) -> "CommonalityTable":
        """Vacuous belief: all mass on Θ, commonality 1 everywhere"""
        return cls(domain, np.ones(lattice_size(domain)))

    vacuous = identity

    @classmethod
    def zero(cls, domain: Domain) -> "CommonalityTable":
        return cls(domain, np.zeros(lattice_size(domain)))

    @classmethod
    def from_masses(cls, domain: Domain, masses: Sequence[float]) -> "CommonalityTable":
        """Commonality of a mass function given in canonical mask order"""
        masses = np.asarray(masses, dtype=float).ravel()
        if masses.size != lattice_size(domain):
            raise ModelError(
                f"mass vector has {masses.size} entries, scope {domain.names} "
                f"needs {lattice_size(domain)}"
            )
        if np.any(masses < 0):
            raise ModelError("masses must be non-negative")
        return cls(domain, mass_to_commonality(masses))

    @classmethod
    def from_focal_sets(cls, domain: Domain,
                        focal: Mapping[Iterable[Tuple[str, ...]], float]) -> "CommonalityTable":
        """
        Commonality of a mass function given as ``{focal set: mass}``; a focal
        set is an iterable of configurations, each a tuple of value labels in
        canonical variable order.
        """
        masses = np.zeros(lattice_size(domain))
        for configurations, mass in focal.items():
            mask = 0
            for labels in configurations:
                mask |= 1 << cls._config_index(domain, labels)
            if mask == 0:
                raise ModelError("focal sets must be non-empty")
            masses[mask - 1] += mass
        return cls.from_masses(domain, masses)

    @classmethod
    def from_values(cls, variables: Sequence[Variable],
                    values: Sequence[float]) -> "CommonalityTable":
        """Table whose subset masks refer to configurations in the listed order"""
        domain = Domain(variables)
        listed = _pad(np.asarray(values, dtype=float).ravel())
        if listed.size != lattice_size(domain) + 1:
            raise ModelError(
                f"commonality table has {listed.size - 1} entries, scope "
                f"{[v.name for v in variables]} needs {lattice_size(domain)}"
            )
        if np.any(listed < 0):
            raise ModelError("commonality values must be non-negative")
        canonical = np.zeros_like(listed)
        canonical[image_masks(domain.permutation_from(variables))] = listed
        return cls(domain, canonical[1:])

    @classmethod
    def random(cls, domain: Domain, rng: np.random.Generator, normal: bool = True,
               focal_count: int = 3) -> "CommonalityTable":
        """Random mass function with up to ``focal_count`` focal sets"""
        size = lattice_size(domain)
        masks = rng.integers(0, size, size=focal_count)
        masses = np.zeros(size)
        np.add.at(masses, masks, rng.dirichlet(np.ones(focal_count)))
        if not normal:
            masses *= rng.uniform(0.2, 2.0)
        return cls.from_masses(domain, masses)

    @staticmethod
    def _config_index(domain: Domain, labels: Sequence[str]) -> int:
        if len(labels) != len(domain):
            raise ModelError(f"configuration {labels!r} does not match {domain.names}")
        if not len(domain):
            return 0
        values = [v.index(label) for v, label in zip(domain.variables, labels)]
        return int(np.ravel_multi_index(values, domain.shape))

    # ─────────────────────────────────────────────────────────── the algebra
    def _lifted(self, domain: Domain) -> np.ndarray:
        """Commonality of the cylinder extension to ``domain``, padded with ∅"""
        images = image_masks(domain.projection_map(self.domain))
        return _pad(self.table)[images]

    def _combine(self, other: "CommonalityTable", domain: Domain) -> "CommonalityTable":
        product = self._lifted(domain) * other._lifted(domain)
        return type(self)(domain, product[1:])

    def _project(self, target: Domain) -> "CommonalityTable":
        masses = _superset_transform(_pad(self.table), -1.0)
        masses[0] = 0.0
        images = image_masks(self.domain.projection_map(target))
        projected = np.bincount(images, weights=masses, minlength=1 << target.size)
        return type(self)(target, _superset_transform(projected, 1.0)[1:])

    def _delete(self, var_id: int) -> "CommonalityTable":
        return self._project(self.domain.restrict(self.scope.difference([var_id])))

    def _pseudo_inverse(self) -> "CommonalityTable":
        return type(self)(self.domain, pseudo_reciprocal(self.table))

    def _scaled(self, factor: float) -> "CommonalityTable":
        return type(self)(self.domain, self.table * factor)

    # ──────────────────────────────────────────────────────────── predicates
    def masses(self) -> np.ndarray:
        return commonality_to_mass(self.table)

    def total(self) -> float:
        return float(self.masses().sum())

    def is_zero(self) -> bool:
        return not np.any(self.table)

    def is_normal(self, settings: Settings = Presets.default) -> bool:
        return abs(self.total() - 1.0) <= settings.normal_tolerance

    def focal_sets(self, threshold: float = 0.0) -> Dict[frozenset, float]:
        """``{frozenset of configuration labels: mass}`` for masses above ``threshold``"""
        result = {}
        for index, mass in enumerate(self.masses()):
            if abs(mass) > threshold:
                result[frozenset(self._subset_labels(index + 1))] = float(mass)
        return result

    def _subset_labels(self, mask: int) -> List[str]:
        labels = []
        for config in range(self.domain.size):
            if mask >> config & 1:
                labels.append(" ".join(self.domain.labels(config)) or "()")
        return labels

    def entries(self) -> Iterator[Tuple[str, float]]:
        for index, value in enumerate(self.table):
            yield "{" + ", ".join(self._subset_labels(index + 1)) + "}", float(value)

    def values(self) -> np.ndarray:
        return self.table
