"""
Variables, variable sets, configurations and configuration spaces
"""
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, List, Sequence, Tuple

import numpy as np

from .errors import ModelError, PreconditionError


# ============================================================================
# Variables and variable sets
# ============================================================================

@dataclass(frozen=True)
class Variable:
    """A model variable with its frame Θ (ordered value labels)"""
    id: int
    name: str
    frame: Tuple[str, ...]

    def __post_init__(self):
        if not self.frame:
            raise ModelError(f"variable {self.name!r} has an empty frame")
        if len(set(self.frame)) != len(self.frame):
            raise ModelError(f"variable {self.name!r} has duplicate frame values")
        object.__setattr__(self, "frame", tuple(str(v) for v in self.frame))

    @property
    def size(self) -> int:
        return len(self.frame)

    def index(self, value: str) -> int:
        """Frame index of a value label"""
        try:
            return self.frame.index(value)
        except ValueError:
            raise ModelError(
                f"value {value!r} is not in the frame of {self.name!r} "
                f"({', '.join(self.frame)})"
            ) from None


class VarSet:
    """Set of variable ids kept in ascending order"""

    __slots__ = ("_ids",)

    def __init__(self, ids: Iterable[int] = ()):
        self._ids: Tuple[int, ...] = tuple(sorted(set(int(i) for i in ids)))

    @property
    def ids(self) -> Tuple[int, ...]:
        return self._ids

    def __iter__(self) -> Iterator[int]:
        return iter(self._ids)

    def __len__(self) -> int:
        return len(self._ids)

    def __contains__(self, item: object) -> bool:
        return item in self._ids

    def __eq__(self, other: object) -> bool:
        if isinstance(other, VarSet):
            return self._ids == other._ids
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._ids)

    def __repr__(self) -> str:
        return "{" + ", ".join(str(i) for i in self._ids) + "}"

    def __or__(self, other: "VarSet") -> "VarSet":
        return self.union(other)

    def __and__(self, other: "VarSet") -> "VarSet":
        return self.intersection(other)

    def __sub__(self, other: "VarSet") -> "VarSet":
        return self.difference(other)

    def __le__(self, other: "VarSet") -> bool:
        return self.issubset(other)

    def __lt__(self, other: "VarSet") -> bool:
        return self.issubset(other) and self != other

    def union(self, other: Iterable[int]) -> "VarSet":
        return VarSet(self._ids + tuple(other))

    def intersection(self, other: Iterable[int]) -> "VarSet":
        keep = set(other)
        return VarSet(i for i in self._ids if i in keep)

    def difference(self, other: Iterable[int]) -> "VarSet":
        drop = set(other)
        return VarSet(i for i in self._ids if i not in drop)

    def issubset(self, other: Iterable[int]) -> bool:
        return set(self._ids) <= set(other)

    def isdisjoint(self, other: Iterable[int]) -> bool:
        return set(self._ids).isdisjoint(other)


@dataclass(frozen=True)
class Configuration:
    """One frame-value index per variable of ``scope`` (scope order)"""
    scope: VarSet
    values: Tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != len(self.scope):
            raise ModelError("configuration length does not match its scope")

    def project(self, target: VarSet) -> "Configuration":
        """Drop the variables outside ``target``"""
        if not target.issubset(self.scope):
            raise PreconditionError(f"cannot project {self.scope} onto {target}")
        keep = [k for k, v in enumerate(self.scope) if v in target]
        return Configuration(target, tuple(self.values[k] for k in keep))

    def as_dict(self) -> dict:
        return dict(zip(self.scope, self.values))


# ============================================================================
# Configuration spaces
# ============================================================================

class Domain:
    """
    Configuration space Θ(s) of a variable set, with index arithmetic.

    Configurations are numbered lexicographically with the variables in
    ascending id order and the last variable fastest.
    """

    __slots__ = ("_variables", "_scope")

    def __init__(self, variables: Iterable[Variable] = ()):
        by_id = {}
        for var in variables:
            known = by_id.get(var.id)
            if known is not None and known != var:
                raise ModelError(
                    f"variable id {var.id} is bound to both {known.name!r} and {var.name!r}"
                )
            by_id[var.id] = var
        self._variables: Tuple[Variable, ...] = tuple(by_id[i] for i in sorted(by_id))
        self._scope = VarSet(by_id)

    # ─────────────────────────────────────────────────────────── properties
    @property
    def variables(self) -> Tuple[Variable, ...]:
        return self._variables

    @property
    def scope(self) -> VarSet:
        return self._scope

    @property
    def shape(self) -> Tuple[int, ...]:
        return tuple(v.size for v in self._variables)

    @property
    def size(self) -> int:
        """Number of configurations, 1 for the empty domain"""
        return int(np.prod(self.shape, dtype=np.int64))

    @property
    def names(self) -> List[str]:
        return [v.name for v in self._variables]

    def __len__(self) -> int:
        return len(self._variables)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Domain):
            return self._variables == other._variables
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._variables)

    def __repr__(self) -> str:
        return "Domain(" + ", ".join(self.names) + ")"

    def variable(self, var_id: int) -> Variable:
        for var in self._variables:
            if var.id == var_id:
                return var
        raise ModelError(f"variable id {var_id} is not in {self!r}")

    # ─────────────────────────────────────────────────────────── set algebra
    def union(self, other: "Domain") -> "Domain":
        return Domain(self._variables + other._variables)

    def restrict(self, target: Iterable[int]) -> "Domain":
        """Sub-domain over ``target``, which must be inside this domain"""
        target = VarSet(target)
        if not target.issubset(self._scope):
            raise PreconditionError(f"{target} is not a subset of scope {self._scope}")
        return Domain(v for v in self._variables if v.id in target)

    def axis(self, var_id: int) -> int:
        return self._scope.ids.index(var_id)

    # ────────────────────────────────────────────────────────── enumeration
    def configurations(self) -> Iterator[Configuration]:
        for values in product(*(range(v.size) for v in self._variables)):
            yield Configuration(self._scope, tuple(values))

    def index_of(self, config: Configuration) -> int:
        if config.scope != self._scope:
            raise PreconditionError("configuration scope differs from the domain")
        if not self._variables:
            return 0
        return int(np.ravel_multi_index(config.values, self.shape))

    def labels(self, index: int) -> List[str]:
        """``name=value`` labels of the configuration at ``index``"""
        if not self._variables:
            return []
        values = np.unravel_index(index, self.shape)
        return [f"{v.name}={v.frame[k]}" for v, k in zip(self._variables, values)]

    def projection_map(self, target: "Domain") -> np.ndarray:
        """Index of the projected configuration in ``target`` for every configuration"""
        if not target.scope.issubset(self._scope):
            raise PreconditionError(f"{target.scope} is not a subset of scope {self._scope}")
        if not target.variables:
            return np.zeros(self.size, dtype=np.int64)
        grids = np.indices(self.shape).reshape(len(self._variables), -1)
        rows = [grids[self.axis(v.id)] for v in target.variables]
        return np.ravel_multi_index(rows, target.shape).astype(np.int64)

    def permutation_from(self, order: Sequence[Variable]) -> np.ndarray:
        """
        Canonical configuration index for every configuration of the same
        variables listed in ``order`` (last listed fastest).
        """
        listed = list(order)
        if sorted(v.id for v in listed) != list(self._scope.ids) or len(listed) != len(self):
            raise ModelError("listed variables do not match the domain")
        if not listed:
            return np.zeros(1, dtype=np.int64)
        shape = tuple(v.size for v in listed)
        grids = np.indices(shape).reshape(len(listed), -1)
        position = {v.id: k for k, v in enumerate(listed)}
        rows = [grids[position[v.id]] for v in self._variables]
        return np.ravel_multi_index(rows, self.shape).astype(np.int64)
