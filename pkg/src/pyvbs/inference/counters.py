"""
Operation counting for propagation, set-chain construction and queries
"""
from dataclasses import dataclass, field
from typing import Dict, Optional

from ..core.valuation import Valuation


@dataclass
class OperationCounter:
    """
    Counts of algebra operations and of the table entries they produced.

    Passed explicitly to the functions that accept one; nothing is global.
    """
    combinations: int = 0
    marginalizations: int = 0
    removals: int = 0
    entries: int = 0
    messages: int = 0
    extra: Dict[str, int] = field(default_factory=dict)

    # ───────────────────────────────────────────────────── counted operations
    def combine(self, left: Valuation, right: Valuation) -> Valuation:
        result = left.combine(right)
        self.combinations += 1
        self.entries += result.table.size
        return result

    def marginalize(self, valuation: Valuation, target) -> Valuation:
        result = valuation.marginalize(target)
        if result.scope != valuation.scope:
            self.marginalizations += 1
            self.entries += result.table.size
        return result

    def remove(self, left: Valuation, right: Valuation) -> Valuation:
        result = left.remove(right)
        self.removals += 1
        self.entries += result.table.size
        return result

    def bump(self, name: str, amount: int = 1) -> None:
        self.extra[name] = self.extra.get(name, 0) + amount

    @property
    def operations(self) -> int:
        return self.combinations + self.marginalizations + self.removals

    def as_dict(self) -> Dict[str, int]:
        values = {
            "combinations": self.combinations,
            "marginalizations": self.marginalizations,
            "removals": self.removals,
            "messages": self.messages,
            "entries": self.entries,
        }
        values.update(sorted(self.extra.items()))
        return values


def counted(counter: Optional[OperationCounter]) -> OperationCounter:
    """``counter`` or a throwaway one, so callers never branch on None"""
    return counter if counter is not None else OperationCounter()
