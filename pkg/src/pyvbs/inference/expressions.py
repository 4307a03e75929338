"""
Boolean queries over variable values: ``(x1=true & x2=true) | !x3=false``
"""
from dataclasses import dataclass
from typing import FrozenSet, Mapping, Tuple

import numpy as np
import pyparsing as pp

from ..core.errors import ModelError, QuerySyntaxError
from ..core.frames import Domain, Variable


# ============================================================================
# Expression tree
# ============================================================================

class Expression:
    """Base class of query expressions"""

    def names(self) -> FrozenSet[str]:
        raise NotImplementedError

    def evaluate(self, values: Mapping[str, str]) -> bool:
        """Truth value under a full assignment ``{name: value}``"""
        raise NotImplementedError

    def mask(self, domain: Domain) -> np.ndarray:
        """Boolean table over ``domain`` marking the satisfying configurations"""
        raise NotImplementedError


@dataclass(frozen=True)
class Equals(Expression):
    name: str
    value: str

    def names(self) -> FrozenSet[str]:
        return frozenset([self.name])

    def evaluate(self, values: Mapping[str, str]) -> bool:
        return values[self.name] == self.value

    def mask(self, domain: Domain) -> np.ndarray:
        for axis, var in enumerate(domain.variables):
            if var.name == self.name:
                hits = np.arange(var.size) == var.index(self.value)
                shape = [1] * len(domain)
                shape[axis] = var.size
                return np.broadcast_to(hits.reshape(shape), domain.shape)
        raise ModelError(f"query variable {self.name!r} is not in {domain!r}")

    def __str__(self) -> str:
        return f"{self.name}={self.value}"


@dataclass(frozen=True)
class And(Expression):
    operands: Tuple[Expression, ...]

    def names(self) -> FrozenSet[str]:
        return frozenset().union(*(o.names() for o in self.operands))

    def evaluate(self, values: Mapping[str, str]) -> bool:
        return all(o.evaluate(values) for o in self.operands)

    def mask(self, domain: Domain) -> np.ndarray:
        return np.logical_and.reduce([o.mask(domain) for o in self.operands])

    def __str__(self) -> str:
        return "(" + " & ".join(str(o) for o in self.operands) + ")"


@dataclass(frozen=True)
class Or(Expression):
    operands: Tuple[Expression, ...]

    def names(self) -> FrozenSet[str]:
        return frozenset().union(*(o.names() for o in self.operands))

    def evaluate(self, values: Mapping[str, str]) -> bool:
        return any(o.evaluate(values) for o in self.operands)

    def mask(self, domain: Domain) -> np.ndarray:
        return np.logical_or.reduce([o.mask(domain) for o in self.operands])

    def __str__(self) -> str:
        return "(" + " | ".join(str(o) for o in self.operands) + ")"


@dataclass(frozen=True)
class Not(Expression):
    operand: Expression

    def names(self) -> FrozenSet[str]:
        return self.operand.names()

    def evaluate(self, values: Mapping[str, str]) -> bool:
        return not self.operand.evaluate(values)

    def mask(self, domain: Domain) -> np.ndarray:
        return np.logical_not(self.operand.mask(domain))

    def __str__(self) -> str:
        return f"!{self.operand}"


# ============================================================================
# Grammar
# ============================================================================

NAME = pp.Word(pp.alphas + "_", pp.alphanums + "_.")
LABEL = pp.Word(pp.alphanums + "_.+-")


def _grammar() -> pp.ParserElement:
    literal = (NAME + pp.Suppress("=") + LABEL).set_parse_action(lambda t: Equals(t[0], t[1]))
    return pp.infix_notation(literal, [
        ("!", 1, pp.OpAssoc.RIGHT, lambda t: Not(t[0][1])),
        ("&", 2, pp.OpAssoc.LEFT, lambda t: And(tuple(t[0][0::2]))),
        ("|", 2, pp.OpAssoc.LEFT, lambda t: Or(tuple(t[0][0::2]))),
    ])


_QUERY = _grammar()


def parse_query(text: str) -> Expression:
    """Parse query text; literals are ``name=value``, operators ``!``, ``&``, ``|``"""
    if not text.strip():
        raise QuerySyntaxError("empty query", 1, 1, "query")
    try:
        result = _QUERY.parse_string(text, parse_all=True)
    except pp.ParseException as error:
        raise QuerySyntaxError(error.msg, error.lineno, error.col, "query") from None
    return result[0]


def query_domain(expression: Expression, variables: Mapping[str, Variable]) -> Domain:
    """Domain over vars(q); every variable and value must exist in the model"""
    mentioned = []
    for name in sorted(expression.names()):
        if name not in variables:
            raise ModelError(f"query variable {name!r} is not in the model")
        mentioned.append(variables[name])
    domain = Domain(mentioned)
    expression.mask(domain)  # validates every value label
    return domain
