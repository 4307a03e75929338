"""
Reader for the line-oriented text format of models, hypergraphs and set chains
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import pyparsing as pp

from ..core.errors import ModelError, ModelFormatError, ValuationError
from ..core.frames import Variable
from ..core.settings import Presets, Settings
from ..core.valuation import Valuation
from ..inference.expressions import LABEL, NAME
from ..inference.setchain import Numbering, SetChain, SetChainFactor
from ..instances import instance_for
from ..structure.hypergraph import Hypergraph

logger = logging.getLogger(__name__)

_VALUE = pp.Word(pp.printables, exclude_chars="[]=,#")
_ATTRIBUTE = pp.Group(NAME + pp.Suppress("=") + pp.Optional(pp.DelimitedList(_VALUE, ",")))
_HEADER = (pp.Suppress("[") + NAME("section")
           + pp.Group(pp.ZeroOrMore(_ATTRIBUTE))("attributes")
           + pp.Group(pp.ZeroOrMore(NAME))("arguments") + pp.Suppress("]"))
_BOOLEAN = {"1": True, "0": False, "t": True, "f": False, "true": True, "false": False}


def _check(token: pp.ParserElement, text: str, what: str, line: int, column: int,
           source: str) -> None:
    if not token.matches(text, parse_all=True):
        raise ModelFormatError(f"{what} {text!r} is not a valid token", line, column, source)


@dataclass
class Section:
    name: str
    line: int
    arguments: List[str] = field(default_factory=list)
    attributes: Dict[str, List[str]] = field(default_factory=dict)
    body: List[Tuple[int, str]] = field(default_factory=list)

    def attribute(self, key: str, source: str, required: bool = True) -> Optional[str]:
        values = self.attributes.get(key)
        if values is None:
            if required:
                raise ModelFormatError(f"[{self.name}] needs {key}=", self.line, 1, source)
            return None
        return values[0] if values else ""


class ModelReader:
    """Parses model, hypergraph and chain files into pyvbs objects"""

    def __init__(self, settings: Settings = Presets.default):
        self.settings = settings

    # ─────────────────────────────────────────────────────────── entry points
    def read(self, filepath: str):
        """Model or set chain, whichever the file holds"""
        text, source = self._load(filepath)
        sections = self.sections(text, source)
        if sections and sections[0].name == "chain":
            return self.parse_chain(text, source)
        return self.parse_model(text, source)

    def read_model(self, filepath: str):
        return self.parse_model(*self._load(filepath))

    def read_chain(self, filepath: str) -> SetChain:
        return self.parse_chain(*self._load(filepath))

    @staticmethod
    def _load(filepath: str) -> Tuple[str, str]:
        try:
            with open(filepath, encoding="utf-8") as f:
                return f.read(), str(filepath)
        except OSError as error:
            raise ModelError(f"cannot read {filepath}: {error.strerror}") from None

    # ─────────────────────────────────────────────────────────── sections
    def sections(self, text: str, source: str = "<text>") -> List[Section]:
        result: List[Section] = []
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].rstrip()
            if not line.strip():
                continue
            stripped = line.lstrip()
            column = len(line) - len(stripped) + 1
            if stripped.startswith("["):
                try:
                    parsed = _HEADER.parse_string(stripped, parse_all=True)
                except pp.ParseException as error:
                    raise ModelFormatError(f"malformed section header: {error.msg}",
                                           number, column + error.col - 1, source) from None
                attributes = {a[0]: list(a[1:]) for a in parsed["attributes"]}
                result.append(Section(parsed["section"], number,
                                      list(parsed["arguments"]), attributes))
            elif not result:
                raise ModelFormatError("content before the first section", number, column, source)
            else:
                result[-1].body.append((number, stripped))
        return result

    def _variables(self, sections: Sequence[Section], source: str) -> Dict[str, Variable]:
        variables: Dict[str, Variable] = {}
        for section in sections:
            if section.name != "variables":
                continue
            for number, line in section.body:
                name, sep, frame = line.partition(":")
                name = name.strip()
                if not sep or not name:
                    raise ModelFormatError("expected 'name: value value ...'", number, 1, source)
                _check(NAME, name, "variable name", number, 1, source)
                if name in variables:
                    raise ModelFormatError(f"variable {name!r} is declared twice", number, 1, source)
                column = line.index(":") + 1
                for label in frame.split():
                    column = line.index(label, column)
                    _check(LABEL, label, "value label", number, column + 1, source)
                    column += len(label)
                try:
                    variables[name] = Variable(len(variables), name, tuple(frame.split()))
                except ModelError as error:
                    raise ModelFormatError(str(error), number, line.index(":") + 2, source) from None
        return variables

    def _settings(self, section: Section, source: str) -> Dict[str, str]:
        values = {}
        for number, line in section.body:
            key, sep, value = line.partition("=")
            if not sep or not key.strip():
                raise ModelFormatError("expected 'key = value'", number, 1, source)
            values[key.strip()] = value.strip()
        return values

    def _numbers(self, section: Section, kind: str, source: str) -> List[float]:
        values: List[float] = []
        for number, line in section.body:
            column = 1
            for token in line.split():
                column = line.index(token, column - 1) + 1
                if kind == "boolean":
                    if token.lower() not in _BOOLEAN:
                        raise ModelFormatError(f"{token!r} is not a boolean", number, column, source)
                    values.append(float(_BOOLEAN[token.lower()]))
                else:
                    try:
                        values.append(float(token))
                    except ValueError:
                        raise ModelFormatError(f"{token!r} is not a number", number, column,
                                               source) from None
                column += len(token)
        return values

    def _scope(self, names: Sequence[str], variables: Dict[str, Variable], section: Section,
               source: str) -> List[Variable]:
        scope = []
        for name in names:
            if name not in variables:
                raise ModelFormatError(f"unknown variable {name!r}", section.line, 1, source)
            scope.append(variables[name])
        return scope

    def _table(self, instance, scope: List[Variable], section: Section, source: str) -> Valuation:
        values = self._numbers(section, instance.kind, source)
        try:
            return instance.from_values(scope, values)
        except ValuationError as error:
            raise ModelFormatError(str(error), section.line, 1, source) from None

    @staticmethod
    def _edges(section: Section, source: str) -> List[Tuple[int, List[str]]]:
        edges = []
        for number, line in section.body:
            inner = line.strip()
            if inner.startswith("{"):
                if not inner.endswith("}"):
                    raise ModelFormatError("unterminated hyperedge", number, len(line) + 1, source)
                inner = inner[1:-1]
            names = inner.replace(",", " ").split()
            if not names:
                raise ModelFormatError("empty hyperedge", number, 1, source)
            for name in names:
                _check(NAME, name, "variable name", number, line.index(name) + 1, source)
            edges.append((number, names))
        return edges

    # ─────────────────────────────────────────────────────────── documents
    def parse_model(self, text: str, source: str = "<text>"):
        from ..model import Model

        sections = self.sections(text, source)
        kind = "probability"
        for section in sections:
            if section.name == "model":
                kind = self._settings(section, source).get("kind", kind)
            elif section.name not in ("variables", "factor", "hypergraph"):
                raise ModelFormatError(f"unknown section [{section.name}]", section.line, 1, source)
        try:
            model = Model(kind, self.settings)
        except ModelError as error:
            raise ModelFormatError(str(error), None, None, source) from None

        variables = self._variables(sections, source)
        edges = [e for s in sections if s.name == "hypergraph" for e in self._edges(s, source)]
        for number, names in edges:
            for name in names:
                if name not in variables:
                    variables[name] = Variable(len(variables), name, ("0", "1"))
        for name, var in variables.items():
            model.add_variable(name, var.frame)

        if edges:
            by_name = model.by_name
            try:
                structure = Hypergraph([[by_name[n].id for n in names] for _, names in edges],
                                       names={v.id: v.name for v in model.variables})
            except ModelError as error:
                raise ModelFormatError(str(error), edges[0][0], 1, source) from None
            model.set_structure(structure)

        for section in sections:
            if section.name == "factor":
                scope = self._scope(section.arguments, variables, section, source)
                if len(set(section.arguments)) != len(section.arguments):
                    raise ModelFormatError("factor scope repeats a variable", section.line, 1, source)
                model.add_valuation(self._table(model.instance, scope, section, source))
        logger.info("read %r from %s", model, source)
        return model

    def parse_hypergraph(self, text: str, source: str = "<text>") -> Hypergraph:
        model = self.parse_model(text, source)
        if model.structure is None:
            return model.hypergraph()
        return model.structure

    def parse_chain(self, text: str, source: str = "<text>") -> SetChain:
        sections = self.sections(text, source)
        if not sections or sections[0].name != "chain":
            raise ModelFormatError("chain files start with [chain]", 1, 1, source)
        kind = self._settings(sections[0], source).get("kind", "probability")
        try:
            instance = instance_for(kind)
        except ModelError as error:
            raise ModelFormatError(str(error), sections[0].line, 1, source) from None
        variables = self._variables(sections, source)

        marginals: Dict[int, Tuple[int, Optional[int], Valuation]] = {}
        separators: Dict[int, Valuation] = {}
        for section in sections[1:]:
            if section.name == "variables":
                continue
            if section.name not in ("marginal", "separator"):
                raise ModelFormatError(f"unknown section [{section.name}]", section.line, 1, source)
            position = self._integer(section, "position", source)
            scope_names = section.attributes.get("scope", [])
            table = self._table(instance, self._scope(scope_names, variables, section, source),
                                section, source)
            if section.name == "marginal":
                node = self._integer(section, "node", source)
                predecessor = (self._integer(section, "predecessor", source)
                               if "predecessor" in section.attributes else None)
                marginals[position] = (node, predecessor, table)
            else:
                separators[position] = table

        positions = sorted(marginals)
        if positions != list(range(1, len(positions) + 1)):
            raise ModelFormatError("marginal positions must run 1..n", None, None, source)
        factors = []
        for position in positions:
            node, predecessor, table = marginals[position]
            separator = separators.get(position)
            later = position > 1
            if later != (separator is not None) or later != (predecessor is not None):
                raise ModelFormatError(
                    f"position {position} needs a separator and a predecessor exactly when > 1",
                    None, None, source)
            factors.append(SetChainFactor(position, node, table, separator, predecessor))
        numbering = Numbering(tuple(f.node for f in factors),
                              {f.node: f.predecessor for f in factors})
        logger.info("read set chain of %d factors from %s", len(factors), source)
        return SetChain(instance, numbering, factors)

    @staticmethod
    def _integer(section: Section, key: str, source: str) -> int:
        value = section.attribute(key, source)
        try:
            return int(value)  # type: ignore[arg-type]
        except ValueError:
            raise ModelFormatError(f"{key}= must be an integer", section.line, 1, source) from None
