"""
Text export for models, hypergraphs, set chains and tables
"""
from typing import List

import numpy as np

from ..core.settings import Presets, Settings
from ..core.valuation import Valuation
from ..inference.setchain import SetChain
from ..structure.hypergraph import GrahamTrace, Hypergraph


class TextExporter:
    """Renders pyvbs objects in the line-oriented text format"""

    values_per_line = 8

    def __init__(self, settings: Settings = Presets.default):
        self.settings = settings

    def export(self, obj, filepath: str) -> None:
        """Export a model, hypergraph or set chain to a text file"""
        content = self.to_text(obj)
        with open(filepath, "w", encoding="utf-8", newline="\n") as f:
            f.write(content)

    def to_text(self, obj) -> str:
        from ..model import Model

        if isinstance(obj, Model):
            return self.model_to_text(obj)
        if isinstance(obj, SetChain):
            return self.chain_to_text(obj)
        if isinstance(obj, Hypergraph):
            return self.hypergraph_to_text(obj)
        raise TypeError(f"Unsupported object for text export: {type(obj).__name__}")

    # ─────────────────────────────────────────────────────────── documents
    def model_to_text(self, model) -> str:
        parts = ["[model]", f"kind = {model.kind}", "", "[variables]"]
        parts.extend(f"{v.name}: {' '.join(v.frame)}" for v in model.variables)
        if model.structure is not None:
            parts.extend(["", "[hypergraph]"])
            parts.extend(self.edge_lines(model.structure))
        for factor in model.factors:
            header = " ".join(["factor", *factor.domain.names])
            parts.extend(["", f"[{header}]"])
            parts.extend(self.value_lines(factor))
        return "\n".join(parts) + "\n"

    def hypergraph_to_text(self, hypergraph: Hypergraph) -> str:
        return "\n".join(["[hypergraph]", *self.edge_lines(hypergraph)]) + "\n"

    def chain_to_text(self, chain: SetChain) -> str:
        variables = {}
        for factor in chain:
            for var in factor.marginal.domain.variables:
                variables[var.id] = var
        parts = ["[chain]", f"kind = {chain.instance.kind}", "", "[variables]"]
        parts.extend(f"{v.name}: {' '.join(v.frame)}" for _, v in sorted(variables.items()))
        for factor in chain:
            attrs = f"position={factor.position} node={factor.node}"
            if factor.predecessor is not None:
                attrs += f" predecessor={factor.predecessor}"
            parts.extend(["", f"[marginal {attrs} scope={','.join(factor.marginal.domain.names)}]"])
            parts.extend(self.value_lines(factor.marginal))
            if factor.separator is not None:
                scope = ",".join(factor.separator.domain.names)
                header = f"separator position={factor.position} node={factor.node} scope={scope}"
                parts.extend(["", f"[{header}]"])
                parts.extend(self.value_lines(factor.separator))
        return "\n".join(parts) + "\n"

    # ─────────────────────────────────────────────────────────── pieces
    def edge_lines(self, hypergraph: Hypergraph) -> List[str]:
        return [" ".join(hypergraph.name(v) for v in edge) for edge in hypergraph.edges]

    def number(self, value) -> str:
        if isinstance(value, (bool, np.bool_)):
            return "1" if value else "0"
        return self.settings.format_number(value)

    def value_lines(self, valuation: Valuation) -> List[str]:
        """Table values in canonical order; dense tables one row per last-axis run"""
        flat = valuation.table.ravel()
        width = valuation.table.shape[-1] if valuation.table.ndim else 1
        if valuation.table.ndim != len(valuation.domain):
            width = self.values_per_line
        rows = [flat[k:k + width] for k in range(0, flat.size, width)]
        return [" ".join(self.number(v) for v in row) for row in rows]

    def table(self, valuation: Valuation) -> str:
        """One ``label value`` line per entry, for display"""
        lines = []
        for label, value in valuation.entries():
            text = self.number(value)
            lines.append(f"{label or '()'}  {text}")
        return "\n".join(lines) + "\n"

    def trace(self, hypergraph: Hypergraph, trace: GrahamTrace) -> str:
        """One reduction step per line"""
        lines = []
        for step in trace.steps:
            edge = f"e{step.edge}"
            if step.kind == "delete-variable":
                assert step.variable is not None
                lines.append(f"round {step.round}: delete {hypergraph.name(step.variable)} from {edge}")
            elif step.absorbed_into is None:
                lines.append(f"round {step.round}: delete {edge} (last edge)")
            else:
                lines.append(f"round {step.round}: delete {edge} into e{step.absorbed_into}")
        return "\n".join(lines) + ("\n" if lines else "")

    def stages(self, hypergraph: Hypergraph, trace: GrahamTrace) -> str:
        return "".join(f"{line}\n" for line in trace.describe(hypergraph))
