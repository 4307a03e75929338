import pytest

from pyvbs import Model, load
from pyvbs.core import ModelError, ModelFormatError
from pyvbs.exporters import ModelReader, TextExporter
from pyvbs.inference import SetChain

from oracles import random_model, sample_model

reader = ModelReader()


class TestModelFiles:
    def test_fixture_model(self, fixtures):
        model = load(str(fixtures / "chain.model"))
        assert model.kind == "probability"
        assert [v.name for v in model.variables] == ["A", "B"]
        assert model.factors[1].value_at(A="1", B="0") == 0.2

    def test_save_and_load_keep_every_factor(self, rng, tmp_path):
        model = random_model(rng, zero_fraction=0.2)
        path = tmp_path / "random.model"
        model.save(str(path))
        loaded = Model.load(str(path))
        assert loaded.kind == model.kind
        assert loaded.variables == model.variables
        for before, after in zip(model.factors, loaded.factors):
            assert after.deviation(before) <= 1e-9

    def test_unsupported_backend(self, rng, tmp_path):
        with pytest.raises(ValueError, match="Unsupported backend"):
            sample_model(rng).save(str(tmp_path / "sample.pdf"), backend="pdf")

    def test_structure_survives(self, fixtures, tmp_path):
        model = load(str(fixtures / "sample.hyp"))
        path = tmp_path / "sample.model"
        model.save(str(path))
        assert Model.load(str(path)).structure.edges == model.structure.edges

    def test_boolean_tables(self, fixtures):
        model = load(str(fixtures / "boolean.model"))
        assert model.kind == "boolean"
        relation = model.factors[1]
        assert relation.value_at(B="1", C="1")
        assert not relation.value_at(B="0", C="1")

    def test_text_layout(self, fixtures):
        text = TextExporter().to_text(load(str(fixtures / "chain.model")))
        assert text == (
            "[model]\nkind = probability\n\n[variables]\nA: 0 1\nB: 0 1\n\n"
            "[factor A]\n0.6 0.4\n\n[factor A B]\n0.9 0.1\n0.2 0.8\n"
        )

    def test_unsupported_object(self):
        with pytest.raises(TypeError, match="Unsupported object"):
            TextExporter().to_text(42)


class TestChainFiles:
    def test_chain_round_trip(self, rng, tmp_path):
        model = sample_model(rng)
        chain = model.setchain()
        path = tmp_path / "sample.chain"
        TextExporter().export(chain, str(path))
        loaded = reader.read(str(path))
        assert isinstance(loaded, SetChain)
        assert loaded.numbering == chain.numbering
        for before, after in zip(chain, loaded):
            assert (after.position, after.node, after.predecessor) == (
                before.position, before.node, before.predecessor)
            assert after.marginal.deviation(before.marginal) <= 1e-9
            if before.separator is not None:
                assert after.separator.deviation(before.separator) <= 1e-9

    def test_commonality_chain(self, rng, tmp_path):
        model = random_model(rng, "commonality", max_variables=4, max_nodes=3)
        chain = model.setchain()
        path = tmp_path / "commonality.chain"
        TextExporter().export(chain, str(path))
        loaded = reader.read_chain(str(path))
        assert loaded.instance is chain.instance
        for before, after in zip(chain, loaded):
            assert after.marginal.deviation(before.marginal) <= 1e-9

    def test_chain_header_attributes(self, rng):
        text = TextExporter().to_text(sample_model(rng).setchain())
        assert "[marginal position=1 node=0 scope=X1,X7,X8]" in text
        assert "[marginal position=2 node=1 predecessor=0 scope=X2,X5,X6,X7]" in text
        assert "[separator position=2 node=1 scope=X7]" in text

    def test_positions_must_be_contiguous(self):
        text = ("[chain]\nkind = probability\n[variables]\nA: 0 1\n"
                "[marginal position=2 node=0 scope=A]\n0.5 0.5\n")
        with pytest.raises(ModelFormatError, match="1..n"):
            reader.parse_chain(text)

    def test_separator_required_after_the_first(self):
        text = ("[chain]\nkind = probability\n[variables]\nA: 0 1\n"
                "[marginal position=1 node=0 scope=A]\n0.5 0.5\n"
                "[marginal position=2 node=1 predecessor=0 scope=A]\n0.5 0.5\n")
        with pytest.raises(ModelFormatError, match="exactly when"):
            reader.parse_chain(text)


class TestFormatErrors:
    def test_bad_number_has_line_and_column(self, fixtures):
        with pytest.raises(ModelFormatError, match="bad_number.model:5:5:") as info:
            load(str(fixtures / "bad_number.model"))
        assert (info.value.line, info.value.column) == (5, 5)

    def test_empty_hyperedge(self, fixtures):
        with pytest.raises(ModelFormatError, match="empty hyperedge"):
            load(str(fixtures / "empty_edge.hyp"))

    def test_hyperedge_syntax(self):
        braces = reader.parse_hypergraph("[hypergraph]\n{A, B}\n{B, C}\n")
        plain = reader.parse_hypergraph("[hypergraph]\nA B\nB,C\n")
        assert braces.edges == plain.edges
        assert braces.names == {0: "A", 1: "B", 2: "C"}
        with pytest.raises(ModelFormatError, match="unterminated"):
            reader.parse_hypergraph("[hypergraph]\n{A, B\n")

    def test_content_before_any_section(self):
        with pytest.raises(ModelFormatError, match="<text>:1:1: content before"):
            reader.parse_model("A: 0 1\n")

    def test_malformed_header(self):
        with pytest.raises(ModelFormatError, match="malformed section header"):
            reader.parse_model("[variables\nA: 0 1\n")

    def test_unknown_section_and_kind(self):
        with pytest.raises(ModelFormatError, match=r"unknown section \[tables\]"):
            reader.parse_model("[tables]\n")
        with pytest.raises(ModelFormatError, match="expected one of"):
            reader.parse_model("[model]\nkind = fuzzy\n")

    def test_unknown_factor_variable(self):
        with pytest.raises(ModelFormatError, match="unknown variable 'Q'"):
            reader.parse_model("[variables]\nA: 0 1\n[factor Q]\n1 1\n")

    def test_wrong_number_of_values(self):
        with pytest.raises(ModelFormatError, match="<text>:3:1: .*needs 2"):
            reader.parse_model("[variables]\nA: 0 1\n[factor A]\n1 1 1\n")

    def test_missing_file(self, tmp_path):
        with pytest.raises(ModelError, match="cannot read"):
            load(str(tmp_path / "absent.model"))

    def test_value_labels_must_be_queryable(self):
        with pytest.raises(ModelFormatError, match="<text>:2:5: value label 'a/b'"):
            reader.parse_model("[variables]\nx1: a/b c/d\n")

    def test_variable_names_must_fit_headers(self):
        with pytest.raises(ModelFormatError, match="<text>:2:1: variable name 'x-1'"):
            reader.parse_model("[variables]\nx-1: 0 1\n")
        with pytest.raises(ModelFormatError, match="<text>:2:3: variable name 'b-c'"):
            reader.parse_model("[hypergraph]\nA b-c\n")

    def test_declared_labels_parse_in_queries(self):
        model = reader.parse_model("[variables]\nx1: lo+ hi.1\n[factor x1]\n0.25 0.75\n")
        assert model.query("x1=hi.1").value == pytest.approx(0.75)
