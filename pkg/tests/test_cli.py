import pytest

from pyvbs.cli import main

from oracles import sample_model


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCheck:
    def test_sample_is_a_hypertree(self, capsys, fixtures):
        code, out, _ = run(capsys, "check", fixtures / "sample.hyp")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "hypergraph: 6 edges, 12 variables"
        assert lines[1] == "e0 {X1, X7, X8}"
        assert "round 1: delete X1 from e0" in lines
        assert "round 1: delete e2 into e1" in lines
        assert "round 1: delete e5 into e4" in lines
        assert lines[-1] == "verdict: hypertree"

    def test_triangle_is_not(self, capsys, fixtures):
        code, out, _ = run(capsys, "check", fixtures / "triangle.hyp")
        assert code == 0
        assert "delete" not in out
        assert "residual: {{A, B}, {B, C}, {A, C}}" in out
        assert out.endswith("verdict: not a hypertree\n")

    def test_output_is_deterministic(self, capsys, fixtures):
        first = run(capsys, "check", fixtures / "sample.hyp")
        assert run(capsys, "check", fixtures / "sample.hyp") == first

    def test_empty_hyperedge(self, capsys, fixtures):
        code, _, err = run(capsys, "check", fixtures / "empty_edge.hyp")
        assert code == 2
        assert "empty hyperedge" in err


class TestMarginal:
    def test_variable_marginal(self, capsys, fixtures):
        code, out, _ = run(capsys, "marginal", fixtures / "chain.model", "B")
        assert code == 0
        assert out == "B=0  0.62\nB=1  0.38\n"

    def test_node_marginal(self, capsys, fixtures):
        code, out, _ = run(capsys, "marginal", fixtures / "chain.model", "--node", 1)
        assert code == 0
        assert out == ("node 1 {A, B}\nA=0 B=0  0.54\nA=0 B=1  0.06\n"
                       "A=1 B=0  0.08\nA=1 B=1  0.32\n")

    def test_missing_node(self, capsys, fixtures):
        code, _, err = run(capsys, "marginal", fixtures / "chain.model", "--node", 7)
        assert code == 2
        assert "node 7 does not exist" in err

    def test_variables_across_nodes_need_a_query(self, capsys, fixtures):
        code, _, err = run(capsys, "marginal", fixtures / "three.model", "x1", "x3")
        assert code == 2
        assert "query" in err

    def test_node_and_variables_exclude_each_other(self, capsys, fixtures):
        with pytest.raises(SystemExit) as info:
            main(["marginal", str(fixtures / "chain.model"), "A", "--node", "0"])
        assert info.value.code == 2
        with pytest.raises(SystemExit):
            main(["marginal", str(fixtures / "chain.model")])

    def test_bad_number(self, capsys, fixtures):
        code, _, err = run(capsys, "marginal", fixtures / "bad_number.model", "A")
        assert code == 2
        assert "bad_number.model:5:5:" in err


class TestQuery:
    def test_value(self, capsys, fixtures):
        code, out, _ = run(capsys, "query", fixtures / "three.model", "x1=t & x3=t")
        assert code == 0
        assert out == "0.2\n"

    def test_stats(self, capsys, rng, tmp_path):
        path = tmp_path / "sample.model"
        sample_model(rng).save(str(path))
        code, out, _ = run(capsys, "query", path, "X1=1 & X3=0", "--stats")
        assert code == 0
        lines = out.splitlines()
        assert lines[1] == "plan:"
        assert lines[2] == "node 0 {X1, X7, X8} -> {X1, X7} (root)"
        counts = {}
        for line in lines:
            if " operations: " in line:
                label, _, values = line.partition(": ")
                counts[label] = dict(item.split("=") for item in values.split())
        query = int(counts["query operations"]["combinations"])
        full = int(counts["propagation operations"]["combinations"])
        assert query < full

    def test_unknown_variable(self, capsys, fixtures):
        code, _, err = run(capsys, "query", fixtures / "three.model", "x9=t")
        assert code == 2
        assert "x9" in err

    def test_syntax_error(self, capsys, fixtures):
        code, _, err = run(capsys, "query", fixtures / "three.model", "x1=t &")
        assert code == 2
        assert "query:1:" in err

    def test_commonality_has_no_scalar_answer(self, capsys, fixtures):
        code, _, err = run(capsys, "query", fixtures / "commonality.model", "A=0")
        assert code == 3
        assert "scalar" in err


class TestChain:
    def test_chain_then_verify(self, capsys, fixtures, tmp_path):
        out_file = tmp_path / "three.chain"
        code, out, _ = run(capsys, "chain", fixtures / "three.model", out_file)
        assert code == 0
        assert out == f"wrote 2 chain factors to {out_file}\n"
        code, out, _ = run(capsys, "verify", fixtures / "three.model", "--chain", out_file)
        assert code == 0
        assert "reconstruction deviation" in out
        assert out.endswith("verdict: ok\n")

    def test_verify_builds_its_own_chain(self, capsys, fixtures):
        code, out, _ = run(capsys, "verify", fixtures / "chain.model")
        assert code == 0
        assert out.splitlines()[0].startswith("node 0 {A} deviation ")

    def test_boolean_model_cannot_be_chained(self, capsys, fixtures, tmp_path):
        code, _, err = run(capsys, "chain", fixtures / "boolean.model", tmp_path / "b.chain")
        assert code == 3
        assert "removal" in err

    def test_chain_of_another_kind(self, capsys, fixtures, tmp_path):
        out_file = tmp_path / "commonality.chain"
        assert run(capsys, "chain", fixtures / "commonality.model", out_file)[0] == 0
        code, _, err = run(capsys, "verify", fixtures / "chain.model", "--chain", out_file)
        assert code == 2
        assert "commonality" in err

    def test_tampered_chain_fails_verification(self, capsys, fixtures, tmp_path):
        out_file = tmp_path / "chain.chain"
        run(capsys, "chain", fixtures / "chain.model", out_file)
        text = out_file.read_text().replace("0.6 0.4", "0.5 0.5", 1)
        out_file.write_text(text)
        code, out, err = run(capsys, "verify", fixtures / "chain.model", "--chain", out_file)
        assert code == 4
        assert out.endswith("verdict: FAILED\n")
        assert "verification failed" in err

    def test_bad_tolerance(self, capsys, fixtures):
        code, _, err = run(capsys, "verify", fixtures / "chain.model", "--tolerance", 0)
        assert code == 2
        assert "tolerance must be positive" in err

    def test_tolerance_applies_to_every_command(self, capsys, fixtures):
        code, out, _ = run(capsys, "marginal", fixtures / "chain.model", "B", "--tolerance", 1e-6)
        assert (code, out) == (0, "B=0  0.62\nB=1  0.38\n")
        code, _, err = run(capsys, "query", fixtures / "three.model", "x1=t", "--tolerance", 0)
        assert code == 2
        assert "tolerance must be positive" in err
