import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pyvbs.core import Domain, Variable, laws, run_axiom_suite
from pyvbs.instances import BooleanRelation, CommonalityTable, ProbabilityPotential

from oracles import positive_commonality

GENERAL = [
    "scope-union", "associativity", "commutativity", "zero-absorption", "identity",
    "empty-scope-identity", "deletion-order", "zero-marginal", "normality-preserved",
    "positive-normality-preserved", "combination-locality", "marginal-identity",
    "identity-union", "identity-marginal",
]
REMOVAL = [
    "removal-scope", "self-removal-identity", "removal-distributivity",
    "removal-by-identity", "removal-cancels", "inverse-commutes",
    "removal-is-inverse-combination", "marginal-removal-roundtrip",
]


class SkewedPotential(ProbabilityPotential):
    """Combination that favours its left operand, so it is not commutative"""

    kind = "skewed"

    def _combine(self, other, domain):
        result = super()._combine(other, domain)
        if len(self.scope) > len(other.scope):
            return type(self)(domain, result.table * 2)
        return result


class TestSuite:
    def test_registered_laws(self):
        assert [name for name, _ in laws()] == GENERAL + REMOVAL
        assert [name for name, _ in laws(removal=False)] == GENERAL

    @pytest.mark.parametrize("instance", [ProbabilityPotential, CommonalityTable])
    def test_removal_instances_pass_every_law(self, instance):
        report = run_axiom_suite(instance, cases=200)
        assert report.passed, str(report)
        assert report.names() == GENERAL + REMOVAL
        assert all(result.cases == 200 for result in report.results)

    def test_boolean_relations_skip_removal_laws(self):
        report = run_axiom_suite(BooleanRelation, cases=200)
        assert report.passed, str(report)
        assert report.names() == GENERAL

    def test_non_commutative_instance_is_caught(self):
        report = run_axiom_suite(SkewedPotential, cases=200, seed=3)
        assert not report.passed
        result = report["commutativity"]
        assert not result.passed
        assert "deviation" in result.counterexample
        assert "commutativity" in [r.name for r in report.failures()]

    def test_exceptions_become_failures(self):
        def broken(domain, rng):
            raise RuntimeError("sampler exploded")

        report = run_axiom_suite(ProbabilityPotential, broken, cases=5)
        assert report["associativity"].counterexample == "RuntimeError: sampler exploded"
        assert report["associativity"].cases == 1

    def test_report_text(self):
        text = str(run_axiom_suite(BooleanRelation, cases=10))
        assert text.splitlines()[0] == "BooleanRelation: all laws hold"
        assert "commutativity" in text


class TestMarginalRemovalRoundtrip:
    """(ρ Ⓡ ρ↓r) ⊗ ρ↓r = ρ over every subscope r"""

    variables = [Variable(0, "A", ("0", "1")), Variable(1, "B", ("0", "1", "2")),
                 Variable(2, "C", ("0", "1"))]

    def _check(self, rho):
        ids = rho.scope.ids
        for mask in range(1 << len(ids)):
            r = [v for k, v in enumerate(ids) if mask >> k & 1]
            marginal = rho.marginalize(r)
            assert rho.remove(marginal).combine(marginal).deviation(rho) <= 1e-9

    def test_probability(self, rng):
        domain = Domain(self.variables)
        for _ in range(500):
            self._check(ProbabilityPotential.random(domain, rng, zero_fraction=0.2))

    def test_commonality(self, rng):
        domain = Domain(self.variables[:2])
        for _ in range(500):
            self._check(CommonalityTable.random(domain, rng))
            self._check(positive_commonality(Domain(self.variables[::2]), rng))


@st.composite
def potentials(draw, variables):
    domain = Domain(variables)
    entry = st.just(0.0) | st.floats(0.01, 10.0)
    values = draw(st.lists(entry, min_size=domain.size, max_size=domain.size))
    return ProbabilityPotential(domain, np.array(values))


X = Variable(0, "X", ("0", "1"))
Y = Variable(1, "Y", ("0", "1", "2"))
Z = Variable(2, "Z", ("0", "1"))


class TestLawsOnDrawnTables:
    @settings(max_examples=50, deadline=None)
    @given(potentials([X, Y]), potentials([Y, Z]), potentials([X, Z]))
    def test_associative_and_commutative(self, rho, sigma, tau):
        assert rho.combine(sigma).deviation(sigma.combine(rho)) <= 1e-9
        left = rho.combine(sigma.combine(tau))
        right = rho.combine(sigma).combine(tau)
        scale = max(1.0, float(np.max(left.table)))
        assert left.deviation(right) <= 1e-12 * scale

    @settings(max_examples=50, deadline=None)
    @given(potentials([X]), potentials([Y, Z]))
    def test_combination_locality(self, rho, sigma):
        left = rho.combine(sigma).delete(Z.id)
        right = rho.combine(sigma.delete(Z.id))
        assert left.deviation(right) <= 1e-9

    @settings(max_examples=50, deadline=None)
    @given(potentials([X, Y]), potentials([Y]))
    def test_removal_cancels(self, sigma, rho):
        joint = sigma.combine(rho)
        assert joint.remove(rho).combine(rho).deviation(joint) <= 1e-9
