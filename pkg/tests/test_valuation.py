import numpy as np
import pytest

from pyvbs.core import (
    CapabilityError, Domain, InstanceMismatchError, PreconditionError, Variable,
    combine_all, consistent, identity_for, inconsistent,
)
from pyvbs.instances import BooleanRelation, ProbabilityPotential

A = Variable(0, "A", ("0", "1"))
B = Variable(1, "B", ("0", "1"))
C = Variable(2, "C", ("0", "1", "2"))


def potential(variables, values):
    return ProbabilityPotential.from_values(variables, values)


class TestCombination:
    def test_scope_is_union_and_values_multiply(self):
        left = potential([A], [0.2, 0.8])
        right = potential([A, B], [0.5, 0.5, 0.1, 0.9])
        result = left.combine(right)
        assert result.domain == Domain([A, B])
        np.testing.assert_allclose(result.table, [[0.1, 0.1], [0.08, 0.72]])

    def test_disjoint_scopes_give_outer_product(self):
        result = potential([A], [1, 2]).combine(potential([B], [3, 5]))
        np.testing.assert_allclose(result.table, [[3, 5], [6, 10]])

    def test_instances_do_not_mix(self):
        with pytest.raises(InstanceMismatchError):
            potential([A], [1, 1]).combine(BooleanRelation.identity(Domain([A])))

    def test_combine_all_of_nothing_is_the_neutral_element(self):
        neutral = identity_for(ProbabilityPotential, Domain())
        assert combine_all([], neutral) is neutral


class TestMarginalization:
    def test_sum_out(self):
        joint = potential([A, C], [1, 2, 3, 4, 5, 6])
        np.testing.assert_allclose(joint.marginalize([2]).table, [5, 7, 9])
        np.testing.assert_allclose(joint.marginalize([0]).table, [6, 15])
        assert joint.marginalize([]).table.shape == ()
        assert joint.marginalize([]).total() == pytest.approx(21)

    def test_target_outside_scope(self):
        with pytest.raises(PreconditionError):
            potential([A], [1, 1]).marginalize([1])

    def test_delete_unknown_variable(self):
        with pytest.raises(PreconditionError):
            potential([A], [1, 1]).delete(2)


class TestRemoval:
    def test_pseudo_inverse_keeps_zeros(self):
        rho = potential([A], [0.0, 4.0])
        np.testing.assert_allclose(rho.inverse().table, [0.0, 0.25])

    def test_remove_is_division(self):
        joint = potential([A, B], [0.1, 0.3, 0.2, 0.4])
        conditional = joint.conditional([0])
        np.testing.assert_allclose(conditional.table, [[0.25, 0.75], [1 / 3, 2 / 3]])

    def test_boolean_relations_cannot_remove(self):
        relation = BooleanRelation.identity(Domain([A]))
        with pytest.raises(CapabilityError):
            relation.remove(relation)
        with pytest.raises(CapabilityError):
            relation.inverse()


class TestHelpers:
    def test_extend_is_vacuous(self):
        extended = potential([A], [0.3, 0.7]).extend(Domain([A, B]))
        np.testing.assert_allclose(extended.table, [[0.3, 0.3], [0.7, 0.7]])
        with pytest.raises(PreconditionError):
            potential([A, B], [1, 1, 1, 1]).extend(Domain([A]))

    def test_normalize(self):
        normal = potential([A], [1.0, 3.0]).normalize()
        assert normal.is_normal()
        np.testing.assert_allclose(normal.table, [0.25, 0.75])
        zero = ProbabilityPotential.zero(Domain([A]))
        assert zero.normalize() is zero

    def test_deviation_aligns_scopes(self):
        narrow = potential([A], [0.5, 0.5])
        wide = potential([A, B], [0.5, 0.5, 0.5, 0.4])
        assert narrow.deviation(wide) == pytest.approx(0.1)
        assert narrow.equals(wide, tolerance=0.2)
        assert not narrow.equals(wide)

    def test_identical_is_bitwise(self):
        left = potential([A], [0.1, 0.2])
        assert left.identical(potential([A], [0.1, 0.2]))
        assert not left.identical(potential([A], [0.1, 0.2 + 1e-16]))

    def test_tables_are_read_only(self):
        table = potential([A], [0.1, 0.2]).table
        with pytest.raises(ValueError):
            table[0] = 1.0

    def test_consistency(self):
        left = potential([A], [1.0, 0.0])
        assert inconsistent(left, potential([A], [0.0, 1.0]))
        assert consistent(left, potential([A], [0.5, 0.5]))

    def test_entries_in_canonical_order(self):
        entries = list(potential([B, A], [1, 2, 3, 4]).entries())
        assert entries == [("A=0 B=0", 1.0), ("A=0 B=1", 3.0),
                           ("A=1 B=0", 2.0), ("A=1 B=1", 4.0)]
