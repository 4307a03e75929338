import numpy as np
import pytest

from pyvbs.core import (
    Domain, InvariantError, ModelError, PreconditionError, SchedulingError, Variable,
)
from pyvbs.inference import (
    MessageStore, OperationCounter, assign_factors, message, propagate_all, schedule,
)
from pyvbs.instances import BooleanRelation, ProbabilityPotential

from oracles import einsum_joint, random_model, sample_model, table_marginal


class TestAssignment:
    def test_factors_go_to_the_lowest_containing_node(self, rng):
        model = random_model(rng)
        assignment = model.assignment()
        tree = assignment.tree
        for index, factor in enumerate(model.factors):
            node = next(i for i, nodes in enumerate(assignment.factor_nodes) if index in nodes)
            assert factor.scope <= tree[node]
            assert not any(factor.scope <= tree[j] for j in range(node))

    def test_padding(self, rng):
        model = random_model(rng, max_variables=5, max_nodes=5)
        empty = model.assignment("empty")
        full = model.assignment("full")
        for node, valuation in enumerate(full.valuations):
            assert valuation.scope == full.tree[node]
        for node, placed in enumerate(empty.factor_nodes):
            if not placed:
                assert len(empty.valuations[node].scope) == 0
        assert empty.joint().deviation(full.joint()) <= 1e-12
        with pytest.raises(ValueError, match="Unsupported padding"):
            model.assignment("half")

    def test_factor_outside_every_node(self, sample_tree):
        names = sample_tree.names
        variables = {v: _binary(v, names[v]) for v in range(12)}
        stray = ProbabilityPotential.identity(Domain([variables[0], variables[1]]))
        with pytest.raises(PreconditionError, match="no tree node contains"):
            assign_factors(sample_tree, [stray], variables=variables)

    def test_assignment_checks_its_instance(self, sample_tree):
        names = sample_tree.names
        variables = {v: _binary(v, names[v]) for v in range(12)}
        relation = BooleanRelation.identity(Domain([variables[0]]))
        with pytest.raises(ModelError):
            assign_factors(sample_tree, [relation], ProbabilityPotential, variables)


class TestMessages:
    def test_schedule_sends_inward_then_outward(self, sample_tree):
        links = schedule(sample_tree, 0)
        assert len(links) == 2 * len(sample_tree.edges)
        inward, outward = links[:5], links[5:]
        assert all(receiver == sample_tree.parents(0)[sender] for sender, receiver in inward)
        assert outward == [(r, s) for s, r in reversed(inward)]

    def test_store_never_replaces(self, rng):
        store = MessageStore()
        store.put(0, 1, ProbabilityPotential.identity(Domain()))
        with pytest.raises(InvariantError):
            store.put(0, 1, ProbabilityPotential.identity(Domain()))

    def test_message_before_its_inputs(self, rng):
        assignment = sample_model(rng).assignment()
        # node 0 also needs the message from node 4 before it can send to node 1
        with pytest.raises(SchedulingError, match="4->0"):
            message(0, 1, assignment, MessageStore())


class TestPropagateAll:
    def test_node_marginals_match_the_joint(self, rng):
        for _ in range(100):
            model = random_model(rng, zero_fraction=0.1)
            joint = einsum_joint(model)
            ids = [v.id for v in model.variables]
            domains = model.assignment().domains
            result = model.propagate()
            for node, marginal in enumerate(result.marginals):
                expected = table_marginal(joint, ids, model.markov_tree()[node])
                assert marginal.domain == domains[node]
                np.testing.assert_allclose(marginal.table, expected, rtol=0, atol=1e-9)

    def test_every_root_gives_the_same_marginals(self, rng):
        model = random_model(rng)
        tree = model.markov_tree()
        reference = model.propagate(0)
        for root in range(1, len(tree)):
            other = model.propagate(root)
            for a, b in zip(reference.marginals, other.marginals):
                assert a.deviation(b) <= 1e-12

    def test_each_link_carries_one_message_each_way(self, rng):
        model = random_model(rng)
        counter = OperationCounter()
        result = model.propagate(counter=counter)
        assert len(result.store) == 2 * len(model.markov_tree().edges)
        assert counter.messages == len(result.store)

    def test_boolean_relations_propagate(self, rng):
        model = random_model(rng, kind="boolean")
        joint = model.joint()
        for node, marginal in enumerate(model.propagate().marginals):
            expected = joint.marginalize(model.markov_tree()[node])
            assert marginal.identical(expected)


def _binary(var_id, name):
    return Variable(var_id, name, ("0", "1"))
