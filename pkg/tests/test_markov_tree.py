import pytest

from pyvbs.core import ModelError, PreconditionError
from pyvbs.structure import Hypergraph, MarkovTree, build_markov_tree

from oracles import random_hypertree


class TestBuild:
    def test_sample_links_follow_absorption(self, sample_tree):
        assert sample_tree.edges == [(0, 1), (0, 4), (1, 2), (1, 3), (4, 5)]
        assert len(sample_tree) == 6

    def test_sample_separators(self, sample, sample_tree):
        assert sample.label(sample_tree.separator(0, 1)) == "{X7}"
        assert sample.label(sample_tree.separator(0, 4)) == "{X8}"
        assert sample.label(sample_tree.separator(4, 5)) == "{X10}"
        for i, j in sample_tree.edges:
            assert sample_tree.separator(i, j) == sample[i] & sample[j]

    def test_construction_order_is_reversed_deletion(self, sample_tree):
        assert sample_tree.construction_order == (0, 4, 1, 5, 3, 2)
        assert sample_tree.has_running_intersection()

    def test_sample_properties(self, sample_tree):
        assert sample_tree.has_separator_property()
        assert sample_tree.label(1) == "{X2, X5, X6, X7}"
        assert sample_tree.variables == sample_tree.hypergraph().variables

    def test_not_a_hypertree(self):
        triangle = Hypergraph.from_names([["A", "B"], ["B", "C"], ["A", "C"]])
        with pytest.raises(PreconditionError, match="stops at"):
            build_markov_tree(triangle)

    def test_single_edge(self):
        tree = build_markov_tree(Hypergraph([[0, 1]]))
        assert len(tree) == 1
        assert tree.edges == []
        assert tree.center() == 0

    def test_random_hypertrees(self, rng):
        for _ in range(100):
            h = Hypergraph(random_hypertree(rng))
            tree = build_markov_tree(h)
            assert len(tree.edges) == len(h) - 1
            assert tree.has_running_intersection()
            assert tree.has_separator_property()


class TestTree:
    def test_links_must_form_a_tree(self):
        with pytest.raises(ModelError, match="do not form a tree"):
            MarkovTree([[0], [0, 1], [1]], [(0, 1)])
        with pytest.raises(ModelError, match="does not join"):
            MarkovTree([[0], [0, 1]], [(0, 5)])

    def test_separator_of_non_adjacent_nodes(self, sample_tree):
        with pytest.raises(PreconditionError, match="not adjacent"):
            sample_tree.separator(2, 3)

    def test_traversal(self, sample_tree):
        assert sample_tree.center() == 0
        assert sample_tree.bfs_order(0) == [0, 1, 4, 2, 3, 5]
        assert sample_tree.bfs_order(1, within=[0, 1, 2]) == [1, 0, 2]
        assert sample_tree.parents(4) == {4: None, 0: 4, 5: 4, 1: 0, 2: 1, 3: 1}
        assert sample_tree.path(2, 5) == [2, 1, 0, 4, 5]
        assert sample_tree.steiner_nodes([2, 3]) == {1, 2, 3}
        with pytest.raises(PreconditionError):
            sample_tree.bfs_order(9)

    def test_running_intersection_fails_for_a_bad_order(self, sample_tree):
        assert not sample_tree.has_running_intersection([2, 5, 0, 1, 3, 4])

    def test_separator_property_fails_when_a_variable_skips_a_node(self):
        tree = MarkovTree([[0, 1], [1, 2], [0, 2]], [(0, 1), (1, 2)])
        assert not tree.has_separator_property()
