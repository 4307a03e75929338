"""
Structure module for pyvbs - hypergraphs, the Graham reduction and Markov trees
"""
from .hypergraph import (
    Hypergraph, GrahamStep, GrahamStage, GrahamTrace,
    graham_test, modified_graham, is_hypertree, elimination_cliques, cover_hypertree,
)
from .markov_tree import MarkovTree, build_markov_tree

__all__ = [
    'Hypergraph', 'GrahamStep', 'GrahamStage', 'GrahamTrace',
    'graham_test', 'modified_graham', 'is_hypertree', 'elimination_cliques',
    'cover_hypertree',
    'MarkovTree', 'build_markov_tree',
]
