from pathlib import Path

import numpy as np
import pytest

from pyvbs import Hypergraph
from pyvbs.structure import build_markov_tree

from oracles import SAMPLE_EDGES, SAMPLE_NAMES

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def rng():
    return np.random.default_rng(7)


@pytest.fixture
def fixtures():
    return FIXTURES


@pytest.fixture
def sample():
    return Hypergraph.from_names(SAMPLE_EDGES, SAMPLE_NAMES)


@pytest.fixture
def sample_tree(sample):
    return build_markov_tree(sample)
