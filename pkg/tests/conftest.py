"""
Shared fixtures for the homsplit test suite
"""

import random
from pathlib import Path

import pytest

import endo_split
import pi1_free
from endo_split import ConjIdemWitness, FreeEndo
from word_core import Word, reduce

DATA_DIR = Path(__file__).resolve().parent.parent / "test_data"


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0)


@pytest.fixture
def w() -> Word:
    """The conjugating element x0 x1 of the worked inner instance."""
    return reduce([(0, 1), (1, 1)])


@pytest.fixture
def inner_witness(w) -> ConjIdemWitness:
    return ConjIdemWitness(endo_split.inner_endo(2, w), w)


@pytest.fixture
def retraction() -> FreeEndo:
    """x0 -> x0, x1 -> x0^2: a genuine idempotent."""
    return FreeEndo(2, (Word.generator(0), Word.generator(0, 2)))


@pytest.fixture
def swap() -> FreeEndo:
    return FreeEndo(2, (Word.generator(1), Word.generator(0)))


@pytest.fixture
def theta() -> pi1_free.GraphComplex:
    return pi1_free.theta_graph()


@pytest.fixture
def wedge() -> pi1_free.GraphComplex:
    return pi1_free.wedge_of_loops(2)
