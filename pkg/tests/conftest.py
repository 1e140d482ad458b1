import os
import random

import pytest
from hypothesis import strategies as st

from raagkit.graph import DefiningGraph, complete_graph, cycle_graph, path_graph
from raagkit.word import Word, reduced, shuffle_class

DATA = os.path.join(os.path.dirname(__file__), "..", "data")


@pytest.fixture
def P4():
    return path_graph("abcd")


@pytest.fixture
def C4():
    return cycle_graph("abcd")


@pytest.fixture
def P3():
    return path_graph(["a", "z", "b"])


@pytest.fixture
def data_dir():
    return os.path.abspath(DATA)


def random_graph(rng: random.Random, max_vertices=5) -> DefiningGraph:
    n = rng.randint(1, max_vertices)
    names = "abcdefgh"[:n]
    edges = [(names[i], names[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.5]
    return DefiningGraph(names, edges)


def random_word(rng: random.Random, graph, max_len=8) -> Word:
    n = rng.randint(0, max_len)
    return Word(graph, [(rng.randrange(len(graph)), rng.choice((1, -1))) for _ in range(n)])


def random_identity_word(rng: random.Random, graph, max_len=10) -> Word:
    """u followed by a random spelling of u^-1, with cancelling pairs spliced in."""
    u = random_word(rng, graph, max_len // 2)
    inv = reduced(u).inverse()
    spellings = shuffle_class(inv, cap=200)
    letters = list(u.letters) + list(rng.choice(spellings).letters)
    while len(letters) + 2 <= max_len and rng.random() < 0.5:
        v = rng.randrange(len(graph))
        s = rng.choice((1, -1))
        k = rng.randint(0, len(letters))
        letters[k:k] = [(v, s), (v, -s)]
    return Word(graph, letters)


@st.composite
def graphs(draw, max_vertices=5):
    n = draw(st.integers(1, max_vertices))
    names = "abcdefgh"[:n]
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return DefiningGraph(names, [(names[i], names[j]) for (i, j), k in zip(pairs, keep) if k])


@st.composite
def graph_and_word(draw, max_vertices=5, max_len=8):
    g = draw(graphs(max_vertices))
    letters = draw(st.lists(st.tuples(st.integers(0, len(g) - 1), st.sampled_from((1, -1))),
                            max_size=max_len))
    return g, Word(g, letters)


__all__ = ["complete_graph", "random_graph", "random_word", "random_identity_word",
           "graphs", "graph_and_word"]
