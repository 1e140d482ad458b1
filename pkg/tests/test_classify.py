import random

from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import graph_and_word, random_word
from raagkit.classify import classify, is_conjugate_into_star
from raagkit.graph import complete_graph
from raagkit.word import Word, parse_word, reduced


def W(g, text):
    return parse_word(g, text)


def test_classify_examples(P4, C4):
    v = classify(W(P4, "a b c"))
    assert v.elliptic and v.witness.vertices == P4.star("b")
    assert classify(W(P4, "a b c d")).loxodromic
    v = classify(W(C4, "a b c d"))
    assert v.elliptic and v.witness.vertices == frozenset(range(4))
    v = classify(W(P4, ""))
    assert v.elliptic and not v.witness.vertices


def test_conjugation_hides_nothing(P4):
    # d (a b c) d' is conjugate into st(b)
    assert classify(W(P4, "d a b c d'")).elliptic
    assert is_conjugate_into_star(W(P4, "d a b c d'")) == P4.index("b")


def test_star_examples(P3, C4):
    assert is_conjugate_into_star(W(P3, "b a b'")) == P3.index("a")
    assert is_conjugate_into_star(W(C4, "a b c d")) is None
    assert classify(W(C4, "a b c d")).elliptic
    assert is_conjugate_into_star(W(P3, "a z")) == P3.index("a")


def test_json(P4):
    data = classify(W(P4, "a b c")).to_json(P4)
    assert data["class"] == "elliptic"
    assert sorted(data["witness"]["left"] + data["witness"]["right"]) == ["a", "b", "c"]
    assert classify(W(P4, "a b c d")).to_json(P4) == {"class": "loxodromic", "witness": None}


@settings(max_examples=200, deadline=None)
@given(graph_and_word(5, 8), st.integers(0, 10**6))
def test_conjugation_invariance(gw, seed):
    g, w = gw
    u = random_word(random.Random(seed), g, 4)
    assert classify(u.inverse() * w * u).kind == classify(w).kind


@settings(max_examples=150, deadline=None)
@given(graph_and_word(5, 6))
def test_powers_keep_class(gw):
    g, w = gw
    for n in range(1, 5):
        assert classify(w ** n).kind == classify(w).kind


@settings(max_examples=200, deadline=None)
@given(graph_and_word(5, 8))
def test_star_implies_elliptic(gw):
    g, w = gw
    v = is_conjugate_into_star(w)
    if v is not None and g.link(v) and reduced(w).letters:
        assert classify(w).elliptic


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 3), st.sampled_from((1, -1))), max_size=8))
def test_join_graph_is_all_elliptic(letters):
    g = complete_graph("abcd")
    assert classify(Word(g, letters)).elliptic
