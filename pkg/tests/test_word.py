import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import graph_and_word
from oracles import (oracle_equal, oracle_length, oracle_max_join_subword, oracle_star_length,
                     shuffle_closure)
from raagkit.classify import classify
from raagkit.graph import DefiningGraph, path_graph
from raagkit.word import (ShuffleOverflow, Word, WordParseError, cyclic_reduce, distance, equal,
                          format_word, greedy_star_length, is_cyclically_reduced, is_reduced,
                          length, max_join_subword, normal_form, parse_word, reduce, reduced,
                          shuffle_class, star_length, support)

FIGURE_ONE = "a b b a' a a a' b' d c d' a b a b' a' b' d d' a' c' a'"


def W(g, text):
    return parse_word(g, text)


def test_parse_and_format(P4):
    w = W(P4, "a b' c''")
    assert [tuple(x) for x in w] == [(0, 1), (1, -1), (2, 1)]
    assert format_word(w) == "a b' c"
    assert format_word(W(P4, "1")) == "1" and not W(P4, "").letters
    with pytest.raises(WordParseError):
        W(P4, "a q")


def test_json_round_trip(P4):
    w = W(P4, "a b' d")
    assert Word.from_json(P4, w.to_json()) == w


def test_reduce_examples(P4, P3):
    assert not reduced(W(P4, FIGURE_ONE)).letters
    assert not reduced(W(P4, "a a'")).letters
    assert str(reduced(W(P3, "a z b z' a'"))) == "a b a'"


def test_figure_one_labeling_is_forced():
    # only the a-b-c-d path (up to reversal) trivializes the figure word
    from itertools import permutations
    hits = []
    for perm in permutations("abcd"):
        g = path_graph(perm)
        if not reduced(W(g, FIGURE_ONE)).letters:
            hits.append("".join(perm))
    assert hits == ["abcd", "dcba"]


def test_reduce_trace(P3):
    w = W(P3, "a z b z' a'")
    out, trace = reduce(w)
    assert trace.partner == {1: 3, 3: 1}
    assert trace.survivors == (0, 2, 4)
    assert trace.position_map == {0: 0, 2: 1, 4: 2}


def test_normal_form_examples(P4):
    assert str(normal_form(W(P4, "b a"))) == "a b"
    assert str(normal_form(W(P4, "d c"))) == "c d"
    free = DefiningGraph(["a", "b"])
    assert str(normal_form(W(free, "b a"))) == "b a"


def test_equal_support_length(P4, P3):
    assert equal(W(P4, "a b"), W(P4, "b a"))
    assert P3.names(support(W(P3, "a z b z' a'"))) == ["a", "b"]
    assert length(W(P4, "")) == 0
    with pytest.raises(ValueError):
        equal(W(P4, "a"), W(P3, "a"))


def test_distance(P4):
    assert distance(W(P4, "a"), W(P4, "a b")) == 1
    assert distance(W(P4, "a"), W(P4, "c")) == 2


def test_cyclic_reduce_examples(P3, P4):
    w = W(P3, "b a b'")
    core, u = cyclic_reduce(w)
    assert str(core) == "a"
    assert equal(u.inverse() * core * u, w)
    core, u = cyclic_reduce(W(P4, "a b c d"))
    assert str(core) == "a b c d" and not u.letters
    core, u = cyclic_reduce(W(P4, ""))
    assert not core.letters and not u.letters


def test_cyclic_reduce_commuting_ends(P4):
    # b ... b' with the b' able to move to the back past a
    w = W(P4, "b c d b' a")
    core, u = cyclic_reduce(w)
    assert equal(u.inverse() * core * u, w)
    assert len(core) < len(reduced(w))


def test_cyclic_powers_of_loxodromic(P4):
    g = W(P4, "a b c d")
    for n in range(1, 5):
        assert len(cyclic_reduce(g ** n)[0]) == 4 * n


def test_shuffle_class_examples(P4):
    assert [str(w) for w in shuffle_class(W(P4, "a b"))] == ["a b", "b a"]
    assert [str(w) for w in shuffle_class(W(P4, "a b c"))] == ["a b c", "a c b", "b a c"]
    assert [str(w) for w in shuffle_class(W(P4, "c"))] == ["c"]
    with pytest.raises(ValueError):
        shuffle_class(W(P4, "a a'"))


def test_shuffle_class_overflow(P4):
    g = DefiningGraph("abcdef", [(x, y) for x in "abcdef" for y in "abcdef" if x < y])
    w = W(g, "a b c d e f")
    with pytest.raises(ShuffleOverflow) as exc:
        shuffle_class(w, cap=100)
    assert len(exc.value.partial) == 100


def test_max_join_subword_examples(P4):
    js = max_join_subword(W(P4, "a b c d"))
    assert js.length == 3
    assert js.join.vertices in (P4.star("b"), P4.star("c"))
    assert str(js.subword) in ("a b c", "b c d")
    assert max_join_subword(W(P4, "a b c")).length == 3
    assert max_join_subword(W(P4, "")).length == 0


def test_max_join_subword_square_of_abcd(P4):
    # the spelling a b d c a b c d has the star word c a b c (support in st(b))
    js = max_join_subword(W(P4, "a b c d") ** 2)
    assert js.length == 4
    assert oracle_max_join_subword(P4, (W(P4, "a b c d") ** 2).letters) == 4
    assert P4.support_in_join(js.subword.vertices) is not None


def test_star_length_examples(P4):
    assert star_length(W(P4, "a b c")).length == 1
    assert star_length(W(P4, "a b c d")).length == 2
    sl = star_length(W(P4, "a b c d") ** 2)
    assert sl.length == 4 and sl.exact
    assert equal(Word(P4, [x for f in sl.factors for x in f]), W(P4, "a b c d") ** 2)
    for f in sl.factors:
        assert P4.support_in_star(f.vertices) is not None


def test_star_length_fallback(P4):
    sl = star_length(W(P4, "a b c d") ** 3, exact_cap=2)
    assert not sl.exact and sl.length >= 6


# -- properties -------------------------------------------------------------


@settings(max_examples=300, deadline=None)
@given(graph_and_word(5, 8))
def test_reduce_matches_rewriting_oracle(gw):
    g, w = gw
    r = reduced(w)
    assert len(r) == oracle_length(g, w.letters)
    assert reduced(r).letters == r.letters
    assert is_reduced(r)
    assert equal(r, w)


@settings(max_examples=150, deadline=None)
@given(graph_and_word(4, 6), st.data())
def test_equal_matches_oracle(gw, data):
    g, u = gw
    letters = data.draw(st.lists(st.tuples(st.integers(0, len(g) - 1), st.sampled_from((1, -1))),
                                 max_size=6))
    v = Word(g, letters)
    assert equal(u, v) == oracle_equal(g, u.letters, v.letters)
    # a random shuffle-equivalent spelling is always equal
    r = reduced(u)
    for s in list(shuffle_closure(g, r.letters))[:5]:
        assert normal_form(Word(g, s)) == normal_form(u)


@settings(max_examples=200, deadline=None)
@given(graph_and_word(5, 8))
def test_shuffle_class_matches_bfs_closure(gw):
    g, w = gw
    r = reduced(w)
    got = {s.letters for s in shuffle_class(r)}
    assert got == shuffle_closure(g, r.letters)
    sup = support(r)
    assert all(s.vertices == sup for s in shuffle_class(r))


@settings(max_examples=150, deadline=None)
@given(graph_and_word(5, 7))
def test_max_join_subword_matches_oracle(gw):
    g, w = gw
    r = reduced(w)
    js = max_join_subword(r)
    assert js.length == oracle_max_join_subword(g, r.letters)
    if js.length:
        assert g.support_in_join(js.subword.vertices) is not None
    # a star with nonempty link is a join, and each factor is a contiguous
    # subword of some spelling
    for f in star_length(r).factors:
        v = g.support_in_star(f.vertices)
        if g.link(v):
            assert js.length >= len(f)


@settings(max_examples=150, deadline=None)
@given(graph_and_word(5, 7))
def test_star_length_matches_oracle(gw):
    g, w = gw
    r = reduced(w)
    sl = star_length(r)
    assert sl.exact
    assert sl.length == oracle_star_length(g, r.letters)
    assert greedy_star_length(r).length >= sl.length


@settings(max_examples=100, deadline=None)
@given(graph_and_word(4, 5), st.data())
def test_star_length_subadditive(gw, data):
    g, u = gw
    letters = data.draw(st.lists(st.tuples(st.integers(0, len(g) - 1), st.sampled_from((1, -1))),
                                 max_size=5))
    v = Word(g, letters)
    assert star_length(u * v).length <= star_length(u).length + star_length(v).length


@settings(max_examples=200, deadline=None)
@given(graph_and_word(5, 8))
def test_cyclic_reduce_identity(gw):
    g, w = gw
    core, u = cyclic_reduce(w)
    assert equal(u.inverse() * core * u, w)
    assert is_cyclically_reduced(core)
    assert classify(core).kind == classify(w).kind
