import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_word
from raagkit import stability as sb
from raagkit.graph import path_graph
from raagkit.word import ShuffleOverflow, max_join_subword, parse_word, reduced, shuffle_class


def W(g, text):
    return parse_word(g, text)


F = Fraction


def test_constants_examples():
    assert sb.constants(1, 0).as_tuple() == (1, 10, F("16.5"), F("33.5"))
    assert sb.constants(1, 1).as_tuple() == (4, 22, F("37.5"), 77)
    assert sb.constants(2, 1).as_tuple() == (4, 34, F("106.5"), F("323.5"))
    assert sb.constants(1, 3).S == 164
    with pytest.raises(ValueError):
        sb.constants(F(1, 2), 0)


@settings(max_examples=100)
@given(st.fractions(1, 6), st.fractions(1, 6), st.integers(0, 6), st.integers(0, 6))
def test_constants_monotone(k1, k2, n1, n2):
    lo = sb.constants(min(k1, k2), min(n1, n2)).as_tuple()
    hi = sb.constants(max(k1, k2), max(n1, n2)).as_tuple()
    assert all(a <= b for a, b in zip(lo, hi))


def test_quasigeodesic_examples(P4):
    assert sb.is_quasigeodesic(sb.path_from_word(W(P4, "a b c d")), 1)
    res = sb.is_quasigeodesic(sb.path_from_word(W(P4, "a a' a")), 1)
    assert not res and res.witness[:2] == (0, 2)
    assert sb.is_quasigeodesic(sb.path_from_word(W(P4, "a a' a")), 2)
    assert sb.is_quasigeodesic(sb.LatticePath.of([W(P4, "")]), 1)
    with pytest.raises(ValueError):
        sb.LatticePath.of([])


def test_path_helpers(P4):
    p = sb.path_from_word(W(P4, "a b"))
    assert p.is_edge_path and p.steps == (1, 1) and str(p.end) == "a b"
    assert p.to_json() == ["1", "a", "a b"]


def test_hausdorff_examples(P4):
    p = sb.LatticePath.of([W(P4, s) for s in ("", "a", "a b")])
    q = sb.LatticePath.of([W(P4, s) for s in ("", "b", "b a")])
    assert sb.hausdorff(p, q) == 1
    assert sb.hausdorff(p, p) == 0
    assert sb.hausdorff(sb.LatticePath.of([W(P4, "")]), sb.LatticePath.of([W(P4, ""), W(P4, "a")])) == 1


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_hausdorff_pseudometric(seed):
    g = path_graph("abcd")
    rng = random.Random(seed)
    p, q, r = (sb.path_from_word(random_word(rng, g, 5)) for _ in range(3))
    assert sb.hausdorff(p, q) == sb.hausdorff(q, p)
    assert sb.hausdorff(p, r) <= sb.hausdorff(p, q) + sb.hausdorff(q, r)


def test_stability_check_single_letter(P4):
    rep = sb.stability_check(W(P4, "a"), 1, 5)
    assert rep.observed_max == 0 and rep.violations == 0


def test_stability_check_elliptic_is_flagged(C4):
    g = W(C4, "a b c d")
    rep = sb.stability_check(g, 1, 5)
    assert rep.N == len(g) and rep.degenerate


def test_stability_check_with_detours(P4):
    rep = sb.stability_check(W(P4, "a b c d a b c d"), 2, 20, seed=3)
    assert rep.detours > 0 and rep.violations == 0
    assert rep.bound == sb.constants(2, rep.N).S
    again = sb.stability_check(W(P4, "a b c d a b c d"), 2, 20, seed=3)
    assert again.to_json() == rep.to_json()


def test_stability_check_rejects_unreduced(P4):
    with pytest.raises(ValueError):
        sb.stability_check(W(P4, "a a'"), 1, 1)


def test_elliptic_instability_examples(P4):
    a, b = W(P4, "a"), W(P4, "b")
    values = [sb.elliptic_instability(a, b, n).hausdorff for n in range(1, 5)]
    assert values == sorted(set(values))
    assert sb.elliptic_instability(a, b, 0).hausdorff == 0
    with pytest.raises(ValueError):
        sb.elliptic_instability(a, a, 2)
    # a loxodromic w has no commuting partner outside its own powers
    g = W(P4, "a b c d")
    with pytest.raises(ValueError):
        sb.elliptic_instability(g, g ** 2, 2)
    with pytest.raises(ValueError):
        sb.elliptic_instability(g, W(P4, "a"), 2)


def test_elliptic_instability_fixed_K(P4):
    a, b = W(P4, "a"), W(P4, "b")
    res = sb.elliptic_instability(a, b, 3, K=3)
    assert res.K == 3 and res.hausdorff == 3


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_geodesics_fellow_travel(seed):
    g = path_graph("abcd")
    rng = random.Random(seed)
    w = reduced(random_word(rng, g, 12))
    if not w.letters:
        return
    n = max_join_subword(w).length
    bound = sb.constants(1, n).S
    try:
        spellings = shuffle_class(w, 2000)
    except ShuffleOverflow as exc:
        spellings = exc.partial
    ref = sb.path_from_word(spellings[0])
    for s in rng.sample(spellings, min(5, len(spellings))):
        assert sb.hausdorff(ref, sb.path_from_word(s)) <= bound
