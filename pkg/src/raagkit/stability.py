"""Stability constants, quasi-geodesics and Hausdorff distances.

Paths are sequences of group elements in the Cayley graph with the word
metric ``d(x, y) = |x^-1 y|``.  All asserted bounds use exact rationals.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .classify import classify
from .word import (DEFAULT_SHUFFLE_CAP, ShuffleOverflow, Word, distance, equal, identity,
                   is_identity, is_reduced, max_join_subword, normal_form, reduced, shuffle_class)


@dataclass(frozen=True)
class StabilityConstants:
    K: Fraction
    N: int
    B: Fraction
    M: Fraction
    L: Fraction
    S: Fraction

    def as_tuple(self) -> tuple:
        return (self.B, self.M, self.L, self.S)


def constants(K, N: int) -> StabilityConstants:
    K = Fraction(K)
    if K < 1:
        raise ValueError("K must be at least 1")
    if N < 0:
        raise ValueError("N must be nonnegative")
    half = Fraction(1, 2)
    B = Fraction(3 * N + 1)
    M = 2 * ((K + 1) * (B + 1) + K)
    L = half * (K + 1) * (2 * K + 1) * (B + 1) + M * K + half * K
    S = half * (K * (2 * L + (B - 1)) + K) + L
    return StabilityConstants(K, N, B, M, L, S)


# -- paths --------------------------------------------------------------------


@dataclass(frozen=True)
class LatticePath:
    points: tuple  # normal forms

    def __len__(self):
        return len(self.points)

    @property
    def start(self) -> Word:
        return self.points[0]

    @property
    def end(self) -> Word:
        return self.points[-1]

    @property
    def steps(self) -> tuple:
        return tuple(distance(x, y) for x, y in zip(self.points, self.points[1:]))

    @property
    def is_edge_path(self) -> bool:
        return all(s == 1 for s in self.steps)

    @classmethod
    def of(cls, points) -> "LatticePath":
        pts = tuple(normal_form(p) for p in points)
        if not pts:
            raise ValueError("a path needs at least one point")
        return cls(pts)

    def to_json(self) -> list:
        return [str(p) for p in self.points]


def path_from_word(w: Word, start: Optional[Word] = None) -> LatticePath:
    """Edge path through the prefixes of the spelling ``w``."""
    base = identity(w.graph) if start is None else start
    return LatticePath.of(base * w[:k] for k in range(len(w) + 1))


@dataclass(frozen=True)
class QuasiGeodesicCheck:
    ok: bool
    witness: Optional[tuple] = None  # (i, j, d) of the worst pair

    def __bool__(self):
        return self.ok


def is_quasigeodesic(p: LatticePath, K) -> QuasiGeodesicCheck:
    """(1/K)|i-j| - K <= d(p_i, p_j) <= K|i-j| + K for every pair.

    The witness is the pair with the largest violation, or None.
    """
    K = Fraction(K)
    worst = None
    pts = p.points
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            d = distance(pts[i], pts[j])
            gap = j - i
            excess = max(gap / K - K - d, d - K * gap - K)
            if excess > 0 and (worst is None or excess > worst[0]):
                worst = (excess, (i, j, d))
    if worst is None:
        return QuasiGeodesicCheck(True)
    return QuasiGeodesicCheck(False, worst[1])


def one_sided(p: LatticePath, q: LatticePath) -> int:
    return max(min(distance(x, y) for y in q.points) for x in p.points)


def hausdorff(p: LatticePath, q: LatticePath) -> int:
    return max(one_sided(p, q), one_sided(q, p))


# -- empirical stability ------------------------------------------------------


@dataclass(frozen=True)
class StabilityReport:
    N: int
    constants: StabilityConstants
    bound: Fraction
    observed_max: int
    violations: int
    trials: int
    detours: int
    rejected_detours: int
    witness: Optional[LatticePath]
    exact: bool
    degenerate: bool

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "K": str(self.constants.K),
            "bound": str(self.bound),
            "M": str(self.constants.M),
            "observed_max": self.observed_max,
            "violations": self.violations,
            "trials": self.trials,
            "detours": self.detours,
            "rejected_detours": self.rejected_detours,
            "witness": None if self.witness is None else self.witness.to_json(),
            "exact": self.exact,
            "degenerate": self.degenerate,
        }


def _detour(rng: random.Random, spelling: Word, K: Fraction) -> Optional[Word]:
    """Splice u u^-1 into the spelling with |u| <= K, or None if K < 1 allows none."""
    longest = int(K)
    if longest < 1:
        return None
    graph = spelling.graph
    size = rng.randint(1, longest)
    u = Word(graph, [(rng.randrange(len(graph)), rng.choice((1, -1))) for _ in range(size)])
    at = rng.randint(0, len(spelling))
    return spelling[:at] * u * u.inverse() * spelling[at:]


def stability_check(g: Word, K=1, trials: int = 50, cap: int = DEFAULT_SHUFFLE_CAP,
                    seed: int = 0, retries: int = 5) -> StabilityReport:
    """Compare random K-quasi-geodesics from 1 to g with one geodesic.

    Each trial takes a random geodesic spelling and tries to splice in a
    backtracking detour of length <= 2K; a detour is kept only if the path
    still certifies as a K-quasi-geodesic, otherwise the plain spelling is
    used.  The bound is S(K, N_g) with N_g the longest join subword of g.
    """
    if not is_reduced(g):
        raise ValueError("stability_check needs a reduced word")
    K = Fraction(K)
    js = max_join_subword(g, cap)
    consts = constants(K, js.length)
    exact = js.exact
    try:
        spellings = shuffle_class(g, cap)
    except ShuffleOverflow as exc:
        spellings, exact = exc.partial, False
    reference = path_from_word(normal_form(g))
    rng = random.Random(seed)
    observed, violations, detours, rejected = 0, 0, 0, 0
    witness = None
    for _ in range(trials):
        spelling = rng.choice(spellings)
        path = path_from_word(spelling)
        for _ in range(retries):
            word = _detour(rng, spelling, K)
            if word is None:
                break
            cand = path_from_word(word)
            if is_quasigeodesic(cand, K):
                path = cand
                detours += 1
                break
            rejected += 1
        h = hausdorff(reference, path)
        if h > consts.S:
            violations += 1
        if witness is None or h > observed:
            observed, witness = h, path
    degenerate = bool(g.letters) and classify(g).elliptic
    return StabilityReport(js.length, consts, consts.S, observed, violations, trials,
                           detours, rejected, witness, exact, degenerate)


# -- elliptic instability -----------------------------------------------------


@dataclass(frozen=True)
class InstabilityResult:
    n: int
    K: int
    hausdorff: int
    long_path: LatticePath
    short_path: LatticePath


def _minimal_K(p: LatticePath, limit: int = 64) -> int:
    for K in range(1, limit + 1):
        if is_quasigeodesic(p, K):
            return K
    raise ValueError(f"path is not a {limit}-quasi-geodesic")


def check_independent(w: Word, c: Word, max_power: int = 4):
    if is_identity(w) or is_identity(c):
        raise ValueError("w and c must be nontrivial")
    if not is_identity(w.inverse() * c.inverse() * w * c):
        raise ValueError("w and c do not commute")
    for i in range(1, max_power + 1):
        for j in range(-max_power, max_power + 1):
            if j and equal(w ** i, c ** j):
                raise ValueError(f"w^{i} = c^{j}: no rank-two subgroup")


def elliptic_instability(w: Word, c: Word, n: int, K: Optional[int] = None) -> InstabilityResult:
    """Hausdorff distance between the paths spelling c^n w^n c^-n and w^n.

    ``K`` defaults to the least integer for which both paths are
    K-quasi-geodesics; a supplied ``K`` is verified instead.
    """
    check_independent(w, c)
    w, c = reduced(w), reduced(c)
    long_path = path_from_word(c ** n * w ** n * c ** -n)
    short_path = path_from_word(w ** n)
    if K is None:
        K = max(_minimal_K(long_path), _minimal_K(short_path))
    else:
        for p in (long_path, short_path):
            res = is_quasigeodesic(p, K)
            if not res:
                raise ValueError(f"path fails the {K}-quasi-geodesic test at {res.witness}")
    return InstabilityResult(n, K, hausdorff(long_path, short_path), long_path, short_path)
