"""Bounded-depth analysis of finitely generated subgroups.

Elements are enumerated as freely reduced words in the generating set S
(``S-words``) and deduplicated by normal form.  Every constant reported
here is observed at the stated depth; nothing is certified globally.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from typing import Optional

from . import diagram as dg
from .classify import classify, is_conjugate_into_star
from .folding import FoldedGraph
from .graph import DefiningGraph, Join, parse_graph
from .word import (DEFAULT_SHUFFLE_CAP, ShuffleOverflow, Word, identity, is_reduced, length,
                   max_join_subword, normal_form, parse_word, shuffle_class)

DEFAULT_BUDGET = 10**6


class BasisViolation(ValueError):
    """Distinct S-words were found to represent the same element."""

    def __init__(self, sword: tuple, other: tuple, text: str):
        self.sword = sword
        self.other = other
        super().__init__(text)


class BudgetExceeded(RuntimeError):
    pass


class SubgroupParseError(ValueError):
    pass


@dataclass(frozen=True)
class Element:
    sword: tuple
    word: Word  # concatenated generator spellings
    nf: Word

    @property
    def h_length(self) -> int:
        return len(self.sword)

    @property
    def a_length(self) -> int:
        return len(self.nf)


class Subgroup:
    def __init__(self, graph: DefiningGraph, generators, basis_assumed: bool = False):
        gens = []
        for k, g in enumerate(generators):
            name, word = g if isinstance(g, tuple) else (f"x{k + 1}", g)
            if isinstance(word, str):
                word = parse_word(graph, word)
            if not word.letters:
                raise ValueError(f"generator {name} is the identity")
            if not is_reduced(word):
                raise ValueError(f"generator {name} = {word} is not reduced")
            gens.append((name, word))
        if not gens:
            raise ValueError("a subgroup needs at least one generator")
        names = [n for n, _ in gens]
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names")
        self.graph = graph
        self.generators = tuple(gens)
        self.basis_assumed = basis_assumed

    @property
    def names(self) -> list:
        return [n for n, _ in self.generators]

    def __repr__(self):
        gens = ", ".join(f"{n}={w}" for n, w in self.generators)
        return f"Subgroup<{gens}>"

    def spell(self, sword) -> Word:
        letters: tuple = ()
        for g, s in sword:
            w = self.generators[g][1]
            letters += (w if s > 0 else w.inverse()).letters
        return Word._raw(self.graph, letters)

    def format_sword(self, sword) -> str:
        if not sword:
            return "1"
        return " ".join(self.generators[g][0] + ("'" if s < 0 else "") for g, s in sword)

    def parse_sword(self, text: str) -> tuple:
        index = {n: k for k, n in enumerate(self.names)}
        out = []
        for tok in text.split():
            if tok == "1":
                continue
            name = tok.rstrip("'")
            sign = -1 if (len(tok) - len(name)) % 2 else 1
            if name not in index:
                raise SubgroupParseError(f"unknown generator {name!r}")
            out.append((index[name], sign))
        return tuple(out)

    def element(self, sword) -> Element:
        sword = tuple(sword)
        word = self.spell(sword)
        return Element(sword, word, normal_form(word))

    def block_bounds(self, sword) -> list:
        """Start offset of each block in the concatenated spelling, plus the end."""
        out = [0]
        for g, _ in sword:
            out.append(out[-1] + len(self.generators[g][1]))
        return out


def parse_subgroup(text: str, base_dir: str = ".", graph: Optional[DefiningGraph] = None,
                   basis_assumed: bool = False) -> Subgroup:
    """Parse ``graph <path>`` and ``gen <name> = <word>`` lines."""
    gens = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("graph "):
            if graph is None:
                path = os.path.join(base_dir, line[6:].strip())
                with open(path) as fh:
                    graph = parse_graph(fh.read())
            continue
        m = re.match(r"gen\s+([A-Za-z][A-Za-z0-9_]*)\s*=\s*(.*)\Z", line)
        if not m:
            raise SubgroupParseError(f"line {lineno}: expected 'gen <name> = <word>'")
        gens.append((m.group(1), m.group(2)))
    if graph is None:
        raise SubgroupParseError("no graph given")
    try:
        return Subgroup(graph, [(n, parse_word(graph, w)) for n, w in gens], basis_assumed)
    except ValueError as exc:
        raise SubgroupParseError(str(exc)) from None


def parse_gens(graph: DefiningGraph, specs, basis_assumed: bool = False) -> Subgroup:
    """Build a subgroup from ``name=word`` strings."""
    gens = []
    for k, item in enumerate(specs):
        if "=" in item:
            name, word = item.split("=", 1)
            name = name.strip()
        else:
            name, word = f"x{k + 1}", item
        gens.append((name, parse_word(graph, word)))
    return Subgroup(graph, gens, basis_assumed)


# -- enumeration --------------------------------------------------------------


def enumerate_elements(H: Subgroup, depth: int, budget: int = DEFAULT_BUDGET,
                       check_basis: Optional[bool] = None) -> list:
    """Nontrivial elements of S-length 1..depth, one per normal form.

    Breadth-first by S-length, so each element carries a shortest S-word.
    With ``check_basis`` (default: ``H.basis_assumed``) an S-word giving the
    identity or a repeated element raises :class:`BasisViolation`.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    check = H.basis_assumed if check_basis is None else check_basis
    letters = [(g, s) for g in range(len(H.generators)) for s in (1, -1)]
    seen: dict = {}
    out = []
    layer = [()]
    produced = 0
    for _ in range(depth):
        nxt = []
        for sword in layer:
            for x in letters:
                if sword and sword[-1] == (x[0], -x[1]):
                    continue
                produced += 1
                if produced > budget:
                    raise BudgetExceeded(f"enumeration budget {budget} exceeded")
                new = sword + (x,)
                nxt.append(new)
                el = H.element(new)
                if not el.nf.letters:
                    if check:
                        raise BasisViolation(new, (), f"basis violated: {H.format_sword(new)} = 1")
                    continue
                prev = seen.get(el.nf.letters)
                if prev is not None:
                    if check:
                        raise BasisViolation(
                            new, prev, f"basis violated: {H.format_sword(new)} = "
                            f"{H.format_sword(prev)}")
                    continue
                seen[el.nf.letters] = new
                out.append(el)
        layer = nxt
    return out


# -- verdicts -----------------------------------------------------------------


@dataclass(frozen=True)
class PropertyVerdict:
    holds: bool
    depth: int
    witness: Optional[Element] = None
    detail: object = None


def purely_loxodromic_up_to(H: Subgroup, depth: int, budget: int = DEFAULT_BUDGET) -> PropertyVerdict:
    for el in enumerate_elements(H, depth, budget):
        v = classify(el.nf)
        if v.elliptic:
            return PropertyVerdict(False, depth, el, v.witness)
    return PropertyVerdict(True, depth)


def star_free_up_to(H: Subgroup, depth: int, budget: int = DEFAULT_BUDGET) -> PropertyVerdict:
    for el in enumerate_elements(H, depth, budget):
        v = is_conjugate_into_star(el.nf)
        if v is not None:
            return PropertyVerdict(False, depth, el, v)
    return PropertyVerdict(True, depth)


# -- observed constants -------------------------------------------------------


@dataclass(frozen=True)
class ObservedConstant:
    value: int
    depth: int
    witness: Optional[Element] = None
    detail: object = None
    exact: bool = True


def join_busting_up_to(H: Subgroup, depth: int, cap: int = DEFAULT_SHUFFLE_CAP,
                       budget: int = DEFAULT_BUDGET) -> ObservedConstant:
    """N_obs: the longest join subword of any spelling of any element."""
    best = ObservedConstant(0, depth)
    exact = True
    for el in enumerate_elements(H, depth, budget):
        js = max_join_subword(el.nf, cap)
        exact = exact and js.exact
        if js.length > best.value:
            best = ObservedConstant(js.length, depth, el, js)
    return ObservedConstant(best.value, depth, best.witness, best.detail, exact)


def _block_of(bounds: list) -> list:
    out = []
    for k in range(len(bounds) - 1):
        out += [k] * (bounds[k + 1] - bounds[k])
    return out


def cancellation_diameter_up_to(H: Subgroup, depth: int, budget: int = DEFAULT_BUDGET) -> ObservedConstant:
    """D_obs: max block distance j - i spanned by a noncontributing arc."""
    best = ObservedConstant(0, depth)
    for el in enumerate_elements(H, depth, budget):
        rd = dg.reducing_diagram(el.word)
        block = _block_of(H.block_bounds(el.sword))
        for i, j in rd.noncontributing_arcs():
            d = block[j] - block[i]
            if d > best.value:
                best = ObservedConstant(d, depth, el, (i, j))
    return best


def vanishing_blocks(H: Subgroup, el: Element) -> list:
    """Per block, whether none of its letters reach the reduced word."""
    rd = dg.reducing_diagram(el.word)
    contributing = set(rd.contributing)
    bounds = H.block_bounds(el.sword)
    return [not any(p in contributing for p in range(bounds[k], bounds[k + 1]))
            for k in range(len(el.sword))]


def noncontribution_up_to(H: Subgroup, depth: int, budget: int = DEFAULT_BUDGET) -> ObservedConstant:
    """K_obs: longest run of consecutive blocks contributing nothing."""
    best = ObservedConstant(0, depth)
    for el in enumerate_elements(H, depth, budget):
        run = 0
        for k, vanished in enumerate(vanishing_blocks(H, el)):
            run = run + 1 if vanished else 0
            if run > best.value:
                best = ObservedConstant(run, depth, el, (k - run + 1, k + 1))
    return best


def distortion_profile(H: Subgroup, depth: int, budget: int = DEFAULT_BUDGET) -> list:
    """``(l_H, l_A)`` pairs, starting with the identity's (0, 0)."""
    out = [(0, 0, None)]
    for el in enumerate_elements(H, depth, budget):
        out.append((el.h_length, el.a_length, el))
    return out


@dataclass(frozen=True)
class UndistortionResult:
    holds: bool
    depth: int
    K: int
    max_generator_length: int
    witness: Optional[Element] = None


def undistortion_check(H: Subgroup, depth: int, K: int, budget: int = DEFAULT_BUDGET) -> UndistortionResult:
    """Check (l_H - K)/(K+1) <= l_A <= max|s| * l_H on every enumerated element."""
    top = max(len(w) for _, w in H.generators)
    for lh, la, el in distortion_profile(H, depth, budget):
        if lh - K > la * (K + 1) or la > top * lh:
            return UndistortionResult(False, depth, K, top, el)
    return UndistortionResult(True, depth, K, top)


def quasiconvexity_estimate(H: Subgroup, depth: int, spelling_cap: int = 1000,
                            budget: int = DEFAULT_BUDGET) -> ObservedConstant:
    """Max over geodesic spellings of elements and their prefixes p of d(p, H_depth)."""
    elements = enumerate_elements(H, depth, budget)
    points = [identity(H.graph)] + [el.nf for el in elements]
    best = ObservedConstant(0, depth)
    exact = True
    cache: dict = {}
    for el in elements:
        try:
            spellings = shuffle_class(el.nf, spelling_cap)
        except ShuffleOverflow as exc:
            spellings, exact = exc.partial, False
        for s in spellings:
            for k in range(1, len(s)):
                p = s[:k]
                key = normal_form(p).letters
                if key not in cache:
                    inv = p.inverse()
                    cache[key] = min(length(inv * q) for q in points)
                if cache[key] > best.value:
                    best = ObservedConstant(cache[key], depth, el, (s, k))
    return ObservedConstant(best.value, depth, best.witness, best.detail, exact)


# -- intersections with subgraph subgroups -----------------------------------


@dataclass(frozen=True)
class IntersectionResult:
    basis: tuple  # of (S-word, normal form)
    sizes: tuple  # of (depth, basis size)
    depth: int
    truncated: bool = True


def intersect_with_subgraph(H: Subgroup, lam, depth: int, budget: int = DEFAULT_BUDGET) -> IntersectionResult:
    """Free basis of the subgroup generated by elements of H in A(lam) up to depth.

    Elements are folded as S-words, which is sound because H is assumed free
    on S; the result is always truncated at ``depth``.
    """
    lam = H.graph.vertex_set(lam)
    elements = enumerate_elements(H, depth, budget, check_basis=True)
    sizes = []
    basis: list = []
    for d in range(1, depth + 1):
        cands = [el.sword for el in elements if el.h_length <= d and el.nf.vertices <= lam]
        basis = FoldedGraph(cands).basis()
        sizes.append((d, len(basis)))
    out = tuple((b, H.element(b).nf) for b in basis)
    return IntersectionResult(out, tuple(sizes), depth, True)


# -- bundled report -------------------------------------------------------------

PROPS = ("lox", "star", "jb", "dist", "qc", "cd", "nc")


@dataclass
class SubgroupReport:
    depth: int
    results: dict = field(default_factory=dict)

    def to_json(self, H: Subgroup) -> dict:
        out: dict = {"depth": self.depth}
        for key, res in self.results.items():
            out[key] = _result_json(H, res)
        return out


def _element_json(H: Subgroup, el: Optional[Element]):
    if el is None:
        return None
    return {"sword": H.format_sword(el.sword), "normal_form": str(el.nf)}


def _result_json(H: Subgroup, res) -> dict:
    if isinstance(res, PropertyVerdict):
        detail = res.detail
        if isinstance(detail, Join):
            detail = H.graph.names(detail.vertices)
        elif isinstance(detail, int):
            detail = H.graph.name(detail)
        return {"holds": res.holds, "witness": _element_json(H, res.witness), "detail": detail}
    if isinstance(res, ObservedConstant):
        return {"value": res.value, "exact": res.exact, "witness": _element_json(H, res.witness)}
    if isinstance(res, UndistortionResult):
        return {"holds": res.holds, "K": res.K, "max_generator_length": res.max_generator_length,
                "witness": _element_json(H, res.witness)}
    if isinstance(res, list):
        return {"profile": [[lh, la] for lh, la, _ in res]}
    raise TypeError(type(res))


def analyze(H: Subgroup, depth: int, props=("lox", "star"), cap: int = DEFAULT_SHUFFLE_CAP,
            budget: int = DEFAULT_BUDGET, K: Optional[int] = None) -> SubgroupReport:
    report = SubgroupReport(depth)
    for p in props:
        if p == "lox":
            report.results["lox"] = purely_loxodromic_up_to(H, depth, budget)
        elif p == "star":
            report.results["star"] = star_free_up_to(H, depth, budget)
        elif p == "jb":
            report.results["jb"] = join_busting_up_to(H, depth, cap, budget)
        elif p == "cd":
            report.results["cd"] = cancellation_diameter_up_to(H, depth, budget)
        elif p == "nc":
            report.results["nc"] = noncontribution_up_to(H, depth, budget)
        elif p == "dist":
            k = noncontribution_up_to(H, depth, budget).value if K is None else K
            report.results["dist"] = undistortion_check(H, depth, k, budget)
        elif p == "qc":
            report.results["qc"] = quasiconvexity_estimate(H, depth, min(cap, 1000), budget)
        else:
            raise ValueError(f"unknown property {p!r}; choose from {', '.join(PROPS)}")
    return report
