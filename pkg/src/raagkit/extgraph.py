"""Finite pieces of the extension graph.

Vertices are conjugates ``v^g = g^-1 v g`` of vertex generators, two of
them adjacent when they commute.  The graph is locally infinite, so balls
are taken inside the set of conjugates whose canonical conjugator has
length at most a cap, and report whether the cap cut anything off.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .graph import DefiningGraph
from .word import (DEFAULT_STAR_CAP, Letter, Word, _predecessor_masks, _star_closure,
                   generator, normal_form, reduced, star_length)


@dataclass(frozen=True, order=True)
class ExtVertex:
    base: int
    conjugator: tuple  # letters of a normal form

    def element(self, graph: DefiningGraph) -> Word:
        g = Word._raw(graph, self.conjugator)
        return g.inverse() * generator(graph, self.base) * g

    def label(self, graph: DefiningGraph) -> str:
        name = graph.name(self.base)
        if not self.conjugator:
            return name
        return f"{name}^({Word._raw(graph, self.conjugator)})"


def canonical_ext_vertex(graph: DefiningGraph, v, g: Optional[Word] = None) -> ExtVertex:
    """Canonical name for v^g: drop the largest left divisor of g lying in A(st(v))."""
    v = graph.index(v)
    if g is None or not g.letters:
        return ExtVertex(v, ())
    letters = normal_form(g).letters
    preds = _predecessor_masks(graph, letters)
    mask = _star_closure(graph, letters, preds, 0, graph.star(v))
    rest = Word._raw(graph, [x for k, x in enumerate(letters) if not mask >> k & 1])
    return ExtVertex(v, normal_form(rest).letters)


def same_ext_vertex(graph: DefiningGraph, v, g: Word, w, h: Word) -> bool:
    """Ground-truth equality test: v = w and g h^-1 lies in A(st(v))."""
    v, w = graph.index(v), graph.index(w)
    return v == w and reduced(g * h.inverse()).vertices <= graph.star(v)


def commutes_ext(graph: DefiningGraph, x: ExtVertex, y: ExtVertex) -> bool:
    a, b = x.element(graph), y.element(graph)
    return not reduced(a.inverse() * b.inverse() * a * b).letters


def _reduced_words(graph: DefiningGraph, max_len: int) -> list:
    """All reduced elements of length <= max_len, as normal forms."""
    letters = [Letter(v, s) for v in range(len(graph)) for s in (1, -1)]
    seen = {()}
    layer = [()]
    out = [()]
    for _ in range(max_len):
        nxt = []
        for w in layer:
            for x in letters:
                nf = normal_form(Word._raw(graph, w + (x,))).letters
                if len(nf) == len(w) + 1 and nf not in seen:
                    seen.add(nf)
                    nxt.append(nf)
        out += nxt
        layer = nxt
    return out


@dataclass(frozen=True)
class ExtBall:
    graph: DefiningGraph
    centers: tuple
    radius: int
    conj_cap: int
    vertices: tuple
    edges: tuple
    depth: dict
    truncated: bool

    def neighbors(self, x: ExtVertex) -> list:
        return sorted({b if a == x else a for a, b in self.edges if x in (a, b)})

    def distance(self, x: ExtVertex, y: ExtVertex) -> Optional[int]:
        """Graph distance using only ball vertices and edges."""
        if x not in self.depth or y not in self.depth:
            return None
        adj: dict = {v: [] for v in self.vertices}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        dist = {x: 0}
        queue = deque([x])
        while queue:
            u = queue.popleft()
            if u == y:
                return dist[u]
            for z in adj[u]:
                if z not in dist:
                    dist[z] = dist[u] + 1
                    queue.append(z)
        return None

    def to_json(self) -> dict:
        g = self.graph
        return {
            "vertices": [v.label(g) for v in self.vertices],
            "edges": [[a.label(g), b.label(g)] for a, b in self.edges],
            "truncated": self.truncated,
        }

    def to_dot(self) -> str:
        g = self.graph
        ids = {v: k for k, v in enumerate(self.vertices)}
        lines = ["graph ext {"]
        for v in self.vertices:
            shape = ' shape=box' if v in self.centers else ""
            lines.append(f'  n{ids[v]} [label="{v.label(g)}"{shape}];')
        for a, b in self.edges:
            lines.append(f"  n{ids[a]} -- n{ids[b]};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_svg(self, size: int = 480) -> str:
        """Vertices on concentric circles by depth, centers innermost."""
        g = self.graph
        c = size / 2
        rings: dict = {}
        for v in self.vertices:
            rings.setdefault(self.depth[v], []).append(v)
        step = size * 0.4 / max(len(rings), 1)
        pos = {}
        for d, members in rings.items():
            r = step * (d + 0.5) if len(rings) > 1 or len(members) > 1 else 0
            for k, v in enumerate(members):
                t = 2 * math.pi * k / len(members)
                pos[v] = (c + r * math.cos(t), c + r * math.sin(t))
        out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
               f'viewBox="0 0 {size} {size}">']
        for a, b in self.edges:
            (x1, y1), (x2, y2) = pos[a], pos[b]
            out.append(f'<line x1="{x1:.1f}" y1="{y1:.1f}" x2="{x2:.1f}" y2="{y2:.1f}" stroke="gray"/>')
        for v in self.vertices:
            x, y = pos[v]
            fill = "red" if v in self.centers else "black"
            out.append(f'<circle cx="{x:.1f}" cy="{y:.1f}" r="3" fill="{fill}"/>')
            out.append(f'<text x="{x + 4:.1f}" y="{y - 4:.1f}" font-size="10">{v.label(g)}</text>')
        out.append("</svg>")
        return "\n".join(out) + "\n"


def ext_ball(graph: DefiningGraph, centers, radius: int, conj_cap: int) -> ExtBall:
    """Ball of the given radius around ``centers`` among conjugates with
    canonical conjugator length <= ``conj_cap``.

    ``centers`` may mix vertex names and ExtVertex values.  The ball is
    truncated when some vertex inside radius ``radius - 1`` has a commuting
    conjugate ``w^(u g)`` or ``w^(g u)`` (``|u| <= conj_cap + 1``) beyond the cap.
    """
    if radius < 0 or conj_cap < 0:
        raise ValueError("radius and conj_cap must be nonnegative")
    short = _reduced_words(graph, conj_cap)
    universe = sorted({canonical_ext_vertex(graph, v, Word._raw(graph, u))
                       for v in range(len(graph)) for u in short})
    universe = [x for x in universe if len(x.conjugator) <= conj_cap]
    cs = []
    for c in centers:
        cs.append(c if isinstance(c, ExtVertex) else canonical_ext_vertex(graph, c))
    cs = sorted(set(cs))
    depth = {c: 0 for c in cs}
    frontier = list(cs)
    probes = _reduced_words(graph, conj_cap + 1)
    truncated = False
    for r in range(radius):
        nxt = []
        for x in frontier:
            for y in universe:
                if y not in depth and commutes_ext(graph, x, y):
                    depth[y] = r + 1
                    nxt.append(y)
            if not truncated:
                truncated = _pruned_neighbor(graph, x, probes, conj_cap)
        frontier = sorted(nxt)
    vertices = tuple(sorted(depth))
    edges = tuple((a, b) for k, a in enumerate(vertices) for b in vertices[k + 1:]
                  if commutes_ext(graph, a, b))
    return ExtBall(graph, tuple(cs), radius, conj_cap, vertices, edges, depth, truncated)


def _pruned_neighbor(graph, x: ExtVertex, short, cap: int) -> bool:
    g = Word._raw(graph, x.conjugator)
    for u in short:
        uw = Word._raw(graph, u)
        for h in (uw * g, g * uw):
            for w in range(len(graph)):
                y = canonical_ext_vertex(graph, w, h)
                if len(y.conjugator) > cap and commutes_ext(graph, x, y):
                    return True
    return False


# -- growth proxies -----------------------------------------------------------


@dataclass(frozen=True)
class GrowthProxy:
    lengths: tuple
    exact: bool


def orbit_growth_proxy(g: Word, n_max: int, exact_cap: int = DEFAULT_STAR_CAP) -> GrowthProxy:
    """Star lengths of g, g^2, ..., g^n_max."""
    lengths = []
    exact = True
    for n in range(1, n_max + 1):
        sl = star_length(g ** n, exact_cap)
        lengths.append(sl.length)
        exact = exact and sl.exact
    return GrowthProxy(tuple(lengths), exact)


def translation_estimate(g: Word, n_max: int, exact_cap: int = DEFAULT_STAR_CAP) -> Fraction:
    if n_max < 1:
        raise ValueError("n_max must be positive")
    return Fraction(star_length(g ** n_max, exact_cap).length, n_max)
