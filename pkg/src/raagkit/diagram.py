"""Disk diagrams (dual van Kampen diagrams) as chord diagrams.

The boundary circle carries the letters of an identity word at positions
``0..n-1`` (basepoint before position 0); each arc is a chord pairing two
positions carrying inverse letters of one vertex.  Two chords cross
exactly when their endpoints interleave, and chords are straight, so any
pair of arcs meets at most once.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .graph import DefiningGraph
from .word import Letter, Word, reduce, support


class DiagramError(ValueError):
    pass


class NotIdentityError(DiagramError):
    def __init__(self, witness: Word):
        self.witness = witness
        super().__init__(f"word is not the identity; it reduces to {witness}")


def chords_cross(a: tuple, b: tuple) -> bool:
    i, j = sorted(a)
    k, l = sorted(b)
    return (i < k < j < l) or (k < i < l < j)


@dataclass(frozen=True)
class DiskDiagram:
    graph: DefiningGraph
    boundary: tuple
    arcs: tuple
    basepoint: int = 0

    def __post_init__(self):
        object.__setattr__(self, "boundary", tuple(Letter(*x) for x in self.boundary))
        object.__setattr__(self, "arcs", tuple(sorted(tuple(sorted(a)) for a in self.arcs)))

    @property
    def word(self) -> Word:
        return Word(self.graph, self.boundary)

    def __len__(self):
        return len(self.boundary)

    @property
    def partner(self) -> dict:
        out = {}
        for i, j in self.arcs:
            out[i] = j
            out[j] = i
        return out

    def label(self, arc: tuple) -> int:
        return self.boundary[arc[0]].vertex

    def crossings(self, arcs=None) -> list:
        arcs = self.arcs if arcs is None else arcs
        return [(a, b) for n, a in enumerate(arcs) for b in arcs[n + 1:] if chords_cross(a, b)]

    def arcs_touching(self, start: int, stop: int) -> tuple:
        return tuple(a for a in self.arcs if start <= a[0] < stop or start <= a[1] < stop)

    def validate(self) -> "ValidationReport":
        return validate(self)

    def to_json(self, split: Optional[int] = None) -> dict:
        out = {
            "boundary": Word(self.graph, self.boundary).to_json(),
            "arcs": [list(a) for a in self.arcs],
        }
        if split is not None:
            out["split"] = split
        return out

    @classmethod
    def from_json(cls, graph: DefiningGraph, data: dict) -> "DiskDiagram":
        word = Word.from_json(graph, data["boundary"])
        return cls(graph, word.letters, tuple(tuple(a) for a in data["arcs"]))

    def to_dot(self) -> str:
        return to_dot(self)

    def to_svg(self, size: int = 400) -> str:
        return to_svg(self, size)


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


def build_diagram(w: Word) -> DiskDiagram:
    """Diagram for an identity word, with arcs from the reduction trace."""
    out, trace = reduce(w)
    if out.letters:
        raise NotIdentityError(out)
    return DiskDiagram(w.graph, w.letters, tuple(trace.pairs))


def validate(d: DiskDiagram) -> ValidationReport:
    report = ValidationReport()
    n = len(d.boundary)
    seen: dict = {}
    for a in d.arcs:
        for p in a:
            if not 0 <= p < n:
                report.violations.append(f"arc {a} leaves the boundary")
            elif p in seen:
                report.violations.append(f"position {p} on arcs {seen[p]} and {a}")
            else:
                seen[p] = a
    missing = sorted(set(range(n)) - set(seen))
    if missing:
        report.violations.append(f"unmatched positions {missing}")
    if not report.ok:
        return report

    g = d.graph
    for i, j in d.arcs:
        x, y = d.boundary[i], d.boundary[j]
        if x.vertex != y.vertex or x.sign == y.sign:
            report.violations.append(f"arc ({i}, {j}) joins {_fmt(g, x)} and {_fmt(g, y)}")
    for a, b in d.crossings():
        u, v = d.label(a), d.label(b)
        if not g.adjacent(u, v):
            report.violations.append(
                f"crossing labels not adjacent: arcs {a} ({g.name(u)}) and {b} ({g.name(v)})")
    if report.ok:
        for i, j in d.arcs:
            v = d.label((i, j))
            inner = Word(g, d.boundary[i + 1:j])
            if not support(inner) <= g.star(v):
                report.violations.append(
                    f"arc ({i}, {j}) cuts off {inner}, not in A(st({g.name(v)}))")
    return report


def _fmt(g, x: Letter) -> str:
    return g.name(x.vertex) + ("'" if x.sign < 0 else "")


# -- combing --------------------------------------------------------------


@dataclass(frozen=True)
class CombResult:
    combed: DiskDiagram
    rearranged: Word
    pruned_diagram: DiskDiagram
    pruned: Word
    start: int
    stop: int
    swaps: int


def _b_crossings(partner: dict, start: int, stop: int) -> list:
    """Pairs of positions p < q in [start, stop) whose chords cross."""
    out = []
    for p in range(start, stop):
        for q in range(p + 1, stop):
            if partner[p] != q and chords_cross((p, partner[p]), (q, partner[q])):
                out.append((p, q))
    return out


def comb(d: DiskDiagram, start: int, stop: int) -> CombResult:
    """Comb the boundary subword ``b = boundary[start:stop]``.

    Crossings among arcs leaving ``b`` are removed one at a time by swapping
    the two boundary letters of an innermost crossing (the pair of closest
    positions), which hands each letter the other's distal endpoint.  Arcs
    with both ends in ``b``, now adjacent ``v v^-1`` pairs, are then deleted.
    """
    n = len(d.boundary)
    if not 0 <= start <= stop <= n:
        raise DiagramError(f"range [{start}, {stop}) out of bounds for length {n}")
    boundary = list(d.boundary)
    partner = d.partner
    swaps = 0
    while True:
        pairs = _b_crossings(partner, start, stop)
        if not pairs:
            break
        p, q = min(pairs, key=lambda pq: (pq[1] - pq[0], pq))
        P, Q = partner[p], partner[q]
        boundary[p], boundary[q] = boundary[q], boundary[p]
        partner[p], partner[Q] = Q, p
        partner[q], partner[P] = P, q
        swaps += 1
    arcs = tuple(sorted({tuple(sorted((i, j))) for i, j in partner.items()}))
    combed = DiskDiagram(d.graph, tuple(boundary), arcs, d.basepoint)

    internal = {p for p in range(start, stop) if start <= partner[p] < stop}
    keep = [p for p in range(n) if p not in internal]
    renumber = {p: k for k, p in enumerate(keep)}
    pruned_arcs = tuple((renumber[i], renumber[j]) for i, j in arcs
                        if i not in internal and j not in internal)
    pruned = DiskDiagram(d.graph, tuple(boundary[p] for p in keep), pruned_arcs, d.basepoint)
    b_prime = Word(d.graph, boundary[start:stop])
    b_second = Word(d.graph, [boundary[p] for p in range(start, stop) if p not in internal])
    return CombResult(combed, b_prime, pruned, b_second, start, stop, swaps)


def is_combed(d: DiskDiagram, start: int, stop: int) -> bool:
    return not _b_crossings(d.partner, start, stop)


def label_read(d: DiskDiagram, start_gap: int, stop_gap: int) -> Word:
    """Labels of the arcs separating boundary gaps ``start_gap`` and ``stop_gap``.

    Gap ``k`` sits just before position ``k``.  The read word lists, in
    boundary order, the letters at the inner endpoints of arcs with exactly
    one endpoint between the gaps; it equals ``boundary[start_gap:stop_gap]``
    in the group.
    """
    n = len(d.boundary)
    if not 0 <= start_gap <= stop_gap <= n:
        raise DiagramError("gaps out of range")
    partner = d.partner
    inside = range(start_gap, stop_gap)
    return Word(d.graph, [d.boundary[p] for p in inside if not start_gap <= partner[p] < stop_gap])


# -- reducing diagrams ------------------------------------------------------


@dataclass(frozen=True)
class ReducingDiagram:
    """Diagram with boundary ``h * w^-1``; ``split`` = len(h)."""

    diagram: DiskDiagram
    split: int

    @property
    def graph(self):
        return self.diagram.graph

    @property
    def h(self) -> Word:
        return Word(self.graph, self.diagram.boundary[:self.split])

    @property
    def w(self) -> Word:
        return Word(self.graph, self.diagram.boundary[self.split:]).inverse()

    @property
    def contributing(self) -> tuple:
        partner = self.diagram.partner
        return tuple(p for p in range(self.split) if partner[p] >= self.split)

    @property
    def noncontributing(self) -> tuple:
        partner = self.diagram.partner
        return tuple(p for p in range(self.split) if partner[p] < self.split)

    def noncontributing_arcs(self) -> list:
        return [a for a in self.diagram.arcs if a[1] < self.split]

    def contributing_arcs(self) -> list:
        return [a for a in self.diagram.arcs if a[0] < self.split <= a[1]]

    def inverse(self) -> "ReducingDiagram":
        """The mirrored, inversely labelled diagram reducing h^-1 to w^-1."""
        n = self.split
        m = len(self.diagram.boundary) - n

        def move(p):
            return n - 1 - p if p < n else n + m - 1 - (p - n)

        b = self.diagram.boundary
        new = [None] * (n + m)
        for p, x in enumerate(b):
            new[move(p)] = x.inverse()
        arcs = tuple((move(i), move(j)) for i, j in self.diagram.arcs)
        return ReducingDiagram(DiskDiagram(self.graph, tuple(new), arcs), n)

    def validate(self) -> ValidationReport:
        report = validate(self.diagram)
        for i, j in self.diagram.arcs:
            if i >= self.split:
                report.violations.append(f"arc ({i}, {j}) has both ends on the w-subarc")
        return report

    def to_json(self) -> dict:
        return self.diagram.to_json(split=self.split)


def reducing_diagram(h: Word, combed: bool = False) -> ReducingDiagram:
    """Reducing diagram for ``h`` built from the reduction trace.

    Surviving letters are joined to their copies on the w-subarc; these
    arcs are pairwise nested, so the w-subarc is always combed.  With
    ``combed=True`` the h-subarc is combed as well (this may reorder h).
    """
    w, trace = reduce(h)
    n, m = len(h), len(w)
    boundary = h.letters + w.inverse().letters
    arcs = list(trace.pairs)
    for k, p in enumerate(trace.survivors):
        arcs.append((p, n + m - 1 - k))
    rd = ReducingDiagram(DiskDiagram(h.graph, boundary, tuple(arcs)), n)
    if combed:
        res = comb(rd.diagram, 0, n)
        rd = ReducingDiagram(res.combed, n)
    return rd


# -- cancellation partitions and patterns -----------------------------------

_PARTITION_KEYS = ("L+", "L-", "R+", "R-", "I+", "I-", "N+", "N-")


@dataclass(frozen=True)
class CancellationPartition:
    vertex: int
    sets: dict

    def __getitem__(self, key: str) -> frozenset:
        return self.sets[key]

    def cardinalities(self) -> dict:
        return {k: len(v) for k, v in self.sets.items()}

    def same_as(self, other: "CancellationPartition") -> bool:
        return self.cardinalities() == other.cardinalities()


def _check_sub(rd: ReducingDiagram, start: int, stop: int):
    if not 0 <= start <= stop <= rd.split:
        raise DiagramError(f"[{start}, {stop}) is not inside the h-subarc")


def cancellation_partition(rd: ReducingDiagram, start: int, stop: int, v) -> CancellationPartition:
    """Sort the v^{+-1} letters of ``h[start:stop]`` by where their arcs go."""
    _check_sub(rd, start, stop)
    vertex = rd.graph.index(v)
    partner = rd.diagram.partner
    sets = {k: set() for k in _PARTITION_KEYS}
    for p in range(start, stop):
        x = rd.diagram.boundary[p]
        if x.vertex != vertex:
            continue
        q = partner[p]
        if q >= rd.split:
            side = "N"
        elif q < start:
            side = "L"
        elif q >= stop:
            side = "R"
        else:
            side = "I"
        sets[side + ("+" if x.sign > 0 else "-")].add(p)
    return CancellationPartition(vertex, {k: frozenset(s) for k, s in sets.items()})


@dataclass(frozen=True)
class CancellationPattern:
    """Canonical encoding of the region between the cuts iota and tau.

    ``events`` walks the region boundary from the iota end of the top arc:
    the top (letters of the subword), tau, the bottom (contributed letters,
    boundary order) and back up iota.  Each event is
    ``(side, vertex, sign, arc_id)`` with arc ids numbered by first
    appearance; ``crossings`` lists arc-id pairs crossing inside the region.
    """

    events: tuple
    crossings: tuple

    @classmethod
    def from_events(cls, events) -> "CancellationPattern":
        ids: dict = {}
        renamed = []
        for side, vertex, sign, arc in events:
            ids.setdefault(arc, len(ids))
            renamed.append((side, vertex, sign, ids[arc]))
        where: dict = {}
        for pos, ev in enumerate(renamed):
            where.setdefault(ev[3], []).append(pos)
        chords = sorted((a, tuple(p)) for a, p in where.items() if len(p) == 2)
        crossings = tuple(sorted(
            (a, b) for n, (a, pa) in enumerate(chords) for b, pb in chords[n + 1:]
            if chords_cross(pa, pb)))
        return cls(tuple(renamed), crossings)

    def mirror_inverse(self) -> "CancellationPattern":
        """Pattern of the inverse subword in the mirrored diagram."""
        groups: dict = {"top": [], "tau": [], "bottom": [], "iota": []}
        for ev in self.events:
            groups[ev[0]].append(ev)

        def flip(evs, side=None):
            return [(side or s, v, -sign, a) for s, v, sign, a in reversed(evs)]

        events = (flip(groups["top"]) + flip(groups["iota"], "tau")
                  + flip(groups["bottom"]) + flip(groups["tau"], "iota"))
        return CancellationPattern.from_events(events)


def pattern_equal(p: CancellationPattern, q: CancellationPattern) -> bool:
    return p == q


def cancellation_pattern(rd: ReducingDiagram, start: int, stop: int) -> CancellationPattern:
    """Pattern of ``h[start:stop]``; needs the w-subarc combed."""
    _check_sub(rd, start, stop)
    contributing = rd.contributing_arcs()
    if rd.diagram.crossings(tuple(contributing)):
        raise DiagramError("w-subarc is not combed: contributing arcs cross")
    b = rd.diagram.boundary
    partner = rd.diagram.partner
    top, left, right, bottom = [], [], [], []
    for p in range(start, stop):
        x = b[p]
        top.append(("top", x.vertex, x.sign, min(p, partner[p])))
        q = partner[p]
        if q >= rd.split:
            bottom.append((q, ("bottom", b[q].vertex, b[q].sign, p)))
        elif q < start:
            left.append(p)
        elif q >= stop:
            right.append(p)
    tau = [("tau", b[p].vertex, b[p].sign, min(p, partner[p])) for p in sorted(right, reverse=True)]
    iota = [("iota", b[p].vertex, b[p].sign, min(p, partner[p])) for p in sorted(left, reverse=True)]
    events = top + tau + [ev for _, ev in sorted(bottom)] + iota
    return CancellationPattern.from_events(events)


# -- rendering --------------------------------------------------------------


def to_dot(d: DiskDiagram) -> str:
    g = d.graph
    lines = ["graph diagram {", "  layout=circo;"]
    for p, x in enumerate(d.boundary):
        lines.append(f'  p{p} [label="{p}:{_fmt(g, x)}"];')
    n = len(d.boundary)
    for p in range(n):
        lines.append(f"  p{p} -- p{(p + 1) % n} [style=dotted];")
    for i, j in d.arcs:
        lines.append(f'  p{i} -- p{j} [label="{g.name(d.label((i, j)))}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_svg(d: DiskDiagram, size: int = 400) -> str:
    import math

    g = d.graph
    n = max(len(d.boundary), 1)
    c = size / 2
    r = size * 0.4

    def point(p, rad=r):
        t = 2 * math.pi * (p + 0.5) / n - math.pi / 2
        return c + rad * math.cos(t), c + rad * math.sin(t)

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
           f'viewBox="0 0 {size} {size}">',
           '<defs><marker id="arrow" markerWidth="8" markerHeight="8" refX="4" refY="4" '
           'orient="auto"><path d="M0,0 L8,4 L0,8 z"/></marker></defs>',
           f'<circle cx="{c}" cy="{c}" r="{r}" fill="none" stroke="black"/>']
    for i, j in d.arcs:
        # arrow points toward the endpoint whose letter is positive
        src, dst = (j, i) if d.boundary[i].sign > 0 else (i, j)
        (x1, y1), (x2, y2) = point(src), point(dst)
        mx, my = (x1 + x2) / 2, (y1 + y2) / 2
        out.append(f'<line x1="{x1:.1f}" y1="{y1:.1f}" x2="{x2:.1f}" y2="{y2:.1f}" '
                   f'stroke="steelblue" marker-end="url(#arrow)"/>')
        out.append(f'<text x="{mx:.1f}" y="{my:.1f}" font-size="11">{g.name(d.label((i, j)))}</text>')
    for p, x in enumerate(d.boundary):
        tx, ty = point(p, r + 14)
        out.append(f'<text x="{tx:.1f}" y="{ty:.1f}" font-size="11" text-anchor="middle">'
                   f'{_fmt(g, x)}</text>')
    bx, by = point(-0.5, r)
    out.append(f'<circle cx="{bx:.1f}" cy="{by:.1f}" r="3" fill="red"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
