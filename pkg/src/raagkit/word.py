"""Words in the vertex generators and their combinatorics.

A :class:`Word` is a plain sequence of signed letters; ``==`` on words is
letter identity, :func:`equal` is equality in the group.  Reduction deletes
pairs ``v ... v^-1`` whose intermediate letters all commute with ``v``;
every other operation is built on that and on the heap (partial order)
of a reduced word, whose linear extensions are exactly its spellings.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional

from .graph import DefiningGraph, Join

DEFAULT_SHUFFLE_CAP = 100_000
DEFAULT_STAR_CAP = 200_000


class Letter(NamedTuple):
    vertex: int
    sign: int

    def inverse(self) -> "Letter":
        return Letter(self.vertex, -self.sign)


class WordParseError(ValueError):
    pass


class ShuffleOverflow(RuntimeError):
    """The spelling enumeration hit its cap; ``partial`` holds what was found."""

    def __init__(self, cap: int, partial: list):
        self.cap = cap
        self.partial = partial
        super().__init__(f"more than {cap} spellings")


class Word:
    __slots__ = ("graph", "letters")

    def __init__(self, graph: DefiningGraph, letters: Iterable = ()):
        self.graph = graph
        self.letters = tuple(Letter(int(v), int(s)) for v, s in letters)
        for x in self.letters:
            if x.sign not in (1, -1):
                raise ValueError(f"bad sign {x.sign}")
            graph.index(x.vertex)

    @classmethod
    def _raw(cls, graph, letters) -> "Word":
        w = object.__new__(cls)
        w.graph = graph
        w.letters = tuple(letters)
        return w

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word._raw(self.graph, self.letters[item])
        return self.letters[item]

    def __eq__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return self.letters == other.letters and _same_graph(self, other)

    def __hash__(self):
        return hash(self.letters)

    def __lt__(self, other):
        return self.letters < other.letters

    def __mul__(self, other: "Word") -> "Word":
        _check_graphs(self, other)
        return Word._raw(self.graph, self.letters + other.letters)

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return self.inverse() ** -n
        return Word._raw(self.graph, self.letters * n)

    def inverse(self) -> "Word":
        return Word._raw(self.graph, tuple(x.inverse() for x in reversed(self.letters)))

    def __invert__(self):
        return self.inverse()

    def __str__(self):
        return format_word(self)

    def __repr__(self):
        return f"Word({format_word(self)!r})"

    @property
    def vertices(self) -> frozenset:
        """Vertices occurring in this spelling (not reduced first)."""
        return frozenset(x.vertex for x in self.letters)

    def to_json(self) -> list:
        return [{"vertex": self.graph.name(x.vertex), "sign": x.sign} for x in self.letters]

    @classmethod
    def from_json(cls, graph: DefiningGraph, data) -> "Word":
        return cls(graph, [(graph.index(d["vertex"]), d["sign"]) for d in data])


def _same_graph(u: Word, v: Word) -> bool:
    return u.graph is v.graph or u.graph == v.graph


def _check_graphs(u: Word, v: Word):
    if not _same_graph(u, v):
        raise ValueError("words over different graphs")


def parse_word(graph: DefiningGraph, text: str) -> Word:
    """Parse whitespace-separated letters; a trailing ``'`` marks an inverse.

    ``1`` and the empty string denote the identity.
    """
    letters = []
    for tok in text.split():
        if tok == "1":
            continue
        sign = 1
        name = tok
        while name.endswith("'"):
            name = name[:-1]
            sign = -sign
        try:
            letters.append(Letter(graph.index(name), sign))
        except KeyError:
            raise WordParseError(f"unknown generator {name!r} in {text!r}") from None
    return Word._raw(graph, letters)


def format_word(w: Word) -> str:
    if not w.letters:
        return "1"
    return " ".join(w.graph.name(x.vertex) + ("'" if x.sign < 0 else "") for x in w.letters)


def identity(graph: DefiningGraph) -> Word:
    return Word._raw(graph, ())


def generator(graph: DefiningGraph, v, sign: int = 1) -> Word:
    return Word._raw(graph, (Letter(graph.index(v), sign),))


# -- reduction ----------------------------------------------------------


@dataclass(frozen=True)
class Trace:
    """Bookkeeping from :func:`reduce`.

    ``partner`` maps every deleted input position to the position it
    cancelled against; ``survivors`` lists surviving input positions in
    output order.
    """

    partner: dict
    survivors: tuple

    @property
    def position_map(self) -> dict:
        return {p: k for k, p in enumerate(self.survivors)}

    @property
    def pairs(self) -> list:
        return sorted((i, j) for i, j in self.partner.items() if i < j)


def reduce(w: Word) -> tuple:
    """Shortest spelling of ``w`` together with the cancellation trace.

    Letters are appended one at a time to a running reduced word; a new
    letter ``x`` cancels against the last occurrence of its vertex if every
    letter after that occurrence commutes with ``x``.
    """
    graph = w.graph
    adj = [graph.link(v) for v in range(len(graph))]
    kept: list = []
    partner: dict = {}
    for pos, x in enumerate(w.letters):
        v = x.vertex
        nbrs = adj[v]
        cancelled = False
        for k in range(len(kept) - 1, -1, -1):
            y, ypos = kept[k]
            if y.vertex == v:
                if y.sign != x.sign:
                    del kept[k]
                    partner[pos] = ypos
                    partner[ypos] = pos
                    cancelled = True
                break
            if y.vertex not in nbrs:
                break
        if not cancelled:
            kept.append((x, pos))
    out = Word._raw(graph, [x for x, _ in kept])
    return out, Trace(partner, tuple(p for _, p in kept))


def reduced(w: Word) -> Word:
    return reduce(w)[0]


def is_reduced(w: Word) -> bool:
    return len(reduced(w)) == len(w)


def _front_movable(graph: DefiningGraph, letters) -> list:
    """Indices of letters that commute past everything before them."""
    out = []
    for k, x in enumerate(letters):
        nbrs = graph.link(x.vertex)
        if all(y.vertex in nbrs for y in letters[:k]):
            out.append(k)
    return out


def _back_movable(graph: DefiningGraph, letters) -> list:
    n = len(letters)
    return [n - 1 - k for k in _front_movable(graph, letters[::-1])]


def normal_form(w: Word) -> Word:
    """Canonical spelling: reduce, then repeatedly pull the smallest
    front-movable letter (by vertex index, then sign) to the front."""
    graph = w.graph
    rest = list(reduced(w).letters)
    out = []
    while rest:
        best = min(_front_movable(graph, rest), key=lambda k: (rest[k].vertex, -rest[k].sign))
        out.append(rest.pop(best))
    return Word._raw(graph, out)


def equal(u: Word, v: Word) -> bool:
    _check_graphs(u, v)
    return normal_form(u).letters == normal_form(v).letters


def is_identity(w: Word) -> bool:
    return not reduced(w).letters


def support(w: Word) -> frozenset:
    return reduced(w).vertices


def length(w: Word) -> int:
    return len(reduced(w))


def distance(x: Word, y: Word) -> int:
    """Word-metric distance |x^-1 y| in the Cayley graph."""
    return length(x.inverse() * y)


def cyclic_reduce(w: Word) -> tuple:
    """``(core, conjugator)`` with ``w = conjugator^-1 * core * conjugator``.

    Strips pairs ``x ... x^-1`` where ``x`` can be moved to the front and
    ``x^-1`` to the back, until none remain.
    """
    graph = w.graph
    letters = list(reduced(w).letters)
    stripped = []
    while len(letters) >= 2:
        firsts = _front_movable(graph, letters)
        lasts = {letters[k]: k for k in _back_movable(graph, letters)}
        choice = None
        for k in sorted(firsts, key=lambda k: letters[k].vertex):
            j = lasts.get(letters[k].inverse())
            if j is not None and j != k:
                choice = (k, j)
                break
        if choice is None:
            break
        k, j = choice
        stripped.append(letters[k])
        for idx in sorted(choice, reverse=True):
            del letters[idx]
    core = Word._raw(graph, letters)
    conj = Word._raw(graph, stripped).inverse()
    return core, conj


def is_cyclically_reduced(w: Word) -> bool:
    core, _ = cyclic_reduce(w)
    return len(core) == len(w) and is_reduced(w)


# -- heaps and spellings ------------------------------------------------


def _predecessor_masks(graph: DefiningGraph, letters) -> list:
    """Bitmask, per position, of earlier positions it cannot commute past."""
    masks = []
    for k, x in enumerate(letters):
        nbrs = graph.link(x.vertex)
        m = 0
        for j in range(k):
            if letters[j].vertex not in nbrs:
                m |= 1 << j
        masks.append(m)
    return masks


def _linear_extensions(graph: DefiningGraph, letters, cap: int):
    n = len(letters)
    preds = _predecessor_masks(graph, letters)
    full = (1 << n) - 1
    found = []
    order: list = []

    def walk(done: int):
        if done == full:
            found.append(tuple(letters[k] for k in order))
            if len(found) > cap:
                raise ShuffleOverflow(cap, found[:cap])
            return
        for k in range(n):
            bit = 1 << k
            if not done & bit and preds[k] & done == preds[k]:
                order.append(k)
                walk(done | bit)
                order.pop()

    walk(0)
    return found


def shuffle_class(w: Word, cap: int = DEFAULT_SHUFFLE_CAP) -> list:
    """All spellings of the reduced word ``w`` reachable by swapping adjacent
    commuting letters, sorted.  Raises :class:`ShuffleOverflow` past ``cap``."""
    if not is_reduced(w):
        raise ValueError("shuffle_class needs a reduced word")
    try:
        spellings = _linear_extensions(w.graph, w.letters, cap)
    except ShuffleOverflow as exc:
        exc.partial = [Word._raw(w.graph, s) for s in sorted(exc.partial)]
        raise
    return [Word._raw(w.graph, s) for s in sorted(spellings)]


@dataclass(frozen=True)
class JoinSubword:
    length: int
    spelling: Optional[Word]
    start: int
    stop: int
    join: Optional[Join]
    exact: bool = True

    @property
    def subword(self) -> Optional[Word]:
        if self.spelling is None:
            return None
        return self.spelling[self.start:self.stop]


def _longest_join_window(graph: DefiningGraph, letters) -> tuple:
    counts: dict = {}
    best = (0, 0, 0)
    lo = 0
    for hi, x in enumerate(letters):
        counts[x.vertex] = counts.get(x.vertex, 0) + 1
        while graph.support_in_join(counts) is None:
            y = letters[lo].vertex
            counts[y] -= 1
            if not counts[y]:
                del counts[y]
            lo += 1
        if hi + 1 - lo > best[0]:
            best = (hi + 1 - lo, lo, hi + 1)
    return best


def max_join_subword(g: Word, cap: int = DEFAULT_SHUFFLE_CAP) -> JoinSubword:
    """Longest contiguous join subword over all reduced spellings of ``g``.

    On cap overflow the answer is a lower bound and ``exact`` is False.
    """
    graph = g.graph
    g = reduced(g)
    if not g.letters:
        return JoinSubword(0, g, 0, 0, Join(frozenset(), frozenset()))
    whole = graph.support_in_join(g.vertices)
    if whole is not None:
        nf = normal_form(g)
        return JoinSubword(len(g), nf, 0, len(g), whole)
    exact = True
    try:
        spellings = shuffle_class(g, cap)
    except ShuffleOverflow as exc:
        spellings, exact = exc.partial, False
    best = None
    for s in spellings:
        size, lo, hi = _longest_join_window(graph, s.letters)
        if best is None or size > best[0]:
            best = (size, s, lo, hi)
    size, s, lo, hi = best
    join = graph.support_in_join(s[lo:hi].vertices)
    return JoinSubword(size, s, lo, hi, join, exact)


# -- star length --------------------------------------------------------


@dataclass(frozen=True)
class StarLength:
    length: int
    exact: bool
    factors: tuple = field(default=())


def _star_closure(graph, letters, preds, done: int, allowed: frozenset) -> int:
    """Largest down-set extension of ``done`` using only letters in ``allowed``."""
    grown = done
    changed = True
    while changed:
        changed = False
        for k, x in enumerate(letters):
            bit = 1 << k
            if not grown & bit and x.vertex in allowed and preds[k] & grown == preds[k]:
                grown |= bit
                changed = True
    return grown


def _mask_word(graph, letters, mask_from: int, mask_to: int) -> Word:
    # positions in a down-set difference, kept in input order, spell a factor
    return Word._raw(graph, [x for k, x in enumerate(letters)
                             if mask_to >> k & 1 and not mask_from >> k & 1])


def star_length(g: Word, exact_cap: int = DEFAULT_STAR_CAP) -> StarLength:
    """Fewest star-supported factors whose product is ``g``.

    Breadth-first search over down-sets of the heap of ``g``: from a state,
    peel off the largest left divisor supported in one star (taking the
    largest is never worse, since the distance to the end is monotone in
    the down-set).  Over ``exact_cap`` states the greedy factorization is
    returned and flagged inexact.
    """
    graph = g.graph
    letters = reduced(g).letters
    n = len(letters)
    if not n:
        return StarLength(0, True, ())
    preds = _predecessor_masks(graph, letters)
    stars = []
    for v in range(len(graph)):
        st = graph.star(v)
        if not any(st < other for other in stars) and st not in stars:
            stars = [s for s in stars if not s < st] + [st]
    full = (1 << n) - 1

    parent = {0: None}
    frontier = [0]
    while frontier and full not in parent:
        nxt = []
        for state in frontier:
            for st in stars:
                new = _star_closure(graph, letters, preds, state, st)
                if new != state and new not in parent:
                    parent[new] = state
                    nxt.append(new)
        if len(parent) > exact_cap:
            return _greedy_star_length(graph, letters, preds, stars)
        frontier = nxt
    factors = []
    state = full
    while parent[state] is not None:
        prev = parent[state]
        factors.append(_mask_word(graph, letters, prev, state))
        state = prev
    factors.reverse()
    return StarLength(len(factors), True, tuple(factors))


def _greedy_star_length(graph, letters, preds, stars) -> StarLength:
    full = (1 << len(letters)) - 1
    state = 0
    factors = []
    while state != full:
        new = max((_star_closure(graph, letters, preds, state, st) for st in stars),
                  key=lambda m: bin(m).count("1"))
        factors.append(_mask_word(graph, letters, state, new))
        state = new
    return StarLength(len(factors), False, tuple(factors))


def greedy_star_length(g: Word) -> StarLength:
    graph = g.graph
    letters = reduced(g).letters
    if not letters:
        return StarLength(0, True, ())
    stars = list({graph.star(v) for v in range(len(graph))})
    stars.sort(key=sorted)
    return _greedy_star_length(graph, letters, _predecessor_masks(graph, letters), stars)
