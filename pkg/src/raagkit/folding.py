"""Stallings folding in a free group.

Words are tuples of ``(generator, sign)`` pairs.  The folded core graph of
a finite set of words determines the subgroup they generate; its rank is
``E - V + 1`` and a spanning tree yields a free basis.
"""

from __future__ import annotations

from collections import deque


def free_reduce(word) -> tuple:
    out: list = []
    for g, s in word:
        if out and out[-1] == (g, -s):
            out.pop()
        else:
            out.append((g, s))
    return tuple(out)


def free_inverse(word) -> tuple:
    return tuple((g, -s) for g, s in reversed(word))


class FoldedGraph:
    """Folded graph of the subgroup generated by ``words``, based at vertex 0."""

    def __init__(self, words):
        self._parent = [0]
        edges = set()
        for w in words:
            w = free_reduce(w)
            if not w:
                continue
            cur = 0
            for k, (g, s) in enumerate(w):
                if k == len(w) - 1:
                    nxt = 0
                else:
                    nxt = len(self._parent)
                    self._parent.append(nxt)
                edges.add((cur, g, nxt) if s > 0 else (nxt, g, cur))
                cur = nxt
        self.edges = self._fold(edges)
        self._prune()

    def _find(self, x: int) -> int:
        while self._parent[x] != x:
            self._parent[x] = self._parent[self._parent[x]]
            x = self._parent[x]
        return x

    def _fold(self, edges: set) -> set:
        while True:
            edges = {(self._find(u), g, self._find(v)) for u, g, v in edges}
            seen: dict = {}
            merged = False
            for u, g, v in sorted(edges):
                for key, other in (((u, g, 1), v), ((v, g, -1), u)):
                    prev = seen.get(key)
                    if prev is None:
                        seen[key] = other
                    elif self._find(prev) != self._find(other):
                        a, b = sorted((self._find(prev), self._find(other)))
                        self._parent[b] = a
                        merged = True
            if not merged:
                return edges

    def _prune(self):
        """Drop hanging trees not containing the base vertex."""
        edges = set(self.edges)
        while True:
            degree: dict = {}
            for u, _, v in edges:
                degree[u] = degree.get(u, 0) + 1
                degree[v] = degree.get(v, 0) + 1
            leaves = {x for x, d in degree.items() if d == 1 and x != 0}
            if not leaves:
                break
            edges = {e for e in edges if e[0] not in leaves and e[2] not in leaves}
        self.edges = edges
        self.vertices = sorted({0} | {x for u, _, v in edges for x in (u, v)})

    @property
    def rank(self) -> int:
        if not self.edges:
            return 0
        return len(self.edges) - len(self.vertices) + 1

    def basis(self) -> list:
        """Free basis: one loop per edge outside a BFS spanning tree."""
        out_edges: dict = {x: [] for x in self.vertices}
        for u, g, v in sorted(self.edges):
            out_edges[u].append(((g, 1), v, (u, g, v)))
            out_edges[v].append(((g, -1), u, (u, g, v)))
        path = {0: ()}
        tree = set()
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for letter, y, e in out_edges[x]:
                if y not in path:
                    path[y] = path[x] + (letter,)
                    tree.add(e)
                    queue.append(y)
        basis = []
        for u, g, v in sorted(self.edges):
            if (u, g, v) in tree:
                continue
            basis.append(free_reduce(path[u] + ((g, 1),) + free_inverse(path[v])))
        basis.sort(key=lambda w: (len(w), w))
        return basis

    def accepts(self, word) -> bool:
        """Whether the reduced word labels a loop at the base vertex."""
        step: dict = {}
        for u, g, v in self.edges:
            step[(u, g, 1)] = v
            step[(v, g, -1)] = u
        cur = 0
        for g, s in free_reduce(word):
            cur = step.get((cur, g, s))
            if cur is None:
                return False
        return cur == 0
