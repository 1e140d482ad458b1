"""Defining graphs of right-angled Artin groups.

Vertices are stored in declaration order and addressed by index; every
query also accepts a vertex name.  Vertex sets are returned as frozensets
of indices, use :meth:`DefiningGraph.names` to print them.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Union

NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")

Vertex = Union[int, str]


class GraphParseError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class Join:
    """A join ``left * right``: every left vertex is adjacent to every right vertex.

    The empty join (both sides empty) is the witness reported for the empty
    vertex set.
    """

    left: frozenset
    right: frozenset

    @property
    def vertices(self) -> frozenset:
        return self.left | self.right


class DefiningGraph:
    """A finite simplicial graph. Immutable once built."""

    def __init__(self, vertices: Iterable[str], edges: Iterable[tuple] = ()):
        names = tuple(vertices)
        index = {}
        for i, name in enumerate(names):
            if name in index:
                raise ValueError(f"duplicate vertex {name!r}")
            index[name] = i
        self._names = names
        self._index = index
        adj = [set() for _ in names]
        for u, v in edges:
            i, j = self.index(u), self.index(v)
            if i == j:
                raise ValueError(f"self-loop at {names[i]!r}")
            adj[i].add(j)
            adj[j].add(i)
        self._adj = tuple(frozenset(s) for s in adj)
        self._join_cache: dict = {}

    # -- basic access ---------------------------------------------------

    @property
    def vertices(self) -> tuple:
        return self._names

    def __len__(self) -> int:
        return len(self._names)

    def __iter__(self):
        return iter(range(len(self._names)))

    def __eq__(self, other):
        if not isinstance(other, DefiningGraph):
            return NotImplemented
        return self._names == other._names and self._adj == other._adj

    def __hash__(self):
        return hash((self._names, self._adj))

    def __repr__(self):
        edges = " ".join(f"{self._names[i]}{self._names[j]}" for i, j in self.edges)
        return f"DefiningGraph({' '.join(self._names)} | {edges})"

    def index(self, v: Vertex) -> int:
        if isinstance(v, str):
            try:
                return self._index[v]
            except KeyError:
                raise KeyError(f"unknown vertex {v!r}") from None
        if not 0 <= v < len(self._names):
            raise KeyError(f"unknown vertex index {v}")
        return v

    def name(self, i: int) -> str:
        return self._names[i]

    def names(self, vertices: Iterable[int]) -> list:
        """Names of ``vertices`` in declaration order."""
        return [self._names[i] for i in sorted(vertices)]

    def vertex_set(self, vertices: Iterable[Vertex]) -> frozenset:
        return frozenset(self.index(v) for v in vertices)

    @property
    def edges(self) -> list:
        return [(i, j) for i in range(len(self)) for j in sorted(self._adj[i]) if i < j]

    def adjacent(self, u: Vertex, v: Vertex) -> bool:
        return self.index(v) in self._adj[self.index(u)]

    def link(self, v: Vertex) -> frozenset:
        return self._adj[self.index(v)]

    def star(self, v: Vertex) -> frozenset:
        i = self.index(v)
        return self._adj[i] | {i}

    def induced(self, vertices: Iterable[Vertex]) -> "DefiningGraph":
        keep = sorted(self.vertex_set(vertices))
        return DefiningGraph(
            [self._names[i] for i in keep],
            [(self._names[i], self._names[j]) for i, j in self.edges if i in keep and j in keep],
        )

    def opposite(self) -> "DefiningGraph":
        n = len(self)
        return DefiningGraph(
            self._names,
            [(self._names[i], self._names[j]) for i, j in combinations(range(n), 2)
             if j not in self._adj[i]],
        )

    # -- connectivity ---------------------------------------------------

    def components(self, vertices: Optional[Iterable[Vertex]] = None, opposite: bool = False) -> list:
        """Connected components of the induced (opposite) graph on ``vertices``."""
        todo = set(range(len(self))) if vertices is None else set(self.vertex_set(vertices))
        comps = []
        while todo:
            start = min(todo)
            todo.discard(start)
            comp, stack = {start}, [start]
            while stack:
                u = stack.pop()
                if opposite:
                    nbrs = [x for x in todo if x not in self._adj[u]]
                else:
                    nbrs = [x for x in self._adj[u] if x in todo]
                for x in nbrs:
                    todo.discard(x)
                    comp.add(x)
                    stack.append(x)
            comps.append(frozenset(comp))
        return comps

    def is_connected(self) -> bool:
        if not len(self):
            raise ValueError("empty graph")
        return len(self.components()) == 1

    def is_anti_connected(self) -> bool:
        if not len(self):
            raise ValueError("empty graph")
        return len(self.components(opposite=True)) == 1

    def is_join(self, vertices: Optional[Iterable[Vertex]] = None) -> Optional[Join]:
        """Witness partition if the induced subgraph on ``vertices`` is a join."""
        comps = self.components(vertices, opposite=True)
        if len(comps) < 2:
            return None
        left = comps[0]
        right = frozenset().union(*comps[1:])
        return Join(left, right)

    # -- joins and stars containing a vertex set ------------------------

    def support_in_join(self, support: Iterable[Vertex]) -> Optional[Join]:
        """A join subgraph of the graph containing ``support``, or None.

        A set S lies in a join J1*J2 exactly when S itself induces a join or
        some vertex outside S is adjacent to all of S (then S*{u} works).
        The witness is the smallest such join, ties broken by vertex order.
        """
        s = self.vertex_set(support)
        if s in self._join_cache:
            return self._join_cache[s]
        if not s:
            found = Join(frozenset(), frozenset())
        else:
            found = self.is_join(s)
            if found is None:
                common = frozenset.intersection(*(self._adj[i] for i in s)) - s
                if common:
                    found = self.is_join(s | {min(common)})
        self._join_cache[s] = found
        return found

    def support_in_star(self, support: Iterable[Vertex]) -> Optional[int]:
        """Lowest-index vertex v with ``support`` inside st(v), or None."""
        s = self.vertex_set(support)
        for v in range(len(self)):
            if s <= self.star(v):
                return v
        return None

    # -- serialization --------------------------------------------------

    def to_json(self) -> dict:
        return {
            "vertices": list(self._names),
            "edges": [[self._names[i], self._names[j]] for i, j in self.edges],
        }

    @classmethod
    def from_json(cls, data) -> "DefiningGraph":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["vertices"], [tuple(e) for e in data["edges"]])

    def to_text(self) -> str:
        lines = [f"vertex {n}" for n in self._names]
        lines += [f"edge {self._names[i]} {self._names[j]}" for i, j in self.edges]
        return "\n".join(lines) + "\n"


def parse_graph(text: str) -> DefiningGraph:
    """Parse the line-oriented graph format (``vertex``/``edge``/``#`` lines)."""
    names: list = []
    seen: set = set()
    edges: list = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind, args = parts[0], parts[1:]
        if kind == "vertex":
            if len(args) != 1:
                raise GraphParseError("expected 'vertex <name>'", lineno)
            name = args[0]
            if not NAME_RE.match(name):
                raise GraphParseError(f"bad vertex name {name!r}", lineno)
            if name in seen:
                raise GraphParseError(f"duplicate vertex {name!r}", lineno)
            seen.add(name)
            names.append(name)
        elif kind == "edge":
            if len(args) != 2:
                raise GraphParseError("expected 'edge <name> <name>'", lineno)
            u, v = args
            for x in (u, v):
                if x not in seen:
                    raise GraphParseError(f"edge names unknown vertex {x!r}", lineno)
            if u == v:
                raise GraphParseError(f"self-loop at {u!r}", lineno)
            edges.append((u, v))
        else:
            raise GraphParseError(f"unknown directive {kind!r}", lineno)
    return DefiningGraph(names, edges)


def path_graph(names: Iterable[str]) -> DefiningGraph:
    names = list(names)
    return DefiningGraph(names, list(zip(names, names[1:])))


def cycle_graph(names: Iterable[str]) -> DefiningGraph:
    names = list(names)
    return DefiningGraph(names, list(zip(names, names[1:] + names[:1])))


def complete_graph(names: Iterable[str]) -> DefiningGraph:
    names = list(names)
    return DefiningGraph(names, list(combinations(names, 2)))
