"""Loxodromic/elliptic classification.

An element is elliptic exactly when it is conjugate into a join subgroup,
which for a cyclically reduced element means its support lies in a join.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .graph import Join
from .word import Word, cyclic_reduce

LOXODROMIC = "loxodromic"
ELLIPTIC = "elliptic"


@dataclass(frozen=True)
class Verdict:
    kind: str
    witness: Optional[Join] = None
    core: Optional[Word] = None

    @property
    def loxodromic(self) -> bool:
        return self.kind == LOXODROMIC

    @property
    def elliptic(self) -> bool:
        return self.kind == ELLIPTIC

    def to_json(self, graph) -> dict:
        out = {"class": self.kind, "witness": None}
        if self.witness is not None:
            out["witness"] = {"left": graph.names(self.witness.left),
                              "right": graph.names(self.witness.right)}
        return out


def classify(g: Word) -> Verdict:
    core, _ = cyclic_reduce(g)
    join = g.graph.support_in_join(core.vertices)
    if join is None:
        return Verdict(LOXODROMIC, None, core)
    return Verdict(ELLIPTIC, join, core)


def is_conjugate_into_star(g: Word) -> Optional[int]:
    """Lowest-index v such that g is conjugate into A(st(v)), else None."""
    core, _ = cyclic_reduce(g)
    return g.graph.support_in_star(core.vertices)
