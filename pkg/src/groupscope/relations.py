"""Symmetric relation matrix from turn proximity within conversations.

Adjacent turns by different speakers add w1 (default 1.0) to the pair's
weight; turns two apart add w2 (default 0.5). Windows never cross
conversation boundaries and self-pairs contribute nothing.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field

import numpy as np

from .corpus import Transcript
from .errors import DataError, IsolatedCharacterError


@dataclass(frozen=True)
class RelationMatrix:
    names: tuple[str, ...]
    weights: np.ndarray
    index: dict[str, int] = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "index", {n: i for i, n in enumerate(self.names)})

    @property
    def n(self) -> int:
        return len(self.names)

    def weight(self, a: str, b: str) -> float:
        return float(self.weights[self.index[a], self.index[b]])

    def row(self, a: str) -> np.ndarray:
        return self.weights[self.index[a]]


def build_relation_matrix(t: Transcript, w1: float = 1.0, w2: float = 0.5) -> RelationMatrix:
    if not t.turns:
        raise DataError("cannot build relations for an empty transcript")
    names = tuple(sorted(t.characters))
    index = {n: i for i, n in enumerate(names)}
    w = np.zeros((len(names), len(names)))
    for start, end in t.conversations:
        for pos in range(start, end):
            for dist, weight in ((1, w1), (2, w2)):
                other = pos + dist
                if other >= end:
                    continue
                a = index[t.turns[pos].speaker]
                b = index[t.turns[other].speaker]
                if a == b:
                    continue
                w[a, b] += weight
                w[b, a] += weight
    return RelationMatrix(names, w)


def neighbor_profile(r: RelationMatrix, memberships: dict[str, np.ndarray], c: str) -> np.ndarray:
    """Relation-weighted average membership row of c's interlocutors."""
    if c not in r.index:
        raise DataError(f"character {c!r} not in relation matrix")
    row = r.row(c)
    total = row.sum()
    if total <= 0:
        raise IsolatedCharacterError(c)
    profile = np.zeros(3)
    for k, name in enumerate(r.names):
        if row[k] > 0:
            profile += row[k] * np.asarray(memberships[name])
    return profile / total


def to_csv(r: RelationMatrix) -> str:
    buf = io.StringIO()
    buf.write("," + ",".join(r.names) + "\n")
    for i, name in enumerate(r.names):
        cells = ",".join(f"{r.weights[i, j]:.6f}" for j in range(r.n))
        buf.write(f"{name},{cells}\n")
    return buf.getvalue()


def to_adjacency(r: RelationMatrix) -> dict[str, dict[str, float]]:
    """JSON-friendly adjacency list of nonzero edges."""
    return {
        a: {
            b: float(r.weights[i, j])
            for j, b in enumerate(r.names)
            if r.weights[i, j] > 0
        }
        for i, a in enumerate(r.names)
    }
