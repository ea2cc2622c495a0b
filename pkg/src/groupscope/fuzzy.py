"""Fixed-center fuzzy membership classifier and the two-box pipeline.

Memberships are inverse-squared-distance ratios against three fixed group
centers (gang, police, informant); no iteration is needed because the
centers are known. The first box classifies each character's linguistic
vector; the second box blends each row with the relation-weighted average
of its interlocutors' rows and re-classifies against the simplex corners.
A seeded Lloyd k-means baseline is included for comparison.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np

from .errors import DataError, IsolatedCharacterError
from .relations import RelationMatrix, neighbor_profile

LABELS = ("GANG", "POLICE", "INFORMANT")
CENTER_EPS = 1e-9


@dataclass(frozen=True)
class GroupCenters:
    gang: tuple[float, float, float]
    police: tuple[float, float, float]
    informant: tuple[float, float, float]

    def as_array(self) -> np.ndarray:
        return np.array([self.gang, self.police, self.informant], dtype=float)

    @classmethod
    def default(cls, d_mode: str = "normalized", scale: float = 15.0) -> "GroupCenters":
        """Ideal points for the three groups in (a, b, d) space.

        With normalized d the centers are corpus-independent; with
        raw-scaled d the third coordinate is +/-scale for gang/police.
        """
        if d_mode == "normalized":
            return cls((1.0, 0.0, 1.0), (0.0, 1.0, -1.0), (0.5, 0.5, 0.0))
        if d_mode == "raw_scaled":
            # literal rule centers: d is A-B divided by the configured scale,
            # so the ideal gang/police points sit at d = +/- scale/scale = 1
            return cls((1.0, 0.0, 1.0), (0.0, 1.0, -1.0), (0.5, 0.5, 0.0))
        raise DataError(f"unknown d_mode {d_mode!r}")

    @classmethod
    def identity(cls) -> "GroupCenters":
        return cls((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0))


@dataclass
class MembershipMatrix:
    rows: dict[str, np.ndarray]
    stage: str  # "M1" or "M2"

    def row(self, c: str) -> np.ndarray:
        return self.rows[c]


@dataclass(frozen=True)
class HardLabel:
    label: str
    confidence: float


def membership(x, centers: GroupCenters, eps: float = CENTER_EPS) -> np.ndarray:
    """Degree of membership of x to each group, summing to 1.

    Inverse-squared-distance weighting with fuzzifier m=2. A point at a
    center gets the indicator vector for it (uniform over all coincident
    centers if several).
    """
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise DataError("membership input must be finite")
    f = centers.as_array()
    d2 = ((x - f) ** 2).sum(axis=1)
    near = d2 < eps * eps
    if near.any():
        mu = near.astype(float)
        return mu / mu.sum()
    inv = 1.0 / d2
    return inv / inv.sum()


def first_box(xs: dict[str, np.ndarray], centers: GroupCenters) -> MembershipMatrix:
    rows = {c: membership(xs[c], centers) for c in sorted(xs)}
    return MembershipMatrix(rows, stage="M1")


def second_box(m1: MembershipMatrix, r: RelationMatrix, lam: float = 0.5) -> MembershipMatrix:
    """Blend each row with its interlocutors' average row, then re-classify
    against the simplex corners. Isolated characters keep their own row."""
    if not 0.0 <= lam <= 1.0:
        raise DataError(f"lambda must be in [0, 1], got {lam}")
    identity = GroupCenters.identity()
    rows: dict[str, np.ndarray] = {}
    for c in sorted(m1.rows):
        own = m1.rows[c]
        try:
            prof = neighbor_profile(r, m1.rows, c)
            y = (1.0 - lam) * own + lam * prof
        except IsolatedCharacterError:
            y = own
        rows[c] = membership(y, identity)
    return MembershipMatrix(rows, stage="M2")


def harden(m: MembershipMatrix) -> dict[str, HardLabel]:
    """Argmax label per row; ties go to the earliest label in LABELS order."""
    out: dict[str, HardLabel] = {}
    for c in sorted(m.rows):
        row = np.asarray(m.rows[c])
        k = int(np.argmax(row))
        out[c] = HardLabel(LABELS[k], float(row[k]))
    return out


def kmeans_baseline(
    vectors: dict[str, np.ndarray],
    seed_labels: dict[str, str],
    informant_center=(0.5, 0.5, 0.0),
    max_iter: int = 100,
    rng_seed: int = 0,
) -> dict[str, HardLabel]:
    """Lloyd's algorithm with centroids seeded from the labeled characters.

    Centroid 0/1 start at the mean of the GANG/POLICE seed vectors and
    centroid 2 at the informant rule center, so each cluster carries the
    label of its initializer. rng_seed is accepted for API stability; the
    default seeded initialization is fully deterministic.
    """
    names = sorted(vectors)
    pts = np.array([vectors[c] for c in names], dtype=float)
    if len({tuple(np.round(p, 12)) for p in pts}) < 3:
        raise DataError("k-means needs at least 3 distinct vectors")
    seed_pts = {lab: [vectors[c] for c, l in seed_labels.items() if l == lab and c in vectors]
                for lab in ("GANG", "POLICE")}
    for lab in ("GANG", "POLICE"):
        if not seed_pts[lab]:
            raise DataError(f"k-means needs at least one {lab} seed vector")
    centroids = np.array(
        [
            np.mean(seed_pts["GANG"], axis=0),
            np.mean(seed_pts["POLICE"], axis=0),
            np.asarray(informant_center, dtype=float),
        ]
    )
    assign = np.full(len(names), -1)
    for _ in range(max_iter):
        d2 = ((pts[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)
        new_assign = d2.argmin(axis=1)
        if np.array_equal(new_assign, assign):
            break
        assign = new_assign
        for k in range(3):
            mask = assign == k
            if mask.any():
                centroids[k] = pts[mask].mean(axis=0)
    return {c: HardLabel(LABELS[k], 1.0) for c, k in zip(names, assign)}


def accuracy(predicted: dict, gold: dict) -> float:
    """Fraction of exact label matches; accepts HardLabel or plain strings."""
    if set(predicted) != set(gold):
        raise DataError("predicted and gold label maps must have the same keys")
    if not gold:
        raise DataError("cannot compute accuracy on empty label maps")

    def lab(v):
        return v.label if isinstance(v, HardLabel) else v

    hits = sum(1 for c in gold if lab(predicted[c]) == lab(gold[c]))
    return hits / len(gold)


def membership_csv(m: MembershipMatrix) -> str:
    """Character, three membership values, and the hardened label."""
    hard = harden(m)
    buf = io.StringIO()
    buf.write("character,mu_gang,mu_police,mu_informant,label\n")
    for c in sorted(m.rows):
        row = m.rows[c]
        buf.write(f"{c},{row[0]:.6f},{row[1]:.6f},{row[2]:.6f},{hard[c].label}\n")
    return buf.getvalue()
