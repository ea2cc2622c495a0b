"""Group feature spaces built from POS n-grams of seed-labeled characters.

Each character's tagged token stream (per turn, never crossing turn
boundaries) yields a multiset of POS bigrams and trigrams. Seed characters
of the two known groups induce initial feature sets, which are then reduced
to orthogonal (disjoint) sets. Per-character counts against the reduced
sets give the (a, b, d) vector fed to the fuzzy classifier.
"""

from __future__ import annotations

from collections import Counter
from typing import Iterable

import numpy as np

from .corpus import Transcript, tokenize
from .errors import DataError
from .tagging import PosTag, parse_pretagged, tag_turn

GANG = "GANG"
POLICE = "POLICE"

Gram = tuple[PosTag, ...]

D_NORMALIZED = "normalized"
D_RAW_SCALED = "raw_scaled"

DEFAULT_GRAM_SIZES = (2, 3)
DEFAULT_MIN_COUNT = 3


def character_tag_streams(
    t: Transcript,
    c: str,
    lexicon: dict[str, PosTag] | None = None,
    pretagged: bool = False,
) -> list[list[PosTag]]:
    """Per-turn POS tag sequences for one character, in source order."""
    if c not in t.characters:
        raise DataError(f"character {c!r} not present in transcript")
    streams: list[list[PosTag]] = []
    for turn in t.turns:
        if turn.speaker != c:
            continue
        if pretagged:
            streams.append([tag for _, tag in parse_pretagged(turn.text)])
        else:
            streams.append([tag for _, tag in tag_turn(tokenize(turn.text), lexicon or {})])
    return streams


def extract_character_features(
    t: Transcript,
    c: str,
    lexicon: dict[str, PosTag] | None = None,
    sizes: Iterable[int] = DEFAULT_GRAM_SIZES,
    pretagged: bool = False,
) -> Counter:
    """Multiset of POS n-grams over each of c's turns independently.

    Grams never cross turn boundaries; grams made of OTHER tags only are
    dropped.
    """
    counts: Counter = Counter()
    for tags in character_tag_streams(t, c, lexicon, pretagged):
        for n in sizes:
            for i in range(len(tags) - n + 1):
                gram: Gram = tuple(tags[i : i + n])
                if all(tag is PosTag.OTHER for tag in gram):
                    continue
                counts[gram] += 1
    return counts


def build_seed_spaces(
    seed_stats: dict[str, Counter],
    labels: dict[str, str],
    min_count: int = DEFAULT_MIN_COUNT,
) -> tuple[frozenset, frozenset]:
    """Initial (police, gang) feature sets: grams seen >= min_count times
    summed over each seed class. The two sets may overlap."""
    police_total: Counter = Counter()
    gang_total: Counter = Counter()
    for name, label in labels.items():
        if name not in seed_stats:
            raise DataError(f"seed character {name!r} has no feature stats")
        if label == POLICE:
            police_total.update(seed_stats[name])
        elif label == GANG:
            gang_total.update(seed_stats[name])
        else:
            raise DataError(f"seed label for {name!r} must be GANG or POLICE, got {label!r}")
    if not police_total:
        raise DataError("no POLICE seed characters (or none with features)")
    if not gang_total:
        raise DataError("no GANG seed characters (or none with features)")
    f1p = frozenset(g for g, n in police_total.items() if n >= min_count)
    f1g = frozenset(g for g, n in gang_total.items() if n >= min_count)
    return f1p, f1g


def orthogonalize(f1p: frozenset, f1g: frozenset) -> tuple[frozenset, frozenset]:
    """Reduce to disjoint feature sets by dropping everything shared."""
    fp = frozenset(f1p - f1g)
    fg = frozenset(f1g - f1p)
    if not fp or not fg:
        raise DataError(
            "groups linguistically indistinguishable under current config "
            "(orthogonalized feature set empty)"
        )
    return fp, fg


def count_ab(features: Counter, fp: frozenset, fg: frozenset) -> tuple[int, int]:
    """A = occurrences of gang features, B = occurrences of police features."""
    if fp & fg:
        raise DataError("feature sets must be disjoint; run orthogonalize first")
    a = sum(n for g, n in features.items() if g in fg)
    b = sum(n for g, n in features.items() if g in fp)
    return a, b


def ab_vector(
    a_count: int,
    b_count: int,
    d_mode: str = D_NORMALIZED,
    scale: float | None = None,
) -> np.ndarray:
    """The classifier input x = (a, b, d).

    a and b are the ratios of gang/police feature occurrences. d is A-B,
    either normalized by A+B (default, equals a-b) or divided by a fixed
    scale. Characters with no discriminative features map to the
    maximally uninformative point (0.5, 0.5, 0).
    """
    total = a_count + b_count
    if total == 0:
        return np.array([0.5, 0.5, 0.0])
    a = a_count / total
    b = b_count / total
    if d_mode == D_NORMALIZED:
        d = (a_count - b_count) / total
    elif d_mode == D_RAW_SCALED:
        if not scale:
            raise DataError("raw_scaled d_mode requires a nonzero scale")
        d = (a_count - b_count) / scale
    else:
        raise DataError(f"unknown d_mode {d_mode!r}")
    return np.array([a, b, d])
