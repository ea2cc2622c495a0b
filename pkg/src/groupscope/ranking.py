"""Influence and hierarchy ranking.

Influence is comment volume: the report lists the smallest prefix of
characters (by descending count) covering a target fraction of all
comments. Hierarchy within a group scores six linguistic features per
member (coordination, questions, modal verbs, hedges, profanity, terms of
address), z-scores each within the group, and sorts by the weighted sum.
Ranking quality against a gold order uses the normalized squared rank
difference, which equals (1 - Spearman rho) / 2.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from importlib import resources
from typing import Sequence

import numpy as np

from .corpus import Transcript, tokenize
from .errors import DataError
from .tagging import PosTag, parse_pretagged, tag_turn

FEATURE_NAMES = (
    "coordination",
    "questions",
    "modal_verbs",
    "hedges",
    "profanity",
    "terms_of_address",
)

# function-word categories used for prompt/reply coordination
COORDINATION_CATEGORIES = (
    PosTag.DETERMINER,
    PosTag.PRONOUN,
    PosTag.PREPOSITION,
    PosTag.CONJUNCTION,
)


def load_term_file(path=None, name: str | None = None) -> frozenset[str]:
    """One term per line, '#' comments; lowercased."""
    if path is None:
        text = resources.files("groupscope.data").joinpath(name).read_text()
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    terms = set()
    for line in text.splitlines():
        line = line.strip().lower()
        if line and not line.startswith("#"):
            terms.add(line)
    return frozenset(terms)


@dataclass(frozen=True)
class RankLexicons:
    modals: frozenset[str]
    hedges: frozenset[str]
    profanity: frozenset[str]
    address_terms: frozenset[str]

    @classmethod
    def load_default(cls) -> "RankLexicons":
        return cls(
            modals=load_term_file(name="modals.txt"),
            hedges=load_term_file(name="hedges.txt"),
            profanity=load_term_file(name="profanity.txt"),
            address_terms=load_term_file(name="address_terms.txt"),
        )


@dataclass(frozen=True)
class HierarchyFeatures:
    coordination: float
    questions: int
    modal_verbs: int
    hedges: int
    profanity: int
    terms_of_address: int

    def as_vector(self) -> np.ndarray:
        return np.array([getattr(self, f) for f in FEATURE_NAMES], dtype=float)


@dataclass(frozen=True)
class InfluenceReport:
    entries: tuple[tuple[str, str, int], ...]  # (character, affiliation, count)
    coverage: float


@dataclass(frozen=True)
class Ranking:
    group: str
    members: tuple[str, ...]  # rank order, position 1 first
    scores: tuple[float, ...]


def _turn_tokens(text: str, pretagged: bool) -> list[str]:
    if pretagged:
        return [tok for tok, _ in parse_pretagged(text)]
    return tokenize(text)


def _turn_categories(text: str, lexicon, pretagged: bool) -> set[PosTag]:
    if pretagged:
        tags = {tag for _, tag in parse_pretagged(text)}
    else:
        tags = {tag for _, tag in tag_turn(tokenize(text), lexicon)}
    return tags & set(COORDINATION_CATEGORIES)


def hierarchy_features(
    t: Transcript,
    c: str,
    lexicons: RankLexicons,
    pos_lexicon: dict[str, PosTag] | None = None,
    pretagged: bool = False,
) -> HierarchyFeatures:
    """Six linguistic status markers for one character.

    Coordination is the mean, over adjacent turn pairs where c replies to
    someone else inside a conversation, of the fraction of the four
    function-word categories present in both the prompt and the reply.
    Characters with no replies get coordination 0.
    """
    if c not in t.characters:
        raise DataError(f"character {c!r} not present in transcript")
    pos_lexicon = pos_lexicon or {}
    questions = modals = hedges = profanity = address = 0
    coord_scores: list[float] = []
    for start, end in t.conversations:
        for pos in range(start, end):
            turn = t.turns[pos]
            if turn.speaker != c:
                continue
            tokens = _turn_tokens(turn.text, pretagged)
            if "?" in tokens:
                questions += 1
            for tok in tokens:
                if tok in lexicons.modals:
                    modals += 1
                if tok in lexicons.hedges:
                    hedges += 1
                if tok in lexicons.profanity:
                    profanity += 1
                if tok in lexicons.address_terms:
                    address += 1
            if pos > start and t.turns[pos - 1].speaker != c:
                prompt = _turn_categories(t.turns[pos - 1].text, pos_lexicon, pretagged)
                reply = _turn_categories(turn.text, pos_lexicon, pretagged)
                coord_scores.append(len(prompt & reply) / len(COORDINATION_CATEGORIES))
    coordination = float(np.mean(coord_scores)) if coord_scores else 0.0
    return HierarchyFeatures(coordination, questions, modals, hedges, profanity, address)


def influence_ranking(
    counts: dict[str, int],
    labels: dict[str, str] | None = None,
    top_coverage: float = 0.9,
) -> InfluenceReport:
    """Characters by descending comment count, truncated at the smallest
    prefix covering top_coverage of all comments."""
    if not counts:
        raise DataError("comment counts are empty")
    if not 0.0 < top_coverage <= 1.0:
        raise DataError(f"top_coverage must be in (0, 1], got {top_coverage}")
    labels = labels or {}
    ordered = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    total = sum(counts.values())
    entries: list[tuple[str, str, int]] = []
    cum = 0
    for name, n in ordered:
        entries.append((name, labels.get(name, "?"), n))
        cum += n
        if cum >= top_coverage * total:
            break
    return InfluenceReport(tuple(entries), coverage=cum / total if total else 1.0)


def hierarchy_rank(
    group: str,
    feats: dict[str, HierarchyFeatures],
    weights: Sequence[float] | None = None,
) -> Ranking:
    """Rank group members by the weighted sum of z-scored features.

    Features that are constant within the group get z-score 0. Ties break
    by name ascending.
    """
    if len(feats) < 2:
        raise DataError("hierarchy undefined for fewer than 2 members")
    w = np.ones(len(FEATURE_NAMES)) if weights is None else np.asarray(weights, dtype=float)
    if w.shape != (len(FEATURE_NAMES),):
        raise DataError(f"weights must have {len(FEATURE_NAMES)} entries")
    names = sorted(feats)
    mat = np.array([feats[n].as_vector() for n in names])
    mean = mat.mean(axis=0)
    std = mat.std(axis=0)
    std[std == 0] = 1.0  # constant feature contributes zero after centering
    z = (mat - mean) / std
    scores = z @ w
    order = sorted(range(len(names)), key=lambda i: (-scores[i], names[i]))
    return Ranking(
        group=group,
        members=tuple(names[i] for i in order),
        scores=tuple(float(scores[i]) for i in order),
    )


def positions(order: Sequence[str]) -> dict[str, int]:
    """Member -> 1-based rank position for a ranking order."""
    return {name: i + 1 for i, name in enumerate(order)}


def ranking_error(actual: Sequence[int], obtained: Sequence[int]) -> float:
    """Normalized squared rank difference in [0, 1].

    0 means identical rankings, 1 a full reversal. Equals
    (1 - Spearman rho) / 2 for tie-free rankings.
    """
    n = len(actual)
    if n != len(obtained):
        raise DataError("rankings must have equal length")
    if n <= 1:
        raise DataError("ranking error requires more than one member")
    expected = set(range(1, n + 1))
    if set(actual) != expected or set(obtained) != expected:
        raise DataError("rankings must be permutations of 1..n")
    sq = sum((r - e) ** 2 for r, e in zip(actual, obtained))
    return 3.0 * sq / (n**3 - n)


def ranking_error_by_name(gold_order: Sequence[str], obtained_order: Sequence[str]) -> float:
    """Ranking error between two orders of the same member set."""
    if set(gold_order) != set(obtained_order):
        raise DataError("rankings must cover the same members")
    gold_pos = positions(gold_order)
    got_pos = positions(obtained_order)
    members = sorted(gold_pos)
    return ranking_error(
        [gold_pos[m] for m in members],
        [got_pos[m] for m in members],
    )


def influence_csv(report: InfluenceReport) -> str:
    buf = io.StringIO()
    buf.write("member,affiliation,comments\n")
    for name, label, count in report.entries:
        buf.write(f"{name},{label},{count}\n")
    return buf.getvalue()
