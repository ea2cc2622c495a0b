"""Synthetic conversation corpora with planted ground truth.

Characters belong to one of three groups (gang, police, informant). Each
group emits utterances built from POS phrase templates: gang and police
have disjoint signature template pools, informants draw from both evenly,
and an overlap knob mixes the other group's pool in. Conversations prefer
within-group participants with probability p_in, and a planted three-level
hierarchy drives per-level rates of questions, modals, hedges, profanity,
address terms, and function-word echo phrases. All bookkeeping (labels,
hierarchy order, per-character turn and template counts) is emitted
alongside so pipeline output can be scored exactly.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import DataError
from .tagging import PosTag, load_lexicon

T = PosTag

GANG_POOL: tuple[tuple[PosTag, ...], ...] = (
    (T.PRONOUN, T.VERB),
    (T.PRONOUN, T.VERB, T.NOUN),
    (T.INTERJECTION, T.PRONOUN, T.VERB),
    (T.VERB, T.ADVERB),
)
POLICE_POOL: tuple[tuple[PosTag, ...], ...] = (
    (T.DETERMINER, T.NOUN),
    (T.DETERMINER, T.ADJECTIVE, T.NOUN),
    (T.NOUN, T.AUX_VERB),
    (T.PREPOSITION, T.DETERMINER, T.NOUN),
)
SHARED_POOL: tuple[tuple[PosTag, ...], ...] = (
    (T.PREPOSITION, T.PRONOUN),
    (T.ADJECTIVE, T.CONJUNCTION, T.ADJECTIVE),
    (T.AUX_VERB, T.ADVERB),
    (T.NOUN, T.CONJUNCTION, T.NOUN),
)
# contains all four coordination categories, no signature grams
ECHO_PHRASE: tuple[PosTag, ...] = (T.PREPOSITION, T.PRONOUN, T.CONJUNCTION, T.DETERMINER)

GROUPS = ("GANG", "POLICE", "INFORMANT")

# per hierarchy level (top, mid, low): expected marker insertions per turn
LEVEL_RATES = {
    "questions": (0.55, 0.25, 0.06),
    "modal_verbs": (1.2, 0.45, 0.10),
    "hedges": (1.0, 0.40, 0.08),
    "profanity": (0.9, 0.35, 0.06),
    "terms_of_address": (1.0, 0.40, 0.08),
    "echo": (0.9, 0.60, 0.25),
}

MARKER_WORDS = {
    "modal_verbs": ("would", "could", "might", "should", "must"),
    "hedges": ("maybe", "perhaps", "probably", "somewhat", "apparently"),
    "profanity": ("damn", "hell", "crap", "bastard", "piss"),
    "terms_of_address": ("sir", "boss", "chief", "buddy", "detective"),
}


@dataclass(frozen=True)
class SynthSpec:
    chars_per_group: int = 8
    conversations: int = 60
    turns_per_conversation: int = 14
    p_in: float = 0.8
    overlap: float = 0.2
    overlap_sd: float = 0.0  # per-character spread around overlap
    p_ambiguous: float = 0.0  # chance a non-seed member talks like an outsider
    ambiguous_overlap: tuple[float, float] = (0.28, 0.38)
    shared_rate: float = 0.25
    phrases_per_turn: int = 3
    rng_seed: int = 0

    def validate(self) -> None:
        if self.chars_per_group < 1:
            raise DataError("chars_per_group must be >= 1")
        if self.conversations < 1 or self.turns_per_conversation < 2:
            raise DataError("need at least 1 conversation of 2 turns")
        if not 0.0 <= self.p_in <= 1.0:
            raise DataError("p_in must be in [0, 1]")
        if not 0.0 <= self.overlap <= 1.0:
            raise DataError("overlap must be in [0, 1]")


@dataclass
class SynthCorpus:
    spec: SynthSpec
    transcript_text: str
    gold_labels: dict[str, str]
    gold_hierarchy: dict[str, list[str]]  # group -> member names, rank 1 first
    seed_labels: dict[str, str]
    comment_counts: dict[str, int]
    template_draws: dict[str, Counter] = field(repr=False)
    levels: dict[str, int] = field(default_factory=dict)

    def write(self, outdir) -> dict[str, Path]:
        outdir = Path(outdir)
        outdir.mkdir(parents=True, exist_ok=True)
        paths = {
            "transcript": outdir / "transcript.txt",
            "gold_labels": outdir / "gold_labels.csv",
            "gold_hierarchy": outdir / "gold_hierarchy.json",
            "seeds": outdir / "seeds.csv",
            "meta": outdir / "meta.json",
        }
        paths["transcript"].write_text(self.transcript_text)
        paths["gold_labels"].write_text(
            "".join(f"{c},{lab}\n" for c, lab in sorted(self.gold_labels.items()))
        )
        paths["gold_hierarchy"].write_text(
            json.dumps(self.gold_hierarchy, sort_keys=True, indent=2) + "\n"
        )
        paths["seeds"].write_text(
            "".join(f"{c},{lab}\n" for c, lab in sorted(self.seed_labels.items()))
        )
        meta = {
            "spec": {k: getattr(self.spec, k) for k in self.spec.__dataclass_fields__},
            "comment_counts": dict(sorted(self.comment_counts.items())),
            "levels": dict(sorted(self.levels.items())),
        }
        paths["meta"].write_text(json.dumps(meta, sort_keys=True, indent=2) + "\n")
        return paths


def level_sizes(n: int) -> tuple[int, int, int]:
    """Split n members into (top, mid, low) hierarchy levels."""
    top = max(1, n // 5)
    mid = max(1, (n - top) // 2) if n - top > 1 else 0
    low = n - top - mid
    return top, mid, low


def suggest_min_count(spec: SynthSpec) -> int:
    """Seed-space threshold between expected own- and cross-signature
    gram counts for this corpus size."""
    total_turns = spec.conversations * spec.turns_per_conversation
    n_chars = 3 * spec.chars_per_group
    seeds = min(4, spec.chars_per_group)
    phrases = total_turns / n_chars * seeds * spec.phrases_per_turn
    informative = phrases * (1.0 - spec.shared_rate)
    own = informative * (1.0 - spec.overlap) / len(GANG_POOL)
    cross = informative * spec.overlap / len(GANG_POOL)
    return max(3, int(round((own + cross) / 2.0)))


def _reverse_lexicon() -> dict[PosTag, list[str]]:
    rev: dict[PosTag, list[str]] = {}
    for word, tag in sorted(load_lexicon().items()):
        rev.setdefault(tag, []).append(word)
    return rev


class _Generator:
    def __init__(self, spec: SynthSpec):
        spec.validate()
        self.spec = spec
        self.rng = np.random.default_rng(spec.rng_seed)
        self.rev = _reverse_lexicon()
        width = len(str(3 * spec.chars_per_group))
        self.members = {
            g: [f"{g}{i + 1:0{width}d}" for i in range(spec.chars_per_group)] for g in GROUPS
        }
        self.group_of = {c: g for g, cs in self.members.items() for c in cs}
        self.levels: dict[str, int] = {}
        for g in GROUPS:
            top, mid, low = level_sizes(spec.chars_per_group)
            for i, c in enumerate(self.members[g]):
                self.levels[c] = 0 if i < top else (1 if i < top + mid else 2)
        # per-character cross-signature mixing; informants get a balance jitter
        n_seeds = min(4, spec.chars_per_group)
        self.char_overlap: dict[str, float] = {}
        for c in sorted(self.group_of):
            ov = float(np.clip(self.rng.normal(spec.overlap, spec.overlap_sd), 0.0, 0.49))
            is_seed = self.group_of[c] != "INFORMANT" and c in {
                m for g in ("GANG", "POLICE") for m in self.members[g][:n_seeds]
            }
            if not is_seed and self.rng.random() < spec.p_ambiguous:
                lo, hi = spec.ambiguous_overlap
                ov = float(self.rng.uniform(lo, hi))
            self.char_overlap[c] = ov
        self.char_balance = {
            c: float(np.clip(self.rng.normal(0.5, spec.overlap_sd / 2), 0.05, 0.95))
            for c in sorted(self.group_of)
        }
        self.usage = Counter({c: 0 for c in self.group_of})
        self.template_draws: dict[str, Counter] = {c: Counter() for c in self.group_of}
        self.comment_counts: Counter = Counter()

    def _word(self, tag: PosTag) -> str:
        words = self.rev[tag]
        return words[int(self.rng.integers(len(words)))]

    def _phrase(self, template: tuple[PosTag, ...]) -> str:
        return " ".join(self._word(tag) for tag in template)

    def _pick_template(self, speaker: str) -> tuple[PosTag, ...]:
        group = self.group_of[speaker]
        if self.rng.random() < self.spec.shared_rate:
            pool = SHARED_POOL
        elif group == "INFORMANT":
            pool = GANG_POOL if self.rng.random() < self.char_balance[speaker] else POLICE_POOL
        else:
            own, other = (GANG_POOL, POLICE_POOL) if group == "GANG" else (POLICE_POOL, GANG_POOL)
            pool = other if self.rng.random() < self.char_overlap[speaker] else own
        return pool[int(self.rng.integers(len(pool)))]

    def _utterance(self, speaker: str) -> str:
        group = self.group_of[speaker]
        level = self.levels[speaker]
        parts = []
        for _ in range(self.spec.phrases_per_turn):
            template = self._pick_template(speaker)
            self.template_draws[speaker][template] += 1
            parts.append(self._phrase(template))
        for feat, words in MARKER_WORDS.items():
            k = self.rng.poisson(LEVEL_RATES[feat][level])
            for _ in range(k):
                parts.append(words[int(self.rng.integers(len(words)))])
        if self.rng.random() < LEVEL_RATES["echo"][level]:
            parts.append(self._phrase(ECHO_PHRASE))
        text = " ".join(parts)
        ends_question = self.rng.random() < LEVEL_RATES["questions"][level]
        return text + (" ?" if ends_question else " .")

    def _pick_participants(self, home: str, k: int) -> list[str]:
        chosen: list[str] = []
        others = [g for g in GROUPS if g != home]
        for _ in range(k):
            if self.rng.random() < self.spec.p_in:
                pool_group = home
            else:
                pool_group = others[int(self.rng.integers(len(others)))]
            candidates = [c for c in self.members[pool_group] if c not in chosen]
            if not candidates:
                candidates = [c for c in self.group_of if c not in chosen]
            if not candidates:
                break
            # balance airtime: least-used first, random tie-break
            least = min(self.usage[c] for c in candidates)
            tied = [c for c in candidates if self.usage[c] == least]
            chosen.append(tied[int(self.rng.integers(len(tied)))])
        return chosen

    def generate(self) -> SynthCorpus:
        s = self.spec
        lines: list[str] = []
        for conv in range(s.conversations):
            home = GROUPS[conv % len(GROUPS)]
            k = int(self.rng.integers(3, 6)) if 3 * s.chars_per_group >= 3 else 2
            participants = self._pick_participants(home, max(2, min(k, 3 * s.chars_per_group)))
            if len(participants) < 2:
                participants = sorted(self.group_of)[:2]
            prev = None
            for _ in range(s.turns_per_conversation):
                options = [c for c in participants if c != prev]
                speaker = options[int(self.rng.integers(len(options)))]
                lines.append(f"{speaker}: {self._utterance(speaker)}")
                self.usage[speaker] += 1
                self.comment_counts[speaker] += 1
                prev = speaker
            lines.append("")
        gold_hierarchy = {
            g: sorted(self.members[g], key=lambda c: (self.levels[c], c)) for g in GROUPS
        }
        n_seeds = min(4, s.chars_per_group)
        seed_labels = {c: g for g in ("GANG", "POLICE") for c in self.members[g][:n_seeds]}
        return SynthCorpus(
            spec=s,
            transcript_text="\n".join(lines) + "\n",
            gold_labels=dict(self.group_of),
            gold_hierarchy=gold_hierarchy,
            seed_labels=seed_labels,
            comment_counts=dict(self.comment_counts),
            template_draws=self.template_draws,
            levels=dict(self.levels),
        )


def generate_synthetic_corpus(spec: SynthSpec) -> SynthCorpus:
    """Deterministic for a fixed spec (including rng_seed)."""
    return _Generator(spec).generate()
