"""Transcript parsing, conversation segmentation, and per-speaker bookkeeping.

Input is plain text where each dialogue line looks like ``NAME: utterance``.
Conversations are delimited either by blank lines (default) or by scene
marker lines like ``== SCENE 2 ==``. Lines without a colon (stage
directions, headers) are skipped with a warning because real screenplay
dumps are noisy.
"""

from __future__ import annotations

import json
import logging
import re
from collections import Counter
from dataclasses import dataclass

from .errors import ParseError

log = logging.getLogger(__name__)

SCENE_RE = re.compile(r"^==.*==\s*$")
# words (internal apostrophes kept) or single non-space punctuation marks
TOKEN_RE = re.compile(r"[a-z0-9]+(?:'[a-z0-9]+)*|[^\s]")

SPEAKER_COLON = "speaker_colon"
PRETAGGED = "pretagged"
FORMATS = (SPEAKER_COLON, PRETAGGED)

DELIM_BLANK = "blank"
DELIM_SCENE = "scene"


def normalize_name(raw: str) -> str:
    return raw.strip().upper()


def tokenize(text: str) -> list[str]:
    """Lowercased word tokens with punctuation split off as its own tokens."""
    return TOKEN_RE.findall(text.lower())


@dataclass(frozen=True)
class Turn:
    speaker: str
    text: str
    index: int
    conversation_id: int


@dataclass(frozen=True)
class Transcript:
    turns: tuple[Turn, ...]
    characters: frozenset[str]
    conversations: tuple[tuple[int, int], ...]

    def turns_of(self, speaker: str) -> list[Turn]:
        return [t for t in self.turns if t.speaker == speaker]

    def conversation_turns(self, conv_id: int) -> tuple[Turn, ...]:
        s, e = self.conversations[conv_id]
        return self.turns[s:e]


def _build(transcript_rows: list[list[tuple[str, str]]]) -> Transcript:
    turns: list[Turn] = []
    ranges: list[tuple[int, int]] = []
    for conv_id, rows in enumerate(transcript_rows):
        start = len(turns)
        for speaker, text in rows:
            turns.append(Turn(speaker, text, len(turns), conv_id))
        ranges.append((start, len(turns)))
    chars = frozenset(t.speaker for t in turns)
    return Transcript(tuple(turns), chars, tuple(ranges))


def parse_transcript(
    raw_text: str,
    format: str = SPEAKER_COLON,
    delimiter: str = DELIM_BLANK,
) -> Transcript:
    """Parse ``NAME: utterance`` text into an ordered, segmented Transcript.

    Consecutive lines by the same speaker (with no conversation delimiter
    between them) merge into a single turn. Raises ParseError on empty
    input or a line with an empty speaker name.
    """
    if format not in FORMATS:
        raise ValueError(f"unknown transcript format: {format!r}")
    if delimiter not in (DELIM_BLANK, DELIM_SCENE):
        raise ValueError(f"unknown delimiter mode: {delimiter!r}")
    if not raw_text.strip():
        raise ParseError("empty transcript")

    conversations: list[list[tuple[str, str]]] = []
    current: list[tuple[str, str]] = []

    def flush() -> None:
        nonlocal current
        if current:
            conversations.append(current)
            current = []

    for line_no, line in enumerate(raw_text.splitlines(), start=1):
        stripped = line.strip()
        if delimiter == DELIM_BLANK and not stripped:
            flush()
            continue
        if SCENE_RE.match(stripped):
            flush()
            continue
        if not stripped:
            continue
        if ":" not in stripped:
            log.warning("skipping non-dialogue line %d: %r", line_no, stripped)
            continue
        name, _, text = stripped.partition(":")
        speaker = normalize_name(name)
        if not speaker:
            raise ParseError("empty speaker name", line_no)
        text = text.strip()
        if current and current[-1][0] == speaker:
            prev_speaker, prev_text = current[-1]
            merged = f"{prev_text} {text}".strip()
            current[-1] = (prev_speaker, merged)
        else:
            current.append((speaker, text))
    flush()

    if not conversations:
        raise ParseError("no dialogue lines found")
    return _build(conversations)


def comment_counts(t: Transcript) -> dict[str, int]:
    """Turns spoken per character; values sum to len(t.turns)."""
    return dict(Counter(turn.speaker for turn in t.turns))


def to_canonical_json(t: Transcript) -> str:
    doc = {
        "characters": sorted(t.characters),
        "conversations": [[s, e] for s, e in t.conversations],
        "turns": [
            {"speaker": u.speaker, "text": u.text, "conversation_id": u.conversation_id}
            for u in t.turns
        ],
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def transcript_from_json(text: str) -> Transcript:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid transcript JSON: {exc}") from exc
    turns = tuple(
        Turn(u["speaker"], u["text"], i, u["conversation_id"])
        for i, u in enumerate(doc["turns"])
    )
    ranges = tuple((s, e) for s, e in doc["conversations"])
    t = Transcript(turns, frozenset(doc["characters"]), ranges)
    _validate(t)
    return t


def _validate(t: Transcript) -> None:
    pos = 0
    for s, e in t.conversations:
        if s != pos or e < s:
            raise ParseError("conversation ranges do not partition the turns")
        pos = e
    if pos != len(t.turns):
        raise ParseError("conversation ranges do not cover all turns")
    for turn in t.turns:
        if turn.speaker not in t.characters:
            raise ParseError(f"speaker {turn.speaker} missing from character set")
