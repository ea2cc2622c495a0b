"""Part-of-speech tagging: bundled lexicon lookup, suffix rules, defaults.

The tagger is deliberately simple (lexicon + a handful of suffix rules) so
the toolkit has no external NLP dependency. Users with a better tagger can
supply pre-tagged input as ``token_TAG`` streams instead.
"""

from __future__ import annotations

from enum import Enum
from importlib import resources

from .errors import DataError, ParseError


class PosTag(str, Enum):
    NOUN = "NOUN"
    PRONOUN = "PRONOUN"
    ADJECTIVE = "ADJECTIVE"
    DETERMINER = "DETERMINER"
    VERB = "VERB"
    AUX_VERB = "AUX_VERB"
    ADVERB = "ADVERB"
    PREPOSITION = "PREPOSITION"
    CONJUNCTION = "CONJUNCTION"
    INTERJECTION = "INTERJECTION"
    OTHER = "OTHER"

    def __repr__(self) -> str:  # compact gram display
        return self.value


# checked in order; rule applies when the token is longer than the suffix
SUFFIX_RULES: tuple[tuple[str, PosTag], ...] = (
    ("ly", PosTag.ADVERB),
    ("ing", PosTag.VERB),
    ("ed", PosTag.VERB),
    ("ness", PosTag.NOUN),
    ("tion", PosTag.NOUN),
)


def load_lexicon(path=None) -> dict[str, PosTag]:
    """Load a ``word<TAB>TAG`` lexicon; defaults to the bundled one."""
    if path is None:
        text = resources.files("groupscope.data").joinpath("pos_lexicon.txt").read_text()
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    lexicon: dict[str, PosTag] = {}
    for line_no, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t") if "\t" in line else line.split()
        if len(parts) != 2:
            raise DataError(f"lexicon line {line_no}: expected 'word TAG', got {line!r}")
        word, tag = parts
        try:
            lexicon[word.lower()] = PosTag[tag.upper()]
        except KeyError as exc:
            raise DataError(f"lexicon line {line_no}: unknown tag {tag!r}") from exc
    return lexicon


def tag_token(token: str, lexicon: dict[str, PosTag]) -> PosTag:
    tag = lexicon.get(token)
    if tag is not None:
        return tag
    if not any(ch.isalpha() for ch in token):
        return PosTag.OTHER
    for suffix, rule_tag in SUFFIX_RULES:
        if len(token) > len(suffix) + 1 and token.endswith(suffix):
            return rule_tag
    return PosTag.NOUN


def tag_turn(tokens: list[str], lexicon: dict[str, PosTag]) -> list[tuple[str, PosTag]]:
    """Tag every token; total and deterministic."""
    return [(tok, tag_token(tok, lexicon)) for tok in tokens]


def parse_pretagged(text: str) -> list[tuple[str, PosTag]]:
    """Parse a ``token_TAG token_TAG ...`` stream into (token, tag) pairs."""
    pairs: list[tuple[str, PosTag]] = []
    for item in text.split():
        token, sep, tag = item.rpartition("_")
        if not sep or not token:
            raise ParseError(f"pre-tagged item {item!r} is not 'token_TAG'")
        try:
            pairs.append((token.lower(), PosTag[tag.upper()]))
        except KeyError as exc:
            raise ParseError(f"unknown POS tag {tag!r} in {item!r}") from exc
    return pairs
