import pytest

from groupscope.ranking import RankLexicons
from groupscope.tagging import load_lexicon

# Dialogue order matching the four-person conversation used throughout:
# P1, P2, P3, P1, P3, P1, P4, P1
TABLE_I_DIALOGUE = "\n".join(
    [
        "P1: hey you come here",
        "P2: what do you want",
        "P3: he wants the money",
        "P1: you know the deal",
        "P3: maybe we should wait",
        "P1: no we move now",
        "P4: the boss said tomorrow",
        "P1: then we go tomorrow",
    ]
)

TABLE_I_ORDER = ["P1", "P2", "P3", "P1", "P3", "P1", "P4", "P1"]

# nonzero entries of the relation matrix for the dialogue above
TABLE_II_WEIGHTS = {
    ("P1", "P2"): 1.5,
    ("P1", "P3"): 3.5,
    ("P2", "P3"): 1.0,
    ("P3", "P4"): 0.5,
    ("P1", "P4"): 2.0,
}


@pytest.fixture(scope="session")
def lexicon():
    return load_lexicon()


@pytest.fixture(scope="session")
def rank_lexicons():
    return RankLexicons.load_default()
