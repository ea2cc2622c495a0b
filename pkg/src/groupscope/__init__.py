"""Subgroup, influence, and hierarchy detection in written conversations."""

from .corpus import Transcript, Turn, comment_counts, parse_transcript, tokenize
from .errors import ConfigError, DataError, IsolatedCharacterError, ParseError
from .fuzzy import GroupCenters, HardLabel, MembershipMatrix, membership
from .ranking import InfluenceReport, Ranking, influence_ranking, ranking_error
from .relations import RelationMatrix, build_relation_matrix

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "DataError",
    "GroupCenters",
    "HardLabel",
    "InfluenceReport",
    "IsolatedCharacterError",
    "MembershipMatrix",
    "ParseError",
    "Ranking",
    "RelationMatrix",
    "Transcript",
    "Turn",
    "build_relation_matrix",
    "comment_counts",
    "influence_ranking",
    "membership",
    "parse_transcript",
    "ranking_error",
    "tokenize",
    "__version__",
]
