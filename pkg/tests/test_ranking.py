import itertools

import numpy as np
import pytest
from scipy import stats

from groupscope.corpus import comment_counts, parse_transcript
from groupscope.errors import DataError
from groupscope.ranking import (
    FEATURE_NAMES,
    HierarchyFeatures,
    RankLexicons,
    hierarchy_features,
    hierarchy_rank,
    influence_csv,
    influence_ranking,
    positions,
    ranking_error,
    ranking_error_by_name,
)

from conftest import TABLE_I_DIALOGUE


def _feats(**kw):
    base = dict(
        coordination=0.0, questions=0, modal_verbs=0, hedges=0, profanity=0, terms_of_address=0
    )
    base.update(kw)
    return HierarchyFeatures(**base)


class TestInfluence:
    def test_four_person_dialogue_top_speakers(self):
        counts = comment_counts(parse_transcript(TABLE_I_DIALOGUE))
        report = influence_ranking(counts, top_coverage=0.5)
        assert report.entries[0][:1] == ("P1",)
        assert report.entries[0][2] == 4
        assert report.coverage >= 0.5

    def test_uniform_ten_needs_nine(self):
        counts = {f"C{i}": 10 for i in range(10)}
        report = influence_ranking(counts, top_coverage=0.9)
        assert len(report.entries) == 9
        assert report.coverage == pytest.approx(0.9)

    def test_affiliations_attached(self):
        report = influence_ranking({"A": 5, "B": 1}, labels={"A": "GANG"}, top_coverage=0.8)
        assert report.entries[0] == ("A", "GANG", 5)

    def test_sort_is_count_desc_then_name(self):
        report = influence_ranking({"B": 3, "A": 3, "C": 4}, top_coverage=1.0)
        assert [e[0] for e in report.entries] == ["C", "A", "B"]

    @pytest.mark.parametrize("seed", range(5))
    def test_minimal_prefix_brute_force(self, seed):
        rng = np.random.default_rng(seed)
        counts = {f"C{i}": int(rng.integers(1, 50)) for i in range(8)}
        cov = float(rng.uniform(0.3, 1.0))
        report = influence_ranking(counts, top_coverage=cov)
        ordered = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
        total = sum(counts.values())
        # smallest k with cumulative sum >= cov * total
        cum, k = 0, 0
        for _, n in ordered:
            cum += n
            k += 1
            if cum >= cov * total:
                break
        assert len(report.entries) == k

    def test_bad_inputs(self):
        with pytest.raises(DataError):
            influence_ranking({})
        with pytest.raises(DataError):
            influence_ranking({"A": 1}, top_coverage=0.0)

    def test_csv(self):
        report = influence_ranking({"A": 5, "B": 1}, top_coverage=1.0)
        assert influence_csv(report).splitlines() == [
            "member,affiliation,comments",
            "A,?,5",
            "B,?,1",
        ]


class TestHierarchyFeatures:
    def test_marker_counts(self, rank_lexicons, lexicon):
        t = parse_transcript("B: are you going\nA: would you maybe go ?")
        f = hierarchy_features(t, "A", rank_lexicons, pos_lexicon=lexicon)
        assert f.questions == 1
        assert f.modal_verbs >= 1  # "would"
        assert f.hedges >= 1  # "maybe"

    def test_profanity_and_address(self, rank_lexicons, lexicon):
        t = parse_transcript("A: damn it sir\nB: ok")
        f = hierarchy_features(t, "A", rank_lexicons, pos_lexicon=lexicon)
        assert f.profanity >= 1
        assert f.terms_of_address >= 1

    def test_coordination_counts_shared_function_categories(self, rank_lexicons, lexicon):
        # prompt has DETERMINER+PRONOUN ("you ... the"); reply repeats both
        t = parse_transcript("B: you want the money\nA: you know the deal")
        f = hierarchy_features(t, "A", rank_lexicons, pos_lexicon=lexicon)
        assert f.coordination == pytest.approx(2 / 4)

    def test_no_reply_means_zero_coordination(self, rank_lexicons, lexicon):
        t = parse_transcript("A: the first word\nB: sure")
        f = hierarchy_features(t, "A", rank_lexicons, pos_lexicon=lexicon)
        assert f.coordination == 0.0

    def test_coordination_is_mean_over_replies(self, rank_lexicons, lexicon):
        t = parse_transcript(
            "B: you want the money\nA: you know the deal\nB: fine\nA: good"
        )
        f = hierarchy_features(t, "A", rank_lexicons, pos_lexicon=lexicon)
        # two replies: one sharing 2 categories, one sharing none
        assert f.coordination == pytest.approx((2 / 4 + 0) / 2)

    def test_unknown_character(self, rank_lexicons):
        with pytest.raises(DataError):
            hierarchy_features(parse_transcript("A: x"), "Z", rank_lexicons)

    def test_vector_order_matches_feature_names(self):
        f = HierarchyFeatures(0.5, 1, 2, 3, 4, 5)
        assert list(f.as_vector()) == [0.5, 1, 2, 3, 4, 5]
        assert len(FEATURE_NAMES) == 6


class TestHierarchyRank:
    def test_dominant_member_ranks_first(self):
        feats = {
            "BOSS": _feats(coordination=0.1, modal_verbs=5, terms_of_address=0),
            "MID": _feats(coordination=0.4, questions=2, terms_of_address=2, hedges=1),
            "LOW": _feats(coordination=0.8, questions=5, terms_of_address=5, hedges=4),
        }
        # low markers load positively, so invert sign on subordinate features
        weights = [-1, -1, 1, -1, 1, -1]
        r = hierarchy_rank("G", feats, weights)
        assert r.members == ("BOSS", "MID", "LOW")
        assert r.scores[0] > r.scores[1] > r.scores[2]

    def test_constant_features_are_inert(self):
        feats = {
            "A": _feats(questions=3, profanity=7),
            "B": _feats(questions=1, profanity=7),
        }
        with_const = hierarchy_rank("G", feats)
        no_const = hierarchy_rank(
            "G", {n: _feats(questions=f.questions) for n, f in feats.items()}
        )
        assert with_const.members == no_const.members
        assert with_const.scores == pytest.approx(no_const.scores)

    def test_tie_breaks_by_name(self):
        feats = {"Z": _feats(questions=1), "A": _feats(questions=1)}
        r = hierarchy_rank("G", feats)
        assert r.members == ("A", "Z")

    def test_weight_scaling_preserves_order(self):
        rng = np.random.default_rng(9)
        feats = {
            f"C{i}": HierarchyFeatures(*rng.uniform(0, 5, 6)) for i in range(6)
        }
        w = list(rng.uniform(0.1, 2.0, 6))
        r1 = hierarchy_rank("G", feats, w)
        r2 = hierarchy_rank("G", feats, [3.0 * x for x in w])
        assert r1.members == r2.members

    def test_too_small_group(self):
        with pytest.raises(DataError):
            hierarchy_rank("G", {"A": _feats()})

    def test_bad_weight_length(self):
        feats = {"A": _feats(), "B": _feats(questions=1)}
        with pytest.raises(DataError):
            hierarchy_rank("G", feats, [1.0, 2.0])


class TestRankingError:
    def test_identical_is_zero(self):
        assert ranking_error([1, 2, 3, 4], [1, 2, 3, 4]) == 0.0

    def test_full_reversal_is_one(self):
        for n in (2, 3, 5, 8):
            ranks = list(range(1, n + 1))
            assert ranking_error(ranks, ranks[::-1]) == pytest.approx(1.0)

    def test_swap_first_two_of_three(self):
        assert ranking_error([1, 2, 3], [2, 1, 3]) == pytest.approx(0.25)

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_exhaustive_matches_spearman(self, n):
        base = list(range(1, n + 1))
        for perm in itertools.permutations(base):
            e = ranking_error(base, perm)
            rho = stats.pearsonr(base, perm).statistic if n > 1 else 1.0
            assert e == pytest.approx((1.0 - rho) / 2.0)
            assert 0.0 <= e <= 1.0

    def test_validation(self):
        with pytest.raises(DataError):
            ranking_error([1, 2], [1, 2, 3])
        with pytest.raises(DataError):
            ranking_error([1], [1])
        with pytest.raises(DataError):
            ranking_error([1, 1, 3], [1, 2, 3])

    def test_by_name(self):
        assert ranking_error_by_name(["A", "B", "C"], ["A", "B", "C"]) == 0.0
        assert ranking_error_by_name(["A", "B", "C"], ["C", "B", "A"]) == pytest.approx(1.0)
        with pytest.raises(DataError):
            ranking_error_by_name(["A", "B"], ["A", "C"])

    def test_positions(self):
        assert positions(["B", "A"]) == {"B": 1, "A": 2}


def test_default_lexicons_nonempty():
    lex = RankLexicons.load_default()
    for field in ("modals", "hedges", "profanity", "address_terms"):
        assert len(getattr(lex, field)) >= 5
