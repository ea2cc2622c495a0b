"""End-to-end pipeline: parse -> tag -> feature spaces -> memberships ->
relations -> reports. All outputs are deterministic for a fixed config."""

from __future__ import annotations

import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import corpus, features, fuzzy, ranking, relations
from .errors import ConfigError, DataError
from .tagging import load_lexicon

log = logging.getLogger(__name__)

REPORT_FILES = (
    "M1.csv",
    "M2.csv",
    "relations.csv",
    "relations.json",
    "influence.csv",
    "hierarchy.json",
    "summary.json",
)


@dataclass
class PipelineConfig:
    transcripts: list[str] = field(default_factory=list)
    seeds: str = ""
    gold_labels: str | None = None
    gold_hierarchy: str | None = None
    lexicon: str | None = None
    format: str = corpus.SPEAKER_COLON
    delimiter: str = corpus.DELIM_BLANK
    d_mode: str = features.D_NORMALIZED
    d_scale: float = 15.0
    min_count: int = features.DEFAULT_MIN_COUNT
    lam: float = 0.5
    w1: float = 1.0
    w2: float = 0.5
    weights: list[float] = field(default_factory=lambda: [1.0] * 6)
    top_coverage: float = 0.9
    out: str = "out"
    rng_seed: int = 0
    jobs: int = 1

    def validate(self) -> None:
        if not self.transcripts:
            raise ConfigError("at least one transcript path is required")
        if not self.seeds:
            raise ConfigError("a seed-labels path is required")
        if not 0.0 <= self.lam <= 1.0:
            raise ConfigError(f"lambda must be in [0, 1], got {self.lam}")
        if self.w1 < 0 or self.w2 < 0:
            raise ConfigError("relation weights must be non-negative")
        if not 0.0 < self.top_coverage <= 1.0:
            raise ConfigError("top_coverage must be in (0, 1]")
        if len(self.weights) != 6:
            raise ConfigError("hierarchy weights must have 6 entries")
        if self.jobs < 1:
            raise ConfigError("jobs must be >= 1")
        for p in [*self.transcripts, self.seeds, self.gold_labels, self.gold_hierarchy, self.lexicon]:
            if p and not Path(p).exists():
                raise ConfigError(f"path does not exist: {p}")


def load_config_file(path) -> dict[str, str]:
    """Plain ``key = value`` lines; '#' starts a comment."""
    values: dict[str, str] = {}
    for line_no, line in enumerate(Path(path).read_text().splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"config line {line_no}: expected 'key = value'")
        key, _, value = line.partition("=")
        values[key.strip().replace("-", "_")] = value.strip()
    return values


def load_seed_labels(path) -> dict[str, str]:
    """CSV of ``NAME,GANG|POLICE`` lines (INFORMANT allowed for gold files)."""
    labels: dict[str, str] = {}
    for line_no, line in enumerate(Path(path).read_text().splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        name, _, label = line.partition(",")
        name = corpus.normalize_name(name)
        label = label.strip().upper()
        if not name or label not in fuzzy.LABELS:
            raise DataError(f"labels file line {line_no}: expected NAME,GANG|POLICE|INFORMANT")
        labels[name] = label
    if not labels:
        raise DataError(f"no labels found in {path}")
    return labels


def merge_transcripts(parts: list[corpus.Transcript]) -> corpus.Transcript:
    if len(parts) == 1:
        return parts[0]
    convs: list[list[tuple[str, str]]] = []
    for t in parts:
        for s, e in t.conversations:
            convs.append([(u.speaker, u.text) for u in t.turns[s:e]])
    return corpus._build(convs)


def character_vectors(
    t: corpus.Transcript,
    seed_labels: dict[str, str],
    lexicon,
    min_count: int,
    d_mode: str,
    d_scale: float,
    pretagged: bool = False,
    jobs: int = 1,
):
    """Feature spaces plus per-character (a, b, d) vectors.

    Returns (fp, fg, stats, xs) where stats maps character -> gram Counter.
    """
    names = sorted(t.characters)

    def extract(c):
        return features.extract_character_features(t, c, lexicon, pretagged=pretagged)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            stats = dict(zip(names, pool.map(extract, names)))
    else:
        stats = {c: extract(c) for c in names}

    seeds_here = {c: lab for c, lab in seed_labels.items() if c in stats}
    if not seeds_here:
        raise DataError("no seed character appears in the transcript")
    f1p, f1g = features.build_seed_spaces(stats, seeds_here, min_count)
    fp, fg = features.orthogonalize(f1p, f1g)
    xs = {}
    for c in names:
        a, b = features.count_ab(stats[c], fp, fg)
        xs[c] = features.ab_vector(a, b, d_mode, d_scale)
    return fp, fg, stats, xs


@dataclass
class PipelineResult:
    transcript: corpus.Transcript
    m1: fuzzy.MembershipMatrix
    m2: fuzzy.MembershipMatrix
    hard: dict[str, fuzzy.HardLabel]
    relation_matrix: relations.RelationMatrix
    influence: ranking.InfluenceReport
    hierarchies: dict[str, ranking.Ranking]
    summary: dict


def _stage(name: str, fn):
    """Run one pipeline stage, prefixing data errors with the stage name."""
    try:
        return fn()
    except DataError as exc:
        raise DataError(f"stage {name}: {exc}") from exc


def run_pipeline(cfg: PipelineConfig) -> PipelineResult:
    cfg.validate()
    pretagged = cfg.format == corpus.PRETAGGED
    raw_parts = [Path(p).read_text() for p in cfg.transcripts]
    t = _stage("parse", lambda: merge_transcripts(
        [corpus.parse_transcript(raw, cfg.format, cfg.delimiter) for raw in raw_parts]
    ))
    seed_labels = _stage("seeds", lambda: load_seed_labels(cfg.seeds))
    lexicon = load_lexicon(cfg.lexicon)

    _, _, _, xs = _stage("features", lambda: character_vectors(
        t, seed_labels, lexicon, cfg.min_count, cfg.d_mode, cfg.d_scale,
        pretagged=pretagged, jobs=cfg.jobs,
    ))
    centers = fuzzy.GroupCenters.default(cfg.d_mode, cfg.d_scale)
    m1 = _stage("first_box", lambda: fuzzy.first_box(xs, centers))
    r = _stage("relations", lambda: relations.build_relation_matrix(t, cfg.w1, cfg.w2))
    m2 = _stage("second_box", lambda: fuzzy.second_box(m1, r, cfg.lam))
    hard = fuzzy.harden(m2)

    counts = corpus.comment_counts(t)
    label_map = {c: hard[c].label for c in hard}
    influence = ranking.influence_ranking(counts, label_map, cfg.top_coverage)

    lexicons = ranking.RankLexicons.load_default()
    groups: dict[str, list[str]] = {}
    for c, lab in sorted(label_map.items()):
        groups.setdefault(lab, []).append(c)
    hierarchies: dict[str, ranking.Ranking] = {}
    for lab, members in sorted(groups.items()):
        if len(members) < 2:
            log.warning("group %s has %d member(s); skipping hierarchy", lab, len(members))
            continue
        feats = {
            c: ranking.hierarchy_features(t, c, lexicons, lexicon, pretagged) for c in members
        }
        hierarchies[lab] = ranking.hierarchy_rank(lab, feats, cfg.weights)

    summary: dict = {
        "characters": len(t.characters),
        "turns": len(t.turns),
        "conversations": len(t.conversations),
        "influence_coverage": round(influence.coverage, 6),
        "config": {
            "d_mode": cfg.d_mode,
            "lambda": cfg.lam,
            "min_count": cfg.min_count,
            "w1": cfg.w1,
            "w2": cfg.w2,
            "top_coverage": cfg.top_coverage,
            "rng_seed": cfg.rng_seed,
        },
    }

    if cfg.gold_labels:
        gold = load_seed_labels(cfg.gold_labels)
        common = sorted(set(gold) & set(hard))
        if common:
            fuzzy_acc = fuzzy.accuracy(
                {c: hard[c] for c in common}, {c: gold[c] for c in common}
            )
            km = fuzzy.kmeans_baseline(xs, seed_labels, rng_seed=cfg.rng_seed)
            kmeans_acc = fuzzy.accuracy(
                {c: km[c] for c in common}, {c: gold[c] for c in common}
            )
            summary["accuracy"] = {
                "fuzzy": round(fuzzy_acc, 6),
                "kmeans": round(kmeans_acc, 6),
                "characters_scored": len(common),
            }

    if cfg.gold_hierarchy:
        gold_h = json.loads(Path(cfg.gold_hierarchy).read_text())
        errors = {}
        for lab, gold_order in sorted(gold_h.items()):
            if len(gold_order) < 2:
                continue
            feats = {
                c: ranking.hierarchy_features(t, c, lexicons, lexicon, pretagged)
                for c in gold_order
            }
            got = ranking.hierarchy_rank(lab, feats, cfg.weights)
            errors[lab] = round(
                ranking.ranking_error_by_name(gold_order, got.members), 6
            )
        summary["ranking_errors"] = errors

    result = PipelineResult(t, m1, m2, hard, r, influence, hierarchies, summary)
    _write_reports(cfg, result)
    return result


def _write_reports(cfg: PipelineConfig, res: PipelineResult) -> None:
    outdir = Path(cfg.out)
    outdir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    try:
        def write(name: str, text: str) -> None:
            path = outdir / name
            path.write_text(text)
            written.append(path)

        write("M1.csv", fuzzy.membership_csv(res.m1))
        write("M2.csv", fuzzy.membership_csv(res.m2))
        write("relations.csv", relations.to_csv(res.relation_matrix))
        write(
            "relations.json",
            json.dumps(relations.to_adjacency(res.relation_matrix), sort_keys=True, indent=2)
            + "\n",
        )
        write("influence.csv", ranking.influence_csv(res.influence))
        hier_doc = {
            lab: {"members": list(r.members), "scores": [round(s, 6) for s in r.scores]}
            for lab, r in res.hierarchies.items()
        }
        write("hierarchy.json", json.dumps(hier_doc, sort_keys=True, indent=2) + "\n")
        write("summary.json", json.dumps(res.summary, sort_keys=True, indent=2) + "\n")
    except Exception:
        for path in written:
            path.unlink(missing_ok=True)
        raise
