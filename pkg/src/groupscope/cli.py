"""Command-line interface.

Subcommands: analyze (full pipeline), synth (generate a corpus with
planted ground truth), relations (relation matrix only), rank (influence
and hierarchy from given labels), eval (score predictions against gold).
Exit codes: 0 ok, 1 usage, 2 data error, 3 internal error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import corpus, fuzzy, pipeline, ranking, relations, synth
from .errors import DataError
from .tagging import load_lexicon

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_INTERNAL = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); we reserve 2 for data errors
        raise _UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="groupscope", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="run the full pipeline and write reports")
    analyze.add_argument("--config", help="key = value config file; flags override it")
    analyze.add_argument("--transcript", action="append", default=None,
                         help="transcript path (repeatable)")
    analyze.add_argument("--seeds", help="seed labels CSV (NAME,GANG|POLICE)")
    analyze.add_argument("--gold-labels", help="gold labels CSV for accuracy scoring")
    analyze.add_argument("--gold-hierarchy", help="gold hierarchy JSON for ranking error")
    analyze.add_argument("--lexicon", help="POS lexicon file (word<TAB>TAG)")
    analyze.add_argument("--format", choices=corpus.FORMATS, default=None)
    analyze.add_argument("--delimiter", choices=(corpus.DELIM_BLANK, corpus.DELIM_SCENE),
                         default=None)
    analyze.add_argument("--d-mode", choices=("normalized", "raw_scaled"), default=None)
    analyze.add_argument("--d-scale", type=float, default=None)
    analyze.add_argument("--min-count", type=int, default=None)
    analyze.add_argument("--lambda", dest="lam", type=float, default=None)
    analyze.add_argument("--w1", type=float, default=None)
    analyze.add_argument("--w2", type=float, default=None)
    analyze.add_argument("--weights", help="6 comma-separated hierarchy feature weights")
    analyze.add_argument("--top-coverage", type=float, default=None)
    analyze.add_argument("--out", help="output directory")
    analyze.add_argument("--seed", dest="rng_seed", type=int, default=None)
    analyze.add_argument("--jobs", type=int, default=None)

    gen = sub.add_parser("synth", help="generate a synthetic corpus with ground truth")
    gen.add_argument("--chars-per-group", type=int, default=8)
    gen.add_argument("--conversations", type=int, default=60)
    gen.add_argument("--turns", type=int, default=14)
    gen.add_argument("--p-in", type=float, default=0.8)
    gen.add_argument("--overlap", type=float, default=0.2)
    gen.add_argument("--seed", dest="rng_seed", type=int, default=0)
    gen.add_argument("--out", required=True, help="output directory")

    rel = sub.add_parser("relations", help="build and export the relation matrix")
    rel.add_argument("--transcript", required=True)
    rel.add_argument("--format", choices=corpus.FORMATS, default=corpus.SPEAKER_COLON)
    rel.add_argument("--delimiter", choices=(corpus.DELIM_BLANK, corpus.DELIM_SCENE),
                     default=corpus.DELIM_BLANK)
    rel.add_argument("--w1", type=float, default=1.0)
    rel.add_argument("--w2", type=float, default=0.5)
    rel.add_argument("--out", required=True, help="output directory")

    rank = sub.add_parser("rank", help="influence and hierarchy reports from given labels")
    rank.add_argument("--transcript", required=True)
    rank.add_argument("--labels", required=True, help="labels CSV (NAME,LABEL)")
    rank.add_argument("--format", choices=corpus.FORMATS, default=corpus.SPEAKER_COLON)
    rank.add_argument("--top-coverage", type=float, default=0.9)
    rank.add_argument("--out", required=True, help="output directory")

    ev = sub.add_parser("eval", help="score predicted labels/rankings against gold")
    ev.add_argument("--pred-labels")
    ev.add_argument("--gold-labels")
    ev.add_argument("--pred-hierarchy", help="JSON: group -> ordered member list")
    ev.add_argument("--gold-hierarchy")
    return parser


def _analyze_config(args) -> pipeline.PipelineConfig:
    cfg = pipeline.PipelineConfig()
    if args.config:
        file_vals = pipeline.load_config_file(args.config)
        for key, raw in file_vals.items():
            if key == "transcript":
                cfg.transcripts = [p.strip() for p in raw.split(",") if p.strip()]
            elif key == "lambda":
                cfg.lam = float(raw)
            elif key == "weights":
                cfg.weights = [float(v) for v in raw.split(",")]
            elif key in ("d_scale", "w1", "w2", "top_coverage"):
                setattr(cfg, key, float(raw))
            elif key in ("min_count", "rng_seed", "jobs"):
                setattr(cfg, key, int(raw))
            elif key == "seed":
                cfg.rng_seed = int(raw)
            elif hasattr(cfg, key):
                setattr(cfg, key, raw)
            else:
                raise DataError(f"unknown config key {key!r}")
    if args.transcript:
        cfg.transcripts = args.transcript
    for attr in ("seeds", "gold_labels", "gold_hierarchy", "lexicon", "format",
                 "delimiter", "d_mode", "d_scale", "min_count", "lam", "w1", "w2",
                 "top_coverage", "out", "rng_seed", "jobs"):
        val = getattr(args, attr, None)
        if val is not None:
            setattr(cfg, attr, val)
    if args.weights:
        cfg.weights = [float(v) for v in args.weights.split(",")]
    return cfg


def _cmd_analyze(args) -> int:
    cfg = _analyze_config(args)
    res = pipeline.run_pipeline(cfg)
    print(f"analyzed {len(res.transcript.characters)} characters, "
          f"{len(res.transcript.turns)} turns; reports in {cfg.out}/")
    return EXIT_OK


def _cmd_synth(args) -> int:
    spec = synth.SynthSpec(
        chars_per_group=args.chars_per_group,
        conversations=args.conversations,
        turns_per_conversation=args.turns,
        p_in=args.p_in,
        overlap=args.overlap,
        rng_seed=args.rng_seed,
    )
    paths = synth.generate_synthetic_corpus(spec).write(args.out)
    print(f"wrote {', '.join(p.name for p in paths.values())} to {args.out}/")
    return EXIT_OK


def _cmd_relations(args) -> int:
    t = corpus.parse_transcript(Path(args.transcript).read_text(), args.format, args.delimiter)
    r = relations.build_relation_matrix(t, args.w1, args.w2)
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    (outdir / "relations.csv").write_text(relations.to_csv(r))
    (outdir / "relations.json").write_text(
        json.dumps(relations.to_adjacency(r), sort_keys=True, indent=2) + "\n"
    )
    print(f"wrote relations.csv, relations.json to {args.out}/")
    return EXIT_OK


def _cmd_rank(args) -> int:
    t = corpus.parse_transcript(Path(args.transcript).read_text(), args.format)
    labels = pipeline.load_seed_labels(args.labels)
    counts = corpus.comment_counts(t)
    report = ranking.influence_ranking(counts, labels, args.top_coverage)
    lexicons = ranking.RankLexicons.load_default()
    lexicon = load_lexicon()
    pretagged = args.format == corpus.PRETAGGED
    groups: dict[str, list[str]] = {}
    for c in sorted(t.characters):
        groups.setdefault(labels.get(c, "?"), []).append(c)
    hier = {}
    for lab, members in sorted(groups.items()):
        if lab == "?" or len(members) < 2:
            continue
        feats = {c: ranking.hierarchy_features(t, c, lexicons, lexicon, pretagged)
                 for c in members}
        r = ranking.hierarchy_rank(lab, feats)
        hier[lab] = {"members": list(r.members), "scores": [round(s, 6) for s in r.scores]}
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    (outdir / "influence.csv").write_text(ranking.influence_csv(report))
    (outdir / "hierarchy.json").write_text(json.dumps(hier, sort_keys=True, indent=2) + "\n")
    print(f"wrote influence.csv, hierarchy.json to {args.out}/")
    return EXIT_OK


def _cmd_eval(args) -> int:
    did_anything = False
    if args.pred_labels and args.gold_labels:
        pred = pipeline.load_seed_labels(args.pred_labels)
        gold = pipeline.load_seed_labels(args.gold_labels)
        common = sorted(set(pred) & set(gold))
        if not common:
            raise DataError("predicted and gold labels share no characters")
        acc = fuzzy.accuracy({c: pred[c] for c in common}, {c: gold[c] for c in common})
        print(f"label accuracy: {acc:.4f} over {len(common)} characters")
        did_anything = True
    if args.pred_hierarchy and args.gold_hierarchy:
        pred = json.loads(Path(args.pred_hierarchy).read_text())
        gold = json.loads(Path(args.gold_hierarchy).read_text())
        for lab in sorted(set(pred) & set(gold)):
            pred_order = pred[lab]["members"] if isinstance(pred[lab], dict) else pred[lab]
            gold_order = gold[lab]["members"] if isinstance(gold[lab], dict) else gold[lab]
            err = ranking.ranking_error_by_name(gold_order, pred_order)
            print(f"ranking error [{lab}]: {err:.4f}")
            did_anything = True
    if not did_anything:
        raise _UsageError("eval needs --pred-labels/--gold-labels and/or "
                          "--pred-hierarchy/--gold-hierarchy")
    return EXIT_OK


_COMMANDS = {
    "analyze": _cmd_analyze,
    "synth": _cmd_synth,
    "relations": _cmd_relations,
    "rank": _cmd_rank,
    "eval": _cmd_eval,
}


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DataError, FileNotFoundError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
