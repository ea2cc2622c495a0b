import json

import pytest

from groupscope import pipeline
from groupscope.corpus import parse_transcript
from groupscope.errors import ConfigError, DataError
from groupscope.synth import SynthSpec, generate_synthetic_corpus, suggest_min_count


@pytest.fixture(scope="module")
def corpus_dir(tmp_path_factory):
    outdir = tmp_path_factory.mktemp("synth")
    spec = SynthSpec(chars_per_group=4, conversations=40, turns_per_conversation=10,
                     overlap=0.08, rng_seed=4)
    c = generate_synthetic_corpus(spec)
    c.write(outdir)
    return outdir, spec


class TestConfig:
    def test_load_config_file(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text(
            "# comment\n"
            "transcript = a.txt, b.txt\n"
            "min-count = 5  # inline comment\n"
            "lambda = 0.7\n"
        )
        vals = pipeline.load_config_file(path)
        assert vals == {"transcript": "a.txt, b.txt", "min_count": "5", "lambda": "0.7"}

    def test_config_bad_line(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text("just words\n")
        with pytest.raises(ConfigError, match="line 1"):
            pipeline.load_config_file(path)

    def test_validate_rejects_missing_paths(self, tmp_path):
        cfg = pipeline.PipelineConfig(
            transcripts=[str(tmp_path / "missing.txt")], seeds=str(tmp_path / "s.csv")
        )
        with pytest.raises(ConfigError):
            cfg.validate()

    def test_validate_rejects_bad_lambda(self, tmp_path):
        t = tmp_path / "t.txt"
        s = tmp_path / "s.csv"
        t.write_text("A: hi")
        s.write_text("A,GANG\n")
        cfg = pipeline.PipelineConfig(transcripts=[str(t)], seeds=str(s), lam=2.0)
        with pytest.raises(ConfigError):
            cfg.validate()


class TestSeedLabels:
    def test_load(self, tmp_path):
        path = tmp_path / "seeds.csv"
        path.write_text("# seeds\n bob , gang\nEVE,POLICE\n")
        assert pipeline.load_seed_labels(path) == {"BOB": "GANG", "EVE": "POLICE"}

    def test_bad_label(self, tmp_path):
        path = tmp_path / "seeds.csv"
        path.write_text("BOB,WIZARD\n")
        with pytest.raises(DataError, match="line 1"):
            pipeline.load_seed_labels(path)


def test_merge_transcripts_keeps_conversation_boundaries():
    a = parse_transcript("A: one\nB: two")
    b = parse_transcript("C: three\n\nA: four")
    merged = pipeline.merge_transcripts([a, b])
    assert len(merged.conversations) == 3
    assert merged.characters == {"A", "B", "C"}
    assert [u.speaker for u in merged.turns] == ["A", "B", "C", "A"]


class TestRunPipeline:
    def test_end_to_end_summary(self, corpus_dir, tmp_path):
        outdir, spec = corpus_dir
        cfg = pipeline.PipelineConfig(
            transcripts=[str(outdir / "transcript.txt")],
            seeds=str(outdir / "seeds.csv"),
            gold_labels=str(outdir / "gold_labels.csv"),
            gold_hierarchy=str(outdir / "gold_hierarchy.json"),
            min_count=suggest_min_count(spec),
            out=str(tmp_path / "reports"),
        )
        res = pipeline.run_pipeline(cfg)
        assert set(res.m1.rows) == res.transcript.characters
        assert set(res.hard) == res.transcript.characters
        assert res.summary["characters"] == 12
        assert 0.0 <= res.summary["accuracy"]["fuzzy"] <= 1.0
        assert set(res.summary["ranking_errors"]) == {"GANG", "INFORMANT", "POLICE"}
        summary_on_disk = json.loads((tmp_path / "reports" / "summary.json").read_text())
        assert summary_on_disk == res.summary

    def test_deterministic_across_runs(self, corpus_dir, tmp_path):
        outdir, spec = corpus_dir
        texts = []
        for run in ("one", "two"):
            cfg = pipeline.PipelineConfig(
                transcripts=[str(outdir / "transcript.txt")],
                seeds=str(outdir / "seeds.csv"),
                min_count=suggest_min_count(spec),
                out=str(tmp_path / run),
            )
            pipeline.run_pipeline(cfg)
            texts.append((tmp_path / run / "summary.json").read_text()
                         + (tmp_path / run / "M2.csv").read_text())
        assert texts[0] == texts[1]

    def test_stage_name_in_error(self, corpus_dir, tmp_path):
        outdir, _ = corpus_dir
        seeds = tmp_path / "ghost.csv"
        seeds.write_text("NOBODYATALL,GANG\n")
        cfg = pipeline.PipelineConfig(
            transcripts=[str(outdir / "transcript.txt")],
            seeds=str(seeds),
            out=str(tmp_path / "x"),
        )
        with pytest.raises(DataError, match="stage features"):
            pipeline.run_pipeline(cfg)
