"""End-to-end experiment driver.

An experiment directory is named by a hash of the resolved configuration and
holds only plain JSON (plus the Markdown table)::

    <out>/<experiment-id>/
        config.json
        runs/run-000/extraction.json   (graph.json in baseline mode)
        runs/run-000/metrics.json
        ...
        aggregate.json
        report.md
"""

from __future__ import annotations

import json
import logging
import shutil
import tempfile
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .baseline import BaselineConfig, random_graph
from .config import ExperimentConfig
from .corpus import Label, PostCorpus, dedupe_posts, filter_by_label, load_corpus
from .errors import ClientError, ConfigError
from .extraction import ExtractionRun, HttpChatClient, RunConfig, Sampling, ScriptedClient, extract_run
from .graph import CanonicalVocabulary, load_vocabulary
from .metrics import MetricReport, evaluate
from .reference import ReferenceGraph, load_reference
from .report import render_report
from .stats import RunSeries

log = logging.getLogger(__name__)


def dump_json(path: Path, data) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(data, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")


def make_client(config: ExperimentConfig):
    model = config.model
    if model.client == "mock":
        return ScriptedClient.from_config(model.responses)
    return HttpChatClient.from_env(model.endpoint, model.auth_env, timeout=model.timeout)


def load_inputs(config: ExperimentConfig) -> tuple[CanonicalVocabulary, ReferenceGraph]:
    vocab = load_vocabulary(config.path(config.vocab_file))
    ref = load_reference(config.path(config.reference_file))
    if not vocab.same_as(ref.vocabulary):
        raise ConfigError("vocabulary file and reference graph list different variables")
    return vocab, ref


def prepare_corpus(config: ExperimentConfig) -> PostCorpus:
    corpus = load_corpus(config.path(config.corpus_file), config.corpus_format, config.event_name)
    corpus = dedupe_posts(corpus)
    if config.mode == "ablation":
        corpus = filter_by_label(corpus, Label(config.ablation_label))
    return corpus


def run_config_for(config: ExperimentConfig, run: int) -> RunConfig:
    seed = config.seed + run
    return RunConfig(
        model_id=config.model.model_id,
        event_name=config.event_name,
        batch_size=config.batch_size,
        sampling=Sampling(config.temperature, config.max_output_tokens, seed),
        shuffle_seed=seed if config.shuffle_batches else None,
        refusal_phrases=config.refusal_phrases,
        max_workers=config.max_workers,
    )


def extraction_for_run(
    config: ExperimentConfig, run: int, corpus: PostCorpus, vocab: CanonicalVocabulary, client=None
) -> ExtractionRun:
    client = client or make_client(config)
    try:
        return extract_run(run_config_for(config, run), client, corpus, vocab)
    except ClientError as exc:
        raise ClientError(exc.batch_index, exc.cause, run_index=run) from exc


def _one_run(config, run, vocab, ref, corpus, shared_client, out: Path) -> MetricReport:
    run_dir = out / "runs" / f"run-{run:03d}"
    if config.mode == "baseline":
        cfg = BaselineConfig(config.p_node, config.p_edge, config.seed + run)
        graph = random_graph(vocab, cfg)
        dump_json(run_dir / "graph.json", {"seed": cfg.seed, **graph.to_dict()})
        report = evaluate(ref, graph)
    else:
        extraction = extraction_for_run(config, run, corpus, vocab, shared_client)
        dump_json(run_dir / "extraction.json", extraction.to_dict())
        report = evaluate(ref, extraction.result)
    dump_json(run_dir / "metrics.json", report.to_dict())
    log.info("run %d done", run)
    return report


def load_series(exp_dir: Path) -> RunSeries:
    """Rebuild the run series of an experiment directory from its per-run reports."""
    exp_dir = Path(exp_dir)
    label = exp_dir.name
    cfg_file = exp_dir / "config.json"
    if cfg_file.is_file():
        label = json.loads(cfg_file.read_text(encoding="utf-8")).get("label") or label
    files = sorted((exp_dir / "runs").glob("run-*/metrics.json"))
    if not files:
        raise ConfigError(f"no per-run metrics under {exp_dir}")
    reports = tuple(MetricReport.from_dict(json.loads(f.read_text(encoding="utf-8"))) for f in files)
    return RunSeries(label, reports)


def run_experiment(config: ExperimentConfig, out_root: str | Path, dry_run: bool = False) -> Path:
    config.validate()
    out_root = Path(out_root)
    exp_dir = out_root / config.experiment_id()
    if dry_run:
        return exp_dir
    if exp_dir.exists():
        raise ConfigError(f"experiment directory already exists: {exp_dir}")

    vocab, ref = load_inputs(config)
    corpus = None if config.mode == "baseline" else prepare_corpus(config)
    out_root.mkdir(parents=True, exist_ok=True)
    staging = Path(tempfile.mkdtemp(prefix=".staging-", dir=out_root))
    try:
        dump_json(staging / "config.json", config.snapshot())
        runs = range(config.runs)
        if config.parallel_runs > 1:
            # independent clients per run
            with ThreadPoolExecutor(max_workers=config.parallel_runs) as pool:
                reports = list(pool.map(
                    lambda r: _one_run(config, r, vocab, ref, corpus, None, staging), runs
                ))
        else:
            client = None if config.mode == "baseline" else make_client(config)
            reports = [_one_run(config, r, vocab, ref, corpus, client, staging) for r in runs]

        series = RunSeries(config.condition_label, tuple(reports))
        doc = render_report([series], ddof=config.ddof)
        dump_json(staging / "aggregate.json", doc.to_dict())
        (staging / "report.md").write_text(doc.to_markdown(), encoding="utf-8")
        staging.rename(exp_dir)
    except BaseException:
        shutil.rmtree(staging, ignore_errors=True)
        raise
    return exp_dir
