"""Command-line entry point: ``disaster-causal <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .baseline import BaselineConfig, random_graph
from .config import load_config
from .corpus import corpus_stats, load_corpus
from .errors import HarnessError
from .extraction import ExtractionRun
from .graph import CausalGraph, load_vocabulary
from .metrics import evaluate
from .pipeline import (
    dump_json,
    extraction_for_run,
    load_inputs,
    load_series,
    prepare_corpus,
    run_experiment,
)
from .reference import (
    ReferenceGraph,
    load_base_chain,
    load_evidence_table,
    prune_by_evidence,
    save_reference,
    validate_table,
)
from .report import render_report

log = logging.getLogger("disaster_causal")


def _read_json(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _is_reference(data: dict) -> bool:
    edges = data.get("edges") or []
    if edges:
        return isinstance(edges[0], dict)
    return "event_name" in data and "nodes" not in data


def _load_ref_any(path) -> ReferenceGraph | CausalGraph:
    data = _read_json(path)
    return ReferenceGraph.from_dict(data) if _is_reference(data) else CausalGraph.from_dict(data)


def _load_pred_any(path, vocab):
    """Extraction run artifact, reference file, or plain graph JSON."""
    data = _read_json(path)
    if "result" in data and "batches" in data:
        return ExtractionRun.from_dict(data, vocab).result
    if _is_reference(data):
        return ReferenceGraph.from_dict(data).graph
    return CausalGraph.from_dict(data, vocab)


def cmd_compile_ref(args) -> int:
    base = load_base_chain(args.base)
    table = load_evidence_table(args.evidence)
    ref = prune_by_evidence(base, table, args.event or "")
    save_reference(args.out, ref)
    print(f"{len(ref.graph.edges)} of {len(base.edges)} base edges retained, "
          f"{len(ref.graph.nodes)} variables -> {args.out}")
    return 0


def cmd_validate_ref(args) -> int:
    base = load_base_chain(args.base)
    problems = validate_table(base, load_evidence_table(args.evidence))
    for p in problems:
        print(f"row {p.row}\t{p.kind}\t{p.detail}")
    if problems:
        print(f"{len(problems)} problem(s)", file=sys.stderr)
        return 1
    print("ok")
    return 0


def cmd_corpus_stats(args) -> int:
    corpus = load_corpus(args.input, args.format)
    stats = corpus_stats(corpus)
    print(f"total\t{stats['total']}")
    print(f"distinct_ids\t{stats['distinct_ids']}")
    for label, n in stats["labels"].items():
        print(f"{label}\t{n}")
    return 0


def cmd_baseline(args) -> int:
    vocab = load_vocabulary(args.vocab)
    cfg = BaselineConfig(args.p_node, args.p_edge, args.seed)
    graph = random_graph(vocab, cfg)
    dump_json(Path(args.out), {"seed": cfg.seed, **graph.to_dict()})
    return 0


def cmd_extract(args) -> int:
    config = load_config(args.config)
    config.validate()
    if config.mode == "baseline":
        raise HarnessError("extract needs mode main or ablation")
    vocab, _ = load_inputs(config)
    run = extraction_for_run(config, args.run, prepare_corpus(config), vocab)
    dump_json(Path(args.out), run.to_dict())
    state = "refused" if run.refused else f"{len(run.result.edges)} edges"
    print(f"{len(run.batches)} batches, {state} -> {args.out}")
    return 0


def cmd_evaluate(args) -> int:
    ref = _load_ref_any(args.ref)
    vocab = ref.vocabulary
    pred = _load_pred_any(args.pred, vocab)
    report = evaluate(ref, pred)
    dump_json(Path(args.out), report.to_dict())
    return 0


def _series_dirs(root: Path) -> list[Path]:
    if (root / "runs").is_dir():
        return [root]
    return sorted(p for p in root.iterdir() if p.is_dir() and (p / "runs").is_dir())


def cmd_report(args) -> int:
    dirs = _series_dirs(Path(args.runs))
    if not dirs:
        raise HarnessError(f"no experiment directories under {args.runs}")
    serieses = [load_series(d) for d in dirs]
    comparisons = []
    for spec in args.compare or []:
        parts = spec.split(":")
        if len(parts) != 2:
            raise HarnessError(f"--compare expects 'labelA:labelB', got {spec!r}")
        comparisons.append((parts[0], parts[1]))
    doc = render_report(serieses, comparisons, ddof=1 if args.std == "sample" else 0)
    Path(args.out).write_text(doc.to_markdown(), encoding="utf-8")
    if args.json:
        Path(args.json).write_text(doc.to_json(), encoding="utf-8")
    if args.figure:
        from .plotting import report_figure

        report_figure(doc, args.figure)
    print(doc.to_markdown(), end="")
    return 0


def cmd_run(args) -> int:
    config = load_config(args.config)
    exp_dir = run_experiment(config, args.out, dry_run=args.dry_run)
    if args.dry_run:
        print(json.dumps(config.snapshot(), indent=2, ensure_ascii=False))
    print(exp_dir)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="disaster-causal",
        description="Reference-graph compilation, LLM causal extraction and graph scoring.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compile-ref", help="prune a base chain by an evidence table")
    p.add_argument("--base", required=True)
    p.add_argument("--evidence", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--event", help="event name stored in the reference (default: event type)")
    p.set_defaults(func=cmd_compile_ref)

    p = sub.add_parser("validate-ref", help="check an evidence table against a base chain")
    p.add_argument("--base", required=True)
    p.add_argument("--evidence", required=True)
    p.set_defaults(func=cmd_validate_ref)

    p = sub.add_parser("corpus", help="corpus utilities")
    corpus_sub = p.add_subparsers(dest="corpus_command", required=True)
    s = corpus_sub.add_parser("stats", help="total, distinct-id and per-label counts")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--format", choices=["tsv", "jsonl"])
    s.set_defaults(func=cmd_corpus_stats)

    p = sub.add_parser("baseline", help="sample a random graph over a vocabulary")
    p.add_argument("--vocab", required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--p-node", type=float, default=0.5)
    p.add_argument("--p-edge", type=float, default=0.5)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_baseline)

    p = sub.add_parser("extract", help="one extraction run from an experiment config")
    p.add_argument("--config", required=True)
    p.add_argument("--run", type=int, default=0, help="run index; seed = base seed + run")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("evaluate", help="score a predicted graph against a reference")
    p.add_argument("--ref", required=True)
    p.add_argument("--pred", required=True, help="graph JSON or extraction run artifact")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("report", help="aggregate experiment directories into a table")
    p.add_argument("--runs", required=True, help="experiment dir or a dir of experiment dirs")
    p.add_argument("--compare", action="append", help="'labelA:labelB' for paired t-tests")
    p.add_argument("--out", required=True, help="Markdown table")
    p.add_argument("--json", help="machine-readable report")
    p.add_argument("--figure", help="bar chart image (png, pdf, svg)")
    p.add_argument("--std", choices=["population", "sample"], default="population")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("run", help="full pipeline from a config file")
    p.add_argument("--config", required=True)
    p.add_argument("--out", default="experiments")
    p.add_argument("--dry-run", action="store_true")
    p.set_defaults(func=cmd_run)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except (HarnessError, OSError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
