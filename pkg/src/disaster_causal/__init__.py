"""Extract causal graphs from disaster-related posts with a language model and
score them against expert-grounded reference graphs."""

from .baseline import BaselineConfig, random_graph
from .corpus import Label, Post, PostBatch, PostCorpus, batch_posts, dedupe_posts, filter_by_label, load_corpus
from .graph import CanonicalVocabulary, CausalGraph, DirectedEdge, build_graph, make_vocabulary, reversed_overlap
from .metrics import MetricReport, evaluate, micro_f1, nshd, precision_recall, shd
from .reference import BaseChain, EvidenceRecord, ReferenceGraph, prune_by_evidence, validate_table
from .stats import RunSeries, SignificanceResult, aggregate_runs, paired_t_test

__version__ = "0.1.0"

__all__ = [
    "BaseChain",
    "BaselineConfig",
    "CanonicalVocabulary",
    "CausalGraph",
    "DirectedEdge",
    "EvidenceRecord",
    "Label",
    "MetricReport",
    "Post",
    "PostBatch",
    "PostCorpus",
    "ReferenceGraph",
    "RunSeries",
    "SignificanceResult",
    "aggregate_runs",
    "batch_posts",
    "build_graph",
    "dedupe_posts",
    "evaluate",
    "filter_by_label",
    "load_corpus",
    "make_vocabulary",
    "micro_f1",
    "nshd",
    "paired_t_test",
    "precision_recall",
    "prune_by_evidence",
    "random_graph",
    "reversed_overlap",
    "shd",
    "validate_table",
]
