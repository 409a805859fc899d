"""Node/edge precision and recall, micro-F1, SHD and normalized SHD.

Scores are computed as exact fractions from set counts; conversion to float
happens only when a report is serialized.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from fractions import Fraction
from typing import Mapping

from .errors import DegenerateReference
from .extraction.run import Refusal
from .graph import CausalGraph, require_shared_vocabulary, reversed_overlap
from .reference import ReferenceGraph

METRICS = (
    "node_precision",
    "node_recall",
    "edge_precision",
    "edge_recall",
    "f1",
    "shd",
    "nshd",
)
# metrics where a smaller value is better
LOWER_IS_BETTER = frozenset({"shd", "nshd"})


def precision_recall(ref_set, pred_set) -> tuple[Fraction, Fraction]:
    ref_set, pred_set = set(ref_set), set(pred_set)
    if not ref_set and not pred_set:
        return Fraction(1), Fraction(1)
    hit = len(ref_set & pred_set)
    precision = Fraction(hit, len(pred_set)) if pred_set else Fraction(0)
    recall = Fraction(hit, len(ref_set)) if ref_set else Fraction(0)
    return precision, recall


def micro_f1(ref: CausalGraph, pred: CausalGraph) -> Fraction:
    require_shared_vocabulary(ref, pred)
    total = len(ref.nodes) + len(ref.edges) + len(pred.nodes) + len(pred.edges)
    if total == 0:
        return Fraction(1)
    overlap = len(ref.nodes & pred.nodes) + len(ref.edges & pred.edges)
    return Fraction(2 * overlap, total)


def shd(ref: CausalGraph, pred: CausalGraph) -> int:
    """Edge edits (insert, delete, reverse) turning the prediction into the reference."""
    require_shared_vocabulary(ref, pred)
    extra = len(pred.edges - ref.edges)
    missing = len(ref.edges - pred.edges)
    return extra + missing - len(reversed_overlap(ref, pred))


def nshd(ref: CausalGraph, pred: CausalGraph) -> Fraction:
    n = len(ref.nodes)
    if n < 2:
        raise DegenerateReference(n)
    return Fraction(shd(ref, pred), n * (n - 1))


@dataclass(frozen=True)
class MetricReport:
    node_precision: Fraction | None = None
    node_recall: Fraction | None = None
    edge_precision: Fraction | None = None
    edge_recall: Fraction | None = None
    f1: Fraction | None = None
    shd: int | None = None
    nshd: Fraction | None = None
    refused: bool = False

    def __post_init__(self) -> None:
        values = [getattr(self, m) for m in METRICS]
        if self.refused:
            if any(v is not None for v in values):
                raise ValueError("a refused report carries no scores")
            return
        if any(v is None for v in values):
            raise ValueError("a scored report needs every metric")
        for m in METRICS[:5]:
            if not 0 <= getattr(self, m) <= 1:
                raise ValueError(f"{m} out of [0, 1]")
        if self.shd < 0 or self.nshd < 0:
            raise ValueError("shd/nshd must be non-negative")

    @classmethod
    def refusal(cls) -> MetricReport:
        return cls(refused=True)

    def value(self, metric: str) -> float | None:
        v = getattr(self, metric)
        return None if v is None else float(v)

    def as_tuple(self) -> tuple:
        return tuple(getattr(self, m) for m in METRICS)

    def to_dict(self) -> dict:
        """Floats for reading, plus exact "p/q" strings so reloading is lossless."""
        data: dict = {"refused": self.refused}
        for m in METRICS:
            v = getattr(self, m)
            data[m] = None if v is None else (v if isinstance(v, int) else float(v))
        if not self.refused:
            data["exact"] = {m: str(getattr(self, m)) for m in METRICS}
        return data

    @classmethod
    def from_dict(cls, data: Mapping) -> MetricReport:
        if data.get("refused"):
            return cls.refusal()
        exact = data.get("exact") or {}
        kwargs = {}
        for f in fields(cls):
            if f.name == "refused":
                continue
            raw = exact.get(f.name, data[f.name])
            kwargs[f.name] = int(raw) if f.name == "shd" else Fraction(str(raw))
        return cls(**kwargs)


def _graph_of(obj) -> CausalGraph:
    return obj.graph if isinstance(obj, ReferenceGraph) else obj


def evaluate(ref: ReferenceGraph | CausalGraph, prediction: CausalGraph | Refusal) -> MetricReport:
    ref_graph = _graph_of(ref)
    if isinstance(prediction, Refusal):
        return MetricReport.refusal()
    require_shared_vocabulary(ref_graph, prediction)
    node_p, node_r = precision_recall(ref_graph.nodes, prediction.nodes)
    edge_p, edge_r = precision_recall(ref_graph.edges, prediction.edges)
    return MetricReport(
        node_precision=node_p,
        node_recall=node_r,
        edge_precision=edge_p,
        edge_recall=edge_r,
        f1=micro_f1(ref_graph, prediction),
        shd=shd(ref_graph, prediction),
        nshd=nshd(ref_graph, prediction),
    )
