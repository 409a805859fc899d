"""Tabular reports over run series: mean ± std cells and significance markers."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .errors import InconsistentRunCounts, TooFewSamples
from .metrics import LOWER_IS_BETTER, METRICS
from .stats import RunSeries, SeriesAggregate, SignificanceResult, paired_t_test, summarize

HEADERS = {
    "node_precision": "Node Precision (↑)",
    "node_recall": "Node Recall (↑)",
    "edge_precision": "Edge Precision (↑)",
    "edge_recall": "Edge Recall (↑)",
    "f1": "F1 (↑)",
    "shd": "SHD (↓)",
    "nshd": "nSHD (↓)",
}


@dataclass(frozen=True)
class Comparison:
    a: str
    b: str
    result: SignificanceResult
    winner: str | None

    def to_dict(self) -> dict:
        r = self.result
        return {
            "a": self.a,
            "b": self.b,
            "metric": r.metric,
            "t_statistic": r.t_statistic,
            "degrees_of_freedom": r.degrees_of_freedom,
            "p_value": r.p_value,
            "significant": r.significant,
            "mean_difference": r.mean_difference,
            "winner": self.winner,
        }


@dataclass(frozen=True)
class ReportDocument:
    aggregates: tuple[SeriesAggregate, ...]
    comparisons: tuple[Comparison, ...]
    ddof: int
    decimals: int

    def marked(self) -> set[tuple[str, str]]:
        return {(c.winner, c.result.metric) for c in self.comparisons if c.winner}

    def to_dict(self) -> dict:
        return {
            "std_convention": "population" if self.ddof == 0 else "sample",
            "series": [
                {
                    "label": agg.condition_label,
                    "runs": agg.runs,
                    "refused_runs": agg.refused_runs,
                    "na": not agg.metrics,
                    "metrics": {
                        m: {"mean": a.mean, "std": a.std, "n": a.n} for m, a in agg.metrics.items()
                    },
                }
                for agg in self.aggregates
            ],
            "comparisons": [c.to_dict() for c in self.comparisons],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    def to_markdown(self) -> str:
        marked = self.marked()
        head = ["Condition"] + [HEADERS[m] for m in METRICS]
        lines = ["| " + " | ".join(head) + " |", "|" + "---|" * len(head)]
        for agg in self.aggregates:
            cells = [agg.condition_label]
            for m in METRICS:
                if not agg.metrics:
                    cells.append("N/A")
                    continue
                a = agg.metrics[m]
                cell = f"{a.mean:.{self.decimals}f}±{a.std:.{self.decimals}f}"
                if (agg.condition_label, m) in marked:
                    cell = f"**{cell}**"
                cells.append(cell)
            lines.append("| " + " | ".join(cells) + " |")
        notes = [
            "",
            f"Mean ± {'population' if self.ddof == 0 else 'sample'} standard deviation "
            f"over {max((a.runs for a in self.aggregates), default=0)} runs.",
        ]
        if self.comparisons:
            pairs = sorted({(c.a, c.b) for c in self.comparisons})
            notes.append(
                "Bold marks the significantly better condition (paired t-test, p < 0.05) for: "
                + "; ".join(f"{a} vs {b}" for a, b in pairs) + "."
            )
        return "\n".join(lines + notes) + "\n"


def _compare(a: RunSeries, b: RunSeries) -> list[Comparison]:
    if a.all_refused or b.all_refused:
        return []
    # pair by run index, keeping runs where both sides produced a graph
    idx = [i for i, (ra, rb) in enumerate(zip(a.reports, b.reports))
           if not ra.refused and not rb.refused]
    out = []
    for metric in METRICS:
        xs = [a.reports[i].value(metric) for i in idx]
        ys = [b.reports[i].value(metric) for i in idx]
        try:
            res = paired_t_test(xs, ys, metric)
        except TooFewSamples:
            return []
        winner = None
        if res.significant:
            a_better = res.mean_difference > 0
            if metric in LOWER_IS_BETTER:
                a_better = not a_better
            winner = a.condition_label if a_better else b.condition_label
        out.append(Comparison(a.condition_label, b.condition_label, res, winner))
    return out


def render_report(
    serieses: Sequence[RunSeries],
    comparisons: Sequence[tuple[str, str]] = (),
    ddof: int = 0,
    decimals: int = 2,
) -> ReportDocument:
    counts = {s.condition_label: len(s.reports) for s in serieses if not s.all_refused}
    if len(set(counts.values())) > 1:
        raise InconsistentRunCounts(counts)
    by_label = {s.condition_label: s for s in serieses}
    results: list[Comparison] = []
    for la, lb in comparisons:
        missing = [lbl for lbl in (la, lb) if lbl not in by_label]
        if missing:
            raise KeyError(f"no series labelled {missing[0]!r}")
        results.extend(_compare(by_label[la], by_label[lb]))
    return ReportDocument(
        tuple(summarize(s, ddof) for s in serieses), tuple(results), ddof, decimals
    )
