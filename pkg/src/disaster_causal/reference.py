"""Match-and-record compilation of expert-grounded reference graphs.

A disaster-type base chain fixes the variables and candidate relations. An
evidence table of report excerpts is joined against it, and only the base
edges with at least one supporting excerpt survive into the reference graph.
"""

from __future__ import annotations

import csv
import json
from collections import defaultdict
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

from .errors import InvalidRecord, MissingColumn, RecordNotInBase
from .graph import (
    CanonicalVocabulary,
    CausalGraph,
    DirectedEdge,
    build_graph,
    normalize_name,
)

EVIDENCE_COLUMNS = ("cause", "effect", "quote", "source", "locator")


@dataclass(frozen=True)
class BaseChain:
    vocabulary: CanonicalVocabulary
    edges: frozenset[DirectedEdge]

    @classmethod
    def from_dict(cls, data: Mapping) -> BaseChain:
        vocab = CanonicalVocabulary.from_dict(data)
        graph = build_graph(vocab, [tuple(e) for e in data.get("edges", [])])
        return cls(vocab, graph.edges)

    def to_dict(self) -> dict:
        graph = CausalGraph(
            self.vocabulary,
            frozenset(n for e in self.edges for n in e),
            self.edges,
        )
        return {**self.vocabulary.to_dict(), "edges": [list(e) for e in graph.sorted_edges()]}


@dataclass(frozen=True)
class EvidenceRecord:
    """One report excerpt backing one (cause, effect) relation.

    Fields hold the text as curated; they are checked against a base chain by
    :func:`validate_table` or :func:`prune_by_evidence`, not on construction.
    """

    cause: str
    effect: str
    quote: str
    source: str = ""
    locator: str = ""

    def to_dict(self) -> dict:
        return {"quote": self.quote, "source": self.source, "locator": self.locator}


@dataclass(frozen=True)
class ReferenceGraph:
    event_name: str
    graph: CausalGraph
    evidence: Mapping[DirectedEdge, tuple[EvidenceRecord, ...]]

    @property
    def vocabulary(self) -> CanonicalVocabulary:
        return self.graph.vocabulary

    def to_dict(self) -> dict:
        return {
            "event_name": self.event_name,
            "vocabulary": self.vocabulary.to_dict(),
            "edges": [
                {
                    "cause": e.cause,
                    "effect": e.effect,
                    "evidence": [r.to_dict() for r in self.evidence[e]],
                }
                for e in self.graph.sorted_edges()
            ],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> ReferenceGraph:
        vocab = CanonicalVocabulary.from_dict(data["vocabulary"])
        pairs = [(item["cause"], item["effect"]) for item in data.get("edges", [])]
        graph = build_graph(vocab, pairs)
        evidence: dict[DirectedEdge, tuple[EvidenceRecord, ...]] = {}
        for item in data.get("edges", []):
            edge = DirectedEdge(vocab.canonical(item["cause"]), vocab.canonical(item["effect"]))
            records = tuple(
                EvidenceRecord(edge.cause, edge.effect, r["quote"], r.get("source", ""),
                               r.get("locator", ""))
                for r in item.get("evidence", [])
            )
            if not records:
                raise InvalidRecord(f"edge {tuple(edge)!r} has no evidence")
            evidence[edge] = evidence.get(edge, ()) + records
        return cls(data.get("event_name", ""), graph, evidence)


@dataclass(frozen=True)
class Problem:
    row: int
    kind: str
    detail: str


def _check(base: BaseChain, record: EvidenceRecord) -> tuple[str, str, DirectedEdge | None]:
    """Return (kind, detail, edge) for the first problem of ``record``, or ('', '', edge)."""
    vocab = base.vocabulary
    for name in (record.cause, record.effect):
        if vocab.lookup(name) is None:
            return "UnknownVariable", name, None
    cause, effect = vocab.canonical(record.cause), vocab.canonical(record.effect)
    if normalize_name(cause) == normalize_name(effect):
        return "SelfLoop", cause, None
    edge = DirectedEdge(cause, effect)
    if not record.quote.strip():
        return "EmptyQuote", f"{cause} -> {effect}", edge
    if edge not in base.edges:
        return "NotInBase", f"{cause} -> {effect}", edge
    return "", "", edge


def validate_table(base: BaseChain, table: Iterable[EvidenceRecord]) -> list[Problem]:
    """Machine-check an evidence table before it goes to review.

    Every record is inspected independently and at most one problem is
    reported per row. An empty list means the table compiles.
    """
    problems = []
    for row, record in enumerate(table):
        kind, detail, _ = _check(base, record)
        if kind:
            problems.append(Problem(row, kind, detail))
    return problems


def prune_by_evidence(
    base: BaseChain, table: Iterable[EvidenceRecord], event_name: str = ""
) -> ReferenceGraph:
    grouped: dict[DirectedEdge, list[EvidenceRecord]] = defaultdict(list)
    for row, record in enumerate(table):
        kind, detail, edge = _check(base, record)
        if kind == "NotInBase":
            raise RecordNotInBase(edge)
        if kind:
            raise InvalidRecord(f"{kind}: {detail}", row)
        grouped[edge].append(
            EvidenceRecord(edge.cause, edge.effect, record.quote, record.source, record.locator)
        )
    graph = build_graph(base.vocabulary, list(grouped))
    evidence = {edge: tuple(records) for edge, records in grouped.items()}
    return ReferenceGraph(event_name or base.vocabulary.event_type, graph, evidence)


# file formats


def load_base_chain(path: str | Path) -> BaseChain:
    with open(path, encoding="utf-8") as fh:
        return BaseChain.from_dict(json.load(fh))


def load_evidence_table(path: str | Path) -> list[EvidenceRecord]:
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh, delimiter="\t", quoting=csv.QUOTE_NONE)
        header = reader.fieldnames or []
        for column in ("cause", "effect", "quote"):
            if column not in header:
                raise MissingColumn(column)
        return [
            EvidenceRecord(
                row["cause"] or "",
                row["effect"] or "",
                row["quote"] or "",
                row.get("source") or "",
                row.get("locator") or "",
            )
            for row in reader
        ]


def write_evidence_table(path: str | Path, table: Iterable[EvidenceRecord]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("\t".join(EVIDENCE_COLUMNS) + "\n")
        for r in table:
            fields = [r.cause, r.effect, r.quote, r.source, r.locator]
            if any("\t" in f or "\n" in f for f in fields):
                raise InvalidRecord("tab or newline inside a field")
            fh.write("\t".join(fields) + "\n")


def load_reference(path: str | Path) -> ReferenceGraph:
    with open(path, encoding="utf-8") as fh:
        return ReferenceGraph.from_dict(json.load(fh))


def save_reference(path: str | Path, ref: ReferenceGraph) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(ref.to_dict(), fh, indent=2, ensure_ascii=False)
        fh.write("\n")
