"""Vocabulary and directed-graph value types.

Every graph in the harness lives inside a :class:`CanonicalVocabulary`, the
fixed ordered list of impact-chain variables for one disaster type. Names are
matched through a normalized key (trimmed, whitespace collapsed, case-folded)
but the vocabulary keeps the display spelling it was built with, so prompts
echo the variables exactly as curated.
"""

from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from types import MappingProxyType
from typing import Iterable, Mapping

from .errors import (
    DuplicateVariable,
    EmptyVocabulary,
    SelfLoop,
    UnknownVariable,
    VocabularyMismatch,
)

_WS = re.compile(r"\s+")


def normalize_name(name: str) -> str:
    """Matching key for a variable name: trim, collapse whitespace, case-fold."""
    return _WS.sub(" ", name).strip().casefold()


def _clean(name: str) -> str:
    return _WS.sub(" ", name).strip()


@dataclass(frozen=True)
class CanonicalVocabulary:
    event_type: str
    variables: tuple[str, ...]
    _index: Mapping[str, str] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        if not self.variables:
            raise EmptyVocabulary()
        index: dict[str, str] = {}
        for name in self.variables:
            key = normalize_name(name)
            if not key:
                raise UnknownVariable(name)
            if key in index:
                raise DuplicateVariable(key)
            index[key] = name
        object.__setattr__(self, "_index", MappingProxyType(index))

    def __len__(self) -> int:
        return len(self.variables)

    def __iter__(self):
        return iter(self.variables)

    def __contains__(self, name: object) -> bool:
        return isinstance(name, str) and normalize_name(name) in self._index

    def lookup(self, name: str) -> str | None:
        """Canonical spelling of ``name``, or None when it is not a member."""
        return self._index.get(normalize_name(name))

    def canonical(self, name: str) -> str:
        found = self.lookup(name)
        if found is None:
            raise UnknownVariable(name)
        return found

    def position(self, name: str) -> int:
        return self.variables.index(self.canonical(name))

    def same_as(self, other: CanonicalVocabulary) -> bool:
        # exact spelling: graph node sets compare by canonical name
        return self.variables == other.variables

    def to_dict(self) -> dict:
        return {"event_type": self.event_type, "variables": list(self.variables)}

    @classmethod
    def from_dict(cls, data: Mapping) -> CanonicalVocabulary:
        return make_vocabulary(data.get("event_type", ""), list(data["variables"]))


def make_vocabulary(event_type: str, names: list[str]) -> CanonicalVocabulary:
    if not names:
        raise EmptyVocabulary()
    return CanonicalVocabulary(event_type, tuple(_clean(n) for n in names))


def load_vocabulary(path: str | Path) -> CanonicalVocabulary:
    with open(path, encoding="utf-8") as fh:
        return CanonicalVocabulary.from_dict(json.load(fh))


@dataclass(frozen=True, order=True)
class DirectedEdge:
    cause: str
    effect: str

    def __post_init__(self) -> None:
        if normalize_name(self.cause) == normalize_name(self.effect):
            raise SelfLoop(self.cause)

    def __iter__(self):
        yield self.cause
        yield self.effect

    def reversed(self) -> DirectedEdge:
        return DirectedEdge(self.effect, self.cause)


@dataclass(frozen=True)
class CausalGraph:
    """Node subset of a vocabulary plus a set of directed edges.

    ``edge_counts`` records how often each edge was observed while the graph
    was assembled; it is provenance only and does not take part in equality.
    """

    vocabulary: CanonicalVocabulary
    nodes: frozenset[str]
    edges: frozenset[DirectedEdge]
    edge_counts: Mapping[DirectedEdge, int] = field(
        default_factory=lambda: MappingProxyType({}), compare=False, hash=False
    )

    def __post_init__(self) -> None:
        for node in self.nodes:
            if self.vocabulary.lookup(node) != node:
                raise UnknownVariable(node)
        for edge in self.edges:
            for end in edge:
                if end not in self.nodes:
                    raise UnknownVariable(end)
        if not isinstance(self.edge_counts, MappingProxyType):
            object.__setattr__(self, "edge_counts", MappingProxyType(dict(self.edge_counts)))

    def sorted_nodes(self) -> list[str]:
        return [v for v in self.vocabulary.variables if v in self.nodes]

    def sorted_edges(self) -> list[DirectedEdge]:
        pos = {v: i for i, v in enumerate(self.vocabulary.variables)}
        return sorted(self.edges, key=lambda e: (pos[e.cause], pos[e.effect]))

    def to_dict(self) -> dict:
        data = {
            "vocabulary": self.vocabulary.to_dict(),
            "nodes": self.sorted_nodes(),
            "edges": [[e.cause, e.effect] for e in self.sorted_edges()],
        }
        if self.edge_counts:
            data["edge_counts"] = [
                [e.cause, e.effect, self.edge_counts[e]]
                for e in self.sorted_edges()
                if e in self.edge_counts
            ]
        return data

    @classmethod
    def from_dict(cls, data: Mapping, vocab: CanonicalVocabulary | None = None) -> CausalGraph:
        if vocab is None:
            vocab = CanonicalVocabulary.from_dict(data["vocabulary"])
        edges = [tuple(e) for e in data.get("edges", [])]
        graph = build_graph(vocab, edges, nodes=data.get("nodes"))
        if data.get("edge_counts"):
            counts = {DirectedEdge(vocab.canonical(c), vocab.canonical(e)): int(n)
                      for c, e, n in data["edge_counts"]}
            graph = CausalGraph(vocab, graph.nodes, graph.edges, counts)
        return graph


def build_graph(
    vocab: CanonicalVocabulary,
    edges: Iterable[tuple[str, str] | DirectedEdge],
    nodes: Iterable[str] | None = None,
) -> CausalGraph:
    """Assemble a graph from (cause, effect) pairs, merging duplicates.

    The node set is the union of edge endpoints plus any explicitly listed
    ``nodes``. Repeated pairs are merged and tallied in ``edge_counts``.
    """
    counts: Counter[DirectedEdge] = Counter()
    for cause, effect in edges:
        edge = DirectedEdge(vocab.canonical(cause), vocab.canonical(effect))
        counts[edge] += 1
    node_set = {end for edge in counts for end in edge}
    if nodes is not None:
        node_set.update(vocab.canonical(n) for n in nodes)
    return CausalGraph(vocab, frozenset(node_set), frozenset(counts), dict(counts))


def edges_of(graph: CausalGraph) -> list[tuple[str, str]]:
    return [(e.cause, e.effect) for e in graph.sorted_edges()]


def require_shared_vocabulary(a: CausalGraph, b: CausalGraph) -> None:
    if a.vocabulary is not b.vocabulary and not a.vocabulary.same_as(b.vocabulary):
        raise VocabularyMismatch()


def reversed_overlap(ref: CausalGraph, pred: CausalGraph) -> frozenset[DirectedEdge]:
    """Reference edges that the prediction recovered only in reverse.

    An edge (u, v) counts when it is missing from the prediction while (v, u)
    is predicted but absent from the reference. For graphs without 2-cycles
    this is exactly {(u, v) in ref : (v, u) in pred}; restricting to the
    mismatched edges keeps SHD at zero only for identical edge sets when
    both directions of a pair are present.
    """
    require_shared_vocabulary(ref, pred)
    pred_only = pred.edges - ref.edges
    return frozenset(e for e in ref.edges - pred.edges if e.reversed() in pred_only)
