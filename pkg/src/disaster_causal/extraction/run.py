"""One extraction run: batch the corpus, query the model, merge the pairs."""

from __future__ import annotations

import logging
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from ..corpus import PostBatch, PostCorpus, batch_posts, shuffle_posts
from ..errors import ClientError, ModelClientError
from ..graph import CanonicalVocabulary, CausalGraph, DirectedEdge
from .clients import ModelClient, PromptRequest, Sampling
from .parse import DEFAULT_REFUSAL_PHRASES, Rejection, parse_causal_pairs
from .prompt import render_prompt

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Refusal:
    """The model declined to produce a graph for the whole run."""

    reason: str = "model refused every batch and produced no causal pairs"


@dataclass(frozen=True)
class RunConfig:
    model_id: str
    event_name: str = ""
    batch_size: int = 20
    sampling: Sampling = field(default_factory=Sampling)
    shuffle_seed: int | None = None
    refusal_phrases: tuple[str, ...] = DEFAULT_REFUSAL_PHRASES
    max_workers: int = 1

    def __post_init__(self) -> None:
        if self.max_workers < 1:
            raise ValueError("max_workers must be >= 1")

    def to_dict(self) -> dict:
        return {
            "model_id": self.model_id,
            "event_name": self.event_name,
            "batch_size": self.batch_size,
            "sampling": self.sampling.to_dict(),
            "shuffle_seed": self.shuffle_seed,
            "refusal_phrases": list(self.refusal_phrases),
            "max_workers": self.max_workers,
        }


@dataclass(frozen=True)
class BatchExtraction:
    batch_index: int
    raw_response: str
    accepted_edges: tuple[DirectedEdge, ...]
    rejected_mentions: tuple[Rejection, ...]
    refused: bool
    post_ids: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.refused and self.accepted_edges:
            raise ValueError("a refused batch cannot carry accepted edges")

    def to_dict(self) -> dict:
        return {
            "batch_index": self.batch_index,
            "post_ids": list(self.post_ids),
            "raw_response": self.raw_response,
            "accepted_edges": [list(e) for e in self.accepted_edges],
            "rejected_mentions": [list(r) for r in self.rejected_mentions],
            "refused": self.refused,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> BatchExtraction:
        return cls(
            batch_index=int(data["batch_index"]),
            raw_response=data["raw_response"],
            accepted_edges=tuple(DirectedEdge(c, e) for c, e in data["accepted_edges"]),
            rejected_mentions=tuple(Rejection(*r) for r in data["rejected_mentions"]),
            refused=bool(data["refused"]),
            post_ids=tuple(data.get("post_ids", ())),
        )


@dataclass(frozen=True)
class ExtractionRun:
    event_name: str
    model_id: str
    batches: tuple[BatchExtraction, ...]
    result: CausalGraph | Refusal
    config: RunConfig | None = None

    @property
    def refused(self) -> bool:
        return isinstance(self.result, Refusal)

    def to_dict(self) -> dict:
        if isinstance(self.result, Refusal):
            result = {"refused": True, "reason": self.result.reason}
        else:
            result = {"refused": False, "graph": self.result.to_dict()}
        return {
            "event_name": self.event_name,
            "model_id": self.model_id,
            "config": self.config.to_dict() if self.config else None,
            "batches": [b.to_dict() for b in self.batches],
            "result": result,
        }

    @classmethod
    def from_dict(cls, data: Mapping, vocab: CanonicalVocabulary | None = None) -> ExtractionRun:
        res = data["result"]
        if res["refused"]:
            result: CausalGraph | Refusal = Refusal(res.get("reason", Refusal.reason))
        else:
            result = CausalGraph.from_dict(res["graph"], vocab)
        cfg = data.get("config")
        config = None
        if cfg:
            config = RunConfig(
                model_id=cfg["model_id"],
                event_name=cfg.get("event_name", ""),
                batch_size=cfg["batch_size"],
                sampling=Sampling(**cfg["sampling"]),
                shuffle_seed=cfg.get("shuffle_seed"),
                refusal_phrases=tuple(cfg.get("refusal_phrases", DEFAULT_REFUSAL_PHRASES)),
                max_workers=cfg.get("max_workers", 1),
            )
        return cls(
            event_name=data["event_name"],
            model_id=data["model_id"],
            batches=tuple(BatchExtraction.from_dict(b) for b in data["batches"]),
            result=result,
            config=config,
        )


def aggregate_batches(
    vocab: CanonicalVocabulary, batches: Iterable[BatchExtraction]
) -> CausalGraph | Refusal:
    """Merge per-batch pairs into one graph, summing occurrence counts.

    The run is a Refusal only when some batch refused and no batch yielded an
    accepted edge; zero edges without refusal language is an empty graph.
    """
    counts: Counter[DirectedEdge] = Counter()
    any_refused = False
    for batch in batches:
        counts.update(batch.accepted_edges)
        any_refused = any_refused or batch.refused
    if not counts and any_refused:
        return Refusal()
    nodes = frozenset(n for edge in counts for n in edge)
    return CausalGraph(vocab, nodes, frozenset(counts), dict(counts))


def _extract_batch(
    config: RunConfig,
    client: ModelClient,
    vocab: CanonicalVocabulary,
    event: str,
    batch: PostBatch,
) -> BatchExtraction:
    request = PromptRequest(
        model_id=config.model_id,
        prompt=render_prompt(event, vocab, batch),
        sampling=config.sampling,
        batch_index=batch.index,
    )
    try:
        response = client.complete(request)
    except ModelClientError as exc:
        raise ClientError(batch.index, exc) from exc
    parsed = parse_causal_pairs(response, vocab, config.refusal_phrases)
    return BatchExtraction(
        batch_index=batch.index,
        raw_response=response,
        accepted_edges=tuple(parsed.edges),
        rejected_mentions=tuple(parsed.rejected),
        refused=parsed.refused,
        post_ids=tuple(p.post_id for p in batch.posts),
    )


def extract_run(
    config: RunConfig,
    client: ModelClient,
    corpus: PostCorpus,
    vocab: CanonicalVocabulary,
) -> ExtractionRun:
    event = config.event_name or corpus.event_name
    if config.shuffle_seed is not None:
        corpus = shuffle_posts(corpus, config.shuffle_seed)
    batches: Sequence[PostBatch] = batch_posts(corpus, config.batch_size)
    log.info("extracting %d batches for %s with %s", len(batches), event, config.model_id)

    if config.max_workers == 1:
        results = [_extract_batch(config, client, vocab, event, b) for b in batches]
    else:
        with ThreadPoolExecutor(max_workers=config.max_workers) as pool:
            futures = [pool.submit(_extract_batch, config, client, vocab, event, b) for b in batches]
            results = []
            try:
                # index order, so the lowest failing batch is the one reported
                for fut in futures:
                    results.append(fut.result())
            except ClientError:
                for fut in futures:
                    fut.cancel()
                raise

    return ExtractionRun(
        event_name=event,
        model_id=config.model_id,
        batches=tuple(results),
        result=aggregate_batches(vocab, results),
        config=config,
    )
