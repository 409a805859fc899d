"""Erdős–Rényi style random causal graphs over a fixed vocabulary."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .graph import CanonicalVocabulary, CausalGraph, DirectedEdge


@dataclass(frozen=True)
class BaselineConfig:
    node_probability: float = 0.5
    edge_probability: float = 0.5
    seed: int = 0

    def __post_init__(self) -> None:
        for name in ("node_probability", "edge_probability"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {p}")


def random_graph(vocab: CanonicalVocabulary, cfg: BaselineConfig) -> CausalGraph:
    """Two-stage sample: keep each variable with ``node_probability``, then
    each ordered pair of kept variables with ``edge_probability``.

    Draws happen in vocabulary order for nodes and in (cause index, effect
    index) order for edges, one ``random()`` call per candidate, so a seed
    pins the graph on every platform. Sampled nodes stay in the node set even
    when no edge touches them.
    """
    rng = random.Random(cfg.seed)
    nodes = [v for v in vocab.variables if rng.random() < cfg.node_probability]
    edges = [
        DirectedEdge(u, v)
        for u in nodes
        for v in nodes
        if u != v and rng.random() < cfg.edge_probability
    ]
    return CausalGraph(vocab, frozenset(nodes), frozenset(edges), {e: 1 for e in edges})
