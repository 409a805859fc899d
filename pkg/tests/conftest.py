from __future__ import annotations

import json
import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from disaster_causal.graph import CanonicalVocabulary, build_graph, make_vocabulary  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def abcd() -> CanonicalVocabulary:
    return make_vocabulary("Test", ["A", "B", "C", "D"])


def random_graph_over(vocab: CanonicalVocabulary, rng: random.Random, min_edges: int = 0):
    names = list(vocab.variables)
    pairs = [(u, v) for u in names for v in names if u != v]
    while True:
        edges = [p for p in pairs if rng.random() < rng.random()]
        if len(edges) >= min_edges:
            extra = [n for n in names if rng.random() < 0.2]
            return build_graph(vocab, edges, nodes=extra)


HURRICANE_VARS = [
    "Strong Winds",
    "Heavy Rainfall",
    "Storm Surge",
    "Flooding",
    "Building Damage",
    "Power Outage",
    "Transportation Disruption",
    "Casualties",
]


@pytest.fixture
def experiment_inputs(tmp_path) -> dict:
    """Small on-disk world: vocabulary, base chain, evidence, reference, corpus."""
    vocab = {"event_type": "Tropical Cyclone", "variables": HURRICANE_VARS}
    base_edges = [
        ["Strong Winds", "Building Damage"],
        ["Strong Winds", "Power Outage"],
        ["Heavy Rainfall", "Flooding"],
        ["Storm Surge", "Flooding"],
        ["Flooding", "Transportation Disruption"],
        ["Flooding", "Casualties"],
        ["Building Damage", "Casualties"],
        ["Power Outage", "Casualties"],
    ]
    (tmp_path / "vocab.json").write_text(json.dumps(vocab))
    (tmp_path / "base.json").write_text(json.dumps({**vocab, "edges": base_edges}))
    rows = ["cause\teffect\tquote\tsource\tlocator"]
    for cause, effect in base_edges[:-1]:
        rows.append(f"{cause}\t{effect}\t{cause} led to {effect.lower()}.\tTCR-AL112017\tp. 4")
    (tmp_path / "evidence.tsv").write_text("\n".join(rows) + "\n")

    from disaster_causal.reference import (
        load_base_chain,
        load_evidence_table,
        prune_by_evidence,
        save_reference,
    )

    ref = prune_by_evidence(
        load_base_chain(tmp_path / "base.json"),
        load_evidence_table(tmp_path / "evidence.tsv"),
        "Hurricane Irma",
    )
    save_reference(tmp_path / "reference.json", ref)

    posts = []
    for i in range(45):
        label = "informative" if i % 3 else "not_informative"
        posts.append({"post_id": f"p{i}", "text": f"post number {i} about the storm", "label": label})
    posts.append(dict(posts[0]))  # duplicate id
    (tmp_path / "posts.jsonl").write_text("\n".join(json.dumps(p) for p in posts) + "\n")
    return {"dir": tmp_path, "reference": ref}
