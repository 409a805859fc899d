import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from disaster_causal.errors import InvalidRecord, MissingColumn, RecordNotInBase
from disaster_causal.graph import DirectedEdge, build_graph, make_vocabulary
from disaster_causal.reference import (
    BaseChain,
    EvidenceRecord,
    ReferenceGraph,
    load_base_chain,
    load_evidence_table,
    prune_by_evidence,
    validate_table,
    write_evidence_table,
)

VOCAB = make_vocabulary("Tropical Cyclone", ["A", "B", "C", "D"])


def chain(*edges) -> BaseChain:
    return BaseChain(VOCAB, build_graph(VOCAB, edges).edges)


def rec(cause, effect, quote="supported", source="report", locator="p. 1"):
    return EvidenceRecord(cause, effect, quote, source, locator)


def test_prune_keeps_supported_edges():
    base = chain(("A", "B"), ("B", "C"), ("A", "C"))
    ref = prune_by_evidence(base, [rec("A", "B"), rec("B", "C")])
    assert ref.graph.edges == {DirectedEdge("A", "B"), DirectedEdge("B", "C")}
    assert ref.graph.nodes == {"A", "B", "C"}


def test_prune_empty_table():
    ref = prune_by_evidence(chain(("A", "B")), [])
    assert not ref.graph.edges and not ref.graph.nodes


def test_direction_matters():
    with pytest.raises(RecordNotInBase) as info:
        prune_by_evidence(chain(("A", "B")), [rec("B", "A")])
    assert tuple(info.value.edge) == ("B", "A")


def test_multiple_records_preserved():
    base = chain(("A", "B"))
    ref = prune_by_evidence(base, [rec("A", "B", "first"), rec("a", "b", "second")])
    assert [r.quote for r in ref.evidence[DirectedEdge("A", "B")]] == ["first", "second"]


@pytest.mark.parametrize(
    "record, kind",
    [
        (rec("A", "B", quote="  "), "EmptyQuote"),
        (rec("A", "Z"), "UnknownVariable"),
        (rec("A", "A"), "SelfLoop"),
        (rec("B", "A"), "NotInBase"),
    ],
)
def test_validate_flags_one_problem(record, kind):
    base = chain(("A", "B"))
    problems = validate_table(base, [rec("A", "B"), record])
    assert [(p.row, p.kind) for p in problems] == [(1, kind)]


def test_validate_clean_table():
    assert validate_table(chain(("A", "B"), ("B", "C")), [rec("A", "B"), rec("B", "C")]) == []


def test_prune_rejects_invalid_records():
    with pytest.raises(InvalidRecord):
        prune_by_evidence(chain(("A", "B")), [rec("A", "B", quote="")])
    with pytest.raises(InvalidRecord):
        prune_by_evidence(chain(("A", "B")), [rec("A", "Q")])


def test_files_round_trip(tmp_path):
    base_file = tmp_path / "base.json"
    base_file.write_text(json.dumps({**VOCAB.to_dict(), "edges": [["A", "B"], ["B", "C"]]}))
    base = load_base_chain(base_file)
    table = [rec("A", "B", "Winds toppled trees", "NOAA TCR", "p. 12")]
    write_evidence_table(tmp_path / "ev.tsv", table)
    assert load_evidence_table(tmp_path / "ev.tsv") == table
    ref = prune_by_evidence(base, table, "Hurricane Irma")
    back = ReferenceGraph.from_dict(json.loads(json.dumps(ref.to_dict())))
    assert back.event_name == "Hurricane Irma"
    assert back.graph == ref.graph
    assert back.evidence == ref.evidence


def test_evidence_table_missing_column(tmp_path):
    path = tmp_path / "ev.tsv"
    path.write_text("cause\teffect\tsource\nA\tB\tx\n")
    with pytest.raises(MissingColumn):
        load_evidence_table(path)


PAIRS = [(u, v) for u in "ABCD" for v in "ABCD" if u != v]


@st.composite
def base_and_table(draw):
    base_edges = draw(st.lists(st.sampled_from(PAIRS), unique=True, max_size=12))
    base = chain(*base_edges)
    table = []
    if base_edges:
        picks = draw(st.lists(st.sampled_from(base_edges), max_size=20))
        table = [rec(c, e, f"quote {i}") for i, (c, e) in enumerate(picks)]
    return base, table


@settings(max_examples=200)
@given(base_and_table())
def test_prune_never_invents_edges(data):
    base, table = data
    ref = prune_by_evidence(base, table)
    assert ref.graph.edges <= base.edges
    assert set(ref.evidence) == set(ref.graph.edges)
    assert all(ref.evidence[e] for e in ref.graph.edges)


@settings(max_examples=200)
@given(base_and_table(), st.data())
def test_more_evidence_never_removes_edges(data, extra):
    base, table = data
    before = prune_by_evidence(base, table).graph.edges
    if base.edges:
        more = extra.draw(st.lists(st.sampled_from(sorted(base.edges)), max_size=5))
        table = table + [rec(e.cause, e.effect) for e in more]
    assert before <= prune_by_evidence(base, table).graph.edges


@settings(max_examples=100)
@given(base_and_table())
def test_serialization_lossless(data):
    base, table = data
    ref = prune_by_evidence(base, table, "E")
    back = ReferenceGraph.from_dict(json.loads(json.dumps(ref.to_dict())))
    assert (back.graph.edges, back.graph.nodes, back.evidence) == (
        ref.graph.edges, ref.graph.nodes, ref.evidence)
