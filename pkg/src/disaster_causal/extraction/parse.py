"""Parsing (Cause, Effect) pairs out of free-form model responses."""

from __future__ import annotations

import re
from typing import NamedTuple, Sequence

from ..graph import CanonicalVocabulary, DirectedEdge, normalize_name

DEFAULT_REFUSAL_PHRASES = ("cannot", "insufficient evidence", "no causal", "unable to")

# "(X, Y)" anywhere on a line; bullets, numbering and surrounding prose are ignored
_PAIR = re.compile(r"\(\s*([^(),\n]+?)\s*,\s*([^(),\n]+?)\s*\)")
_QUOTES = " \t\"'`*_“”‘’"


class Rejection(NamedTuple):
    cause_text: str
    effect_text: str
    reason: str


class ParsedResponse(NamedTuple):
    edges: list[DirectedEdge]
    rejected: list[Rejection]
    refused: bool


def normalize_variable(mention: str, vocab: CanonicalVocabulary) -> str | None:
    """Map a mention onto the vocabulary by exact normalized match, else None."""
    return vocab.lookup(mention.strip(_QUOTES))


def is_refusal(response: str, phrases: Sequence[str] = DEFAULT_REFUSAL_PHRASES) -> bool:
    text = response.casefold()
    return any(p.casefold() in text for p in phrases)


def parse_causal_pairs(
    response: str,
    vocab: CanonicalVocabulary,
    refusal_phrases: Sequence[str] = DEFAULT_REFUSAL_PHRASES,
) -> ParsedResponse:
    edges: list[DirectedEdge] = []
    rejected: list[Rejection] = []
    matches = _PAIR.findall(response)
    for raw_cause, raw_effect in matches:
        cause_text, effect_text = raw_cause.strip(_QUOTES), raw_effect.strip(_QUOTES)
        cause = normalize_variable(cause_text, vocab)
        effect = normalize_variable(effect_text, vocab)
        if cause is None or effect is None:
            missing = [side for side, v in (("cause", cause), ("effect", effect)) if v is None]
            rejected.append(Rejection(cause_text, effect_text, "unknown " + " and ".join(missing)))
        elif normalize_name(cause) == normalize_name(effect):
            rejected.append(Rejection(cause_text, effect_text, "self-loop"))
        else:
            edges.append(DirectedEdge(cause, effect))
    refused = not matches and is_refusal(response, refusal_phrases)
    return ParsedResponse(edges, rejected, refused)
