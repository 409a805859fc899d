"""Prompt rendering for batched causal-pair extraction."""

from __future__ import annotations

import hashlib
import re

from ..corpus import PostBatch
from ..errors import EmptyBatch
from ..graph import CanonicalVocabulary

PROMPT_TEMPLATE = (
    "Task: Identify cause and effect relations from social media posts related to {EVENT}.\n"
    "Instructions:\n"
    "- If available, conduct a native social media search for posts related to {EVENT}; "
    "otherwise, rely solely on the provided posts.\n"
    "- Restrict all causes and effects to these variables: {VARIABLES}.\n"
    "- Extract causal relations that are explicitly stated or reasonably implied in the posts.\n"
    "- Represent each causal relation as a directed edge in the format of (Cause, Effect).\n"
    "Input: {POSTS}\n"
    "Output: A list of causal relations."
)

_NEWLINES = re.compile(r"\s*[\r\n]+\s*")


def format_posts(batch: PostBatch) -> str:
    # one post per line; embedded line breaks would break the numbering
    return "\n".join(
        f"{i}. {_NEWLINES.sub(' ', post.text).strip()}" for i, post in enumerate(batch.posts, 1)
    )


def render_prompt(event: str, vocab: CanonicalVocabulary, batch: PostBatch) -> str:
    if not batch.posts:
        raise EmptyBatch()
    # str.replace, not str.format: post text may contain braces
    return (
        PROMPT_TEMPLATE.replace("{EVENT}", event)
        .replace("{VARIABLES}", ", ".join(vocab.variables))
        .replace("{POSTS}", format_posts(batch))
    )


def prompt_hash(prompt: str) -> str:
    return hashlib.sha256(prompt.encode("utf-8")).hexdigest()
