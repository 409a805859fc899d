"""Social-media post corpora: loading, de-duplication, label filtering, batching."""

from __future__ import annotations

import csv
import json
import random
from collections import Counter
from dataclasses import dataclass, replace
from enum import Enum
from pathlib import Path

from .errors import InvalidBatchSize, MissingColumn, ParseError


class Label(str, Enum):
    INFORMATIVE = "informative"
    NON_INFORMATIVE = "non_informative"
    UNLABELED = "unlabeled"


# CrisisMMD/HumAID exports name these columns differently
ID_COLUMNS = ("post_id", "tweet_id", "id")
TEXT_COLUMNS = ("text", "tweet_text")
LABEL_COLUMNS = ("label", "text_info", "informativeness")

_LABEL_VALUES = {
    "informative": Label.INFORMATIVE,
    "non_informative": Label.NON_INFORMATIVE,
    "not_informative": Label.NON_INFORMATIVE,
    "non-informative": Label.NON_INFORMATIVE,
    "not informative": Label.NON_INFORMATIVE,
    "unlabeled": Label.UNLABELED,
    "": Label.UNLABELED,
}


def parse_label(value) -> Label:
    if value is None:
        return Label.UNLABELED
    label = _LABEL_VALUES.get(str(value).strip().lower())
    if label is None:
        raise ValueError(f"unrecognized label {value!r}")
    return label


@dataclass(frozen=True)
class Post:
    post_id: str
    text: str
    label: Label = Label.UNLABELED

    def __post_init__(self) -> None:
        if not self.post_id:
            raise ValueError("post_id must be non-empty")
        if not self.text.strip():
            raise ValueError("post text must be non-empty")


@dataclass(frozen=True)
class PostCorpus:
    """Ordered posts for one event.

    Loading keeps duplicates so that :func:`dedupe_posts` is an explicit,
    auditable step; ``is_deduplicated`` reports whether ids are unique.
    """

    event_name: str
    posts: tuple[Post, ...]

    def __len__(self) -> int:
        return len(self.posts)

    @property
    def post_ids(self) -> list[str]:
        return [p.post_id for p in self.posts]

    @property
    def is_deduplicated(self) -> bool:
        return len(set(self.post_ids)) == len(self.posts)


@dataclass(frozen=True)
class PostBatch:
    index: int
    posts: tuple[Post, ...]


def _pick(columns, candidates) -> str | None:
    for name in candidates:
        if name in columns:
            return name
    return None


def _make_post(line: int, raw_id, raw_text, raw_label) -> Post:
    post_id = "" if raw_id is None else str(raw_id).strip()
    if not post_id:
        raise ParseError(line, "empty post_id")
    text = "" if raw_text is None else str(raw_text)
    if not text.strip():
        raise ParseError(line, "empty text")
    try:
        label = parse_label(raw_label)
    except ValueError as exc:
        raise ParseError(line, str(exc)) from None
    return Post(post_id, text.strip(), label)


def _load_tsv(path: Path) -> list[Post]:
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh, delimiter="\t", quoting=csv.QUOTE_NONE)
        columns = reader.fieldnames or []
        id_col = _pick(columns, ID_COLUMNS)
        text_col = _pick(columns, TEXT_COLUMNS)
        if id_col is None:
            raise MissingColumn("post_id")
        if text_col is None:
            raise MissingColumn("text")
        label_col = _pick(columns, LABEL_COLUMNS)
        posts = []
        # header is line 1
        for line, row in enumerate(reader, start=2):
            if None in row:
                raise ParseError(line, "too many fields")
            posts.append(
                _make_post(line, row[id_col], row[text_col], row[label_col] if label_col else None)
            )
        return posts


def _load_jsonl(path: Path) -> list[Post]:
    posts = []
    with open(path, encoding="utf-8") as fh:
        for line, raw in enumerate(fh, start=1):
            if not raw.strip():
                continue
            try:
                row = json.loads(raw)
            except json.JSONDecodeError as exc:
                raise ParseError(line, f"invalid JSON: {exc.msg}") from None
            if not isinstance(row, dict):
                raise ParseError(line, "expected a JSON object")
            id_col = _pick(row, ID_COLUMNS)
            text_col = _pick(row, TEXT_COLUMNS)
            if id_col is None:
                raise MissingColumn("post_id")
            if text_col is None:
                raise MissingColumn("text")
            label_col = _pick(row, LABEL_COLUMNS)
            posts.append(
                _make_post(line, row[id_col], row[text_col], row[label_col] if label_col else None)
            )
    return posts


def infer_format(path: str | Path) -> str:
    suffix = Path(path).suffix.lower()
    if suffix in (".jsonl", ".ndjson"):
        return "jsonl"
    if suffix in (".tsv", ".tab", ".txt"):
        return "tsv"
    raise ValueError(f"cannot infer corpus format from {path!s}; pass format explicitly")


def load_corpus(source: str | Path, format: str | None = None, event_name: str = "") -> PostCorpus:
    path = Path(source)
    fmt = format or infer_format(path)
    if fmt == "tsv":
        posts = _load_tsv(path)
    elif fmt == "jsonl":
        posts = _load_jsonl(path)
    else:
        raise ValueError(f"unknown corpus format {fmt!r}")
    return PostCorpus(event_name or path.stem, tuple(posts))


def dedupe_posts(corpus: PostCorpus) -> PostCorpus:
    seen: set[str] = set()
    kept = []
    for post in corpus.posts:
        if post.post_id not in seen:
            seen.add(post.post_id)
            kept.append(post)
    return replace(corpus, posts=tuple(kept))


def filter_by_label(corpus: PostCorpus, keep: Label | str) -> PostCorpus:
    keep = Label(keep)
    return replace(corpus, posts=tuple(p for p in corpus.posts if p.label is keep))


def shuffle_posts(corpus: PostCorpus, seed: int) -> PostCorpus:
    # sort by random() keys: random() is the only stream Python keeps stable across versions
    rng = random.Random(seed)
    keyed = sorted((rng.random(), i) for i in range(len(corpus.posts)))
    return replace(corpus, posts=tuple(corpus.posts[i] for _, i in keyed))


def batch_posts(corpus: PostCorpus, size: int) -> list[PostBatch]:
    if size < 1:
        raise InvalidBatchSize(size)
    posts = corpus.posts
    return [
        PostBatch(i, posts[start:start + size])
        for i, start in enumerate(range(0, len(posts), size))
    ]


def corpus_stats(corpus: PostCorpus) -> dict:
    """Total rows, distinct ids, and per-label counts after de-duplication."""
    labels = Counter(p.label.value for p in dedupe_posts(corpus).posts)
    return {
        "total": len(corpus),
        "distinct_ids": len(set(corpus.post_ids)),
        "labels": {label.value: labels.get(label.value, 0) for label in Label},
    }
