"""Exception hierarchy shared by every module of the harness."""

from __future__ import annotations


class HarnessError(Exception):
    """Base class for all harness failures."""


# graph-core


class EmptyVocabulary(HarnessError, ValueError):
    def __init__(self) -> None:
        super().__init__("vocabulary must contain at least one variable")


class DuplicateVariable(HarnessError, ValueError):
    def __init__(self, name: str) -> None:
        self.name = name
        super().__init__(f"duplicate variable after normalization: {name!r}")


class UnknownVariable(HarnessError, ValueError):
    def __init__(self, name: str) -> None:
        self.name = name
        super().__init__(f"variable not in vocabulary: {name!r}")


class SelfLoop(HarnessError, ValueError):
    def __init__(self, name: str) -> None:
        self.name = name
        super().__init__(f"self-loop on {name!r} is not allowed")


class VocabularyMismatch(HarnessError, ValueError):
    def __init__(self, detail: str = "graphs are defined over different vocabularies") -> None:
        super().__init__(detail)


# reference-compiler


class RecordNotInBase(HarnessError, ValueError):
    def __init__(self, edge) -> None:
        self.edge = edge
        super().__init__(f"evidence record for {tuple(edge)!r} has no matching base-chain edge")


class InvalidRecord(HarnessError, ValueError):
    def __init__(self, reason: str, row: int | None = None) -> None:
        self.reason = reason
        self.row = row
        where = f" (row {row})" if row is not None else ""
        super().__init__(f"invalid evidence record{where}: {reason}")


# corpus


class ParseError(HarnessError, ValueError):
    def __init__(self, line: int, reason: str) -> None:
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class MissingColumn(HarnessError, ValueError):
    def __init__(self, name: str) -> None:
        self.name = name
        super().__init__(f"missing required column: {name!r}")


class InvalidBatchSize(HarnessError, ValueError):
    def __init__(self, size: int) -> None:
        self.size = size
        super().__init__(f"batch size must be >= 1, got {size}")


# extraction


class EmptyBatch(HarnessError, ValueError):
    def __init__(self) -> None:
        super().__init__("cannot render a prompt for an empty batch")


class ModelClientError(HarnessError, RuntimeError):
    """Transport, quota or protocol failure raised by a model client."""


class ClientError(HarnessError, RuntimeError):
    def __init__(self, batch_index: int, cause: BaseException | str, run_index: int | None = None) -> None:
        self.batch_index = batch_index
        self.cause = cause
        self.run_index = run_index
        where = f"run {run_index}, batch {batch_index}" if run_index is not None else f"batch {batch_index}"
        super().__init__(f"model client failed on {where}: {cause}")


# metrics


class DegenerateReference(HarnessError, ValueError):
    def __init__(self, n_nodes: int) -> None:
        self.n_nodes = n_nodes
        super().__init__(f"nSHD needs a reference with >= 2 variables, got {n_nodes}")


# stats-report


class AllRefused(HarnessError, ValueError):
    def __init__(self, label: str = "") -> None:
        self.label = label
        super().__init__(f"every run of series {label!r} was refused")


class LengthMismatch(HarnessError, ValueError):
    def __init__(self, n_a: int, n_b: int) -> None:
        super().__init__(f"paired samples differ in length: {n_a} vs {n_b}")


class TooFewSamples(HarnessError, ValueError):
    def __init__(self, n: int) -> None:
        super().__init__(f"paired t-test needs at least 2 pairs, got {n}")


class InconsistentRunCounts(HarnessError, ValueError):
    def __init__(self, counts: dict) -> None:
        self.counts = counts
        super().__init__(f"series have different run counts: {counts}")


# orchestration


class ConfigError(HarnessError, ValueError):
    pass
