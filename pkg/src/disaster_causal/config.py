"""Declarative experiment configuration (YAML or JSON)."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

import yaml

from .errors import ConfigError
from .extraction.parse import DEFAULT_REFUSAL_PHRASES

MODES = ("main", "ablation", "baseline")
CLIENT_KINDS = ("http", "mock")


@dataclass(frozen=True)
class ModelConfig:
    client: str = "mock"
    model_id: str = "mock"
    endpoint: str | None = None
    auth_env: str | None = None
    timeout: float = 120.0
    # scripted responses for the mock client
    responses: Mapping[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict:
        data = {
            "client": self.client,
            "model_id": self.model_id,
            "endpoint": self.endpoint,
            "auth_env": self.auth_env,
            "timeout": self.timeout,
        }
        if self.client == "mock":
            data["responses"] = _plain(self.responses)
        return data


@dataclass(frozen=True)
class ExperimentConfig:
    event_name: str
    vocab_file: Path
    reference_file: Path
    corpus_file: Path | None = None
    corpus_format: str | None = None
    label: str = ""
    mode: str = "main"
    ablation_label: str = "non_informative"
    model: ModelConfig = field(default_factory=ModelConfig)
    batch_size: int = 20
    runs: int = 10
    seed: int = 0
    shuffle_batches: bool = False
    temperature: float = 0.0
    max_output_tokens: int = 1024
    refusal_phrases: tuple[str, ...] = DEFAULT_REFUSAL_PHRASES
    max_workers: int = 1
    parallel_runs: int = 1
    std: str = "population"
    p_node: float = 0.5
    p_edge: float = 0.5
    base_dir: Path = field(default=Path("."), compare=False)

    @property
    def condition_label(self) -> str:
        if self.label:
            return self.label
        if self.mode == "baseline":
            return "random"
        if self.mode == "ablation":
            return f"{self.model.model_id}-ablation"
        return self.model.model_id

    @property
    def ddof(self) -> int:
        return 0 if self.std == "population" else 1

    def path(self, p: Path) -> Path:
        return p if p.is_absolute() else self.base_dir / p

    def validate(self, check_files: bool = True) -> None:
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.model.client not in CLIENT_KINDS:
            raise ConfigError(f"model.client must be one of {CLIENT_KINDS}")
        if self.batch_size < 1:
            raise ConfigError("batch_size must be >= 1")
        if self.runs < 1:
            raise ConfigError("runs must be >= 1")
        if self.max_workers < 1 or self.parallel_runs < 1:
            raise ConfigError("max_workers and parallel_runs must be >= 1")
        if self.std not in ("population", "sample"):
            raise ConfigError("std must be 'population' or 'sample'")
        if self.mode != "baseline":
            if self.corpus_file is None:
                raise ConfigError("corpus_file is required outside baseline mode")
            if self.model.client == "http" and not self.model.endpoint:
                raise ConfigError("model.endpoint is required for the http client")
        if check_files:
            for name in ("vocab_file", "reference_file", "corpus_file"):
                p = getattr(self, name)
                if p is not None and not self.path(p).is_file():
                    raise ConfigError(f"{name} not found: {self.path(p)}")

    def snapshot(self) -> dict:
        """Resolved configuration with input digests; the token value never appears."""
        inputs = {}
        for name in ("vocab_file", "reference_file", "corpus_file"):
            p = getattr(self, name)
            if p is not None:
                inputs[name] = {"path": str(p), "sha256": file_digest(self.path(p))}
        return {
            "event_name": self.event_name,
            "label": self.condition_label,
            "mode": self.mode,
            "ablation_label": self.ablation_label if self.mode == "ablation" else None,
            "inputs": inputs,
            "corpus_format": self.corpus_format,
            "model": self.model.to_dict() if self.mode != "baseline" else None,
            "batch_size": self.batch_size,
            "runs": self.runs,
            "seed": self.seed,
            "run_seeds": [self.seed + r for r in range(self.runs)],
            "shuffle_batches": self.shuffle_batches,
            "sampling": {"temperature": self.temperature, "max_output_tokens": self.max_output_tokens},
            "refusal_phrases": list(self.refusal_phrases),
            "max_workers": self.max_workers,
            "parallel_runs": self.parallel_runs,
            "std": self.std,
            "baseline": {"p_node": self.p_node, "p_edge": self.p_edge} if self.mode == "baseline" else None,
        }

    def experiment_id(self) -> str:
        blob = json.dumps(self.snapshot(), sort_keys=True, ensure_ascii=False).encode("utf-8")
        return hashlib.sha256(blob).hexdigest()[:12]


def _plain(obj):
    if isinstance(obj, Mapping):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    return obj


def file_digest(path: Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


_TOP_KEYS = {f for f in ExperimentConfig.__dataclass_fields__ if f != "base_dir"} | {
    "sampling", "baseline",
}


def config_from_mapping(data: Mapping, base_dir: Path = Path(".")) -> ExperimentConfig:
    unknown = set(data) - _TOP_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    kwargs = dict(data)
    for key in ("event_name", "vocab_file", "reference_file"):
        if key not in kwargs:
            raise ConfigError(f"missing required key {key!r}")
    model = kwargs.pop("model", {}) or {}
    try:
        kwargs["model"] = ModelConfig(**model)
    except TypeError as exc:
        raise ConfigError(f"bad model section: {exc}") from None
    sampling = kwargs.pop("sampling", None) or {}
    kwargs.setdefault("temperature", sampling.get("temperature", 0.0))
    kwargs.setdefault("max_output_tokens", sampling.get("max_output_tokens", 1024))
    baseline = kwargs.pop("baseline", None) or {}
    kwargs.setdefault("p_node", baseline.get("p_node", 0.5))
    kwargs.setdefault("p_edge", baseline.get("p_edge", 0.5))
    for key in ("vocab_file", "reference_file", "corpus_file"):
        if kwargs.get(key) is not None:
            kwargs[key] = Path(kwargs[key])
    if "refusal_phrases" in kwargs:
        kwargs["refusal_phrases"] = tuple(kwargs["refusal_phrases"])
    return ExperimentConfig(base_dir=base_dir, **kwargs)


def load_config(path: str | Path) -> ExperimentConfig:
    path = Path(path)
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        data = json.loads(text) if path.suffix == ".json" else yaml.safe_load(text)
    except (json.JSONDecodeError, yaml.YAMLError) as exc:
        raise ConfigError(f"cannot parse {path}: {exc}") from None
    if not isinstance(data, Mapping):
        raise ConfigError(f"{path} must hold a mapping")
    return config_from_mapping(data, path.parent)
