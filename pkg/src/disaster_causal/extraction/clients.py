"""Model clients: a chat-completions HTTP adapter and a scripted offline mock."""

from __future__ import annotations

import os
import threading
from dataclasses import dataclass, field
from typing import Mapping, Protocol

import httpx

from ..errors import ConfigError, ModelClientError
from .prompt import prompt_hash


@dataclass(frozen=True)
class Sampling:
    temperature: float = 0.0
    max_output_tokens: int = 1024
    seed: int | None = None

    def __post_init__(self) -> None:
        if self.temperature < 0:
            raise ValueError("temperature must be >= 0")
        if self.max_output_tokens < 1:
            raise ValueError("max_output_tokens must be positive")

    def to_dict(self) -> dict:
        return {
            "temperature": self.temperature,
            "max_output_tokens": self.max_output_tokens,
            "seed": self.seed,
        }


@dataclass(frozen=True)
class PromptRequest:
    model_id: str
    prompt: str
    sampling: Sampling = field(default_factory=Sampling)
    # routing metadata for scripted clients; never sent over the wire
    batch_index: int | None = None

    def __post_init__(self) -> None:
        if not self.prompt:
            raise ValueError("prompt must be non-empty")


class ModelClient(Protocol):
    def complete(self, request: PromptRequest) -> str:
        """Return the model's text response or raise ModelClientError."""


class ScriptedClient:
    """Deterministic stand-in for a model endpoint.

    Responses are looked up by prompt SHA-256 first, then by batch index,
    then fall back to ``default``. A request with no scripted answer raises
    :class:`ModelClientError`, like a transport failure would.
    """

    def __init__(
        self,
        by_batch: Mapping[int, str] | None = None,
        by_prompt_hash: Mapping[str, str] | None = None,
        default: str | None = None,
    ) -> None:
        self.by_batch = {int(k): v for k, v in (by_batch or {}).items()}
        self.by_prompt_hash = dict(by_prompt_hash or {})
        self.default = default
        self.requests: list[PromptRequest] = []
        self._lock = threading.Lock()

    def complete(self, request: PromptRequest) -> str:
        with self._lock:
            self.requests.append(request)
        digest = prompt_hash(request.prompt)
        if digest in self.by_prompt_hash:
            return self.by_prompt_hash[digest]
        if request.batch_index is not None and request.batch_index in self.by_batch:
            return self.by_batch[request.batch_index]
        if self.default is not None:
            return self.default
        raise ModelClientError(f"no scripted response for batch {request.batch_index}")

    @classmethod
    def from_config(cls, cfg: Mapping) -> ScriptedClient:
        return cls(
            by_batch=cfg.get("by_batch"),
            by_prompt_hash=cfg.get("by_prompt_hash"),
            default=cfg.get("default"),
        )


class HttpChatClient:
    """Adapter for chat-completion style endpoints (OpenAI-compatible JSON).

    httpx.Client is thread-safe, so one instance may serve concurrent batches.
    """

    def __init__(
        self,
        endpoint: str,
        token: str | None = None,
        timeout: float = 120.0,
        transport: httpx.BaseTransport | None = None,
    ) -> None:
        headers = {"Content-Type": "application/json"}
        if token:
            headers["Authorization"] = f"Bearer {token}"
        self.endpoint = endpoint
        self._http = httpx.Client(headers=headers, timeout=timeout, transport=transport)

    @classmethod
    def from_env(cls, endpoint: str, auth_env: str | None, **kwargs) -> HttpChatClient:
        token = None
        if auth_env:
            token = os.environ.get(auth_env)
            if not token:
                raise ConfigError(f"environment variable {auth_env} is not set")
        return cls(endpoint, token, **kwargs)

    def payload(self, request: PromptRequest) -> dict:
        body = {
            "model": request.model_id,
            "messages": [{"role": "user", "content": request.prompt}],
            "temperature": request.sampling.temperature,
            "max_tokens": request.sampling.max_output_tokens,
        }
        if request.sampling.seed is not None:
            body["seed"] = request.sampling.seed
        return body

    def complete(self, request: PromptRequest) -> str:
        try:
            resp = self._http.post(self.endpoint, json=self.payload(request))
            resp.raise_for_status()
            data = resp.json()
        except httpx.HTTPStatusError as exc:
            raise ModelClientError(f"HTTP {exc.response.status_code} from {self.endpoint}") from exc
        except (httpx.HTTPError, ValueError) as exc:
            raise ModelClientError(f"{type(exc).__name__}: {exc}") from exc
        try:
            content = data["choices"][0]["message"]["content"]
        except (KeyError, IndexError, TypeError) as exc:
            raise ModelClientError("response has no choices[0].message.content") from exc
        # some endpoints return null content alongside a refusal field
        if content is None:
            content = data["choices"][0]["message"].get("refusal") or ""
        return content

    def close(self) -> None:
        self._http.close()
