"""Batched prompting of a text-generation model and aggregation of its pairs."""

from .clients import HttpChatClient, ModelClient, PromptRequest, Sampling, ScriptedClient
from .parse import (
    DEFAULT_REFUSAL_PHRASES,
    ParsedResponse,
    Rejection,
    normalize_variable,
    parse_causal_pairs,
)
from .prompt import PROMPT_TEMPLATE, prompt_hash, render_prompt
from .run import (
    BatchExtraction,
    ExtractionRun,
    Refusal,
    RunConfig,
    aggregate_batches,
    extract_run,
)

__all__ = [
    "BatchExtraction",
    "DEFAULT_REFUSAL_PHRASES",
    "ExtractionRun",
    "HttpChatClient",
    "ModelClient",
    "PROMPT_TEMPLATE",
    "ParsedResponse",
    "PromptRequest",
    "Refusal",
    "Rejection",
    "RunConfig",
    "Sampling",
    "ScriptedClient",
    "aggregate_batches",
    "extract_run",
    "normalize_variable",
    "parse_causal_pairs",
    "prompt_hash",
    "render_prompt",
]
