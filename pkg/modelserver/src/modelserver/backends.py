"""Model backends behind the HTTP endpoints.

Transformer imports are deferred into the constructors so the app (and
its contract tests) can run without torch installed. The generation
service can alternatively proxy an OpenAI-compatible completion server.
"""

from __future__ import annotations

import logging
from typing import Protocol

log = logging.getLogger(__name__)


class EmbeddingBackend(Protocol):
    model_id: str

    def embed_tokens(self, text: str) -> tuple[list[str], list[list[float]]]: ...


class GenerationBackend(Protocol):
    model_id: str
    max_context_tokens: int | None

    def count_tokens(self, text: str) -> int: ...

    def generate(self, prompt: str, max_tokens: int, temperature: float | None, seed: int | None) -> str: ...


class TransformersEmbeddingBackend:
    """Token embeddings from a bidirectional encoder, one chosen layer.

    ``layer`` indexes the hidden-state stack (-1 = last layer, the
    default). Texts longer than the window are split into consecutive
    windows whose embeddings are concatenated, keeping tokens aligned 1:1
    with rows.
    """

    def __init__(
        self,
        model_id: str = "bert-base-uncased",
        device: str = "cpu",
        window: int | None = None,
        layer: int = -1,
    ):
        import torch
        from transformers import AutoModel, AutoTokenizer

        self._torch = torch
        self.model_id = model_id
        self.layer = layer
        self._tokenizer = AutoTokenizer.from_pretrained(model_id, use_fast=True)
        self._model = AutoModel.from_pretrained(model_id).to(device).eval()
        self._device = device
        model_max = getattr(self._tokenizer, "model_max_length", 512)
        self.window = min(window or model_max, model_max) - 2  # leave room for specials

    def embed_tokens(self, text: str) -> tuple[list[str], list[list[float]]]:
        ids = self._tokenizer.encode(text, add_special_tokens=False)
        if not ids:
            return [], []
        tokens: list[str] = []
        rows: list[list[float]] = []
        with self._torch.no_grad():
            for start in range(0, len(ids), self.window):
                chunk = ids[start : start + self.window]
                batch = self._torch.tensor([chunk], device=self._device)
                output = self._model(input_ids=batch, output_hidden_states=True)
                hidden = output.hidden_states[self.layer][0]
                tokens.extend(self._tokenizer.convert_ids_to_tokens(chunk))
                rows.extend(hidden.cpu().double().tolist())
        return tokens, rows


class TransformersGenerationBackend:
    """Local causal LM; returns the decoded continuation only."""

    def __init__(self, model_id: str, device: str = "cpu"):
        import torch
        from transformers import AutoModelForCausalLM, AutoTokenizer

        self._torch = torch
        self.model_id = model_id
        self._tokenizer = AutoTokenizer.from_pretrained(model_id, use_fast=True)
        self._model = AutoModelForCausalLM.from_pretrained(model_id).to(device).eval()
        self._device = device
        self.max_context_tokens = int(
            getattr(self._model.config, "max_position_embeddings", None)
            or self._tokenizer.model_max_length
        )

    def count_tokens(self, text: str) -> int:
        return len(self._tokenizer.encode(text))

    def generate(self, prompt: str, max_tokens: int, temperature: float | None, seed: int | None) -> str:
        if seed is not None:
            self._torch.manual_seed(seed)
        inputs = self._tokenizer(prompt, return_tensors="pt").to(self._device)
        do_sample = bool(temperature and temperature > 0)
        kwargs = {"max_new_tokens": max_tokens, "do_sample": do_sample}
        if do_sample:
            kwargs["temperature"] = temperature
        with self._torch.no_grad():
            output = self._model.generate(**inputs, **kwargs)
        continuation = output[0][inputs["input_ids"].shape[1]:]
        return self._tokenizer.decode(continuation, skip_special_tokens=True)


class ProxyGenerationBackend:
    """Forwards generation to an OpenAI-compatible completion endpoint.

    Token counting falls back to a whitespace estimate because the remote
    tokenizer is not available locally.
    """

    def __init__(
        self,
        base_url: str,
        model: str = "default",
        path: str = "/v1/completions",
        max_context_tokens: int | None = None,
        timeout: float = 120.0,
        transport=None,
    ):
        import httpx

        self.model_id = f"proxy:{model}"
        self.max_context_tokens = max_context_tokens
        self._model = model
        self._path = path
        self._client = httpx.Client(base_url=base_url, timeout=timeout, transport=transport)

    def count_tokens(self, text: str) -> int:
        return len(text.split())

    def generate(self, prompt: str, max_tokens: int, temperature: float | None, seed: int | None) -> str:
        body = {"model": self._model, "prompt": prompt, "max_tokens": max_tokens}
        if temperature is not None:
            body["temperature"] = temperature
        if seed is not None:
            body["seed"] = seed
        response = self._client.post(self._path, json=body)
        response.raise_for_status()
        payload = response.json()
        return payload["choices"][0]["text"]
