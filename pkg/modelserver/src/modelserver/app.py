"""FastAPI application exposing the embedding and generation contracts.

Wire formats (shared JSON schemas live in the repository's schemas/
directory and are validated by both this server's tests and the client's):

    POST /embed_tokens {text}                        -> {tokens, embeddings}
    POST /generate {prompt, max_tokens, temperature, seed} -> {text}
    GET  /health                                     -> {status, models}

Embedding rows are unit-normalized at this boundary; an overlong prompt
is refused with 413 carrying the token counts.
"""

from __future__ import annotations

import logging

import numpy as np
from fastapi import FastAPI
from fastapi.responses import JSONResponse
from pydantic import BaseModel, ConfigDict, Field

log = logging.getLogger(__name__)


class EmbedRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    text: str


class GenerateRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    prompt: str
    max_tokens: int = Field(ge=1)
    temperature: float | None = Field(default=None, ge=0)
    seed: int | None = None


def _unit_rows(rows: list[list[float]]) -> list[list[float]]:
    matrix = np.asarray(rows, dtype=np.float64)
    norms = np.linalg.norm(matrix, axis=1, keepdims=True)
    if np.any(norms == 0):
        raise ValueError("embedding backend produced a zero vector")
    return (matrix / norms).tolist()


def create_app(embed_backend=None, gen_backend=None) -> FastAPI:
    app = FastAPI(title="modelserver", version="0.1.0")

    @app.post("/embed_tokens")
    def embed_tokens(request: EmbedRequest):
        if embed_backend is None:
            return JSONResponse(status_code=503, content={"detail": "embedding service not enabled"})
        if not request.text:
            return {"tokens": [], "embeddings": []}
        tokens, rows = embed_backend.embed_tokens(request.text)
        if len(tokens) != len(rows):
            log.error("backend misalignment: %d tokens vs %d rows", len(tokens), len(rows))
            return JSONResponse(status_code=500, content={"detail": "token/embedding misalignment"})
        if not tokens:
            return {"tokens": [], "embeddings": []}
        return {"tokens": tokens, "embeddings": _unit_rows(rows)}

    @app.post("/generate")
    def generate(request: GenerateRequest):
        if gen_backend is None:
            return JSONResponse(status_code=503, content={"detail": "generation service not enabled"})
        limit = gen_backend.max_context_tokens
        prompt_tokens = gen_backend.count_tokens(request.prompt)
        if limit is not None and prompt_tokens > limit:
            return JSONResponse(
                status_code=413,
                content={
                    "detail": "prompt exceeds model context",
                    "prompt_tokens": prompt_tokens,
                    "max_context": limit,
                },
            )
        text = gen_backend.generate(
            request.prompt, request.max_tokens, request.temperature, request.seed
        )
        return {"text": text}

    @app.get("/health")
    def health():
        return {
            "status": "ok",
            "models": {
                "embedding": getattr(embed_backend, "model_id", None),
                "generation": getattr(gen_backend, "model_id", None),
            },
        }

    return app


def app_from_config(config) -> FastAPI:
    """Build backends described by a ServerConfig (imports models lazily)."""
    from .backends import (
        ProxyGenerationBackend,
        TransformersEmbeddingBackend,
        TransformersGenerationBackend,
    )

    embed_backend = None
    if config.embed_model:
        embed_backend = TransformersEmbeddingBackend(
            config.embed_model,
            device=config.device,
            window=config.embed_window,
            layer=config.embed_layer,
        )
    gen_backend = None
    if config.gen_model:
        gen_backend = TransformersGenerationBackend(config.gen_model, device=config.device)
    elif config.gen_proxy_url:
        gen_backend = ProxyGenerationBackend(config.gen_proxy_url)
    return create_app(embed_backend, gen_backend)
