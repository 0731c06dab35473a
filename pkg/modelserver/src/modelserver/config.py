"""Server configuration from a JSON file and/or environment variables."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path

ENV_PREFIX = "MODELSERVER_"


@dataclass
class ServerConfig:
    embed_model: str | None = None
    gen_model: str | None = None
    gen_proxy_url: str | None = None
    port: int = 8088
    device: str = "cpu"
    max_batch_size: int = 8
    embed_window: int | None = None  # None -> model maximum
    embed_layer: int = -1  # hidden-state index fed to /embed_tokens

    def __post_init__(self):
        if self.gen_model and self.gen_proxy_url:
            raise ValueError("configure either gen_model or gen_proxy_url, not both")
        if not (self.embed_model or self.gen_model or self.gen_proxy_url):
            raise ValueError("at least one of the embedding/generation services must be enabled")
        if self.port < 1:
            raise ValueError(f"port must be positive, got {self.port}")


def load_config(path: str | Path | None = None) -> ServerConfig:
    """File values first, then environment overrides."""
    data: dict = {}
    if path is not None:
        data.update(json.loads(Path(path).read_text(encoding="utf-8")))
    env_map = {
        "embed_model": str,
        "gen_model": str,
        "gen_proxy_url": str,
        "port": int,
        "device": str,
        "max_batch_size": int,
        "embed_window": int,
        "embed_layer": int,
    }
    for key, cast in env_map.items():
        raw = os.environ.get(ENV_PREFIX + key.upper())
        if raw is not None:
            data[key] = cast(raw)
    return ServerConfig(**data)
