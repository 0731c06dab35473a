#!/usr/bin/env python3
"""Smoke-check a running sidecar (documented, not CI-gated).

Usage: python scripts/live_check.py [--url http://127.0.0.1:8088]

Verifies /health, unit-norm and alignment of /embed_tokens, determinism
of repeated embedding calls, that /generate returns a non-empty
continuation honoring max_tokens, and the 413 behaviour for an overlong
prompt when the backend advertises a context limit.
"""

from __future__ import annotations

import argparse
import math
import sys

import httpx


def check(label: str, ok: bool) -> bool:
    print(f"{'PASS' if ok else 'FAIL'}: {label}")
    return ok


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--url", default="http://127.0.0.1:8088")
    args = parser.parse_args()
    client = httpx.Client(base_url=args.url, timeout=300.0)

    health = client.get("/health").json()
    ok = check(f"health reports models {health.get('models')}", health.get("status") == "ok")

    models = health.get("models", {})
    if models.get("embedding"):
        first = client.post("/embed_tokens", json={"text": "relevance survives transmission"}).json()
        second = client.post("/embed_tokens", json={"text": "relevance survives transmission"}).json()
        aligned = len(first["tokens"]) == len(first["embeddings"]) > 0
        norms = [math.sqrt(sum(x * x for x in row)) for row in first["embeddings"]]
        unit = all(abs(n - 1.0) <= 1e-6 for n in norms)
        ok &= check("embed rows aligned with tokens", aligned)
        ok &= check("embed rows unit-normalized within 1e-6", unit)
        ok &= check("embedding deterministic across calls", first == second)

    if models.get("generation"):
        body = {"prompt": "Question: what is a sigmet\nAnswer:", "max_tokens": 32, "seed": 7}
        reply = client.post("/generate", json=body)
        payload = reply.json()
        ok &= check("generate returns non-empty text", reply.status_code == 200 and bool(payload.get("text")))
        overlong = client.post(
            "/generate", json={"prompt": "word " * 200_000, "max_tokens": 8}
        )
        ok &= check(
            "overlong prompt refused with 413 and token counts",
            overlong.status_code == 413 and "prompt_tokens" in overlong.json(),
        )

    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
