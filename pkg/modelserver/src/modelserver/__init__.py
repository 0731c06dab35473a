"""Reference sidecar for the RAG evaluation harness.

Serves the two HTTP contracts the harness consumes over real transformer
models: POST /embed_tokens (per-token unit vectors) and POST /generate
(decoded continuation only), plus GET /health.
"""

__version__ = "0.1.0"
