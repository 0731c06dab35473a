"""Run the sidecar: python -m modelserver [--config config.json]."""

from __future__ import annotations

import argparse
import logging

import uvicorn

from .app import app_from_config
from .config import load_config


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--config", default=None, help="JSON config file; env vars override")
    parser.add_argument("--host", default="127.0.0.1")
    args = parser.parse_args()

    logging.basicConfig(level=logging.INFO)
    config = load_config(args.config)
    app = app_from_config(config)
    uvicorn.run(app, host=args.host, port=config.port)


if __name__ == "__main__":
    main()
