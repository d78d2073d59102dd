"""HTTP layer: a FastAPI app exposing banks, scoring, and retrieval."""

from .app import app

__all__ = ["app"]
