"""HTTP service wrapping the library (FastAPI)."""

from .app import app, create_app

__all__ = ["app", "create_app"]
