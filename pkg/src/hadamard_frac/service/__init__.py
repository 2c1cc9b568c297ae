"""HTTP front end for the package: pydantic schemas and the FastAPI app."""

from .app import app, create_app

__all__ = ["app", "create_app"]
