"""HTTP service exposing the evaluation, sweep, reproduction, and
verification machinery; the CLI is a thin client of this app."""

from .app import create_app

__all__ = ["create_app"]
