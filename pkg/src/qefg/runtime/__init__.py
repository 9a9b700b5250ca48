"""CLI and HTTP session service."""

from .service import app, create_app
from .strategies import make_angel_strategy, make_devil_policy

__all__ = ["app", "create_app", "make_angel_strategy", "make_devil_policy"]
