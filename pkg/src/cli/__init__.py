"""Command line entry points."""

from .qid import main

__all__ = ["main"]
