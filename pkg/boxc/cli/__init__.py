"""CLI interface for boxc."""

from boxc.cli.main import main

__all__ = ["main"]
