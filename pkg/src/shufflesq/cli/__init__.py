"""CLI package exports."""

from .app import run_cli, run_repl

__all__ = ["run_cli", "run_repl"]
