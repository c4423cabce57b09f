"""Command-line interface for ReweightKit."""

from reweightpack.cli.app import app, main

__all__ = ["app", "main"]
