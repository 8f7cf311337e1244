"""Command-line entry point (`faberhurwitz`)."""

from faberhurwitz.cli.main import build_parser, main, run

__all__ = ["build_parser", "main", "run"]
