"""
geoproof.interface - command line front end
"""

from .cli import build_parser, demo, main, run

__all__ = ["build_parser", "demo", "main", "run"]
