"""
geoproof - Main Entry Point
===========================

Usage:
    python -m geoproof <verb> [options]
    python geoproof/main.py <verb> [options]

Run ``python -m geoproof --help`` for the verbs.
"""

import os
import sys

# Add parent directory to path for imports
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from geoproof.interface.cli import main


if __name__ == "__main__":
    main()
