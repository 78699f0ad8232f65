"""
Command-line interface for pneumalogic.

Usage:
    python main.py check circuits/crawler.pneu
    python main.py verify circuits/crawler.chart --netlist circuits/crawler.pneu
"""

from pneumalogic.cli.app import app

__all__ = ["app"]
