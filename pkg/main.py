#!/usr/bin/env python3
"""
pneumalogic: simulate and verify pneumatic logic circuits.

This is the main entry point for the pneumalogic command line.
It uses the modular pneumalogic package for all functionality.

Usage:
    python main.py check circuits/crawler.pneu
    python main.py simulate circuits/crawler.pneu --t-end 30
    python main.py verify circuits/crawler.chart --netlist circuits/crawler.pneu

Environment Variables:
    See .env.example for the PNEUMA_* settings.
"""

import sys

import click

from pneumalogic.cli import app
from pneumalogic.config import configure_logging, get_logger

configure_logging(level="WARNING")
logger = get_logger(__name__)


def main() -> int:
    """
    Main entry point for the pneumalogic command line.

    Returns:
        Exit code of the invoked subcommand.
    """
    try:
        result = app(standalone_mode=False)
        return result if isinstance(result, int) else 0

    except click.exceptions.Exit as e:
        return e.exit_code

    except click.ClickException as e:
        e.show()
        return e.exit_code

    except click.exceptions.Abort:
        logger.info("Interrupted by user")
        return 130

    except KeyboardInterrupt:
        logger.info("Interrupted by user")
        return 130

    except Exception as e:
        logger.critical(f"Unexpected error: {e}", exc_info=True)
        return 1


if __name__ == "__main__":
    sys.exit(main())
