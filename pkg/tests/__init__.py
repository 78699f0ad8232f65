"""
pneumalogic Test Suite

This package contains all tests for pneumalogic:
- unit/: Unit tests for each model, parser and service
- integration/: Full-horizon simulations checked against closed forms and the abstract machine
- e2e/: Command-line tests through typer's CliRunner
"""
