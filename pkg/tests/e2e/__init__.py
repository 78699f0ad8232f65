"""
End-to-end tests for pneumalogic.

E2E tests:
- Drive the command line from netlist and chart files to exit codes
- Check the files each subcommand writes
- Are marked with @pytest.mark.e2e
"""
