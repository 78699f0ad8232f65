"""
Integration tests for pneumalogic.

Integration tests:
- Simulate the reference circuits over full horizons
- Compare against closed-form switching times and the abstract machine
- Are marked with @pytest.mark.integration
"""
