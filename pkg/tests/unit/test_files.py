"""
Unit tests for atomic artifact writes.
"""

from unittest.mock import patch

import pytest

from pneumalogic.utils.files import atomic_write_bytes, atomic_write_text


class TestAtomicWrite:
    """Tests for atomic_write_bytes and atomic_write_text."""

    def test_writes_content(self, tmp_path):
        target = atomic_write_text(tmp_path / "out" / "trace.csv", "t,A\n0,0\n")
        assert target.read_text() == "t,A\n0,0\n"

    def test_replaces_existing_file(self, tmp_path):
        target = tmp_path / "a.txt"
        target.write_text("old")
        atomic_write_bytes(target, b"new")
        assert target.read_bytes() == b"new"

    def test_failed_rename_leaves_no_partial_file(self, tmp_path):
        target = tmp_path / "a.txt"
        target.write_text("old")
        with patch("pneumalogic.utils.files.os.replace", side_effect=OSError("disk full")):
            with pytest.raises(OSError):
                atomic_write_text(target, "new content")
        assert target.read_text() == "old"
        assert [p.name for p in tmp_path.iterdir()] == ["a.txt"]
