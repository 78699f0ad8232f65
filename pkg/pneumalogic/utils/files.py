"""
Artifact file helpers.

Every artifact the command line writes goes through ``atomic_write_*``: the
content is written to a temporary file in the target directory and renamed
into place, so an interrupted run never leaves a truncated file behind.
"""

import os
import tempfile
from pathlib import Path
from typing import Union

from pneumalogic.config import get_logger

logger = get_logger(__name__)

PathLike = Union[str, Path]


def atomic_write_bytes(path: PathLike, data: bytes) -> Path:
    """
    Write ``data`` to ``path`` via write-then-rename.

    Args:
        path: Destination file.
        data: File content.

    Returns:
        The destination path.
    """
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(prefix=f".{target.name}.", suffix=".tmp", dir=target.parent)
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data)
            handle.flush()
            os.fsync(handle.fileno())
        os.replace(tmp_name, target)
    except BaseException:
        Path(tmp_name).unlink(missing_ok=True)
        raise
    logger.debug(f"Wrote {len(data)} bytes to {target}")
    return target


def atomic_write_text(path: PathLike, text: str, encoding: str = "utf-8") -> Path:
    """Write ``text`` to ``path`` via write-then-rename."""
    return atomic_write_bytes(path, text.encode(encoding))
