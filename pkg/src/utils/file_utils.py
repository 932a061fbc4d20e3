"""
S-graph Workbench - File Utilities
Helpers for reading command input and writing output and reports.
"""

import json
import sys
from pathlib import Path
from typing import Any, Optional, TextIO

from src.core.exactmath import InputError


def ensure_parent(path: Path) -> Path:
    """Create the parent directory of path if needed."""
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def write_output(text: str, path: Optional[str] = None, stream: Optional[TextIO] = None) -> None:
    """
    Write text to a file, or to stdout when no path is given.

    Args:
        text: Content to write
        path: Destination file; parent directories are created
        stream: Stream used when path is None (default sys.stdout)
    """
    if path:
        target = ensure_parent(Path(path))
        with open(target, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
        return
    (stream or sys.stdout).write(text)


def read_json_input(path: str) -> Any:
    """Load a JSON document given on the command line."""
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except OSError as e:
        raise InputError(f"Cannot read {path}: {e.strerror}") from e
    except json.JSONDecodeError as e:
        raise InputError(f"{path} is not valid JSON (line {e.lineno})") from e
