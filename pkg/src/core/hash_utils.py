"""
S-graph Workbench - Hash Utilities
BLAKE2b fingerprints for reports and work units.
"""

import json
from typing import Any

from nacl.hash import blake2b
from nacl.encoding import RawEncoder


def compute_digest(data: bytes, digest_size: int = 32) -> str:
    """
    Hash a byte string.

    Args:
        data: Bytes to hash
        digest_size: Digest length in bytes

    Returns:
        Hex-encoded BLAKE2b hash
    """
    return blake2b(data, digest_size=digest_size, encoder=RawEncoder).hex()


def canonical_json(payload: Any) -> bytes:
    """Deterministic JSON encoding (sorted keys, no whitespace)."""
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False).encode("utf-8")


def digest_json(payload: Any) -> str:
    """Digest of the canonical JSON form of payload."""
    return compute_digest(canonical_json(payload))


def fingerprint(payload: Any) -> str:
    """Short fingerprint used to name work units."""
    return compute_digest(canonical_json(payload), digest_size=8)


def format_duration(seconds: float) -> str:
    """
    Format a duration for progress output.

    Args:
        seconds: Elapsed or remaining time

    Returns:
        String such as "42s", "3m 07s" or "1h 05m"
    """
    if seconds < 0:
        return "-"
    total = int(seconds)
    if total < 60:
        return f"{total}s"
    if total < 3600:
        return f"{total // 60}m {total % 60:02d}s"
    return f"{total // 3600}h {(total % 3600) // 60:02d}m"
