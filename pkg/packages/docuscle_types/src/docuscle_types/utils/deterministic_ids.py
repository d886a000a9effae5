"""
Deterministic identifiers and seed derivation.

Same inputs give the same outputs across runs and machines:
- instance ids fingerprint a serialized (state, X, R) triple
- derived seeds give each named role of a config its own stream
"""

import hashlib
from typing import Any, Mapping

import orjson

from ..schemas.config import InstanceSpec


def _canonical(data: Mapping[str, Any]) -> bytes:
    return orjson.dumps(data, option=orjson.OPT_SORT_KEYS)


def instance_id(instance: InstanceSpec) -> str:
    """
    Fingerprint a serialized instance.

    Args:
        instance: The (state, X, R) triple

    Returns:
        ``inst_`` followed by a 32-hex-digit blake2b digest
    """
    payload = _canonical(instance.model_dump(mode="json", exclude_none=True))
    return f"inst_{hashlib.blake2b(payload, digest_size=16).hexdigest()}"


def derive_seed(seed: int, role: str) -> int:
    """
    Derive a 63-bit child seed for a named role ("state", "x", "r", ...).

    Args:
        seed: Top-level seed
        role: Role name

    Returns:
        Non-negative integer seed
    """
    if seed < 0:
        raise ValueError("seed must be non-negative")
    digest = hashlib.blake2b(
        _canonical({"seed": seed, "role": role}), digest_size=8
    ).digest()
    return int.from_bytes(digest, "big") >> 1
