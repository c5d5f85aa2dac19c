"""Digests, seed derivation, and canonical JSON.

Everything here must be a pure function of its inputs: digests and derived
seeds feed content addresses and RNG streams that are asserted byte-identical
across runs and platforms.
"""

from __future__ import annotations

import hashlib
import json

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1


def digest64(data: bytes) -> int:
    """64-bit content digest (blake2b-8, big-endian)."""
    return int.from_bytes(hashlib.blake2b(data, digest_size=8).digest(), "big")


def digest64_hex(data: bytes) -> str:
    return f"{digest64(data):016x}"


def derive_seed(*parts: object) -> int:
    """Derive a sub-seed from a master seed and a label/index path.

    Non-negative 63-bit value so it round-trips through any RNG seeding API.
    """
    raw = "\x1f".join(str(p) for p in parts).encode("utf-8")
    return digest64(raw) & INT64_MAX


def canonical_json(obj: object) -> str:
    """Sorted-key, LF-terminated JSON used for every file we write."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def parse_int_values(text: str) -> list[int]:
    """Parse whitespace-separated decimal signed 64-bit integers."""
    values = []
    for tok in text.split():
        v = int(tok)
        if not (INT64_MIN <= v <= INT64_MAX):
            raise ValueError(f"input value out of 64-bit range: {tok}")
        values.append(v)
    return values


def format_int_values(values: list[int]) -> str:
    if not values:
        return ""
    return " ".join(str(v) for v in values) + "\n"
