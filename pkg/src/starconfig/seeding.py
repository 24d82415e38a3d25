"""Seed derivation so that every random task is reproducible from one integer."""

import hashlib


def derive_seed(seed: int, *keys) -> int:
    """Stable 64-bit seed for the task named by ``keys`` under the root ``seed``.

    Independent of ``PYTHONHASHSEED`` and of call order: the same
    ``(seed, *keys)`` always gives the same value.
    """
    text = repr((int(seed),) + tuple(keys)).encode()
    return int.from_bytes(hashlib.blake2b(text, digest_size=8).digest(), "big")
