"""Deterministic seed derivation for ensembles.

Every random stream is keyed by ``(master_seed, *keys)`` so that any single
instance can be regenerated in isolation and results do not depend on how
work is split across processes.
"""

import hashlib

import numpy as np


def derive_seed(master_seed, *keys):
    """Stable 64-bit seed from a master seed and an arbitrary key path."""
    text = "\x1f".join(str(k) for k in (int(master_seed),) + keys)
    digest = hashlib.blake2b(text.encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "little")


def make_rng(seed):
    return np.random.default_rng(int(seed))
