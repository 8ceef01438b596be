"""Slow reference implementations used to check the fast path.

None of this is on the hashing or comparison hot path.  Inputs are expected to
fit comfortably in memory (the exact sub-string set can grow quadratically in
pathological cases).
"""

import numpy as np

from .lz_builder import build_lz_set
from .rolling_hash import RollingHash, fmix32, mix_h1, mix_k1

MAX_ORACLE_INPUT = 1 << 20


def murmur3_32(data, seed=0):
    """One-shot MurmurHash3_x86_32, straight from the block/tail/finalize layout."""
    data = bytes(data)
    n = len(data)
    nblocks = n // 4
    h1 = seed
    for i in range(nblocks):
        k1 = int.from_bytes(data[4 * i : 4 * i + 4], "little")
        h1 = mix_h1(h1, mix_k1(k1))
    tail = data[4 * nblocks :]
    if tail:
        h1 ^= mix_k1(int.from_bytes(tail, "little"))
    h1 ^= n & 0xFFFFFFFF
    return fmix32(h1)


def _check_size(data):
    if len(data) > MAX_ORACLE_INPUT:
        raise ValueError(f"oracle input of {len(data)} bytes exceeds {MAX_ORACLE_INPUT}")


def exact_lz_set(data):
    """Lempel-Ziv sub-string set with real byte strings as members."""
    data = bytes(data)
    _check_size(data)
    s = set()
    start = 0
    for end in range(1, len(data) + 1):
        sub = data[start:end]
        if sub not in s:
            s.add(sub)
            start = end
    return s


def _jaccard(sa, sb):
    union = len(sa | sb)
    if union == 0:
        return 0.0
    return len(sa & sb) / union


def exact_jaccard(a, b):
    return _jaccard(exact_lz_set(a), exact_lz_set(b))


def hashed_lz_set(data, seed=0):
    """Slow hashed LZ set: the per-byte rolling hash driven from Python."""
    h = RollingHash(seed)
    s = set()
    for b in bytes(data):
        h.push_byte(b)
        v = h.peek()
        if v not in s:
            s.add(v)
            h.reset()
    return s


def full_hash_jaccard(a, b, seed=0):
    """Jaccard over complete hashed LZ sets (no min-hash truncation)."""
    va = build_lz_set(a, RollingHash(seed)).values
    vb = build_lz_set(b, RollingHash(seed)).values
    return full_set_jaccard(va, vb)


def _sorted(v):
    v = np.asarray(v, dtype=np.uint32)
    if v.size > 1 and not np.all(v[1:] > v[:-1]):
        v = np.unique(v)
    return v


def full_set_jaccard(va, vb):
    """Jaccard of two complete hash sets, counted by binary search (not a merge)."""
    va, vb = _sorted(va), _sorted(vb)
    if va.size > vb.size:
        va, vb = vb, va
    if vb.size == 0:
        inter = 0
    else:
        pos = np.minimum(np.searchsorted(vb, va), vb.size - 1)
        inter = int(np.count_nonzero(vb[pos] == va))
    union = va.size + vb.size - inter
    return inter / union if union else 0.0
