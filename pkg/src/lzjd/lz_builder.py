"""Hashed Lempel-Ziv sub-string sets.

Sub-strings are never materialised: each one is represented by the rolling
MurmurHash3 of its bytes, and the set itself is an insert-only open-addressing
table keyed directly by those hashes.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .rolling_hash import RollingHash

INITIAL_CAPACITY = 1024
CHUNK_SIZE = 1 << 20


class HashedIntSet:
    """Insert-only set of 32-bit integers with double-hashing probes.

    Values are assumed to already be uniformly distributed, so the value is
    its own hash: the home slot is ``v & (capacity - 1)`` and the probe stride
    comes from the high bits, forced odd.  A zero slot is free; the value 0
    is tracked by a separate flag so slots stay four bytes wide.
    """

    def __init__(self, capacity=INITIAL_CAPACITY):
        if capacity < 1 or capacity & (capacity - 1):
            raise ValueError("capacity must be a positive power of two")
        self._slots = np.zeros(capacity, dtype=np.uint32)
        self._meta = np.zeros(2, dtype=np.int64)

    def insert(self, v):
        """Add ``v``; return True iff it was not already present."""
        self._slots, added = _kernels.set_insert(self._slots, self._meta, _check_u32(v))
        return bool(added)

    def __contains__(self, v):
        if not 0 <= v <= 0xFFFFFFFF:
            return False
        return bool(_kernels.set_contains(self._slots, self._meta, int(v)))

    def __len__(self):
        return int(self._meta[_kernels.META_COUNT])

    @property
    def count(self):
        return len(self)

    @property
    def capacity(self):
        return self._slots.size

    @property
    def occupied(self):
        return self._slots != 0

    def values(self):
        """Stored values as an unordered uint32 array."""
        return _kernels.set_values(self._slots, self._meta)


def _check_u32(v):
    v = int(v)
    if not 0 <= v <= 0xFFFFFFFF:
        raise ValueError(f"value {v} does not fit in 32 bits")
    return v


@dataclass(frozen=True, eq=False)
class LZSetResult:
    values: np.ndarray
    input_length: int

    @property
    def substring_count(self):
        return int(self.values.size)


def _chunks(source, chunk_size):
    if isinstance(source, (bytes, bytearray, memoryview)):
        buf = np.frombuffer(source, dtype=np.uint8)
        for i in range(0, buf.size, chunk_size):
            yield buf[i : i + chunk_size]
        return
    if isinstance(source, np.ndarray):
        buf = source.view(np.uint8).ravel()
        for i in range(0, buf.size, chunk_size):
            yield buf[i : i + chunk_size]
        return
    while True:
        block = source.read(chunk_size)
        if not block:
            return
        yield np.frombuffer(block, dtype=np.uint8)


def build_lz_set(source, hasher=None, chunk_size=CHUNK_SIZE):
    """Hashed Lempel-Ziv set of ``source`` in a single pass.

    ``source`` is bytes-like, a uint8 array, or a binary file object that is
    read sequentially in ``chunk_size`` blocks.  ``hasher`` supplies the seed;
    on return it holds the state of the trailing sub-string, which (being
    already in the set) is not added.
    """
    hasher = hasher if hasher is not None else RollingHash()
    seed = hasher.seed
    st = np.array([seed, 0, 0, 0, seed], dtype=np.int64)
    table = HashedIntSet()
    slots = table._slots
    total = 0
    for chunk in _chunks(source, chunk_size):
        slots = _kernels.lz_feed(chunk, st, slots, table._meta)
        total += chunk.size
    table._slots = slots

    hasher._h1 = int(st[_kernels.ST_H1])
    hasher._tail = int(st[_kernels.ST_TAIL])
    hasher._tail_len = int(st[_kernels.ST_TAIL_LEN])
    hasher._length = int(st[_kernels.ST_LENGTH])
    return LZSetResult(values=table.values(), input_length=total)
