"""Compiled inner loops.

Everything here works on plain numpy arrays so the Python-facing classes stay
thin.  Arithmetic is done in int64 and masked to 32 bits; products may wrap,
which leaves the low 32 bits intact.
"""

import numpy as np
from numba import njit

M32 = 0xFFFFFFFF
C1 = 0xCC9E2D51
C2 = 0x1B873593
MAX_LOAD = 0.7

# rolling state layout: [h1, tail, tail_len, length, seed]
ST_H1, ST_TAIL, ST_TAIL_LEN, ST_LENGTH, ST_SEED = range(5)


@njit(inline="always")
def _rotl(x, r):
    return ((x << r) | (x >> (32 - r))) & M32


@njit(inline="always")
def _mix_k1(k1):
    k1 = (k1 * C1) & M32
    k1 = _rotl(k1, 15)
    return (k1 * C2) & M32


@njit(inline="always")
def _mix_h1(h1, k1):
    h1 ^= k1
    h1 = _rotl(h1, 13)
    return (h1 * 5 + 0xE6546B64) & M32


@njit(inline="always")
def _fmix(h):
    h ^= h >> 16
    h = (h * 0x85EBCA6B) & M32
    h ^= h >> 13
    h = (h * 0xC2B2AE35) & M32
    h ^= h >> 16
    return h


# Set layout: uint32 slots where 0 marks a free slot, plus meta = [count,
# zero_present].  The value 0 itself lives only in the flag.
META_COUNT, META_ZERO = 0, 1


@njit(inline="always")
def _probe(slots, v):
    """Slot index holding ``v`` (non-zero) or the free slot where it belongs."""
    mask = slots.size - 1
    idx = v & mask
    step = ((v >> 16) | 1) & mask
    while True:
        s = np.int64(slots[idx])
        if s == v or s == 0:
            return idx
        idx = (idx + step) & mask


@njit(cache=True, nogil=True)
def grow(slots):
    new_slots = np.zeros(slots.size * 2, dtype=np.uint32)
    for i in range(slots.size):
        v = np.int64(slots[i])
        if v != 0:
            new_slots[_probe(new_slots, v)] = v
    return new_slots


@njit(inline="always")
def _insert(slots, meta, v):
    if v == 0:
        if meta[META_ZERO]:
            return slots, False
        meta[META_ZERO] = 1
        meta[META_COUNT] += 1
        return slots, True
    j = _probe(slots, v)
    if slots[j] != 0:
        return slots, False
    slots[j] = v
    meta[META_COUNT] += 1
    if meta[META_COUNT] > MAX_LOAD * slots.size:
        slots = grow(slots)
    return slots, True


@njit(cache=True, nogil=True)
def set_insert(slots, meta, v):
    """Insert ``v``; returns (slots, added)."""
    return _insert(slots, meta, v)


@njit(cache=True, nogil=True)
def set_contains(slots, meta, v):
    if v == 0:
        return meta[META_ZERO] == 1
    return slots[_probe(slots, v)] != 0


@njit(cache=True, nogil=True)
def set_values(slots, meta):
    out = np.empty(meta[META_COUNT], dtype=np.uint32)
    n = 0
    if meta[META_ZERO]:
        out[0] = 0
        n = 1
    for i in range(slots.size):
        if slots[i] != 0:
            out[n] = slots[i]
            n += 1
    return out


@njit(cache=True, nogil=True)
def lz_feed(data, st, slots, meta):
    """Run the Lempel-Ziv set loop over one chunk of bytes.

    Every byte extends the current sub-string; the running hash of that
    sub-string is looked up and, when new, inserted and the hasher restarted.
    State in ``st`` and ``meta`` is carried across chunks.
    """
    h1 = st[ST_H1]
    tail = st[ST_TAIL]
    tail_len = st[ST_TAIL_LEN]
    length = st[ST_LENGTH]
    seed = st[ST_SEED]
    mask = slots.size - 1
    limit = MAX_LOAD * slots.size
    for i in range(data.size):
        tail |= np.int64(data[i]) << (8 * tail_len)
        tail_len += 1
        length += 1
        if tail_len == 4:
            h1 = _mix_h1(h1, _mix_k1(tail))
            tail = 0
            tail_len = 0
        h = h1
        if tail_len:
            h ^= _mix_k1(tail)
        h ^= length & M32
        h = _fmix(h)
        if h == 0:
            added = meta[META_ZERO] == 0
            if added:
                meta[META_ZERO] = 1
                meta[META_COUNT] += 1
        else:
            idx = h & mask
            step = ((h >> 16) | 1) & mask
            while True:
                s = np.int64(slots[idx])
                if s == h or s == 0:
                    break
                idx = (idx + step) & mask
            added = s == 0
            if added:
                slots[idx] = h
                meta[META_COUNT] += 1
                if meta[META_COUNT] > limit:
                    slots = grow(slots)
                    mask = slots.size - 1
                    limit = MAX_LOAD * slots.size
        if added:
            h1 = seed
            tail = 0
            tail_len = 0
            length = 0
    st[ST_H1] = h1
    st[ST_TAIL] = tail
    st[ST_TAIL_LEN] = tail_len
    st[ST_LENGTH] = length
    return slots


@njit(cache=True, nogil=True)
def intersection_size(a, b):
    """Two-pointer merge walk over ascending arrays.

    Steps are the usual ones (advance the smaller side, both on a match) but
    written as arithmetic on comparison results so the loop has no
    data-dependent branches.
    """
    pa = 0
    pb = 0
    size = 0
    na = a.size
    nb = b.size
    while pa < na and pb < nb:
        x = a[pa]
        y = b[pb]
        size += x == y
        pa += x <= y
        pb += x >= y
    return size


@njit(cache=True, nogil=True)
def pairwise_intersections(vals_a, lens_a, vals_b, lens_b, rows, upper):
    """Intersection sizes for row indices ``rows`` of A against all of B.

    ``vals_*`` are zero-padded (n, k) matrices of ascending values.  With
    ``upper`` set, only columns j > i are filled (A and B are the same set).
    """
    out = np.zeros((rows.size, lens_b.size), dtype=np.int64)
    for r in range(rows.size):
        i = rows[r]
        a = vals_a[i, : lens_a[i]]
        start = i + 1 if upper else 0
        for j in range(start, lens_b.size):
            out[r, j] = intersection_size(a, vals_b[j, : lens_b[j]])
    return out
