"""Byte-at-a-time MurmurHash3 (x86, 32-bit).

The canonical MurmurHash3 consumes whole 4-byte blocks and only looks at the
tail once, at the end.  :class:`RollingHash` keeps the pending tail bytes in a
small window so that the finalized hash of everything pushed so far can be read
after *every* byte, which is what the Lempel-Ziv set construction needs.
"""

MASK32 = 0xFFFFFFFF
C1 = 0xCC9E2D51
C2 = 0x1B873593


def rotl32(x, r):
    return ((x << r) | (x >> (32 - r))) & MASK32


def mix_k1(k1):
    k1 = (k1 * C1) & MASK32
    k1 = rotl32(k1, 15)
    return (k1 * C2) & MASK32


def mix_h1(h1, k1):
    h1 ^= k1
    h1 = rotl32(h1, 13)
    return (h1 * 5 + 0xE6546B64) & MASK32


def fmix32(h):
    h ^= h >> 16
    h = (h * 0x85EBCA6B) & MASK32
    h ^= h >> 13
    h = (h * 0xC2B2AE35) & MASK32
    h ^= h >> 16
    return h


class RollingHash:
    """Streaming 32-bit MurmurHash3 with an O(1), non-mutating :meth:`peek`.

    >>> h = RollingHash()
    >>> h.update(b"test")
    >>> hex(h.peek())
    '0xba6bd213'
    """

    __slots__ = ("seed", "_h1", "_tail", "_tail_len", "_length")

    def __init__(self, seed=0):
        if not 0 <= seed <= MASK32:
            raise ValueError(f"seed must fit in 32 bits, got {seed}")
        self.seed = seed
        self.reset()

    def reset(self):
        self._h1 = self.seed
        self._tail = 0
        self._tail_len = 0
        self._length = 0

    def push_byte(self, b):
        self._tail |= (b & 0xFF) << (8 * self._tail_len)
        self._tail_len += 1
        self._length += 1
        if self._tail_len == 4:
            self._h1 = mix_h1(self._h1, mix_k1(self._tail))
            self._tail = 0
            self._tail_len = 0

    def update(self, data):
        for b in data:
            self.push_byte(b)

    def peek(self):
        h = self._h1
        if self._tail_len:
            h ^= mix_k1(self._tail)
        h ^= self._length & MASK32
        return fmix32(h)

    @property
    def total_length(self):
        return self._length

    @property
    def internal_state(self):
        return self._h1

    @property
    def tail_buffer(self):
        return self._tail.to_bytes(4, "little")[: self._tail_len]

    def __repr__(self):
        return f"RollingHash(seed={self.seed}, length={self._length})"
