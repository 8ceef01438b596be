import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lzjd.oracle import murmur3_32
from lzjd.rolling_hash import RollingHash

# published MurmurHash3_x86_32 vectors
KNOWN = [
    (b"", 0, 0x00000000),
    (b"", 1, 0x514E28B7),
    (b"", 0xFFFFFFFF, 0x81F16F39),
    (b"test", 0, 0xBA6BD213),
    (b"Hello, world!", 1234, 0xFAF6CDB3),
    (b"The quick brown fox jumps over the lazy dog", 0, 0x2E4FF723),
]


def streamed(data, seed=0):
    h = RollingHash(seed)
    for b in data:
        h.push_byte(b)
    return h.peek()


@pytest.mark.parametrize("data,seed,expected", KNOWN)
def test_known_vectors(data, seed, expected):
    assert streamed(data, seed) == expected
    assert murmur3_32(data, seed) == expected


def test_block_boundary():
    h = RollingHash()
    h.update(b"abcd")
    assert h.total_length == 4
    assert h.tail_buffer == b""
    assert h.internal_state != 0
    h.push_byte(ord("e"))
    assert h.tail_buffer == b"e"


def test_tail_tracks_length_mod_4():
    h = RollingHash()
    for i in range(11):
        assert len(h.tail_buffer) == i % 4
        h.push_byte(i)


def test_peek_is_pure():
    h = RollingHash(9)
    h.update(b"xyz")
    first = h.peek()
    assert h.peek() == first
    assert h.total_length == 3


def test_empty_seed_zero_is_zero():
    assert RollingHash().peek() == 0


def test_reset():
    fresh = RollingHash(77).peek()
    h = RollingHash(77)
    h.update(b"ab")
    before = h.peek()
    h.reset()
    assert h.peek() == fresh
    h.reset()
    assert h.peek() == fresh and h.total_length == 0
    h.update(b"ab")
    assert h.peek() == before


def test_every_prefix_of_random_buffer(rng):
    buf = rng.bytes(1024)
    h = RollingHash(5)
    for i in range(len(buf)):
        h.push_byte(buf[i])
        assert h.peek() == murmur3_32(buf[: i + 1], 5)


def test_matches_mmh3(rng):
    mmh3 = pytest.importorskip("mmh3")
    for _ in range(300):
        n = int(rng.integers(0, 200))
        data = rng.bytes(n)
        seed = int(rng.integers(0, 2**32))
        assert streamed(data, seed) == mmh3.hash(data, seed, signed=False)


@settings(max_examples=200, deadline=None)
@given(st.binary(max_size=64), st.integers(0, 2**32 - 1))
def test_prefix_consistency(data, seed):
    h = RollingHash(seed)
    assert h.peek() == murmur3_32(b"", seed)
    for i, b in enumerate(data):
        h.push_byte(b)
        assert h.peek() == murmur3_32(data[: i + 1], seed)


def test_avalanche():
    # flipping one input bit flips each output bit with probability ~1/2
    rng = np.random.default_rng(1)
    n = 100_000
    inputs = rng.integers(0, 2**32, n, dtype=np.uint64)
    bits = rng.integers(0, 32, n)
    diffs = np.array(
        [
            streamed(x.to_bytes(4, "little")) ^ streamed((x ^ (1 << bit)).to_bytes(4, "little"))
            for x, bit in zip(inputs.tolist(), bits.tolist())
        ],
        dtype=np.uint64,
    )
    rate = ((diffs[:, None] >> np.arange(32, dtype=np.uint64)) & 1).mean(axis=0)
    assert np.all(np.abs(rate - 0.5) < 0.01), rate

