import numpy as np
import pytest

from lzjd import build_lz_set, digest_bytes, jaccard
from lzjd.oracle import (
    MAX_ORACLE_INPUT,
    exact_jaccard,
    exact_lz_set,
    full_hash_jaccard,
    full_set_jaccard,
    hashed_lz_set,
    murmur3_32,
)


def test_exact_lz_set_traces():
    assert exact_lz_set(b"") == set()
    assert exact_lz_set(b"aabab") == {b"a", b"ab"}
    assert exact_lz_set(b"abcd") == {b"a", b"b", b"c", b"d"}


def test_exact_jaccard():
    assert exact_jaccard(b"hello", b"hello") == 1.0
    assert exact_jaccard(b"aaaa", b"bbbb") == 0.0
    assert exact_jaccard(b"", b"") == 0.0


def test_full_hash_jaccard_equals_exact_without_collisions(rng):
    for _ in range(20):
        a = rng.integers(0, 8, 3000, dtype=np.uint8).tobytes()
        b = a[:1500] + rng.integers(0, 8, 1500, dtype=np.uint8).tobytes()
        ea, eb = exact_lz_set(a), exact_lz_set(b)
        ha, hb = build_lz_set(a).values, build_lz_set(b).values
        assert (len(ea), len(eb)) == (ha.size, hb.size)
        assert full_hash_jaccard(a, b) == pytest.approx(exact_jaccard(a, b))


def test_full_hash_jaccard_self_and_empty(rng):
    a = rng.bytes(5000)
    assert full_hash_jaccard(a, a) == 1.0
    assert full_hash_jaccard(b"", b"") == 0.0


def test_full_set_jaccard_unsorted_input():
    assert full_set_jaccard(np.array([5, 1, 3]), np.array([3, 9, 1])) == pytest.approx(0.5)
    assert full_set_jaccard(np.array([], np.uint32), np.array([2])) == 0.0


def test_hashed_lz_set_is_hash_of_exact_set(rng):
    data = rng.bytes(4000)
    assert hashed_lz_set(data) == {murmur3_32(s) for s in exact_lz_set(data)}


def test_size_limit():
    with pytest.raises(ValueError):
        exact_lz_set(bytes(MAX_ORACLE_INPUT + 1))


def test_digest_jaccard_close_to_exact(rng):
    # 64 KiB random pairs sharing a prefix: the digest estimate stays near the exact value
    for share in (0.25, 0.5, 0.75):
        n = 64 * 1024
        cut = int(n * share)
        base = rng.bytes(n)
        other = base[:cut] + rng.bytes(n - cut)
        exact = exact_jaccard(base, other)
        est = jaccard(digest_bytes(base), digest_bytes(other))
        assert abs(est - exact) <= 3 / np.sqrt(1024)
