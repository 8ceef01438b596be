import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lzjd import (
    Digest,
    IncompatibleDigestsError,
    UndefinedContainmentError,
    adjusted_fragment_score,
    compare,
    containment,
    digest_bytes,
    distance,
    intersection_size,
    jaccard,
    pairwise_jaccard,
    pairwise_scores,
    score,
)
from lzjd.similarity import pairwise_intersections, score_from_counts


def dg(values, name="d", k=1024, seed=0, length=None):
    values = np.array(sorted(set(values)), dtype=np.uint32)
    return Digest(name, len(values) if length is None else length, values, k, seed)


def random_digest(rng, universe=3000, name="r"):
    n = int(rng.integers(0, 200))
    return dg(rng.choice(universe, size=n, replace=False), name)


values_st = st.lists(st.integers(0, 500), max_size=120, unique=True)


def test_intersection_examples():
    assert intersection_size([1, 3, 5], [3, 4, 5]) == 2
    assert intersection_size(np.array([1, 2], np.uint32), np.array([], np.uint32)) == 0
    assert intersection_size(np.array([], np.uint32), np.array([], np.uint32)) == 0


def test_intersection_against_sets(rng):
    for _ in range(1000):
        a = np.unique(rng.integers(0, 5000, int(rng.integers(0, 1025)))).astype(np.uint32)
        b = np.unique(rng.integers(0, 5000, int(rng.integers(0, 1025)))).astype(np.uint32)
        assert intersection_size(a, b) == len(set(a.tolist()) & set(b.tolist()))


def test_intersection_extreme_values():
    a = np.array([0, 1, 0xFFFFFFFE, 0xFFFFFFFF], dtype=np.uint32)
    b = np.array([0, 0xFFFFFFFF], dtype=np.uint32)
    assert intersection_size(a, b) == 2


def test_jaccard_examples():
    d = dg([1, 2, 3, 4])
    assert jaccard(d, d) == 1.0
    assert jaccard(d, dg([3, 4, 5, 6])) == pytest.approx(2 / 6)
    assert jaccard(dg([]), dg([])) == 0.0
    assert jaccard(dg([]), d) == 0.0


def test_score_examples():
    d = dg([1, 2, 3])
    assert score(d, d) == 100
    assert score(d, dg([4, 5])) == 0
    assert score(dg([1, 2]), dg([2, 3, 4])) == 25  # 1/4
    assert score_from_counts(1, 3) == 33


@pytest.mark.parametrize("inter,union,expected", [(1, 200, 1), (1, 201, 0), (3, 8, 38), (1, 8, 13), (0, 0, 0)])
def test_score_rounds_half_up(inter, union, expected):
    # 1/200 = 0.5 % and 3/8 = 37.5 % sit exactly on a half
    assert score_from_counts(inter, union) == expected


@settings(max_examples=300, deadline=None)
@given(values_st, values_st)
def test_score_is_rounded_jaccard(a, b):
    da, db = dg(a), dg(b)
    i = len(set(a) & set(b))
    u = len(set(a) | set(b))
    expected = 0 if u == 0 else math.floor(Fraction(100 * i, u) + Fraction(1, 2))
    assert score(da, db) == expected
    assert 0 <= score(da, db) <= 100


@settings(max_examples=300, deadline=None)
@given(values_st, values_st)
def test_symmetry(a, b):
    da, db = dg(a), dg(b)
    assert jaccard(da, db) == jaccard(db, da)
    assert score(da, db) == score(db, da)
    assert distance(da, db) == distance(db, da)


@settings(max_examples=300, deadline=None)
@given(values_st, values_st, values_st)
def test_triangle_inequality(a, b, c):
    da, db, dc = dg(a), dg(b), dg(c)
    assert distance(da, dc) <= distance(da, db) + distance(db, dc) + 1e-12


@settings(max_examples=200, deadline=None)
@given(values_st.filter(bool), values_st)
def test_containment_bounds_jaccard(a, b):
    da, db = dg(a), dg(b)
    j = jaccard(da, db)
    assert containment(da, db) >= j
    if b:
        assert min(containment(da, db), containment(db, da)) >= j


def test_containment_examples():
    assert containment(dg([1, 2]), dg([1, 2, 3])) == 1.0
    assert containment(dg([1, 2]), dg([3])) == 0.0
    with pytest.raises(UndefinedContainmentError):
        containment(dg([]), dg([1]))


def test_distance_zero_on_self(rng):
    for _ in range(50):
        d = random_digest(rng)
        if len(d):
            assert distance(d, d) == 0.0


def test_incompatible_headers():
    with pytest.raises(IncompatibleDigestsError) as info:
        jaccard(dg([1], "a", k=1024), dg([1], "b", k=512))
    assert "lzjd:1:1024:0" in str(info.value) and "lzjd:1:512:0" in str(info.value)
    with pytest.raises(IncompatibleDigestsError):
        score(dg([1], seed=0), dg([1], seed=3))


def test_compare_report():
    r = compare(dg([1, 2, 3, 4], "a"), dg([3, 4, 5, 6], "b"))
    assert (r.name_a, r.name_b, r.score) == ("a", "b", 33)
    assert r.jaccard == pytest.approx(1 / 3)
    assert r.containment_a_in_b == 0.5


def test_adjusted_fragment_score():
    whole = dg(range(100), "whole", length=1000)
    same = dg(range(100), "same", length=1000)
    assert adjusted_fragment_score(same, whole).value == pytest.approx(score(same, whole), abs=0.5)

    # 8.33 raw at a 10 % fragment scales to about 83.3
    frag = dg(range(9), "frag", length=100)
    big = dg(range(108), "big", length=1000)
    res = adjusted_fragment_score(frag, big)
    assert 100 * jaccard(frag, big) == pytest.approx(8.33, abs=0.01)
    assert res.value == pytest.approx(83.33, abs=0.1) and not res.swapped

    assert adjusted_fragment_score(dg(range(50), length=10), dg(range(100), length=1000)).value == 100.0
    assert adjusted_fragment_score(big, frag).swapped
    with pytest.raises(ValueError):
        adjusted_fragment_score(dg([], length=0), whole)


def test_pairwise_matches_scalar(rng):
    ds = [random_digest(rng, name=f"d{i}") for i in range(25)]
    others = [random_digest(rng, name=f"o{i}") for i in range(7)]
    tri = pairwise_scores(ds)
    cross = pairwise_scores(ds, others)
    jac = pairwise_jaccard(ds, others)
    for i in range(len(ds)):
        for j in range(len(ds)):
            assert tri[i, j] == (score(ds[i], ds[j]) if i < j else 0)
        for j in range(len(others)):
            assert cross[i, j] == score(ds[i], others[j])
            assert jac[i, j] == jaccard(ds[i], others[j])


def test_pairwise_thread_count_irrelevant(rng):
    ds = [random_digest(rng, name=f"d{i}") for i in range(40)]
    base = pairwise_intersections(ds)
    for w in (2, 3, 8):
        assert np.array_equal(pairwise_intersections(ds, workers=w), base)


def test_pairwise_empty_lists():
    assert pairwise_scores([]).shape == (0, 0)
    assert pairwise_jaccard([], [dg([1])]).shape == (0, 1)


def test_pairwise_checks_headers():
    with pytest.raises(IncompatibleDigestsError):
        pairwise_scores([dg([1]), dg([2], k=8)])


def test_real_inputs_identical_and_unrelated(rng):
    a = rng.bytes(100_000)
    assert score(digest_bytes(a), digest_bytes(a)) == 100
    assert score(digest_bytes(b"\x00" * 5000), digest_bytes(bytes(range(256)) * 20)) < 50
