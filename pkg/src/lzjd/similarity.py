"""Digest comparison.

Scores follow the sdhash convention of an integer in [0, 100], here simply
100 times the Jaccard similarity of the two digests, rounded half up.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import IncompatibleDigestsError, UndefinedContainmentError


@dataclass(frozen=True)
class SimilarityReport:
    name_a: str
    name_b: str
    score: int
    jaccard: float
    containment_a_in_b: float | None


@dataclass(frozen=True)
class AdjustedScore:
    value: float
    swapped: bool = False


def intersection_size(a, b):
    """Size of the intersection of two strictly ascending arrays (merge walk)."""
    return int(_kernels.intersection_size(np.asarray(a), np.asarray(b)))


def check_compatible(a, b):
    if a.k != b.k or a.seed != b.seed:
        raise IncompatibleDigestsError(
            f"cannot compare {a.name!r} ({a.header()}) with {b.name!r} ({b.header()})"
        )


def _counts(a, b):
    check_compatible(a, b)
    i = intersection_size(a.values, b.values)
    return i, len(a) + len(b) - i


def score_from_counts(inter, union):
    """round_half_up(100 * inter / union) in exact integer arithmetic."""
    if union == 0:
        return 0
    return (200 * inter + union) // (2 * union)


def jaccard(a, b):
    inter, union = _counts(a, b)
    return inter / union if union else 0.0


def score(a, b):
    return score_from_counts(*_counts(a, b))


def distance(a, b):
    return 1.0 - jaccard(a, b)


def containment(a, b):
    """Fraction of ``a``'s digest values found in ``b``.

    Biased under fixed-size digests: only the k smallest values of each side
    are visible, so this is not the containment of the underlying sets.
    """
    check_compatible(a, b)
    if len(a) == 0:
        raise UndefinedContainmentError(f"containment of empty digest {a.name!r} is undefined")
    return intersection_size(a.values, b.values) / len(a)


def compare(a, b):
    inter, union = _counts(a, b)
    return SimilarityReport(
        name_a=a.name,
        name_b=b.name,
        score=score_from_counts(inter, union),
        jaccard=inter / union if union else 0.0,
        containment_a_in_b=inter / len(a) if len(a) else None,
    )


def adjusted_fragment_score(fragment, whole):
    """Score of a fragment against its candidate source, scaled by length ratio.

    A fragment of length alpha cannot be expected to score above alpha/beta
    against a whole of length beta, so the raw score is multiplied by
    beta/alpha and capped at 100.
    """
    swapped = fragment.input_length > whole.input_length
    if swapped:
        fragment, whole = whole, fragment
    alpha, beta = fragment.input_length, whole.input_length
    if alpha == 0:
        raise ValueError(f"fragment {fragment.name!r} is empty")
    raw = 100.0 * jaccard(fragment, whole)
    return AdjustedScore(min(100.0, raw * beta / alpha), swapped)


def _pack(digests):
    width = max((len(d) for d in digests), default=0)
    vals = np.zeros((len(digests), max(width, 1)), dtype=np.uint32)
    lens = np.zeros(len(digests), dtype=np.int64)
    for i, d in enumerate(digests):
        vals[i, : len(d)] = d.values
        lens[i] = len(d)
    return vals, lens


def pairwise_intersections(digests_a, digests_b=None, workers=1):
    """Matrix of intersection sizes.

    With one list only the strict upper triangle (i < j) is filled.  Rows are
    split across threads; the result does not depend on ``workers``.
    """
    upper = digests_b is None
    digests_b = digests_a if upper else digests_b
    if not len(digests_a) or not len(digests_b):
        return np.zeros((len(digests_a), len(digests_b)), dtype=np.int64)
    for d in list(digests_a) + list(digests_b):
        check_compatible(digests_a[0], d)
    vals_a, lens_a = _pack(digests_a)
    vals_b, lens_b = (vals_a, lens_a) if upper else _pack(digests_b)
    rows = np.arange(len(digests_a), dtype=np.int64)
    if workers <= 1 or len(rows) < 2:
        return _kernels.pairwise_intersections(vals_a, lens_a, vals_b, lens_b, rows, upper)
    # interleave rows so the triangular workload balances
    parts = [rows[w::workers] for w in range(workers)]
    with ThreadPoolExecutor(workers) as pool:
        blocks = list(
            pool.map(
                lambda r: _kernels.pairwise_intersections(vals_a, lens_a, vals_b, lens_b, r, upper),
                parts,
            )
        )
    out = np.zeros((len(rows), len(lens_b)), dtype=np.int64)
    for r, block in zip(parts, blocks):
        out[r] = block
    return out


def pairwise_jaccard(digests_a, digests_b=None, workers=1):
    """Jaccard matrix; for a single list the lower triangle and diagonal are 0."""
    inter = pairwise_intersections(digests_a, digests_b, workers)
    lens_a = np.array([len(d) for d in digests_a], dtype=np.int64)
    lens_b = lens_a if digests_b is None else np.array([len(d) for d in digests_b], dtype=np.int64)
    union = lens_a[:, None] + lens_b[None, :] - inter
    with np.errstate(divide="ignore", invalid="ignore"):
        j = np.where(union > 0, inter / np.maximum(union, 1), 0.0)
    if digests_b is None:
        j = np.triu(j, 1)
    return j


def pairwise_scores(digests_a, digests_b=None, workers=1):
    inter = pairwise_intersections(digests_a, digests_b, workers)
    lens_a = np.array([len(d) for d in digests_a], dtype=np.int64)
    lens_b = lens_a if digests_b is None else np.array([len(d) for d in digests_b], dtype=np.int64)
    union = lens_a[:, None] + lens_b[None, :] - inter
    scores = (200 * inter + union) // np.maximum(2 * union, 1)
    scores[union == 0] = 0
    if digests_b is None:
        scores = np.triu(scores, 1)
    return scores
