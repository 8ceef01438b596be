"""Derived test files with a known edit distance to their source.

Each mutation returns the mutant bytes together with a :class:`MutationSpec`
recording how far the mutant is from its source: removed, added or non-shared
bytes, or for noise the number of edits applied (an upper bound, since a
later edit can land on an earlier one).  That lets the harness place every
score next to the share of bytes the two files have in common.
"""

from dataclasses import dataclass

import numpy as np

KINDS = ("fragment_end", "fragment_random", "align_fixed", "align_percent", "noise", "scb")


@dataclass(frozen=True)
class MutationSpec:
    kind: str
    parameter: float
    analytic_edit_distance: int
    source_length: int
    mutant_length: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown mutation kind {self.kind!r}")

    @property
    def shared_fraction(self):
        longest = max(self.source_length, self.mutant_length)
        if longest == 0:
            return 1.0
        return 1.0 - self.analytic_edit_distance / longest

    @property
    def expected_min_score(self):
        return 100.0 * self.shared_fraction


def _as_array(data):
    if isinstance(data, np.ndarray):
        return data
    return np.frombuffer(bytes(data), dtype=np.uint8)


def fragment_end(data, percent):
    """Keep the first ``percent`` % of ``data``."""
    n = len(data)
    keep = max(1, round(n * percent / 100))
    spec = MutationSpec("fragment_end", percent, n - keep, n, keep)
    return bytes(data[:keep]), spec


def fragment_random(data, percent, rng):
    """Keep a ``percent`` % window; the front cut is drawn uniformly."""
    n = len(data)
    keep = max(1, round(n * percent / 100))
    front = int(rng.integers(0, n - keep + 1))
    spec = MutationSpec("fragment_random", percent, n - keep, n, keep)
    return bytes(data[front : front + keep]), spec


def prepend_random(data, n_bytes, rng, kind="align_fixed", parameter=None):
    """Random padding in front of ``data``."""
    n = len(data)
    parameter = n_bytes if parameter is None else parameter
    spec = MutationSpec(kind, parameter, n_bytes, n, n + n_bytes)
    return rng.bytes(n_bytes) + bytes(data), spec


def align_percent(data, percent, rng):
    return prepend_random(data, round(len(data) * percent / 100), rng, "align_percent", percent)


def align_fixed(data, kilobytes, rng):
    return prepend_random(data, kilobytes * 1024, rng, "align_fixed", kilobytes)


def random_edits(arr, n_edits, rng):
    """Apply ``n_edits`` random single-byte edits at distinct offsets.

    Each edit is an insertion, deletion or substitution (equally likely);
    substitutions always change the byte.  Returns a new uint8 array.
    """
    arr = _as_array(arr)
    n = arr.size
    n_edits = min(n_edits, n)
    if n_edits <= 0:
        return arr.copy()
    pos = np.sort(rng.choice(n, size=n_edits, replace=False))
    ops = rng.integers(0, 3, n_edits)
    out = arr.copy()

    sub = pos[ops == 0]
    out[sub] = (out[sub].astype(np.int64) + rng.integers(1, 256, sub.size)) % 256

    dele = pos[ops == 1]
    ins = pos[ops == 2]
    keep = np.ones(n, dtype=bool)
    keep[dele] = False
    out = out[keep]
    # insertion offsets shift left by the deletions before them
    ins_at = ins - np.searchsorted(dele, ins)
    return np.insert(out, ins_at, rng.integers(0, 256, ins.size, dtype=np.uint8))


def noise_schedule(limit, first_step_until=200):
    """Cumulative edit counts: +1 up to 200, +10 up to 2000, +100 up to 20000, ...

    Ends at the first count >= ``limit``.
    """
    counts = []
    total, step, boundary = 0, 1, first_step_until
    while total < limit:
        total = min(total + step, limit)
        counts.append(total)
        if total >= boundary:
            step *= 10
            boundary *= 10
    return counts


def common_block_pair(block, total_size, rng):
    """Two random-filler files sharing ``block`` at the same random offset."""
    c = len(block)
    if c > total_size:
        raise ValueError("common block larger than the files")
    offset = int(rng.integers(0, total_size - c + 1))
    a = bytearray(rng.bytes(total_size))
    b = bytearray(rng.bytes(total_size))
    a[offset : offset + c] = block
    b[offset : offset + c] = block
    spec = MutationSpec("scb", c, total_size - c, total_size, total_size)
    return bytes(a), bytes(b), spec
