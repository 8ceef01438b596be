"""Sensitivity and robustness experiments.

Fragment and alignment runs digest every corpus file, derive one mutant per
file and parameter, and count a match when the source is the single best
match in the corpus (a tie with another file is a miss).  Ranking uses the
unrounded Jaccard similarity.  Noise and single-common-block runs compare
one pair of files at a time.
"""

import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from ..digest import DEFAULT_K, DEFAULT_SEED, digest_bytes
from ..similarity import pairwise_jaccard, score
from . import mutations
from .report import Trial, summarize

log = logging.getLogger(__name__)

FRAGMENT_SIZES = (95, 90, 85, 80, 75, 70, 65, 60, 55, 50, 45, 40, 35, 30, 25, 20, 15, 10, 5, 4, 3, 2, 1)
ALIGN_PERCENT = (10, 50, 100, 300, 500)
ALIGN_FIXED_KB = tuple(range(4, 65, 4))
NOISE_BANDS = tuple(range(95, 0, -5))
SCB_BANDS = tuple(range(70, 0, -5))
SCB_TOTALS = (512 * 1024, 2 * 1024 * 1024)
SCB_MIN_BLOCK = 16 * 1024

_MODE_KEYS = {"end": 1, "random": 2, "percent": 3, "fixed": 4, "noise": 5, "scb": 6}


def _rng(seed, *keys):
    return np.random.default_rng([seed, *keys])


def _digest_all(blobs, names, k, seed, workers):
    def one(i):
        return digest_bytes(blobs[i], names[i], k, seed)

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            return list(pool.map(one, range(len(blobs))))
    return [one(i) for i in range(len(blobs))]


def build_db(corpus, k=DEFAULT_K, seed=DEFAULT_SEED, workers=1):
    names = [n for n, _ in corpus]
    return _digest_all([d for _, d in corpus], names, k, seed, workers)


def _rank_trials(parameter, queries, specs, db, sources):
    """Trials for mutants ``queries`` whose true sources are ``sources`` (db indices)."""
    sims = pairwise_jaccard(queries, db)
    trials = []
    for q, (i, spec) in enumerate(zip(sources, specs)):
        row = sims[q]
        best = row.max()
        matched = row[i] == best and int((row == best).sum()) == 1
        trials.append(Trial(parameter, db[i].name, bool(matched), 100.0 * row[i], spec.expected_min_score))
    return trials


def _mutant_sweep(name, corpus, db, parameters, mutate, k, seed, workers):
    trials = []
    names = [n for n, _ in corpus]
    for p in parameters:
        blobs, specs = [], []
        for i, (_, data) in enumerate(corpus):
            mutant, spec = mutate(i, data, p)
            blobs.append(mutant)
            specs.append(spec)
        queries = _digest_all(blobs, names, k, seed, workers)
        trials += _rank_trials(p, queries, specs, db, range(len(corpus)))
        log.info("%s %s: %d/%d matched", name, p, sum(t.matched for t in trials[-len(corpus):]), len(corpus))
    return summarize(name, trials, len(corpus), parameters)


def fragment_test(corpus, sizes=FRAGMENT_SIZES, mode="end", db=None, rng_seed=0,
                  k=DEFAULT_K, seed=DEFAULT_SEED, workers=1):
    """Cut each file down to ``size`` % and look for its source in the corpus."""
    if mode not in ("end", "random"):
        raise ValueError(f"fragment mode must be 'end' or 'random', not {mode!r}")
    db = db if db is not None else build_db(corpus, k, seed, workers)

    def mutate(i, data, size):
        if mode == "end":
            return mutations.fragment_end(data, size)
        return mutations.fragment_random(data, size, _rng(rng_seed, _MODE_KEYS["random"], i, size))

    return _mutant_sweep(f"fragment_{mode}", corpus, db, sizes, mutate, k, seed, workers)


def alignment_test(corpus, added=None, mode="percent", db=None, rng_seed=0,
                   k=DEFAULT_K, seed=DEFAULT_SEED, workers=1):
    """Prepend random bytes (``mode`` percent of the file, or fixed KB)."""
    if mode not in ("percent", "fixed"):
        raise ValueError(f"alignment mode must be 'percent' or 'fixed', not {mode!r}")
    added = added if added is not None else (ALIGN_PERCENT if mode == "percent" else ALIGN_FIXED_KB)
    db = db if db is not None else build_db(corpus, k, seed, workers)
    fn = mutations.align_percent if mode == "percent" else mutations.align_fixed

    def mutate(i, data, x):
        return fn(data, x, _rng(rng_seed, _MODE_KEYS[mode], i, int(x)))

    rep = _mutant_sweep(f"align_{mode}", corpus, db, added, mutate, k, seed, workers)
    if mode == "percent":
        rep.notes["reference_score"] = {x: 100.0 / (1 + x / 100) for x in added}
    return rep


class _NoiseTrajectory:
    """Cumulative random edits of one file along the noise schedule.

    Batch ``i`` of edits uses its own RNG stream, so the mutant at any
    schedule point can be rebuilt from an earlier snapshot.
    """

    def __init__(self, data, schedule, rng_seed, file_index):
        self.source = np.frombuffer(bytes(data), dtype=np.uint8)
        self.schedule = schedule
        self.rng_seed = rng_seed
        self.file_index = file_index

    def advance(self, arr, from_idx, to_idx):
        """Mutant at schedule index ``to_idx`` given the one at ``from_idx`` (-1 = source)."""
        for i in range(from_idx + 1, to_idx + 1):
            prev = self.schedule[i - 1] if i else 0
            rng = _rng(self.rng_seed, _MODE_KEYS["noise"], self.file_index, i)
            arr = mutations.random_edits(arr, self.schedule[i] - prev, rng)
        return arr


def noise_trial(data, name, bands=NOISE_BANDS, max_fraction=0.8, rng_seed=0, file_index=0,
                k=DEFAULT_K, seed=DEFAULT_SEED, stride=8):
    """Edits needed to push the score of one file below each band.

    Returns {band: (edits, score, mutant_length)} for every band reached
    before ``max_fraction`` of the file has been edited.  Scores are taken at
    every ``stride``-th schedule point; when one or more bands are crossed in
    between, the first crossing point is located by bisection.
    """
    source_digest = digest_bytes(data, name, k, seed)
    n = len(data)
    schedule = mutations.noise_schedule(max(1, int(max_fraction * n)))
    traj = _NoiseTrajectory(data, schedule, rng_seed, file_index)
    cache = {}

    def evaluate(idx, arr):
        if idx not in cache:
            d = digest_bytes(arr.tobytes(), name, k, seed)
            cache[idx] = (score(source_digest, d), arr.size)
        return cache[idx]

    pending = sorted(bands, reverse=True)
    found = {}
    prev_idx, prev_arr = -1, traj.source
    while pending and prev_idx < len(schedule) - 1:
        idx = min(prev_idx + stride, len(schedule) - 1)
        arr = traj.advance(prev_arr, prev_idx, idx)
        s, _ = evaluate(idx, arr)
        # score(lo) >= band (lo == -1 is the source), score(idx) < band;
        # lower bands resume from the previous crossing so edits never decrease
        lo, lo_arr = prev_idx, prev_arr
        while pending and s < pending[0]:
            band = pending.pop(0)
            hi, hi_arr = idx, arr
            while hi - lo > 1:
                mid = (lo + hi) // 2
                mid_arr = traj.advance(lo_arr, lo, mid)
                if evaluate(mid, mid_arr)[0] < band:
                    hi, hi_arr = mid, mid_arr
                else:
                    lo, lo_arr = mid, mid_arr
            hs, hlen = cache[hi]
            found[band] = (schedule[hi], hs, hlen)
            while pending and hs < pending[0]:
                found[pending.pop(0)] = (schedule[hi], hs, hlen)
            lo, lo_arr = hi, hi_arr
        prev_idx, prev_arr = idx, arr
    return found


def noise_test(corpus, n_files=10, bands=NOISE_BANDS, max_fraction=0.8, rng_seed=0,
               k=DEFAULT_K, seed=DEFAULT_SEED, workers=1):
    """Random insert/delete/substitute edits on a random subset of the corpus.

    ``matches`` counts files whose score dropped below the band before the
    edit budget ran out; ``expected_min_score`` is 100 minus the average
    percentage of bytes edited at that point.
    """
    pick = _rng(rng_seed, _MODE_KEYS["noise"]).choice(len(corpus), size=min(n_files, len(corpus)), replace=False)
    pick = sorted(int(i) for i in pick)

    def one(i):
        name, data = corpus[i]
        return name, len(data), noise_trial(data, name, bands, max_fraction, rng_seed, i, k, seed)

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(one, pick))
    else:
        results = [one(i) for i in pick]

    trials = []
    for name, n, found in results:
        for band, (edits, s, mlen) in found.items():
            spec = mutations.MutationSpec("noise", band, edits, n, mlen)
            trials.append(Trial(band, name, True, float(s), spec.expected_min_score))
    rep = summarize("noise", trials, len(pick), bands, total=len(pick))
    rep.notes["files"] = [name for name, _, _ in results]
    rep.notes["edit_fraction"] = {
        name: {band: edits / n for band, (edits, _, _) in found.items()} for name, n, found in results
    }
    return rep


def scb_test(corpus, totals=SCB_TOTALS, trials=10, bands=SCB_BANDS, min_block=SCB_MIN_BLOCK,
             rng_seed=0, k=DEFAULT_K, seed=DEFAULT_SEED, workers=1):
    """Single-common-block test; one report per total file size.

    Two random-filler files share one block taken from a corpus file.  The
    block starts at half the file and is halved down to ``min_block``; for
    each band the smallest block still scoring at least the band is kept.
    """
    reports = []
    for total in totals:
        rng = _rng(rng_seed, _MODE_KEYS["scb"], total)
        order = rng.permutation(len(corpus))
        blocks = []
        c = total // 2
        while c >= min_block:
            blocks.append(c)
            c //= 2

        def one(t):
            trng = _rng(rng_seed, _MODE_KEYS["scb"], total, t)
            name, data = corpus[int(order[t % len(order)])]
            src = np.frombuffer(data, dtype=np.uint8)
            src = np.resize(src, max(src.size, blocks[0]))
            start = int(trng.integers(0, src.size - blocks[0] + 1))
            out = []
            for c in blocks:
                a, b, spec = mutations.common_block_pair(src[start : start + c].tobytes(), total, trng)
                s = score(digest_bytes(a, "a", k, seed), digest_bytes(b, "b", k, seed))
                out.append((c, s, spec))
            return name, out

        if workers > 1:
            with ThreadPoolExecutor(workers) as pool:
                runs = list(pool.map(one, range(trials)))
        else:
            runs = [one(t) for t in range(trials)]

        rows = []
        for name, steps in runs:
            for band in bands:
                ok = [(c, s, spec) for c, s, spec in steps if s >= band]
                if ok:
                    c, s, spec = min(ok, key=lambda x: x[0])
                    rows.append(Trial(band, name, True, float(s), spec.expected_min_score))
        rep = summarize(f"scb_{total // 1024}kb", rows, trials, bands, total=trials)
        rep.notes["steps"] = [[(c, s) for c, s, _ in steps] for _, steps in runs]
        rep.notes["block_sizes"] = blocks
        reports.append(rep)
    return reports
