"""sdhash-style command line front end.

    lzjd FILE...                 print one digest line per file
    lzjd -r DIR...               hash every regular file below DIR
    lzjd -g FILE...              hash inputs and compare all pairs
    lzjd -c DB [DB2]             compare digests within DB, or DB x DB2

Matches are printed as ``name_a|name_b|score`` for scores >= ``-t``.
"""

import argparse
import os
import stat
import sys
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from .digest import DEFAULT_K, DEFAULT_SEED, digest_file, digest_stream, load_db, serialize
from .errors import DigestFormatError, IncompatibleDigestsError, InvalidNameError
from .similarity import check_compatible, pairwise_scores

EXIT_OK, EXIT_ERROR, EXIT_USAGE = 0, 1, 2


def build_parser():
    p = argparse.ArgumentParser(
        prog="lzjd",
        description="Lempel-Ziv Jaccard Distance similarity digests.",
        allow_abbrev=False,
    )
    p.add_argument("paths", nargs="*", metavar="PATH", help="files, directories (-r) or digest DBs (-c); '-' is stdin")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("-g", "--gen-compare", action="store_true", help="hash inputs, then compare all pairs")
    mode.add_argument("-c", "--compare", action="store_true", help="compare digests from one or two DB files")
    p.add_argument("-r", "--deep", action="store_true", help="recurse into directories")
    p.add_argument("-t", "--threshold", type=int, default=1, metavar="N", help="only report scores >= N (default 1)")
    p.add_argument("-p", "--threads", type=int, default=os.cpu_count() or 1, metavar="N", help="worker threads")
    p.add_argument("-o", "--output", metavar="FILE", help="write results to FILE instead of stdout")
    p.add_argument("--k", type=int, default=DEFAULT_K, help=f"digest size (default {DEFAULT_K})")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="hash seed (default 0)")
    p.add_argument("--stats", action="store_true", help="report timing and throughput on stderr")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return p


def _note(msg):
    print(f"lzjd: {msg}", file=sys.stderr)


def expand_paths(paths, recursive):
    """Yield (path, error) pairs in deterministic order."""
    for path in paths:
        if path == "-":
            yield path, None
            continue
        try:
            st = os.lstat(path) if recursive else os.stat(path)
        except OSError as e:
            yield path, f"{path}: {e.strerror}"
            continue
        if stat.S_ISDIR(st.st_mode):
            if not recursive:
                yield path, f"{path}: is a directory (use -r)"
                continue
            yield from _walk(path)
        elif stat.S_ISREG(st.st_mode) or not recursive:
            yield path, None
        else:
            _note(f"skipping non-regular file {path}")


def _walk(top):
    entries = []
    try:
        with os.scandir(top) as it:
            entries = sorted(it, key=lambda e: e.name)
    except OSError as e:
        yield top, f"{top}: {e.strerror}"
        return
    for entry in entries:
        path = os.path.join(top, entry.name)
        if entry.is_symlink():
            _note(f"not following symlink {path}")
        elif entry.is_dir(follow_symlinks=False):
            yield from _walk(path)
        elif entry.is_file(follow_symlinks=False):
            yield path, None
        else:
            _note(f"skipping non-regular file {path}")


def hash_paths(paths, recursive, k, seed, workers):
    """Digest everything; returns (digests, bytes_hashed, had_error)."""
    had_error = False
    todo = []
    for path, err in expand_paths(paths, recursive):
        if err:
            _note(err)
            had_error = True
        else:
            todo.append(path)

    def one(path):
        try:
            if path == "-":
                return digest_stream(sys.stdin.buffer, "-", k, seed)
            return digest_file(path, k=k, seed=seed)
        except OSError as e:
            return f"{path}: {e.strerror or e}"

    if workers > 1 and len(todo) > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(one, todo))
    else:
        results = [one(p) for p in todo]

    digests = []
    for r in results:
        if isinstance(r, str):
            _note(r)
            had_error = True
        else:
            digests.append(r)
    return digests, sum(d.input_length for d in digests), had_error


def match_lines(digests_a, digests_b, threshold, workers):
    """``a|b|score`` lines, pairs sorted by (name_a, name_b)."""
    if not digests_a or (digests_b is not None and not digests_b):
        return [], 0
    scores = pairwise_scores(digests_a, digests_b, workers)
    if digests_b is None:
        n = len(digests_a)
        ii, jj = np.triu_indices(n, 1)
        right = digests_a
    else:
        ii, jj = np.indices(scores.shape).reshape(2, -1)
        right = digests_b
    pair_scores = scores[ii, jj]
    keep = pair_scores >= threshold
    rows = [
        (digests_a[i].name, right[j].name, int(s))
        for i, j, s in zip(ii[keep], jj[keep], pair_scores[keep])
    ]
    rows.sort(key=lambda r: (r[0], r[1]))
    return [f"{a}|{b}|{s}" for a, b, s in rows], len(ii)


def _check_headers(digests):
    for d in digests[1:]:
        check_compatible(digests[0], d)


def run(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.k < 1:
        parser.error("--k must be positive")
    if not 0 <= args.seed <= 0xFFFFFFFF:
        parser.error("--seed must fit in 32 bits")
    if args.threads < 1:
        parser.error("-p must be at least 1")
    if args.compare and len(args.paths) not in (1, 2):
        parser.error("-c takes one or two digest DB files")
    if not args.paths:
        parser.error("no input paths given")

    status = EXIT_OK
    lines = []
    stats = {}
    t0 = time.perf_counter()
    try:
        if args.compare:
            try:
                dbs = [load_db(p) for p in args.paths]
            except OSError as e:
                _note(f"{e.filename}: {e.strerror}")
                return EXIT_ERROR
            except DigestFormatError as e:
                _note(str(e))
                return EXIT_USAGE
            _check_headers([d for db in dbs for d in db])
            t1 = time.perf_counter()
            lines, n_cmp = match_lines(dbs[0], dbs[1] if len(dbs) == 2 else None, args.threshold, args.threads)
            stats.update(compare_time=time.perf_counter() - t1, comparisons=n_cmp)
        else:
            digests, nbytes, had_error = hash_paths(args.paths, args.deep, args.k, args.seed, args.threads)
            stats.update(hash_time=time.perf_counter() - t0, bytes=nbytes, files=len(digests))
            if had_error:
                status = EXIT_ERROR
            if args.gen_compare:
                t1 = time.perf_counter()
                lines, n_cmp = match_lines(digests, None, args.threshold, args.threads)
                stats.update(compare_time=time.perf_counter() - t1, comparisons=n_cmp)
            else:
                lines = [serialize(d) for d in digests]
    except IncompatibleDigestsError as e:
        _note(str(e))
        return EXIT_ERROR
    except InvalidNameError as e:
        _note(str(e))
        return EXIT_ERROR

    text = "".join(line + "\n" for line in lines)
    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as e:
            _note(f"{args.output}: {e.strerror}")
            return EXIT_ERROR
    else:
        sys.stdout.write(text)
        sys.stdout.flush()

    if args.stats:
        _report_stats(stats)
    return status


def _report_stats(stats):
    parts = []
    if "hash_time" in stats:
        mb = stats["bytes"] / 1e6
        rate = mb / stats["hash_time"] if stats["hash_time"] > 0 else float("inf")
        parts.append(f"hashed {stats['files']} files, {mb:.2f} MB in {stats['hash_time']:.3f}s ({rate:.1f} MB/s)")
    if "compare_time" in stats:
        rate = stats["comparisons"] / stats["compare_time"] if stats["compare_time"] > 0 else float("inf")
        parts.append(f"{stats['comparisons']} comparisons in {stats['compare_time']:.3f}s ({rate:,.0f} cmp/s)")
    for p in parts:
        print(f"lzjd stats: {p}", file=sys.stderr)


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
