"""lzjd-eval: run the sensitivity experiments and write CSV tables plus figures.

One report goes to ``--out`` as given.  When a run yields several reports
(both fragment modes, both SCB sizes, ``all``) each is written to
``<stem>_<report>.csv``.  Every CSV gets a PNG figure with the same stem.
"""

import argparse
import logging
import os
import sys
import time

from .. import __version__
from . import experiments, plots
from .corpus import entropy_summary, load_corpus, make_corpus
from .report import lower_bound_report

TESTS = ("fragment", "alignment", "noise", "scb", "all")


def build_parser():
    p = argparse.ArgumentParser(
        prog="lzjd-eval",
        description="Fragment, alignment, noise and single-common-block tests for LZJD digests.",
        allow_abbrev=False,
    )
    p.add_argument("test", choices=TESTS)
    p.add_argument("--corpus", required=True, metavar="DIR", help="corpus directory (one file per sample)")
    p.add_argument("--out", required=True, metavar="CSV", help="report path")
    p.add_argument("--seed", type=int, default=0, help="seed for the corpus and all mutations (default 0)")
    p.add_argument("--make-corpus", action="store_true",
                   help="write the synthetic desk corpus into DIR first")
    p.add_argument("--mode", choices=("end", "random", "percent", "fixed", "both"), default="both",
                   help="fragment: end|random, alignment: percent|fixed (default both)")
    p.add_argument("--noise-files", type=int, default=10, metavar="N", help="files in the noise subset")
    p.add_argument("--scb-trials", type=int, default=10, metavar="N", help="trials per SCB file size")
    p.add_argument("-p", "--threads", type=int, default=os.cpu_count() or 1, metavar="N")
    p.add_argument("--no-plots", action="store_true", help="skip the PNG figures")
    p.add_argument("-v", "--verbose", action="store_true")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return p


def _modes(mode, allowed):
    if mode == "both":
        return allowed
    if mode not in allowed:
        return None
    return (mode,)


def run_tests(args, corpus):
    w = max(1, args.threads)
    db = None
    reports = []
    want = {args.test} if args.test != "all" else set(TESTS)

    if want & {"fragment", "alignment"}:
        db = experiments.build_db(corpus, workers=w)
    if "fragment" in want:
        for m in _modes(args.mode if args.test == "fragment" else "both", ("end", "random")):
            reports.append(experiments.fragment_test(corpus, mode=m, db=db, rng_seed=args.seed, workers=w))
    if "alignment" in want:
        for m in _modes(args.mode if args.test == "alignment" else "both", ("percent", "fixed")):
            reports.append(experiments.alignment_test(corpus, mode=m, db=db, rng_seed=args.seed, workers=w))
    if "noise" in want:
        reports.append(experiments.noise_test(corpus, n_files=args.noise_files, rng_seed=args.seed, workers=w))
    if "scb" in want:
        reports += experiments.scb_test(corpus, trials=args.scb_trials, rng_seed=args.seed, workers=w)
    return reports


def _output_paths(out, reports):
    if len(reports) == 1:
        return [out]
    stem, ext = os.path.splitext(out)
    return [f"{stem}_{r.name}{ext or '.csv'}" for r in reports]


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")

    if args.test == "fragment" and _modes(args.mode, ("end", "random")) is None:
        parser.error("fragment --mode must be end, random or both")
    if args.test == "alignment" and _modes(args.mode, ("percent", "fixed")) is None:
        parser.error("alignment --mode must be percent, fixed or both")

    if args.make_corpus:
        make_corpus(args.corpus, seed=args.seed)
    if not os.path.isdir(args.corpus):
        parser.error(f"corpus directory not found: {args.corpus} (use --make-corpus to create one)")
    corpus = load_corpus(args.corpus)
    if not corpus:
        parser.error(f"corpus directory is empty: {args.corpus}")

    ent = entropy_summary(corpus)
    print(f"corpus: {len(corpus)} files, {sum(len(d) for _, d in corpus)} bytes, "
          f"entropy avg {ent['average']:.2f} median {ent['median']:.2f}", file=sys.stderr)

    t0 = time.perf_counter()
    reports = run_tests(args, corpus)
    paths = _output_paths(args.out, reports)
    for rep, path in zip(reports, paths):
        rep.write_csv(path)
        if not args.no_plots:
            plots.plot_report(rep, plots.figure_path(path, "plot"))
        hit = sum(r.matches for r in rep.rows)
        print(f"{rep.name}: {len(rep.rows)} rows, {hit} matched trials -> {path}")

    if args.test == "all":
        lb = lower_bound_report(reports)
        print(f"lower bound: {lb.satisfied}/{len(lb.points)} points within +{lb.slack:g} ({100 * lb.fraction:.1f}%)")
        if not args.no_plots:
            plots.plot_lower_bound(lb, plots.figure_path(args.out, "lower_bound"))
    print(f"elapsed {time.perf_counter() - t0:.1f}s", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
