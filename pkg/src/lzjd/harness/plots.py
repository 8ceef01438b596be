"""Figures for harness reports, written as PNG files next to the CSV output."""

import os

import matplotlib

matplotlib.use("Agg")
from matplotlib import pyplot as plt  # noqa: E402

_STYLE = {
    "figure.figsize": (6.4, 4.2),
    "figure.dpi": 110,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "legend.frameon": False,
}

_XLABELS = {
    "fragment_end": "fragment size (% of file)",
    "fragment_random": "fragment size (% of file)",
    "align_percent": "added bytes (% of file)",
    "align_fixed": "added bytes (KB)",
    "noise": "score band",
}


def _xlabel(name):
    if name.startswith("scb"):
        return "score band"
    return _XLABELS.get(name, "parameter")


def plot_report(report, path):
    """Match rate and average score against the test parameter."""
    xs = [r.parameter for r in report.rows]
    with plt.rc_context(_STYLE):
        fig, (ax1, ax2) = plt.subplots(2, 1, sharex=True)
        ax1.plot(xs, [r.match_rate for r in report.rows], "o-", ms=3, color="C0")
        ax1.set_ylabel("match rate (%)")
        ax1.set_ylim(-2, 102)
        ax1.set_title(report.name)

        pts = [(r.parameter, r.avg_score, r.expected_min_score) for r in report.rows if r.avg_score is not None]
        if pts:
            px, score, shared = zip(*pts)
            ax2.plot(px, score, "o-", ms=3, color="C1", label="avg score")
            ax2.plot(px, shared, "--", color="0.4", label="shared bytes (%)")
            ax2.legend(fontsize="small")
        ax2.set_ylabel("score")
        ax2.set_xlabel(_xlabel(report.name))
        if report.name.startswith("fragment") or report.name == "noise" or report.name.startswith("scb"):
            ax2.invert_xaxis()
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)
    return path


def plot_lower_bound(summary, path):
    """Score against the real share of common bytes, one marker per report."""
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots(figsize=(5.2, 5.0))
        names = sorted({p[0] for p in summary.points})
        for i, name in enumerate(names):
            pts = [(p[3], p[2]) for p in summary.points if p[0] == name]
            ax.scatter(*zip(*pts), s=14, color=f"C{i % 10}", label=name)
        ax.plot([0, 100], [0, 100], color="0.3", lw=1, label="ideal")
        ax.set_xlim(0, 100)
        ax.set_ylim(0, 100)
        ax.set_xlabel("shared bytes (%)")
        ax.set_ylabel("avg score")
        ax.set_title(f"{summary.satisfied}/{len(summary.points)} points at or below the line (+{summary.slack:g})")
        ax.legend(fontsize="x-small", loc="upper left")
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)
    return path


def figure_path(csv_path, suffix):
    stem, _ = os.path.splitext(csv_path)
    return f"{stem}_{suffix}.png"
