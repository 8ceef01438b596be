import csv
import io
from dataclasses import dataclass, field

CSV_COLUMNS = ("parameter", "matches", "match_rate", "avg_score", "expected_min_score")


@dataclass(frozen=True)
class Trial:
    """One mutant compared with its source."""

    parameter: float
    source: str
    matched: bool
    score: float
    expected_min_score: float


@dataclass(frozen=True)
class ReportRow:
    parameter: float
    matches: int
    match_rate: float
    avg_score: float | None
    expected_min_score: float | None


@dataclass
class TestReport:
    """Per-parameter summary of one experiment, shaped like the FRASH tables.

    ``avg_score`` averages over matched trials only.  ``expected_min_score``
    is the mean of 100 * (1 - edit distance / longer length) over the same
    trials, i.e. the share of bytes the files really have in common.
    """

    __test__ = False  # not a pytest class

    name: str
    corpus_size: int
    rows: list = field(default_factory=list)
    trials: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    def row(self, parameter):
        for r in self.rows:
            if r.parameter == parameter:
                return r
        raise KeyError(parameter)

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for r in self.rows:
            writer.writerow([
                _fmt(r.parameter),
                r.matches,
                _fmt(r.match_rate),
                _fmt(r.avg_score),
                _fmt(r.expected_min_score),
            ])
        return buf.getvalue()

    def write_csv(self, path):
        with open(path, "w", newline="") as fh:
            fh.write(self.to_csv())


def _fmt(x):
    if x is None:
        return ""
    if float(x).is_integer():
        return str(int(x))
    return f"{x:.4f}"


def summarize(name, trials, corpus_size, parameters, total=None):
    """Build a report from trials; ``total`` is the denominator of match_rate."""
    rows = []
    for p in parameters:
        group = [t for t in trials if t.parameter == p]
        hits = [t for t in group if t.matched]
        denom = total if total is not None else len(group)
        rows.append(ReportRow(
            parameter=p,
            matches=len(hits),
            match_rate=100.0 * len(hits) / denom if denom else 0.0,
            avg_score=sum(t.score for t in hits) / len(hits) if hits else None,
            expected_min_score=sum(t.expected_min_score for t in hits) / len(hits) if hits else None,
        ))
    return TestReport(name, corpus_size, rows, list(trials))


@dataclass(frozen=True)
class LowerBoundSummary:
    points: list  # (report name, parameter, score, shared-byte %)
    slack: float

    @property
    def satisfied(self):
        return sum(1 for _, _, s, e in self.points if s <= e + self.slack)

    @property
    def fraction(self):
        return self.satisfied / len(self.points) if self.points else 1.0

    def violations(self):
        return [p for p in self.points if p[2] > p[3] + self.slack]


def lower_bound_report(reports, slack=2.0):
    """Collect (score, shared-byte %) points from every populated report row.

    The score tends to under-estimate the share of common bytes; ``fraction``
    is the share of points with score <= shared % + ``slack``.
    """
    points = []
    for rep in reports:
        for r in rep.rows:
            if r.matches and r.avg_score is not None:
                points.append((rep.name, r.parameter, r.avg_score, r.expected_min_score))
    return LowerBoundSummary(points, slack)
