"""Machine-readable output files, rendered text tables and figures."""

from __future__ import annotations

import os
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from lexlink.bidict import DictionaryCoverage
from lexlink.linker import (
    CoverageReport,
    MergedLink,
    MergeStats,
    SenseLink,
    ratio_str,
)

STATS_HEADER = ("scope", "target_nouns", "source_nouns", "synsets", "connections", "poly", "syn")


def score_str(score: Fraction) -> str:
    if score.denominator == 1:
        return str(score.numerator)
    return ratio_str(score, 4)


def format_links(links: Iterable[SenseLink | MergedLink]) -> str:
    rows = sorted(
        (l.source_lemma, l.synset, l.method, score_str(l.score)) for l in links
    )
    return "".join("\t".join(r) + "\n" for r in rows)


def parse_links(text: str) -> list[MergedLink]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip() or raw.startswith("#"):
            continue
        fields = raw.split("\t")
        if len(fields) != 4:
            raise ValueError(f"line {lineno}: expected 4 tab-separated fields, got {len(fields)}")
        source, synset, method, score = fields
        try:
            value = Fraction(score)
        except ValueError:
            raise ValueError(f"line {lineno}: bad score {score!r}") from None
        out.append(MergedLink(source, synset, tuple(method.split(",")), value))
    return out


def _plain_int(n: int | None) -> str:
    return "-" if n is None else str(n)


def stats_rows(per_scope: Mapping[str, MergeStats]) -> list[tuple[str, ...]]:
    return [
        (scope, _plain_int(s.target_nouns), str(s.source_nouns), str(s.synsets),
         str(s.connections), ratio_str(s.polysemy), ratio_str(s.synonymy))
        for scope, s in per_scope.items()
    ]


def format_stats(per_scope: Mapping[str, MergeStats]) -> str:
    rows = [STATS_HEADER, *stats_rows(per_scope)]
    return "".join("\t".join(r) + "\n" for r in rows)


def _plain() -> bool:
    return bool(os.environ.get("LEXLINK_NO_COLOR"))


def _grouped(n: int | None) -> str:
    return "-" if n is None else f"{n:,}"


def _pct(n: int | None, d: int | None) -> str:
    if n is None or not d:
        return "-"
    return ratio_str(Fraction(100 * n, d), 0) + "%"


def _table(header: Sequence[str], rows: Sequence[Sequence[str]], title: str | None = None) -> str:
    widths = [max(len(str(r[i])) for r in [header, *rows]) for i in range(len(header))]

    def fmt(row):
        cells = [str(row[0]).ljust(widths[0])]
        cells += [str(c).rjust(w) for c, w in zip(row[1:], widths[1:])]
        return ("  " if _plain() else " | ").join(cells).rstrip()

    lines = []
    if title:
        lines.append(title)
    lines.append(fmt(header))
    rule = "-" if _plain() else "="
    lines.append(rule * len(lines[-1]))
    lines.extend(fmt(r) for r in rows)
    return "\n".join(lines) + "\n"


def render_stats_table(
    per_scope: Mapping[str, MergeStats], coverage: DictionaryCoverage | None = None
) -> str:
    """Merge statistics laid out like the published per-case tables.

    With ``coverage`` the last row gains percentage rows relative to the
    taxonomy, the merged dictionary and the maximum reachable coverage.
    """
    if not per_scope:
        raise ValueError("need at least one stats row")
    header = ("", "target nouns", "source nouns", "synsets", "connec.", "Poly.", "Syn.")
    rows: list[tuple[str, ...]] = []
    for scope, s in per_scope.items():
        rows.append((scope, _grouped(s.target_nouns), _grouped(s.source_nouns),
                     _grouped(s.synsets), _grouped(s.connections),
                     ratio_str(s.polysemy), ratio_str(s.synonymy)))
    if coverage is not None:
        last = list(per_scope.values())[-1]
        c = coverage
        rows.append(("of taxonomy", _pct(last.target_nouns, c.taxonomy_lemmas), "-",
                     _pct(last.synsets, c.taxonomy_synsets), "-", "", ""))
        rows.append(("of dictionary", _pct(last.target_nouns, c.target_nouns),
                     _pct(last.source_nouns, c.source_nouns), "-",
                     _pct(last.connections, c.connections), "", ""))
        rows.append(("of maximum", _pct(last.target_nouns, c.target_in_taxonomy),
                     _pct(last.source_nouns, c.source_in_taxonomy),
                     _pct(last.synsets, c.reachable_synsets),
                     _pct(last.connections, c.max_connections), "", ""))
    return _table(header, rows)


def render_coverage_table(c: DictionaryCoverage) -> str:
    header = ("", "target nouns", "source nouns", "synsets", "connections")
    rows = [
        ("taxonomy", _grouped(c.taxonomy_lemmas), "-", _grouped(c.taxonomy_synsets), "-"),
        ("merged dictionary", _grouped(c.target_nouns), _grouped(c.source_nouns), "-",
         _grouped(c.connections)),
        ("maximum coverage", _grouped(c.target_in_taxonomy), _grouped(c.source_in_taxonomy),
         _grouped(c.reachable_synsets), _grouped(c.max_connections)),
    ]
    return _table(header, rows)


def render_entry_report(report: CoverageReport) -> str:
    rows = [(label, _grouped(n), _pct(n, report.total)) for label, n in report.rows()]
    text = _table(("", "subentries", "%"), rows)
    if report.skipped_by_heuristic:
        text += f"translations skipped by sense-count heuristic: {report.skipped_by_heuristic}\n"
    return text


# ---------------------------------------------------------------------------
# figures


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    plt.rcParams["svg.hashsalt"] = "lexlink"
    return plt


def _save(fig, path: Path) -> None:
    path = Path(path)
    meta = {"Software": None} if path.suffix.lower() == ".png" else {"Date": None}
    fig.savefig(path, metadata=meta)


def plot_merge_stats(per_scope: Mapping[str, MergeStats], path: str | Path) -> Path:
    """Bar chart of connections per scope with polysemy/synonymy ratios."""
    plt = _pyplot()
    scopes = list(per_scope)
    fig, (ax_n, ax_r) = plt.subplots(1, 2, figsize=(9, 3.5))
    ax_n.bar(scopes, [per_scope[s].connections for s in scopes], color="tab:blue")
    ax_n.set_ylabel("connections")
    ax_n.set_title("Links per merge case")
    xs = range(len(scopes))
    poly = [float(per_scope[s].polysemy or 0) for s in scopes]
    syn = [float(per_scope[s].synonymy or 0) for s in scopes]
    ax_r.bar([x - 0.2 for x in xs], poly, width=0.4, label="Poly.")
    ax_r.bar([x + 0.2 for x in xs], syn, width=0.4, label="Syn.")
    ax_r.set_xticks(list(xs), scopes)
    ax_r.set_title("Synsets per noun / nouns per synset")
    ax_r.legend(frameon=False)
    fig.tight_layout()
    _save(fig, Path(path))
    plt.close(fig)
    return Path(path)


def plot_entry_report(report: CoverageReport, path: str | Path) -> Path:
    plt = _pyplot()
    labels = ["mono", "multi", "cue", "no result"]
    values = [report.counts.get("mono", 0), report.counts.get("multi", 0),
              report.counts.get("cue", 0), report.no_result]
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.bar(labels, values, color=["tab:green", "tab:blue", "tab:orange", "tab:gray"])
    ax.set_ylabel("subentries")
    ax.set_title("Winning stage per subentry")
    fig.tight_layout()
    _save(fig, Path(path))
    plt.close(fig)
    return Path(path)
