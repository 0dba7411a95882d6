"""Figures rendered next to an NDJSON verification report."""

from __future__ import annotations

from collections import Counter, defaultdict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

STATUS_COLORS = {"pass": "#4c9a2a", "conditional-pass": "#d9a400", "fail": "#c0392b"}


def _criterion_key(name):
    return (int(name[1:]) if name[1:].isdigit() else 10 ** 6, name)


def plot_runtimes(reports, path):
    """Horizontal bars of wall time per case, coloured by status."""
    cases = [r.case for r in reports]
    times = [r.wall_time for r in reports]
    colors = [STATUS_COLORS.get(r.status, "grey") for r in reports]
    fig, ax = plt.subplots(figsize=(8, max(2.5, 0.22 * len(cases) + 1)))
    ax.barh(range(len(cases)), times, color=colors)
    ax.set_yticks(range(len(cases)), cases, fontsize=6)
    ax.invert_yaxis()
    ax.set_xlabel("wall time (s)")
    ax.set_xscale("symlog", linthresh=0.01)
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata={"Software": None})
    plt.close(fig)


def plot_status_summary(reports, path):
    """Stacked counts of statuses per criterion."""
    counts = defaultdict(Counter)
    for r in reports:
        counts[r.criterion][r.status] += 1
    names = sorted(counts, key=_criterion_key)
    fig, ax = plt.subplots(figsize=(max(4, 0.6 * len(names) + 2), 3))
    bottom = [0] * len(names)
    for status, color in STATUS_COLORS.items():
        vals = [counts[n][status] for n in names]
        ax.bar(names, vals, bottom=bottom, color=color, label=status)
        bottom = [b + v for b, v in zip(bottom, vals)]
    ax.set_ylabel("cases")
    ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata={"Software": None})
    plt.close(fig)


def render_report_figures(reports, report_path):
    """Write ``<stem>.runtimes.png`` and ``<stem>.status.png`` beside the report; return the paths."""
    report_path = Path(report_path)
    stem = report_path.with_suffix("")
    out = [Path(f"{stem}.runtimes.png"), Path(f"{stem}.status.png")]
    if reports:
        plot_runtimes(reports, out[0])
        plot_status_summary(reports, out[1])
        return out
    return []
