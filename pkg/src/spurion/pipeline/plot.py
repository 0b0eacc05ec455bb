"""Dual-axis SVG overlays of up to four annual series, plus a CSV sidecar."""
from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from ..exceptions import ConfigError  # noqa: E402
from ..series import align_all  # noqa: E402

MAX_SERIES = 4
_MARKERS = ("o", "^", "s", "D")


def emit_plot(series, path, title=None):
    """Write ``path`` (SVG) and ``path.with_suffix('.csv')``.

    The first series goes on the left axis, the rest on the right. Axis
    limits are automatic; the sidecar records the limits each series was
    drawn against.
    """
    series = list(series)
    if not 1 <= len(series) <= MAX_SERIES:
        raise ConfigError(f"emit_plot takes 1 to {MAX_SERIES} series, got {len(series)}")
    if len(series) > 1:
        series = align_all(series)
    path = Path(path)
    plt.rcParams["svg.hashsalt"] = "spurion"
    fig, left = plt.subplots(figsize=(8, 4.5))
    axes = [left]
    lines = []
    s0 = series[0]
    lines += left.plot(s0.index, s0.values, color="black", lw=2, label=f"{s0.label} (l.h.s.)")
    left.set_ylabel(s0.unit or s0.label)
    left.set_xlabel("year")
    if len(series) > 1:
        right = left.twinx()
        axes.append(right)
        for k, s in enumerate(series[1:], start=1):
            lines += right.plot(s.index, s.values, marker=_MARKERS[k], markevery=max(1, len(s) // 25),
                                ms=4, lw=1, label=f"{s.label} (r.h.s.)")
        units = sorted({s.unit for s in series[1:] if s.unit})
        right.set_ylabel(", ".join(units) or "r.h.s.")
    left.legend(lines, [ln.get_label() for ln in lines], loc="best", fontsize=8)
    if title:
        left.set_title(title)
    fig.tight_layout()
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, format="svg", metadata={"Date": None})
    limits = [ax.get_ylim() for ax in axes]
    plt.close(fig)

    sidecar = path.with_suffix(".csv")
    with sidecar.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["year", "label", "value", "axis", "axis_min", "axis_max"])
        for k, s in enumerate(series):
            axis = "left" if k == 0 else "right"
            lo, hi = limits[0 if k == 0 else 1]
            for year, value in zip(s.index, s.values):
                w.writerow([int(year), s.label, repr(float(value)), axis, repr(float(lo)), repr(float(hi))])
    return path, sidecar
