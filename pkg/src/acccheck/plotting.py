"""Figures for simulated traces.

Speed-like columns and distance-like columns go on separate panels, the way
the classic ACC simulation figure lays them out; mode switches are drawn as
vertical markers on every panel.  Output is byte-for-byte deterministic.
"""
from __future__ import annotations

from pathlib import Path
from typing import Sequence, Union

import matplotlib
from matplotlib.figure import Figure

from acccheck.harness import TRACE_COLUMNS, Report, Trace

SPEED_COLUMNS = ("v_ego", "v_lead", "a_ego")
DISTANCE_COLUMNS = ("d_rel", "d_safe", "x_ego", "x_lead")

_LABELS = {
    "v_ego": "ego speed (m/s)",
    "v_lead": "lead speed (m/s)",
    "a_ego": "ego acceleration (m/s²)",
    "d_rel": "relative distance (m)",
    "d_safe": "safe distance (m)",
    "x_ego": "ego position (m)",
    "x_lead": "lead position (m)",
    "mode": "mode (+1 speed / -1 space)",
}

_STYLE = {
    "font.size": 9,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "svg.hashsalt": "acccheck",
    "svg.fonttype": "path",
}


def _switch_times(trace: Trace) -> list[float]:
    samples = trace.samples
    return [b.t for a, b in zip(samples, samples[1:]) if a.mode != b.mode]


def _panels(columns: Sequence[str]) -> list[list[str]]:
    speed = [c for c in columns if c in SPEED_COLUMNS]
    dist = [c for c in columns if c in DISTANCE_COLUMNS]
    other = [c for c in columns if c not in SPEED_COLUMNS and c not in DISTANCE_COLUMNS]
    if speed and dist:
        return [speed + other, dist] if other else [speed, dist]
    return [list(columns)]


def trace_figure(trace: Trace, columns: Sequence[str], title: str = "") -> Figure:
    unknown = [c for c in columns if c not in TRACE_COLUMNS or c == "t"]
    if unknown or not columns:
        raise ValueError(f"cannot plot columns {unknown or columns}; choose from {TRACE_COLUMNS[1:]}")

    with matplotlib.rc_context(_STYLE):
        panels = _panels(columns)
        fig = Figure(figsize=(5.0 * len(panels), 3.6))
        axes = fig.subplots(1, len(panels), squeeze=False)[0]
        t = trace.column("t")
        switches = _switch_times(trace)
        for ax, cols in zip(axes, panels):
            for col in cols:
                ax.plot(t, trace.column(col), label=_LABELS.get(col, col), linewidth=1.2)
            for ts in switches:
                ax.axvline(ts, color="0.6", linewidth=0.5, linestyle=":")
            if trace.collision is not None:
                ax.axvline(trace.collision, color="tab:red", linewidth=1.0, label="collision")
            ax.set_xlabel("time (s)")
            ax.legend(loc="best", fontsize=7, frameon=False)
        if title:
            fig.suptitle(title)
        fig.tight_layout()
    return fig


def save_figure(fig: Figure, out: Union[str, Path]) -> Path:
    out = Path(out)
    fmt = out.suffix.lstrip(".") or "svg"
    with matplotlib.rc_context(_STYLE):
        fig.savefig(out, format=fmt, metadata={"Date": None} if fmt == "svg" else None)
    return out


def plot_trace(trace: Trace, columns: Sequence[str], out: Union[str, Path], title: str = "") -> Path:
    return save_figure(trace_figure(trace, columns, title), out)


def plot_report(report: Report, outdir: Union[str, Path]) -> list[Path]:
    """One figure per verdict-table case, named ``<id>.svg``."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    for case in report.cases:
        title = f"{case.id}: holds={str(case.result).lower()} (expected {str(case.ground_truth).lower()})"
        written.append(plot_trace(case.trace, ["v_ego", "v_lead", "a_ego", "d_rel", "d_safe"],
                                  outdir / f"{case.id}.svg", title))
    return written
