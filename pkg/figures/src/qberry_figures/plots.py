"""Render qberry sweep CSVs into figures.

The plotting layer never recomputes physics: every number on a figure comes
from the CSV (the least-squares fit and Pearson r are computed on the
plotted values themselves). Output format follows the file extension; SVG is
the default choice for diff-friendly artifacts, so rendering is pinned to be
deterministic (fixed hash salt, no embedded dates).
"""

from __future__ import annotations

from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .errors import EmptyInputError, MissingColumnError

FIG2_COLUMNS = ("delta_over_lambda", "n", "berry_over_pi", "entropy_nats")
FIG3_COLUMNS = ("delta_over_lambda", "n", "berry_over_pi", "concurrence")

_LINE_STYLES = ("-", ":", "--", "-.")
_RC = {
    "svg.hashsalt": "qberry-figures",
    "figure.dpi": 110,
    "font.size": 10,
}


@dataclass(frozen=True)
class SeriesFit:
    """Least-squares summary of one (concurrence, phase) series."""

    slope: float
    intercept: float
    pearson_r: float


def _read_rows(path: str, required: tuple[str, ...]) -> tuple[list[dict], list[str]]:
    with open(path, encoding="utf-8") as handle:
        lines = handle.read().splitlines()
    if not lines:
        raise EmptyInputError(f"{path} is empty")
    header = lines[0].split(",")
    for column in required:
        if column not in header:
            raise MissingColumnError(column)
    index = {name: header.index(name) for name in required}
    rows = []
    footers = []
    for line in lines[1:]:
        if not line:
            continue
        if line.startswith("#"):
            footers.append(line)
            continue
        cells = line.split(",")
        row = {}
        for name, i in index.items():
            if i >= len(cells) or cells[i] == "":
                raise MissingColumnError(name)
            row[name] = float(cells[i]) if name != "n" else int(cells[i])
        rows.append(row)
    if not rows:
        raise EmptyInputError(f"{path} has no data rows")
    return rows, footers


def _series_by(rows: list[dict], key: str) -> dict:
    series: dict = {}
    for row in rows:
        series.setdefault(row[key], []).append(row)
    return series


def parse_footer_correlations(path: str) -> dict[float, float | None]:
    """Pearson values recorded by the sweep, keyed by detuning."""
    out: dict[float, float | None] = {}
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            if not line.startswith("# pearson "):
                continue
            fields = dict(part.split("=", 1) for part in line[2:].split() if "=" in part)
            value = fields.get("r", "undefined")
            out[float(fields["delta_over_lambda"])] = (
                None if value == "undefined" else float(value)
            )
    return out


def _save(fig, out_path: str) -> None:
    kwargs = {"metadata": {"Date": None}} if out_path.endswith(".svg") else {}
    try:
        fig.savefig(out_path, **kwargs)
    finally:
        plt.close(fig)


def plot_fig2(csv_path: str, out_path: str) -> dict[int, int]:
    """Two panels versus detuning: Berry phase over pi, then entropy.

    One styled curve per photon number; returns the point count per curve.
    """
    rows, _ = _read_rows(csv_path, FIG2_COLUMNS)
    if len({row["delta_over_lambda"] for row in rows}) < 2:
        raise EmptyInputError("need at least two distinct detuning values")
    series = _series_by(rows, "n")
    counts = {}
    with plt.rc_context(_RC):
        fig, (ax_phase, ax_entropy) = plt.subplots(1, 2, figsize=(9.0, 3.6))
        for rank, n in enumerate(sorted(series)):
            pts = sorted((r["delta_over_lambda"], r["berry_over_pi"], r["entropy_nats"])
                         for r in series[n])
            deltas = [p[0] for p in pts]
            style = _LINE_STYLES[rank % len(_LINE_STYLES)]
            ax_phase.plot(deltas, [p[1] for p in pts], style, color="black", label=f"n = {n}")
            ax_entropy.plot(deltas, [p[2] for p in pts], style, color="black", label=f"n = {n}")
            counts[n] = len(pts)
        ax_phase.set_xlabel(r"$\Delta/\lambda$")
        ax_phase.set_ylabel(r"$\gamma_B/\pi$")
        ax_entropy.set_xlabel(r"$\Delta/\lambda$")
        ax_entropy.set_ylabel(r"$S$")
        ax_phase.legend(frameon=False)
        fig.tight_layout()
        _save(fig, out_path)
    return counts


def fit_series(concurrence: np.ndarray, phase: np.ndarray) -> SeriesFit | None:
    """Ordinary least squares of phase on concurrence; None when degenerate."""
    if concurrence.size < 2 or float(np.std(concurrence)) < 1e-15 \
            or float(np.std(phase)) < 1e-15:
        return None
    slope, intercept = np.polyfit(concurrence, phase, 1)
    r = float(np.corrcoef(concurrence, phase)[0, 1])
    return SeriesFit(slope=float(slope), intercept=float(intercept), pearson_r=r)


def plot_fig3(csv_path: str, out_path: str) -> dict[float, float | None]:
    """Scatter of phase against concurrence per detuning, with fit lines.

    Returns the annotated Pearson r per detuning (None when the fit is
    suppressed for a degenerate series).
    """
    rows, _ = _read_rows(csv_path, FIG3_COLUMNS)
    series = _series_by(rows, "delta_over_lambda")
    annotations: dict[float, float | None] = {}
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(5.6, 4.2))
        for rank, delta in enumerate(sorted(series)):
            pts = series[delta]
            x = np.array([p["concurrence"] for p in pts])
            y = np.array([p["berry_over_pi"] for p in pts])
            marker = "o" if rank % 2 == 0 else "s"
            ax.scatter(x, y, s=18, marker=marker, color="black",
                       facecolors="none" if rank % 2 else "black",
                       label=rf"$\Delta/\lambda = {delta:g}$")
            fit = fit_series(x, y)
            if fit is None:
                annotations[delta] = None
                continue
            annotations[delta] = fit.pearson_r
            # resonant series dotted, off-resonant solid
            style = ":" if delta == 0.0 else "-"
            grid = np.linspace(float(x.min()), float(x.max()), 50)
            ax.plot(grid, fit.slope * grid + fit.intercept, style, color="black",
                    linewidth=1.0)
            ax.annotate(
                rf"$r = {fit.pearson_r:.6f}$",
                xy=(0.04, 0.90 - 0.08 * rank),
                xycoords="axes fraction",
                fontsize=9,
            )
        ax.set_xlabel(r"$C_n$")
        ax.set_ylabel(r"$\gamma_B/\pi$")
        ax.legend(frameon=False, loc="lower left")
        fig.tight_layout()
        _save(fig, out_path)
    return annotations
