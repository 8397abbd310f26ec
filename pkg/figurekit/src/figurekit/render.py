"""Drawing one figure from loaded CSV series.

Rendering is read-only over the data: the same CSV input produces the
same image bytes.  Simulation series appear as markers (with vertical
confidence bars whenever the CSV carries a band), bounds as lines.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .data import SeriesPoint, load_series
from .specs import FIGURES, FigureSpec


class MissingSeriesError(Exception):
    """The CSV does not provide every series the figure requires."""

    def __init__(self, pairs: list[tuple[str, str]]):
        self.pairs = pairs
        listed = ", ".join(f"({fig}, {ser})" for fig, ser in pairs)
        super().__init__(f"missing series: {listed}")


def _draw_series(ax: plt.Axes, spec, points: list[SeriesPoint]) -> None:
    points = sorted(points, key=lambda pt: pt.p)
    xs = [pt.p for pt in points]
    ys = [pt.value for pt in points]
    if spec.role == "bound":
        ax.plot(xs, ys, color=spec.color, linestyle=spec.linestyle,
                label=spec.label)
        return
    # Asymmetric error bars from the CI columns; rows without a band
    # (frozen reference points) draw as bare markers.
    has_band = all(pt.ci_low is not None and pt.ci_high is not None
                   for pt in points)
    if has_band:
        lower = [max(pt.value - pt.ci_low, 0.0) for pt in points]
        upper = [max(pt.ci_high - pt.value, 0.0) for pt in points]
        ax.errorbar(xs, ys, yerr=(lower, upper), color=spec.color,
                    marker=spec.marker, linestyle="none", capsize=2,
                    label=spec.label)
    else:
        ax.plot(xs, ys, color=spec.color, marker=spec.marker,
                linestyle="none", label=spec.label)


def render_figure(figure_id: str, csv_path: str | Path,
                  out_path: str | Path) -> Path:
    """Render ``figure_id`` from ``csv_path`` and write a PNG to ``out_path``.

    Raises ``KeyError`` for an unknown figure id, ``DataFormatError`` for an
    unreadable file and ``MissingSeriesError`` when any required
    ``(figure, series)`` pair has no rows.
    """
    try:
        spec: FigureSpec = FIGURES[figure_id]
    except KeyError:
        raise KeyError(f"unknown figure: {figure_id!r}") from None

    data = load_series(csv_path)
    absent = [pair for pair in spec.required if not data.get(pair)]
    if absent:
        raise MissingSeriesError(absent)

    fig, ax = plt.subplots(figsize=(6.4, 4.8), dpi=150)
    try:
        for series in spec.series:
            _draw_series(ax, series, data[(spec.figure, series.name)])
        ax.set_xscale("log")
        ax.set_yscale("log")
        ax.set_xlim(*spec.x_limits)
        ax.set_ylim(*spec.y_limits)
        ax.set_xlabel("physical error rate $p$")
        ax.set_ylabel("failure probability")
        ax.set_title(spec.title)
        ax.grid(True, which="both", alpha=0.3)
        ax.legend(loc=spec.legend_loc, fontsize=8)
        out = Path(out_path)
        out.parent.mkdir(parents=True, exist_ok=True)
        # Strip the Software tag so identical input gives identical bytes
        # across matplotlib patch versions.
        fig.savefig(out, format="png", metadata={"Software": None})
    finally:
        plt.close(fig)
    return out
