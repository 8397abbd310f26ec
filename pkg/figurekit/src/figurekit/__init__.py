"""Presentation layer for ftqec-limits benchmark data.

The package reads the versioned CSV emitted by ``ftqec-limits figure-data``
(or ``simulate``) and renders one of four known log-log figures.  It never
computes bound or simulation values itself; every number on a plot comes
from the input file.
"""

from .data import CSV_VERSION, DataFormatError, SeriesPoint, load_series
from .render import MissingSeriesError, render_figure
from .specs import FIGURES, FigureSpec, SeriesSpec

__all__ = [
    "CSV_VERSION",
    "DataFormatError",
    "FIGURES",
    "FigureSpec",
    "MissingSeriesError",
    "SeriesPoint",
    "SeriesSpec",
    "load_series",
    "render_figure",
]
