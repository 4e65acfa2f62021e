"""Plots for qberry sweep CSVs."""

__version__ = "0.1.0"

from .errors import EmptyInputError, FiguresError, MissingColumnError
from .plots import SeriesFit, fit_series, parse_footer_correlations, plot_fig2, plot_fig3

__all__ = [
    "EmptyInputError",
    "FiguresError",
    "MissingColumnError",
    "SeriesFit",
    "fit_series",
    "parse_footer_correlations",
    "plot_fig2",
    "plot_fig3",
]
