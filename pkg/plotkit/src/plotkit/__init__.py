"""Figure rendering for werner-ou sweep CSVs.

Reads the fixed CSV contract (header config,mode,g,p,lambda,tau,L,R,U,C,EW),
builds a deterministic plot specification, and renders 2x2 multi-panel
figures.  No physics is recomputed here; the CSV is the single source of
truth.
"""

__version__ = "0.1.0"

from .reader import CSV_COLUMNS, PlotDataError, read_sweep_csv
from .figures import FIGURE_IDS, FigureSpec, build_plot_spec, plot_spec_json, render

__all__ = [
    "CSV_COLUMNS",
    "FIGURE_IDS",
    "FigureSpec",
    "PlotDataError",
    "build_plot_spec",
    "plot_spec_json",
    "read_sweep_csv",
    "render",
]
