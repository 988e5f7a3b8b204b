"""Figures from the operator toolkit's CSV output.

This package consumes only the public CSV files written by the
`baskakov` command (metadata lines, header, data rows); it never
imports the producing package.
"""

from .figures import PlotJob, plot_convergence, plot_voronovskaja
from .reading import (CONVERGENCE_HEADER, VORONOVSKAJA_HEADER,
                      ConvergenceSeries, SchemaError, VoronovskajaSeries,
                      read_convergence, read_voronovskaja)

__all__ = [
    "CONVERGENCE_HEADER",
    "VORONOVSKAJA_HEADER",
    "ConvergenceSeries",
    "PlotJob",
    "SchemaError",
    "VoronovskajaSeries",
    "plot_convergence",
    "plot_voronovskaja",
    "read_convergence",
    "read_voronovskaja",
]
