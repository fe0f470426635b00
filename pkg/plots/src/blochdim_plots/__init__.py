"""Figure rendering for blochdim CSV outputs."""

__version__ = "0.1.0"

from .figures import (
    FigureResult,
    FigureSpec,
    MissingInputError,
    SchemaError,
    plot_coverage,
    plot_saturation,
)
