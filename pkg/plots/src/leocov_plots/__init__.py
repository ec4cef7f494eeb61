"""Chart rendering for leocov coverage-sweep CSV files."""
from .render import (CsvSchemaError, FigureJob, PANELS, Series,
                     extract_series, render)

__version__ = "0.1.0"
__all__ = ["CsvSchemaError", "FigureJob", "PANELS", "Series",
           "extract_series", "render", "__version__"]
