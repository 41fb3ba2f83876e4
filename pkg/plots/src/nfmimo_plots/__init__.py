"""Figure rendering for nfmimo sweep CSVs."""

__version__ = "0.1.0"

from .render import PlotSpec, PlotSpecError, load_spec, parse_spec, render

__all__ = ["PlotSpec", "PlotSpecError", "load_spec", "parse_spec", "render", "__version__"]
