"""Figure regeneration for mfd3 training runs.

Reads the CSV artifacts a run emits (metrics.csv, fshape_<step>.csv,
neurons2_<step>.csv) and renders the three-panel simulation figure. All
numbers come from the files; nothing is recomputed here.
"""

from .render import FigureSpec, SchemaError, build_spec, render

__version__ = "0.1.0"

__all__ = ["FigureSpec", "SchemaError", "build_spec", "render", "__version__"]
