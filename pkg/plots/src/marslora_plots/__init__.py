"""Figure renderer for the marslora experiment CSV tables."""

__version__ = "0.1.0"

from .render import FigureData, RenderError, Series, preset_names, render, render_all
from .schemas import PRESET_FILES

__all__ = [
    "FigureData",
    "PRESET_FILES",
    "RenderError",
    "Series",
    "preset_names",
    "render",
    "render_all",
]
