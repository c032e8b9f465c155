"""Deterministic plots of hyplat CSV exports.

Three figure kinds, one per export schema: lattice-point scatter (from
`hyplat measure --raw-points`), the real-parts density curve (from
`hyplat density --grid`), and the growth-exponent histogram (from
`hyplat census --format csv`). Nothing is recomputed here; the CSV is the
single source of truth and rendering is a pure function of its bytes.
"""

from hyplat_figures.render import FigureSpec, RenderResult, render
from hyplat_figures.schema import SCHEMAS, SchemaError, read_rows

__all__ = [
    "FigureSpec",
    "RenderResult",
    "SCHEMAS",
    "SchemaError",
    "read_rows",
    "render",
]

__version__ = "0.1.0"
