"""Figure rendering: pure function of the input CSV bytes.

Determinism notes: the Agg backend is forced, the SVG id salt is pinned,
and date metadata is stripped from both formats, so re-rendering the same
CSV yields byte-identical PNG and SVG files (matplotlib version held
fixed).
"""

import math
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.patches import Circle

from hyplat_figures.schema import SchemaError, read_rows

_SVG_SALT = "hyplat-figures"


@dataclass(frozen=True)
class FigureSpec:
    kind: str
    input_csv: str
    output: str
    title: str = ""
    xlabel: str = ""
    ylabel: str = ""
    dpi: int = 100


@dataclass(frozen=True)
class RenderResult:
    png_path: str
    svg_path: str
    summary: dict = field(compare=False)


def _output_paths(output):
    base = output
    for ext in (".png", ".svg"):
        if base.endswith(ext):
            base = base[: -len(ext)]
            break
    return base + ".png", base + ".svg"


def _save(fig, spec):
    png_path, svg_path = _output_paths(spec.output)
    fig.savefig(png_path, dpi=spec.dpi, metadata={"Software": None})
    fig.savefig(svg_path, metadata={"Date": None})
    plt.close(fig)
    return png_path, svg_path


def _render_scatter(spec, rows):
    pts = [(r["x"], r["y"], r["even_x"]) for r in rows]
    for x, y, e in pts:
        if e not in (0, 1):
            raise SchemaError(f"even_x must be 0 or 1, got {e}")
        if e != (0 if x % 2 else 1):
            raise SchemaError(f"even_x flag contradicts x at ({x}, {y})")
    m_vals = {x * x + y * y for x, y, _ in pts}
    if len(m_vals) != 1:
        raise SchemaError(
            f"points lie on {len(m_vals)} circles, expected one "
            f"(radius^2 values {sorted(m_vals)[:5]}...)"
        )
    m = m_vals.pop()
    radius = math.sqrt(m)

    fig, ax = plt.subplots(figsize=(5.0, 5.0))
    ax.add_patch(Circle((0, 0), radius, fill=False, color="0.6", lw=0.8))
    even = [(x, y) for x, y, e in pts if e]
    odd = [(x, y) for x, y, e in pts if not e]
    if even:
        ax.scatter(*zip(*even), s=42, marker="o", color="C0", zorder=3,
                   label="x even")
    if odd:
        ax.scatter(*zip(*odd), s=42, marker="x", color="C3", zorder=3,
                   label="x odd")
    lim = radius * 1.15
    ax.set_xlim(-lim, lim)
    ax.set_ylim(-lim, lim)
    ax.set_aspect("equal")
    ax.axhline(0, color="0.85", lw=0.6, zorder=0)
    ax.axvline(0, color="0.85", lw=0.6, zorder=0)
    ax.set_xlabel(spec.xlabel or "x")
    ax.set_ylabel(spec.ylabel or "y")
    ax.set_title(spec.title or f"lattice points with x^2 + y^2 = {m}")
    ax.legend(loc="upper right", fontsize=8)
    png, svg = _save(fig, spec)
    summary = {
        "points": len(pts),
        "even_points": len(even),
        "odd_points": len(odd),
        "radius_sq": m,
    }
    return RenderResult(png, svg, summary)


def _render_density(spec, rows):
    xs = [r["x"] for r in rows]
    ps = [r["p"] for r in rows]
    p_min, p_max = min(ps), max(ps)

    fig, (ax_full, ax_zoom) = plt.subplots(
        2, 1, figsize=(6.4, 6.0), sharex=True,
        gridspec_kw={"hspace": 0.12},
    )
    ax_full.plot(xs, ps, color="C0", lw=1.2)
    ax_full.set_ylim(0, p_max * 1.25)
    ax_full.set_ylabel(spec.ylabel or "p(x)")
    ax_full.set_title(spec.title or "density of real parts mod 1")

    ax_zoom.plot(xs, ps, color="C0", lw=1.2)
    pad = (p_max - p_min) * 0.15 or 1e-4
    ax_zoom.set_ylim(p_min - pad, p_max + pad)
    ax_zoom.set_xlabel(spec.xlabel or "x")
    ax_zoom.set_ylabel("p(x), magnified")
    ax_zoom.axhline(1.0, color="0.7", lw=0.6, ls=":")

    png, svg = _save(fig, spec)
    summary = {
        "panels": 2,
        "p_min": p_min,
        "p_max": p_max,
        "x_at_min": xs[ps.index(p_min)],
        "x_at_max": xs[ps.index(p_max)],
        "samples": len(xs),
    }
    return RenderResult(png, svg, summary)


def _render_histogram(spec, rows):
    nonzero = [i for i, r in enumerate(rows) if r["count"] > 0]
    if not nonzero:
        raise SchemaError("histogram has no nonzero bins")
    # trim empty flanks for display; the data itself is untouched
    lo_i, hi_i = nonzero[0], nonzero[-1]
    view = rows[lo_i : hi_i + 1]

    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    lefts = [r["exponent_lo"] for r in view]
    widths = [r["exponent_hi"] - r["exponent_lo"] for r in view]
    counts = [r["count"] for r in view]
    ax.bar(lefts, counts, width=widths, align="edge",
           color="C0", edgecolor="white", lw=0.4)
    log2 = math.log(2)
    ax.axvline(log2, color="C3", lw=1.0, ls="--")
    ax.text(log2, ax.get_ylim()[1] * 0.97, " log 2", color="C3",
            ha="left", va="top", fontsize=8)
    ax.set_xlabel(spec.xlabel or "log r* / log log n")
    ax.set_ylabel(spec.ylabel or "norms")
    ax.set_title(spec.title or "growth exponent across realized norms")

    png, svg = _save(fig, spec)
    summary = {
        "bins_plotted": len(view),
        "total_count": sum(r["count"] for r in rows),
        "support_lo": view[0]["exponent_lo"],
        "support_hi": view[-1]["exponent_hi"],
    }
    return RenderResult(png, svg, summary)


_RENDERERS = {
    "scatter": _render_scatter,
    "density": _render_density,
    "histogram": _render_histogram,
}


def render(spec):
    """Render one figure; returns a RenderResult with both output paths."""
    if spec.kind not in _RENDERERS:
        raise SchemaError(
            f"unknown kind {spec.kind!r}; expected one of "
            + ", ".join(sorted(_RENDERERS))
        )
    rows = read_rows(spec.kind, spec.input_csv)
    plt.rcParams["svg.hashsalt"] = _SVG_SALT
    return _RENDERERS[spec.kind](spec, rows)
