"""Figures and text renderings of shapes, assemblies and exploration results.

Figures are drawn with matplotlib on the Agg backend; the file suffix picks
SVG or PNG.  One unit square per point, with y growing upward as in the
lattice.
"""
from __future__ import annotations

import hashlib
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.collections import LineCollection, PatchCollection  # noqa: E402
from matplotlib.colors import is_color_like, to_hex  # noqa: E402
from matplotlib.patches import Rectangle  # noqa: E402

from .core import STEP, Assembly, TileSet  # noqa: E402

SHAPE_COLOR = "#4a6fa5"
_PALETTE = [to_hex(c) for c in plt.get_cmap("tab20").colors]


def tile_color(display_label: str) -> str:
    """The label itself when it names a color, else a stable palette pick."""
    if display_label and is_color_like(display_label):
        return to_hex(display_label)
    k = int(hashlib.sha1(display_label.encode()).hexdigest(), 16)
    return _PALETTE[k % len(_PALETTE)]


def ascii_grid(points, fill: str = "#", blank: str = " ") -> str:
    """Rows top to bottom over the bounding box; no trailing spaces are trimmed."""
    pts = set(points)
    if not pts:
        return ""
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    rows = []
    for y in range(max(ys), min(ys) - 1, -1):
        rows.append("".join(fill if (x, y) in pts else blank for x in range(min(xs), max(xs) + 1)))
    return "\n".join(rows) + "\n"


def point_lines(points) -> str:
    return "".join(f"{x} {y}\n" for x, y in sorted(points))


def _frame(ax, points):
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    ax.set_xlim(min(xs) - 0.5, max(xs) + 1.5)
    ax.set_ylim(min(ys) - 0.5, max(ys) + 1.5)
    ax.set_aspect("equal")
    ax.axis("off")


def _figure(points):
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    w = max(xs) - min(xs) + 2
    h = max(ys) - min(ys) + 2
    scale = min(12.0 / max(w, h), 0.4)
    return plt.subplots(figsize=(max(w * scale, 2.0), max(h * scale, 2.0)))


def _save(fig, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, bbox_inches="tight", dpi=150)
    plt.close(fig)
    return path


def draw_squares(ax, points, colors, edge="#222222"):
    patches = [Rectangle(p, 1, 1) for p in points]
    lw = 0.3 if len(patches) > 400 else 0.6
    ax.add_collection(PatchCollection(patches, facecolors=colors, edgecolors=edge,
                                      linewidths=lw))


def glue_ticks(a: Assembly, tileset: TileSet):
    """Line segments marking each glue, thicker for higher strength.

    Returns {strength: [segment, ...]}; a segment is a short stub pointing from
    the tile center toward the glued side.
    """
    out = {}
    for (x, y), name in a.items():
        t = tileset[name]
        for side, g in t.glues():
            dx, dy = STEP[side]
            cx, cy = x + 0.5, y + 0.5
            seg = ((cx + 0.3 * dx, cy + 0.3 * dy), (cx + 0.5 * dx, cy + 0.5 * dy))
            out.setdefault(g.strength, []).append(seg)
    return out


def render_shape(points, path, title: str = "", color: str = SHAPE_COLOR):
    pts = sorted(points)
    fig, ax = _figure(pts)
    draw_squares(ax, pts, [color] * len(pts))
    _frame(ax, pts)
    if title:
        ax.set_title(title, fontsize=9)
    return _save(fig, path)


def render_assembly(a: Assembly, tileset: TileSet, path, title: str = "",
                    ticks: bool = False):
    pts = sorted(a)
    fig, ax = _figure(pts)
    draw_squares(ax, pts, [tile_color(tileset[a[p]].display_label) for p in pts])
    if ticks:
        for s, segs in sorted(glue_ticks(a, tileset).items()):
            ax.add_collection(LineCollection(segs, colors="black", linewidths=0.6 * max(s, 1)))
    _frame(ax, pts)
    if title:
        ax.set_title(title, fontsize=9)
    return _save(fig, path)


def render_spectrum(spectrum, path, title: str = "size spectrum", marks=()):
    """Bar chart of producible counts by size; `marks` draws dashed guides."""
    fig, ax = plt.subplots(figsize=(7, 3.2))
    if spectrum:
        sizes, counts = zip(*spectrum)
        ax.bar(sizes, counts, width=0.8, color=SHAPE_COLOR)
        ax.set_yscale("log")
    for m in marks:
        ax.axvline(m, color="#d2574e", lw=0.8, ls="--")
    ax.set_xlabel("assembly size")
    ax.set_ylabel("producibles")
    ax.set_title(title, fontsize=9)
    return _save(fig, path)


def render_deficits(rows, d, path, title: str = "best deficit per producible"):
    """Scatter of (size, best deficit); `rows` holds (size, deficit or None)."""
    fig, ax = plt.subplots(figsize=(7, 3.2))
    ok = [(s, v) for s, v in rows if v is not None]
    bad = [s for s, v in rows if v is None]
    if ok:
        xs, ys = zip(*ok)
        ax.scatter(xs, ys, s=8, color=SHAPE_COLOR, label="fits a stage")
    if bad:
        ax.scatter(bad, [0] * len(bad), s=12, marker="x", color="#d2574e", label="fits no stage")
    ax.axhline(d, color="#d2574e", lw=0.8, ls="--", label=f"d = {d}")
    ax.set_xlabel("assembly size")
    ax.set_ylabel("deficit")
    ax.legend(fontsize=7, loc="upper right")
    ax.set_title(title, fontsize=9)
    return _save(fig, path)


def save_both(render, stem, *args, **kw):
    """Call a render function for ``stem.svg`` and ``stem.png``."""
    stem = Path(stem)
    if stem.suffix in (".svg", ".png"):
        stem = stem.with_suffix("")
    return [render(*args, stem.with_suffix(ext), **kw) for ext in (".svg", ".png")]
