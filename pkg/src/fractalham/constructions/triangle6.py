"""Scale-1 Sierpinski triangle in the 6-HAM at temperature 2, 30 tiles.

Stage i >= 1 is the near-triangle A_i = S_i minus its six corner points.
A_1 is a 2x3 block; each base piece b1, b2, b3 is a ring of six tiles
(strength-2 columns closed by two strength-1 bonds).  A_{i+1} is three
copies of A_i, placed like the three copies of S_i, plus three 4-tile
helpers filling the junctions where the copies' corners are missing.

Every inter-piece glue has strength 1 and the six pieces meet in a single
cycle B - alpha - L - gamma - R - beta - B, so the union has min cut 2 while
any five of them form a path.  Every A_i exposes the same six glues:

    tl_a, tl_g   west faces of the two tiles next to the missing left corner
    tr_b, tr_g   east faces of the two tiles next to the missing right corner
    bl, br       south faces of the bottom row

alpha binds tl_a of the bottom copy and bl of the left copy, beta binds tr_b
of the bottom copy and br of the right copy, gamma binds tr_g of the left
copy and tl_g of the right copy.  b1 only carries what the bottom role
needs (plus the bottom glues of the product), and likewise b2 for the left
role and b3 for the right role, so A_2 is unique.
"""
from __future__ import annotations

from ..core import OPPOSITE, Glue, TileSet, TileType
from ..engine import AssemblySystem, GuidedScript, Step
from ..fractals import TRIANGLE
from . import ConstructionBundle

RING = ((-1, 1), (-1, 2), (-1, 3), (0, 3), (0, 2), (0, 1))

# role glues carried by each base piece: point -> (side, label)
BASE_GLUES = {
    "b1": {(-1, 2): ("west", "tl_a"), (0, 2): ("east", "tr_b"),
           (-1, 1): ("south", "bl"), (0, 1): ("south", "br")},
    "b2": {(-1, 1): ("south", "bl"), (0, 3): ("east", "tr_g"),
           (-1, 2): ("west", "tl_a"), (-1, 3): ("west", "tl_g")},
    "b3": {(0, 1): ("south", "br"), (-1, 3): ("west", "tl_g"),
           (0, 2): ("east", "tr_b"), (0, 3): ("east", "tr_g")},
}
COLORS = {"b1": "#e3b448", "b2": "#5b8fd1", "b3": "#d2574e",
          "alpha": "#7fbf7f", "beta": "#b48ad6", "gamma": "#9a9a9a"}


def _side_between(p, q):
    d = (q[0] - p[0], q[1] - p[1])
    return {(1, 0): "east", (-1, 0): "west", (0, 1): "north", (0, -1): "south"}[d]


def _chain_tiles(prefix, points, strengths, extra):
    """Tiles along a path of points; consecutive tiles share a glue of the given strength.

    `extra` maps point -> [(side, label)] strength-1 inter-piece glues.
    """
    glues = {p: {} for p in points}
    n = len(points)
    for k in range(len(strengths)):
        p, q = points[k], points[(k + 1) % n]
        s = _side_between(p, q)
        label = f"{prefix}.{k}"
        glues[p][s] = Glue(label, strengths[k])
        glues[q][OPPOSITE[s]] = Glue(label, strengths[k])
    for p, items in extra.items():
        for side, label in items:
            glues[p][side] = Glue(label, 1)
    return glues


def base_piece(name):
    # vertical bonds strength 2; top and bottom bonds strength 1, closing the ring
    strengths = (2, 2, 1, 2, 2, 1)
    extra = {p: [g] for p, g in BASE_GLUES[name].items()}
    return _chain_tiles(name, RING, strengths, extra)


def helper_shapes(i):
    """Helper points, in path order, for joining three copies of A_i."""
    s = 1 << i
    x0, y0 = -s, 2 * s
    x1, y1 = s - 1, 4 * s
    alpha = ((x0, y0 - 2), (x0, y0 - 1), (x0, y0), (x0 - 1, y0))
    beta = ((x1, y0 - 2), (x1, y0 - 1), (x1, y0), (x1 + 1, y0))
    gamma = ((-1, y1 - 1), (-1, y1 - 2), (0, y1 - 2), (0, y1 - 1))
    return {"alpha": alpha, "beta": beta, "gamma": gamma}


def helper_piece(name):
    # the glue layout only depends on the path, not on the stage
    pts = helper_shapes(0)[name]
    if name == "alpha":
        extra = {pts[0]: [("east", "tl_a")], pts[3]: [("north", "bl")]}
    elif name == "beta":
        extra = {pts[0]: [("west", "tr_b")], pts[3]: [("north", "br")]}
    else:
        extra = {pts[0]: [("west", "tr_g")], pts[3]: [("east", "tl_g")]}
    return pts, _chain_tiles(name, pts, (2, 2, 2), extra)


def tile_names():
    """piece -> list of tile names in path order."""
    out = {b: [f"{b}_{k}" for k in range(6)] for b in ("b1", "b2", "b3")}
    for h in ("alpha", "beta", "gamma"):
        out[h] = [f"{h}_{k}" for k in range(4)]
    return out


def _tileset():
    tiles = []
    names = tile_names()
    for b in ("b1", "b2", "b3"):
        g = base_piece(b)
        for k, p in enumerate(RING):
            tiles.append(TileType(names[b][k], display_label=COLORS[b], **g[p]))
    for h in ("alpha", "beta", "gamma"):
        pts, g = helper_piece(h)
        for k, p in enumerate(pts):
            tiles.append(TileType(names[h][k], display_label=COLORS[h], **g[p]))
    return TileSet(tiles)


def stage_script(stage):
    """Guided script ending in the stage target.

    Stage 0 is the gamma helper (exactly S_0), stage 1 is b1 (S_1 minus its
    corners), stage i >= 2 is the near-triangle A_i.
    """
    names = tile_names()
    steps = []
    if stage == 0:
        pts = helper_shapes(0)["gamma"]
        offs = [(p[0], p[1] - 2) for p in pts]   # gamma at stage 0 sits on S_0
        steps.append(Step("S0", tuple((n, o) for n, o in zip(names["gamma"], offs))))
        return GuidedScript(steps, name="triangle6 stage 0")
    for b in ("b1", "b2", "b3"):
        steps.append(Step(b, tuple(zip(names[b], RING))))
    prev = {"B": "b1", "L": "b2", "R": "b3"}
    for i in range(1, stage):
        s = 1 << i
        hs = helper_shapes(i)
        for h in ("alpha", "beta", "gamma"):
            steps.append(Step(f"{h}{i}", tuple(zip(names[h], hs[h]))))
        sid = f"A{i + 1}"
        steps.append(Step(sid, (
            (prev["B"], (0, 0)), (prev["L"], (-s, 2 * s)), (prev["R"], (s, 2 * s)),
            (f"alpha{i}", (0, 0)), (f"beta{i}", (0, 0)), (f"gamma{i}", (0, 0)))))
        prev = {"B": sid, "L": sid, "R": sid}
    if stage == 1:
        steps.append(Step("A1", (("b1", (0, 0)),)))
    return GuidedScript(steps, name=f"triangle6 stage {stage}")


def build_triangle_6ham(max_stage=5) -> ConstructionBundle:
    system = AssemblySystem(_tileset(), tau=2, hands=6, name="triangle6")
    scripts = {i: stage_script(i) for i in range(max_stage + 1)}
    return ConstructionBundle(
        name="triangle6", system=system, stage_scripts=scripts, fractal=TRIANGLE,
        anchor=(0, 0), target_tile_count=30,
        metadata={"expected_stage_sizes": {i: 4 * 3 ** i - 6 for i in range(2, max_stage + 1)},
                  "hands": 6, "tau": 2, "scale": 1})
