"""Scale-3 Sierpinski carpet in the 2-HAM at temperature 2.

The level-n base shape B_n is C^3_n (side L = 3^(n+1)) without its outer
ring of width 1 and without the four indented corners (1,1), (1,L-2),
(L-2,1), (L-2,L-2).  Positions 1..8 name the eight sub-squares clockwise
from the top left:

    1 2 3
    8 . 4
    7 6 5

B_n(p) exposes the base glues NB/EB/SB/WB on every face toward its ring (a
face's label names its direction) and on the vertical faces toward its
indented corners, except for two faces next to the ring junction of edge
E1[p] (edge k joins sub-squares k and k+1), which carry K{p}.a and K{p}.b.
A two-tile keystone (p, t) binds there, then fillers and corner pieces grow
both ways along every side of the ring that is not on the ring of the
next-level square, giving the combinable assembly P_n(p, t).  Fillers bind
cooperatively to the base glue and to the previous fill unit.

Eight P_n(p, t) with one type t join into B_{n+1}(t): consecutive positions
share connector glues at both ends of their common side, except the edges
E1[t] and E2[t], which keep only the end near the central hole.  So the
only stable partial rings are runs inside the two arcs between those edges,
and the ring closes with min cut exactly 2.  The two outer-end faces of
edge E1[t] carry K{t}.a and K{t}.b, so B_{n+1}(t) exposes its keystone
glues at the same place B_n(t) does.  Connector labels include t, so
assemblies of different types share no glue.

Tile counts: 8 x 36 base tiles, 64 x 2 keystone tiles, and per (p, t) one
filler type per filled side plus the corner pieces (10 tiles for a corner
position, 15 for a side position), 1216 in all.
"""
from __future__ import annotations

from functools import lru_cache

from ..core import OPPOSITE, STEP, Glue, TileSet, TileType
from ..engine import AssemblySystem, GuidedScript, Step
from ..fractals import CARPET, FractalKind, sierpinski_carpet
from . import ConstructionBundle

POS = {1: (0, 2), 2: (1, 2), 3: (2, 2), 4: (2, 1), 5: (2, 0), 6: (1, 0), 7: (0, 0), 8: (0, 1)}
AT = {v: k for k, v in POS.items()}
E1 = {1: 4, 2: 8, 3: 7, 4: 6, 5: 1, 6: 2, 7: 3, 8: 5}
LETTER = {"north": "N", "east": "E", "south": "S", "west": "W"}
SIDE_OF = {v: k for k, v in LETTER.items()}
CLOCKWISE = ("N", "E", "S", "W")
# corner between two clockwise sides: name, indented point as a function of L
CORNERS = {("N", "E"): "TR", ("E", "S"): "BR", ("S", "W"): "BL", ("W", "N"): "TL"}
SCALE3_CARPET = FractalKind(CARPET.kind, 3)


def nxt(k):
    return k % 8 + 1


def e2(p):
    return (E1[p] + 4) % 8 + 1


def block_side(n):
    return 3 ** (n + 1)


def ind_point(corner, L):
    return {"TR": (L - 2, L - 2), "BR": (L - 2, 1), "BL": (1, 1), "TL": (1, L - 2)}[corner]


def indented_corners(L):
    return {(1, 1), (1, L - 2), (L - 2, 1), (L - 2, L - 2)}


def on_ring(q, L):
    x, y = q
    return 0 <= x < L and 0 <= y < L and (x in (0, L - 1) or y in (0, L - 1))


def ring_point(side, u, L):
    """Clockwise parametrization; u = 0 is the ring corner where the side starts."""
    if side == "N":
        return (u, L - 1)
    if side == "E":
        return (L - 1, L - 1 - u)
    if side == "S":
        return (L - 1 - u, 0)
    return (0, u)


@lru_cache(maxsize=None)
def base_shape(n) -> frozenset:
    """C^3_n without its ring and its indented corners."""
    L = block_side(n)
    full = sierpinski_carpet(n, 3)
    return frozenset(q for q in full if not on_ring(q, L) and q not in indented_corners(L))


def filled_sides(p):
    a, b = POS[p]
    out = []
    for s in CLOCKWISE:
        if (s == "W" and a > 0) or (s == "E" and a < 2) or (s == "S" and b > 0) or (s == "N" and b < 2):
            out.append(s)
    return out


def junction(k, L):
    """Ring junction of edge k on the outside of a block of side L.

    Returns (letter, ra, rb, ka, kb): ra/rb are the ring points on the side of
    sub-square k and k+1, ka/kb the points one step inward.
    """
    s = L // 3
    (a1, b1), (a2, b2) = POS[k], POS[nxt(k)]
    if a1 == a2:
        letter = "W" if a1 == 0 else "E"
        xr, dx = (0, 1) if letter == "W" else (L - 1, -1)
        y = max(b1, b2) * s
        ra, rb = ((xr, y), (xr, y - 1)) if b1 > b2 else ((xr, y - 1), (xr, y))
        return letter, ra, rb, (ra[0] + dx, ra[1]), (rb[0] + dx, rb[1])
    letter = "S" if b1 == 0 else "N"
    yr, dy = (0, 1) if letter == "S" else (L - 1, -1)
    x = max(a1, a2) * s
    ra, rb = ((x, yr), (x - 1, yr)) if a1 > a2 else ((x - 1, yr), (x, yr))
    return letter, ra, rb, (ra[0], ra[1] + dy), (rb[0], rb[1] + dy)


def _direction(p, q):
    d = (q[0] - p[0], q[1] - p[1])
    for side, v in STEP.items():
        if v == d:
            return side
    raise ValueError(f"{p} and {q} are not adjacent")


# ----------------------------------------------------------------------------
# fill arcs

def arc_units(p, L):
    """Fill units of position p in clockwise order, keystone included.

    Each unit is (kind, tag, points): kind "E" end corner, "C" turning
    corner (points A, ring corner, B, indented), "F" straight filler,
    "K" the keystone (points ra, rb in clockwise order).
    """
    sides = filled_sides(p)
    # rotate so the arc starts right after the unfilled sides
    i0 = next(i for i, s in enumerate(CLOCKWISE)
              if s in sides and CLOCKWISE[i - 1] not in sides)
    order = [CLOCKWISE[(i0 + j) % 4] for j in range(len(sides))]
    prev = CLOCKWISE[i0 - 1]
    units = []
    c0 = CORNERS[(prev, order[0])]
    units.append(("E", c0, (ind_point(c0, L), ring_point(order[0], 1, L))))
    for j, s in enumerate(order):
        for u in range(2, L - 2):
            units.append(("F", s, (ring_point(s, u, L),)))
        if j + 1 < len(order):
            t = order[j + 1]
            c = CORNERS[(s, t)]
            units.append(("C", c, (ring_point(s, L - 2, L), ring_point(t, 0, L),
                                   ring_point(t, 1, L), ind_point(c, L))))
    last = order[-1]
    c1 = CORNERS[(last, CLOCKWISE[(CLOCKWISE.index(last) + 1) % 4])]
    units.append(("E", c1, (ring_point(last, L - 2, L), ind_point(c1, L))))

    _, ra, rb, _, _ = junction(E1[p], L)
    idx = [i for i, u in enumerate(units) if u[0] == "F" and u[2][0] in (ra, rb)]
    if len(idx) != 2 or idx[1] != idx[0] + 1:
        raise AssertionError(f"keystone of position {p} is not on a straight run")
    pair = (units[idx[0]][2][0], units[idx[1]][2][0])
    units[idx[0]:idx[1] + 1] = [("K", units[idx[0]][1], pair)]
    return units


def _tile_name(p, t, unit, j):
    kind, tag, _ = unit
    if kind == "F":
        return f"F{p}.{t}.{tag}"
    if kind == "K":
        return None
    return f"C{p}.{t}.{tag}.{j}"


def _unit_names(p, t, unit, L):
    kind, tag, pts = unit
    if kind == "K":
        _, ra, rb, _, _ = junction(E1[p], L)
        return [f"K{p}.{t}.a" if q == ra else f"K{p}.{t}.b" for q in pts]
    if kind == "E":
        # index 0 is always the ring tile
        ring = [q for q in pts if on_ring(q, L)][0]
        return [f"C{p}.{t}.{tag}.{0 if q == ring else 1}" for q in pts]
    return [_tile_name(p, t, unit, j) for j in range(len(pts))]


def _chain_pairs(unit):
    kind, _, pts = unit
    if kind == "C":
        return [(pts[0], pts[1]), (pts[1], pts[2]), (pts[2], pts[3])]
    if kind in ("E", "K"):
        return [(pts[0], pts[1])]
    return []


def fill_layout(p, t, n):
    """Keystone and fill tiles of P_n(p, t), in level-n block coordinates.

    Returns point -> (tile name, {side: Glue}).  Outward glues follow from
    the position of the block inside the level-(n+1) square.
    """
    L = block_side(n)
    big = 3 * L
    ox, oy = L * POS[p][0], L * POS[p][1]
    base = base_shape(n)
    units = arc_units(p, L)
    name_of, unit_of = {}, {}
    for i, unit in enumerate(units):
        for q, nm in zip(unit[2], _unit_names(p, t, unit, L)):
            name_of[q] = nm
            unit_of[q] = i
    glues = {q: {} for q in name_of}
    fl = f"{p}.{t}.F"

    for i, unit in enumerate(units):
        for a, b in _chain_pairs(unit):
            s = _direction(a, b)
            label = f"{p}.{t}.ab" if unit[0] == "K" else f"C{p}.{t}.{unit[1]}.{unit[2].index(a)}"
            glues[a][s] = glues[b][OPPOSITE[s]] = Glue(label, 2)
        if i + 1 < len(units):
            touching = [(a, b) for a in unit[2] for b in units[i + 1][2]
                        if abs(a[0] - b[0]) + abs(a[1] - b[1]) == 1]
            if len(touching) != 1:
                raise AssertionError("consecutive fill units must touch once")
            a, b = touching[0]
            s = _direction(a, b)
            glues[a][s] = glues[b][OPPOSITE[s]] = Glue(fl, 1)

    kinfo = junction(E1[p], L)
    big_letter, _, _, bka, bkb = junction(E1[t], big)
    single = {E1[t], e2(t)}
    inds = indented_corners(L)
    big_inds = indented_corners(big)
    for q, nm in name_of.items():
        kind = units[unit_of[q]][0]
        for side, (dx, dy) in STEP.items():
            g = (q[0] + dx, q[1] + dy)
            if g in name_of:
                continue
            if g in base:
                if kind == "K":
                    which = "a" if q == kinfo[1] else "b"
                    glues[q][side] = Glue(f"K{p}.{which}", 1)
                elif q in inds:
                    if dx == 0:
                        glues[q][side] = Glue(LETTER[OPPOSITE[side]] + "B", 1)
                else:
                    glues[q][side] = Glue(LETTER[OPPOSITE[side]] + "B", 1)
                continue
            gg = (g[0] + ox, g[1] + oy)
            qq = (q[0] + ox, q[1] + oy)
            if on_ring(gg, big):
                if qq == bka and LETTER[side] == big_letter:
                    glues[q][side] = Glue(f"K{t}.a", 1)
                elif qq == bkb and LETTER[side] == big_letter:
                    glues[q][side] = Glue(f"K{t}.b", 1)
                else:
                    glues[q][side] = Glue(LETTER[side] + "B", 1)
                continue
            if gg in big_inds:
                if dx == 0:
                    glues[q][side] = Glue(LETTER[side] + "B", 1)
                continue
            other = AT.get((gg[0] // L, gg[1] // L))
            if other is None or 0 <= g[0] < L and 0 <= g[1] < L:
                continue    # central hole, or an empty cell of this block
            # ends of the common side: an along-neighbour on the big ring or off the block
            ax, ay = (0, 1) if dx else (1, 0)
            ends = [(qq[0] + sx * ax, qq[1] + sx * ay) for sx in (1, -1)]
            outer = any(on_ring(e, big) for e in ends)
            hole = not outer and any(not (ox <= e[0] < ox + L and oy <= e[1] < oy + L) for e in ends)
            edge = p if nxt(p) == other else other
            if hole or (outer and edge not in single):
                glues[q][side] = Glue(f"{min(p, other)}.{max(p, other)}.{t}.G", 1)
    return {q: (name_of[q], glues[q]) for q in name_of}, units


# ----------------------------------------------------------------------------
# level-1 base pieces

def _spanning_tree(points, root):
    """DFS tree over grid adjacency, children listed in visiting order."""
    pts = set(points)
    seen = {root}
    order, parent = [root], {}
    stack = [root]
    while stack:
        q = stack[-1]
        for dx, dy in ((0, 1), (1, 0), (0, -1), (-1, 0)):
            r = (q[0] + dx, q[1] + dy)
            if r in pts and r not in seen:
                seen.add(r)
                parent[r] = q
                order.append(r)
                stack.append(r)
                break
        else:
            stack.pop()
    if seen != pts:
        raise AssertionError("arc of a base piece is not connected")
    return order, parent


def _units_between(first, last):
    out, k = [first], first
    while k != last:
        k = nxt(k)
        out.append(k)
    return out


def base_layout(p):
    """Tiles of B_1(p): point -> (name, glues), plus the two arc build orders.

    The arcs X (sub-squares after E1[p] up to E2[p]) and Y (the rest) are
    strength-2 trees joined by one strength-1 bond at each of the two
    junctions.  A Hamiltonian path is impossible for some positions
    (grid parity), so trees are used throughout.
    """
    L = block_side(1)
    s = L // 3
    pts = sorted(base_shape(1))
    unit = {q: AT[(q[0] // s, q[1] // s)] for q in pts}
    k1, k2 = E1[p], e2(p)
    xs = set(_units_between(nxt(k1), k2))
    _, _, _, ka, kb = junction(k1, L)
    _, _, _, ka2, kb2 = junction(k2, L)
    X = [q for q in pts if unit[q] in xs]
    Y = [q for q in pts if unit[q] not in xs]
    xorder, xpar = _spanning_tree(X, kb)
    yorder, ypar = _spanning_tree(Y, ka)
    names = {q: f"B{p}.{i}" for i, q in enumerate(pts)}
    glues = {q: {} for q in pts}
    for tag, par in (("X", xpar), ("Y", ypar)):
        for c, q in par.items():
            sd = _direction(q, c)
            lab = Glue(f"B{p}.{tag}{names[c].split('.')[1]}", 2)
            glues[q][sd] = glues[c][OPPOSITE[sd]] = lab
    for tag, (a, b) in (("e1", (ka, kb)), ("e2", (ka2, kb2))):
        sd = _direction(a, b)
        glues[a][sd] = glues[b][OPPOSITE[sd]] = Glue(f"B{p}.{tag}", 1)
    inds = indented_corners(L)
    shape = set(pts)
    for q in pts:
        for side, (dx, dy) in STEP.items():
            g = (q[0] + dx, q[1] + dy)
            if g in shape:
                continue
            if on_ring(g, L):
                if q == ka:
                    glues[q][side] = Glue(f"K{p}.a", 1)
                elif q == kb:
                    glues[q][side] = Glue(f"K{p}.b", 1)
                else:
                    glues[q][side] = Glue(LETTER[side] + "B", 1)
            elif g in inds and dx == 0:
                glues[q][side] = Glue(LETTER[side] + "B", 1)
    layout = {q: (names[q], glues[q]) for q in pts}
    return layout, xorder, yorder


# ----------------------------------------------------------------------------
# tile set

COLORS = {"B": "#c9b27c", "K": "#d2574e", "F": "#5b8fd1", "C": "#7fbf7f"}


def _tiles():
    types = {}

    def add(name, gl):
        t = TileType(name, display_label=COLORS[name[0]],
                     **{side: gl.get(side) for side in ("north", "east", "south", "west")})
        old = types.get(name)
        if old is not None and old != t:
            raise AssertionError(f"tile {name} needs two different glue layouts")
        types[name] = t

    for p in POS:
        layout, _, _ = base_layout(p)
        for name, gl in layout.values():
            add(name, gl)
        for t in POS:
            layout, _ = fill_layout(p, t, 1)
            for name, gl in layout.values():
                add(name, gl)
    return [types[k] for k in sorted(types)]


def layout_types(n):
    """Tile types implied by the fill layouts at level n (for consistency checks)."""
    out = {}
    for p in POS:
        for t in POS:
            layout, _ = fill_layout(p, t, n)
            for name, gl in layout.values():
                out.setdefault(name, set()).add(tuple(sorted((s, g.label, g.strength)
                                                             for s, g in gl.items())))
    return out


# ----------------------------------------------------------------------------
# guided scripts

class _Builder:
    """Accumulates steps, building each sub-assembly once."""

    def __init__(self):
        self.steps = []
        self.done = {}

    def _chain(self, sid, placed):
        # placed: [(name, point)] each adjacent to an earlier one by a strength-2 bond
        prev = None
        for i, (nm, q) in enumerate(placed):
            cur = f"{sid}~{i}" if i + 1 < len(placed) else sid
            ops = ((nm, q),) if prev is None else ((prev, (0, 0)), (nm, q))
            self.steps.append(Step(cur, ops))
            prev = cur
        return sid

    def base(self, n, p):
        key = ("B", n, p)
        if key in self.done:
            return self.done[key]
        sid = f"B{n}({p})"
        if n == 1:
            layout, xo, yo = base_layout(p)
            x = self._chain(f"{sid}.X", [(layout[q][0], q) for q in xo])
            y = self._chain(f"{sid}.Y", [(layout[q][0], q) for q in yo])
            self.steps.append(Step(sid, ((x, (0, 0)), (y, (0, 0)))))
        else:
            L = block_side(n - 1)
            k1, k2 = E1[p], e2(p)
            arcs = []
            for tag, run in (("X", _units_between(nxt(k1), k2)), ("Y", _units_between(nxt(k2), k1))):
                prev = None
                for i, q in enumerate(run):
                    part = self.positioned(n - 1, q, p)
                    off = (L * POS[q][0], L * POS[q][1])
                    cur = f"{sid}.{tag}{i}" if i + 1 < len(run) else f"{sid}.{tag}"
                    ops = ((part, off),) if prev is None else ((prev, (0, 0)), (part, off))
                    self.steps.append(Step(cur, ops))
                    prev = cur
                arcs.append(prev)
            self.steps.append(Step(sid, ((arcs[0], (0, 0)), (arcs[1], (0, 0)))))
        self.done[key] = sid
        return sid

    def positioned(self, n, p, t):
        key = ("P", n, p, t)
        if key in self.done:
            return self.done[key]
        sid = f"P{n}({p},{t})"
        layout, units = fill_layout(p, t, n)
        base = self.base(n, p)
        k = next(i for i, u in enumerate(units) if u[0] == "K")
        ks = self._chain(f"{sid}.key", [(layout[q][0], q) for q in units[k][2]])
        self.steps.append(Step(f"{sid}.0", ((base, (0, 0)), (ks, (0, 0)))))
        prev = f"{sid}.0"
        branch = [units[i] for i in range(k - 1, -1, -1)] + units[k + 1:]
        for i, unit in enumerate(branch):
            pts = unit[2]
            if len(pts) == 1:
                piece, off = layout[pts[0]][0], pts[0]
            else:
                # corner pieces are built first, in chain order
                piece, off = self._chain(f"{sid}.c{i}", [(layout[q][0], q) for q in pts]), (0, 0)
            cur = f"{sid}.{i + 1}" if i + 1 < len(branch) else sid
            self.steps.append(Step(cur, ((prev, (0, 0)), (piece, off))))
            prev = cur
        self.done[key] = sid
        return sid


def base_script(n, p) -> GuidedScript:
    b = _Builder()
    b.base(n, p)
    return GuidedScript(b.steps, name=f"carpet2 base level {n} type {p}")


def positioned_script(n, p, t) -> GuidedScript:
    b = _Builder()
    b.positioned(n, p, t)
    return GuidedScript(b.steps, name=f"carpet2 combinable level {n} position {p} type {t}")


def build_carpet_2ham(max_stage=3, kind=1) -> ConstructionBundle:
    """Carpet system; stage i's script builds the base shape B_i(kind)."""
    system = AssemblySystem(TileSet(_tiles()), tau=2, hands=2, name="carpet2")
    scripts = {i: base_script(i, kind) for i in range(1, max_stage + 1)}
    return ConstructionBundle(
        name="carpet2", system=system, stage_scripts=scripts, fractal=SCALE3_CARPET,
        anchor=(0, 0), target_tile_count=1216,
        metadata={"hands": 2, "tau": 2, "scale": 3, "kind": kind,
                  "expected_stage_sizes": {i: len(base_shape(i)) for i in range(1, max_stage + 1)}})
