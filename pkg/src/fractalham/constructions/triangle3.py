"""Scale-3 Sierpinski triangle in the 3-HAM at temperature 2.

S^3_{m+1} is three copies of S^3_m: bottom (B), left (L) and right (R).
Every geometric notion below is computed from the point sets:

* the rim of S^3_m: points 8-adjacent to the unbounded complement;
* convex turns of the rim: their diagonal inner neighbour is an indented
  point, left out like the carpet's indented corners;
* concave turns (one per staircase step): filled together with the tread
  point next to them and the following convex corner as one group, so a
  plain straight filler can never claim a concave point.

The base shape B_m(c) is S^3_m without rim and indented points.  Its colour c
is the role the shape takes one stage up: B fills its top edge, L its right
edge and R its left edge (red, yellow and blue).  B_m(c) exposes NB/EB/SB/WB
toward plain rim points, EX/WX toward the concave points and K{c}.a, K{c}.b
at one fixed spot on its designated edge.  A keystone (c, t) is two single
tiles bound to each other with strength 1 and to the base with strength 1
each, so it takes three hands.  Fillers then grow both ways along the
designated edge, binding cooperatively to the previous unit and the base.
The result P_m(c, t) is the copy c of B_{m+1}(t).  The three copies of one
type t pairwise share a single strength-1 connector, so they join in one
three-handed step and never two at a time.

Stage 1 has no keystones: the nine combinable shapes P_1(c, t) are built
from unique tiles along a Hamiltonian path whose ends carry the two
connectors, so only complete shapes can join.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass
from functools import lru_cache

from ..core import OPPOSITE, STEP, Glue, TileSet, TileType
from ..engine import AssemblySystem, GuidedScript, Step
from ..fractals import TRIANGLE, FractalKind, sierpinski_triangle
from . import ConstructionBundle

ROLES = ("B", "L", "R")
COLOR_NAMES = {"B": "red", "L": "yellow", "R": "blue"}
LETTER = {"north": "N", "east": "E", "south": "S", "west": "W"}
SCALE3_TRIANGLE = FractalKind(TRIANGLE.kind, 3)
PAIRS = (("B", "L"), ("B", "R"), ("L", "R"))
N4 = ((0, 1), (1, 0), (0, -1), (-1, 0))
N8 = N4 + ((1, 1), (1, -1), (-1, 1), (-1, -1))


def copy_offset(r, m):
    """Translation of copy r of S^3_m inside S^3_{m+1}."""
    s = 3 * 2 ** m
    return {"B": (0, 0), "L": (-s, 2 * s), "R": (s, 2 * s)}[r]


def _add(p, v):
    return (p[0] + v[0], p[1] + v[1])


def _direction(p, q):
    d = (q[0] - p[0], q[1] - p[1])
    for side, v in STEP.items():
        if v == d:
            return side
    raise ValueError(f"{p} and {q} are not adjacent")


@dataclass(frozen=True)
class Geometry:
    level: int
    shape: frozenset
    rim: frozenset
    cycle: tuple            # rim points clockwise, from the bottom-left corner
    concave: frozenset
    ind: frozenset          # indented points
    base: frozenset
    group_of: dict          # rim or indented point -> its fill group

    @property
    def missing(self):
        return self.rim | self.ind


def _exterior(S):
    xs = [p[0] for p in S]
    ys = [p[1] for p in S]
    x0, x1, y0, y1 = min(xs) - 1, max(xs) + 1, min(ys) - 1, max(ys) + 1
    out = {(x0, y0)}
    stack = [(x0, y0)]
    while stack:
        p = stack.pop()
        for v in N4:
            q = _add(p, v)
            if x0 <= q[0] <= x1 and y0 <= q[1] <= y1 and q not in S and q not in out:
                out.add(q)
                stack.append(q)
    return out


@lru_cache(maxsize=None)
def geometry(m) -> Geometry:
    S = frozenset(sierpinski_triangle(m, 3))
    ext = _exterior(S)
    rim = frozenset(p for p in S if any(_add(p, v) in ext for v in N8))
    start = min(rim, key=lambda p: (p[1], p[0]))
    cycle = [start, _add(start, (0, 1))]
    while True:
        a, b = cycle[-2], cycle[-1]
        nxt = [q for q in (_add(b, v) for v in N4) if q in rim and q != a]
        if len(nxt) != 1:
            raise AssertionError("rim is not a simple cycle")
        if nxt[0] == start:
            break
        cycle.append(nxt[0])
    if len(cycle) != len(rim):
        raise AssertionError("rim is not a single cycle")
    n = len(cycle)
    at = {p: i for i, p in enumerate(cycle)}
    groups, concave = {}, set()
    for i, c in enumerate(cycle):
        a, b = cycle[i - 1], cycle[(i + 1) % n]
        if a[0] == b[0] or a[1] == b[1]:
            continue
        d = (a[0] + b[0] - c[0], a[1] + b[1] - c[1])
        if d in ext:
            concave.add(c)
        elif d in S and d not in rim:
            groups[c] = {a, c, b, d}
        else:
            raise AssertionError(f"unexpected turn at {c}")
    group_of = {}
    for g in groups.values():
        for p in g:
            if p in group_of:
                raise AssertionError("convex corners too close")
            group_of[p] = g
    for j in concave:
        i = at[j]
        a, b = cycle[i - 1], cycle[(i + 1) % n]
        t = a if a[1] == j[1] else b
        beyond = cycle[at[t] - 1] if cycle[at[t] - 1] != j else cycle[(at[t] + 1) % n]
        g = group_of.get(beyond)
        if g is None or t in group_of or j in group_of:
            raise AssertionError(f"concave point {j} is not next to a convex corner")
        g |= {t, j}
        group_of[t] = group_of[j] = g
    group_of = {p: frozenset(g) for p, g in group_of.items()}
    for p in rim:
        group_of.setdefault(p, frozenset((p,)))
    ind = frozenset(p for p in group_of if p not in rim)
    base = S - rim - ind
    return Geometry(m, S, rim, tuple(cycle), frozenset(concave), ind, frozenset(base), group_of)


# indented points of the bottom square: filled only at the foot of the right
# (resp. left) edge, so their flanks get their own labels and the corner
# piece there cannot stand in for a staircase step, nor the other way round
BOTTOM_INDS = {(1, 1): "R", (-2, 1): "L"}


def rim_label(geo, g, side):
    """Base glue on a face pointing `side` toward the missing point g."""
    d = LETTER[side]
    if side in ("north", "south"):
        if g in geo.ind and g in BOTTOM_INDS:
            return d + BOTTOM_INDS[g]
        return d + "B"
    if g in geo.ind:
        return None
    if g in geo.concave:
        return d + "X"
    return d + "B"


def key_cells(c, m):
    """(ra, rb, inward side) where B_m(c) takes its keystone, m >= 2."""
    h = 3 * 2 ** m
    s = 3 * 2 ** (m - 1)
    if c == "B":
        return (-1, 2 * h - 1), (0, 2 * h - 1), "south"
    if c == "R":
        return (-s, h), (-s, h - 1), "east"
    return (s - 1, h), (s - 1, h - 1), "west"


def _key_faces(c, m):
    """Faces of B_m(c) carrying K glues: (tile point, side) -> label."""
    ra, rb, inward = key_cells(c, m)
    v = STEP[inward]
    side = OPPOSITE[inward]
    return {(_add(ra, v), side): f"K{c}.a", (_add(rb, v), side): f"K{c}.b"}


def fill_cells(r, m):
    """Points of copy r of S^3_{m+1} that its combinable shape adds to B_m."""
    g, big = geometry(m), geometry(m + 1)
    off = copy_offset(r, m)
    return frozenset(q for q in g.missing if _add(q, off) not in big.missing)


def _distinct(r, m):
    """Fill points in units that occur once per arc: cut-off groups at the arc
    ends and the bottom-square corners.  A connector on a straight filler or
    on a staircase step could be carried to another step of the same shape."""
    g = geometry(m)
    F = fill_cells(r, m)
    out = set()
    for q in F:
        grp = g.group_of[q]
        if len(grp & F) > 1 and (not grp <= F or grp & BOTTOM_INDS.keys()):
            out.add(q)
    return out


@lru_cache(maxsize=None)
def connectors(m):
    """One adjacent point pair (coordinates of S^3_{m+1}) per pair of copies."""
    out = {}
    for r1, r2 in PAIRS:
        f1 = {_add(q, copy_offset(r1, m)) for q in _distinct(r1, m)}
        f2 = {_add(q, copy_offset(r2, m)) for q in _distinct(r2, m)}
        cands = sorted((a[1], a[0], b) for a in f1 for b in (_add(a, v) for v in N4) if b in f2)
        if not cands:
            raise AssertionError(f"copies {r1} and {r2} do not touch on fill points")
        y, x, b = cands[0]
        out[(r1, r2)] = ((x, y), b)
    return out


def _outward(r, t, m, q, side, own, conn):
    """Glue on a face of a point of copy r (local coordinates) facing out of it."""
    big = geometry(m + 1)
    off = copy_offset(r, m)
    qq, gg = _add(q, off), _add(_add(q, off), STEP[side])
    if gg in own:
        return None
    if gg in big.missing:
        lab = _key_faces(t, m + 1).get((qq, side)) or rim_label(big, gg, side)
        return Glue(lab, 1) if lab else None
    for (r1, r2), (a, b) in conn.items():
        if {a, b} == {qq, gg} and r in (r1, r2):
            return Glue(f"{r1}{r2}.{t}.G", 1)
    return None


def _tree(points, root):
    pts = set(points)
    seen, order, parent, stack = {root}, [root], {}, [root]
    while stack:
        q = stack[-1]
        for v in N4:
            n = _add(q, v)
            if n in pts and n not in seen:
                seen.add(n)
                parent[n] = q
                order.append(n)
                stack.append(n)
                break
        else:
            stack.pop()
    if seen != pts:
        raise AssertionError("fill unit is not connected")
    return order, parent


def _code(points):
    x0, y0 = min(points)
    rel = sorted((x - x0, y - y0) for x, y in points)
    return hashlib.sha1(repr(rel).encode()).hexdigest()[:6]


@lru_cache(maxsize=None)
def fill_units(r, m):
    """Fill units of P_m(r, .) in order along the rim.

    Returns (units, k): units are tuples of points (tree order) and units[k]
    is the keystone, its "a" part first and rb last.  On a staircase edge
    the "a" part is the whole step group around the concave point ra, so
    no cut-off step is left next to it.
    """
    g = geometry(m)
    F = fill_cells(r, m)
    ra, rb, _ = key_cells(r, m)
    if ra not in F or rb not in F:
        raise AssertionError("keystone is not on the filled edge")
    n = len(g.cycle)
    idx = {p: i for i, p in enumerate(g.cycle)}
    starts = [i for i, p in enumerate(g.cycle) if p in F and g.cycle[i - 1] not in F]
    if len(starts) != 1:
        raise AssertionError("fill points are not one arc")
    s0 = starts[0]
    kgrp = g.group_of[ra]
    if rb in kgrp or not kgrp <= F:
        raise AssertionError("keystone group is cut")
    seen, units = {kgrp}, []
    for p in sorted(F):
        grp = g.group_of[p]
        if grp in seen:
            continue
        seen.add(grp)
        pts = [q for q in grp if q in F and q != rb]
        if not pts:
            continue
        on = [(idx[q] - s0) % n for q in pts if q in idx]
        if not on:
            raise AssertionError("fill unit without rim point")
        units.append((min(on), pts))
    kpts = list(kgrp) + [rb]
    units.append((min((idx[q] - s0) % n for q in kpts if q in idx), None))
    units.sort(key=lambda u: u[0])
    out, k = [], None
    for i, (_, pts) in enumerate(units):
        if pts is None:
            k = i
            out.append(tuple(_tree(kgrp, ra)[0]) + (rb,))
        else:
            out.append(tuple(_tree(pts, min(pts))[0]))
    return tuple(out), k


def fill_layout(r, t, m):
    """point -> {side: Glue} for the keystone and fill tiles of P_m(r, t), m >= 2.

    Points are in the coordinates of S^3_m.
    """
    g = geometry(m)
    units, k = fill_units(r, m)
    conn = connectors(m)
    own = set(g.base)
    for u in units:
        own.update(u)
    glues = {q: {} for u in units for q in u}
    fl = f"{r}{t}.F"
    for i, u in enumerate(units):
        if i == k:
            s = _direction(u[0], u[-1])
            glues[u[0]][s] = glues[u[-1]][OPPOSITE[s]] = Glue(f"{r}{t}.k", 1)
            _, parent = _tree(u[:-1], u[0])
            for j, c in enumerate(u[1:-1]):
                p = parent[c]
                s = _direction(p, c)
                glues[p][s] = glues[c][OPPOSITE[s]] = Glue(f"{r}{t}.ka.{j}", 2)
        else:
            _, parent = _tree(u, u[0])
            code = _code(u)
            for j, c in enumerate(u[1:]):
                p = parent[c]
                s = _direction(p, c)
                glues[p][s] = glues[c][OPPOSITE[s]] = Glue(f"{r}{t}.{code}.{j}", 2)
        if i + 1 < len(units):
            touching = [(a, b) for a in u for b in units[i + 1]
                        if abs(a[0] - b[0]) + abs(a[1] - b[1]) == 1]
            if len(touching) != 1:
                raise AssertionError("consecutive fill units must touch once")
            a, b = touching[0]
            s = _direction(a, b)
            glues[a][s] = glues[b][OPPOSITE[s]] = Glue(fl, 1)
    keys = _key_faces(r, m)
    ra, rb, inward = key_cells(r, m)
    single = {u[0] for u in units if len(u) == 1}
    keyset = set(units[k])
    for q in glues:
        for side, v in STEP.items():
            nb = _add(q, v)
            if nb in glues:
                continue
            if nb in g.base:
                if q in keyset:
                    if q in (ra, rb) and side == inward:
                        glues[q][side] = Glue(keys[(nb, OPPOSITE[side])], 1)
                    continue
                # a multi-point unit binds the base only through its indented
                # point, so it always needs the previous unit as well
                lab = rim_label(g, q, OPPOSITE[side]) if q in single or q in g.ind else None
                if lab:
                    glues[q][side] = Glue(lab, 1)
                continue
            got = _outward(r, t, m, q, side, own, conn)
            if got:
                glues[q][side] = got
    return glues


# ----------------------------------------------------------------------------
# stage-1 combinable shapes

def piece_cells(r):
    """Points (coordinates of S^3_1) of the stage-1 combinable shape in role r."""
    big = geometry(2)
    off = copy_offset(r, 1)
    return frozenset(q for q in geometry(1).shape if _add(q, off) not in big.missing)


def _ham_path(cells, a, b, budget=20000):
    """Hamiltonian path from a to b through cells, or None."""
    cells = set(cells)
    n = len(cells)
    if (a[0] + a[1] + b[0] + b[1]) % 2 != (n - 1) % 2:
        return None
    path, used = [a], {a}
    count = [0]

    def free_nb(p):
        return [q for q in (_add(p, v) for v in N4) if q in cells and q not in used]

    def connected():
        rest = cells - used
        if not rest:
            return True
        first = next(iter(rest))
        seen, stack = {first}, [first]
        while stack:
            p = stack.pop()
            for q in (_add(p, v) for v in N4):
                if q in rest and q not in seen:
                    seen.add(q)
                    stack.append(q)
        return len(seen) == len(rest)

    def rec():
        count[0] += 1
        if count[0] > budget:
            raise TimeoutError
        p = path[-1]
        if len(path) == n:
            return p == b
        if p == b or not connected():
            return False
        nbs = [q for q in free_nb(p) if q != b]
        # a free point with a single other free neighbour must be entered now
        forced = [q for q in nbs if len(free_nb(q)) <= 1]
        if len(forced) > 1:
            return False
        for q in forced or sorted(free_nb(p), key=lambda q: (len(free_nb(q)), q)):
            if q == b and len(path) + 1 < n:
                continue
            path.append(q)
            used.add(q)
            if rec():
                return True
            path.pop()
            used.discard(q)
        return False

    try:
        return list(path) if rec() else None
    except TimeoutError:
        return None


@lru_cache(maxsize=None)
def stage1_connectors():
    """Connector point pairs for stage 1, chosen so every piece has a Hamiltonian
    path between its two connector points.  Returns (pairs, paths)."""
    cells = {r: {_add(q, copy_offset(r, 1)) for q in piece_cells(r)} for r in ROLES}
    options = {}
    for r1, r2 in PAIRS:
        options[(r1, r2)] = sorted((a, b) for a in cells[r1] for b in (_add(a, v) for v in N4)
                                   if b in cells[r2])
    preferred = connectors(1)
    for pr in options:
        options[pr].sort(key=lambda ab: ab != preferred[pr])
    memo = {}

    def path_for(r, a, b):
        if (r, a, b) not in memo:
            memo[(r, a, b)] = _ham_path(cells[r], a, b)
        return memo[(r, a, b)]

    for bl in options[("B", "L")]:
        for br in options[("B", "R")]:
            if path_for("B", bl[0], br[0]) is None:
                continue
            for lr in options[("L", "R")]:
                ends = {"B": (bl[0], br[0]), "L": (bl[1], lr[0]), "R": (br[1], lr[1])}
                paths = {r: path_for(r, *ends[r]) for r in ROLES}
                if all(paths.values()):
                    paths = {r: tuple((x - copy_offset(r, 1)[0], y - copy_offset(r, 1)[1])
                                      for x, y in p) for r, p in paths.items()}
                    return {("B", "L"): bl, ("B", "R"): br, ("L", "R"): lr}, paths
    raise AssertionError("no Hamiltonian layout for the stage-1 shapes")


def piece_layout(r, t):
    """point -> (name, glues) for P_1(r, t), and the path order."""
    conn, paths = stage1_connectors()
    path = paths[r]
    own = set(path)
    names = {q: f"P{r}{t}.{i}" for i, q in enumerate(path)}
    glues = {q: {} for q in path}
    for i in range(len(path) - 1):
        a, b = path[i], path[i + 1]
        s = _direction(a, b)
        glues[a][s] = glues[b][OPPOSITE[s]] = Glue(f"P{r}{t}.{i}", 2)
    for q in path:
        for side, v in STEP.items():
            if _add(q, v) in own:
                continue
            got = _outward(r, t, 1, q, side, own, conn)
            if got:
                glues[q][side] = got
    return {q: (names[q], glues[q]) for q in path}, path


# ----------------------------------------------------------------------------
# tile set

COLORS = {"B": "#d2574e", "L": "#e3b448", "R": "#5b8fd1"}
LAYOUT_LEVELS = (2, 3)


def _glue_key(gl):
    return tuple(sorted((s, g.label, g.strength) for s, g in gl.items()))


def _key_names(r, t, m):
    units, k = fill_units(r, m)
    out = {q: f"K{r}{t}.a{j}" for j, q in enumerate(units[k][:-1])}
    out[units[k][-1]] = f"K{r}{t}.b"
    return out


@lru_cache(maxsize=None)
def _fill_names(r, t):
    """Glue layout -> tile name for the fill tiles of (r, t), keystone aside."""
    keys = set()
    for m in LAYOUT_LEVELS:
        key = _key_names(r, t, m)
        for q, gl in fill_layout(r, t, m).items():
            if q not in key:
                keys.add(_glue_key(gl))
    return {k: f"F{r}{t}.{i}" for i, k in enumerate(sorted(keys))}


def fill_tile_names(r, t, m):
    """point -> tile name for P_m(r, t); raises if a layout is not in the tile set."""
    names = _fill_names(r, t)
    out = _key_names(r, t, m)
    for q, gl in fill_layout(r, t, m).items():
        if q not in out:
            key = _glue_key(gl)
            if key not in names:
                raise AssertionError(f"level {m} needs a fill tile outside the tile set at {q}")
            out[q] = names[key]
    return out


def _tile(name, gl, color):
    return TileType(name, display_label=color,
                    **{side: gl.get(side) for side in ("north", "east", "south", "west")})


@lru_cache(maxsize=None)
def _tiles():
    types = {}
    for r in ROLES:
        for t in ROLES:
            for name, gl in piece_layout(r, t)[0].values():
                types[name] = _tile(name, gl, COLORS[t])
            for key, name in _fill_names(r, t).items():
                gl = {s: Glue(lab, st) for s, lab, st in key}
                types[name] = _tile(name, gl, COLORS[t])
            m = LAYOUT_LEVELS[0]
            lay = fill_layout(r, t, m)
            for q, name in _key_names(r, t, m).items():
                types[name] = _tile(name, lay[q], COLORS[t])
    return tuple(types[k] for k in sorted(types))


def layout_types(m):
    """name -> set of glue layouts implied at level m (for consistency checks)."""
    out = {}
    for r in ROLES:
        for t in ROLES:
            lay = fill_layout(r, t, m)
            for q, name in fill_tile_names(r, t, m).items():
                out.setdefault(name, set()).add(_glue_key(lay[q]))
    return out


def tile_breakdown():
    """Counts of stage-1 shape tiles, keystone tiles and filler tiles."""
    names = [t.name for t in _tiles()]
    return {"shape": sum(n[0] == "P" for n in names), "keystone": sum(n[0] == "K" for n in names),
            "filler": sum(n[0] == "F" for n in names)}


# ----------------------------------------------------------------------------
# guided scripts

class _Builder:
    def __init__(self):
        self.steps = []
        self.done = {}

    def _chain(self, sid, placed):
        prev = None
        for i, (nm, q) in enumerate(placed):
            cur = f"{sid}~{i}" if i + 1 < len(placed) else sid
            ops = ((nm, q),) if prev is None else ((prev, (0, 0)), (nm, q))
            self.steps.append(Step(cur, ops))
            prev = cur
        return sid

    def base(self, m, c):
        """B_m(c), m >= 2, in the coordinates of S^3_m."""
        key = ("B", m, c)
        if key not in self.done:
            ops = tuple((self.piece(m - 1, r, c), copy_offset(r, m - 1)) for r in ROLES)
            sid = f"B{m}({c})"
            self.steps.append(Step(sid, ops))
            self.done[key] = sid
        return self.done[key]

    def piece(self, m, r, t):
        """P_m(r, t) in the coordinates of S^3_m."""
        key = ("P", m, r, t)
        if key in self.done:
            return self.done[key]
        sid = f"P{m}({r},{t})"
        if m == 1:
            layout, path = piece_layout(r, t)
            self._chain(sid, [(layout[q][0], q) for q in path])
            self.done[key] = sid
            return sid
        base = self.base(m, r)
        units, k = fill_units(r, m)
        names = fill_tile_names(r, t, m)
        *apart, rb = units[k]
        if len(apart) == 1:
            ka, off = names[apart[0]], apart[0]
        else:
            ka, off = self._chain(f"{sid}.ka", [(names[q], q) for q in apart]), (0, 0)
        self.steps.append(Step(f"{sid}.0", ((base, (0, 0)), (ka, off), (names[rb], rb))))
        prev = f"{sid}.0"
        branch = [units[i] for i in range(k - 1, -1, -1)] + list(units[k + 1:])
        for i, u in enumerate(branch):
            if len(u) == 1:
                piece, off = names[u[0]], u[0]
            else:
                piece, off = self._chain(f"{sid}.u{i}", [(names[q], q) for q in u]), (0, 0)
            cur = f"{sid}.{i + 1}" if i + 1 < len(branch) else sid
            self.steps.append(Step(cur, ((prev, (0, 0)), (piece, off))))
            prev = cur
        self.done[key] = sid
        return sid


def base_script(m, c) -> GuidedScript:
    b = _Builder()
    if m == 1:
        b.piece(1, "B", c)
    else:
        b.base(m, c)
    return GuidedScript(b.steps, name=f"triangle3 stage {m} type {c}")


def piece_script(m, r, t) -> GuidedScript:
    b = _Builder()
    b.piece(m, r, t)
    return GuidedScript(b.steps, name=f"triangle3 combinable stage {m} role {r} type {t}")


def mixed_join_script(m, types) -> GuidedScript:
    """Join P_{m-1}(r, types[r]) for the three roles in one step.

    With more than one type among them the last step is unstable.
    """
    b = _Builder()
    ops = tuple((b.piece(m - 1, r, types[r]), copy_offset(r, m - 1)) for r in ROLES)
    b.steps.append(Step(f"mixed{m}", ops))
    return GuidedScript(b.steps, name=f"triangle3 mixed join stage {m}")


def build_triangle_3ham(max_stage=3, kind="B") -> ConstructionBundle:
    """3-HAM triangle system; stage i's script builds B_i(kind) (stage 1: P_1(B, kind))."""
    system = AssemblySystem(TileSet(_tiles()), tau=2, hands=3, name="triangle3")
    scripts = {i: base_script(i, kind) for i in range(1, max_stage + 1)}
    sizes = {1: len(piece_cells("B"))}
    sizes.update({i: len(geometry(i).base) for i in range(2, max_stage + 1)})
    return ConstructionBundle(
        name="triangle3", system=system, stage_scripts=scripts, fractal=SCALE3_TRIANGLE,
        anchor=(0, 0), target_tile_count=990,
        metadata={"hands": 3, "tau": 2, "scale": 3, "kind": kind,
                  "expected_stage_sizes": sizes, "breakdown": tile_breakdown()})
