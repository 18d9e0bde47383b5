"""Combination search, h-HAM exploration, scripted assembly and aTAM growth."""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .core import (
    OPPOSITE, STEP, Assembly, FractalHamError, Point, TileSet, adjacency_is_stable,
    as_tileset, canonicalize, facing_weight, min_cut_weight, translate,
)


class HandCountExceeded(FractalHamError):
    pass


class BudgetExceeded(FractalHamError):
    def __init__(self, msg, report=None):
        super().__init__(msg)
        self.report = report


class StepUnstable(FractalHamError):
    def __init__(self, step, cut_weight, tau):
        super().__init__(f"step {step!r}: union is not {tau}-stable (min cut {cut_weight})")
        self.step = step
        self.cut_weight = cut_weight
        self.tau = tau


class StepOverlap(FractalHamError):
    def __init__(self, step, point):
        super().__init__(f"step {step!r}: operands overlap at {point}")
        self.step = step
        self.point = point


class ScriptError(FractalHamError, ValueError):
    pass


@dataclass(frozen=True)
class AssemblySystem:
    tileset: TileSet
    tau: int
    hands: int = 2
    seed: Assembly | None = None
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "tileset", as_tileset(self.tileset))
        if self.tau < 1:
            raise ValueError("tau must be positive")
        if self.hands < 1:
            raise ValueError("hands must be >= 1")
        if self.seed is not None:
            for n in self.seed.values():
                self.tileset[n]

    @property
    def is_atam(self) -> bool:
        return self.seed is not None


@dataclass(frozen=True)
class ExplorationConfig:
    max_size: int
    max_rounds: int | None = None
    record_provenance: bool = True
    max_states: int | None = None   # DFS state budget per run; None means unbounded

    def __post_init__(self):
        if self.max_size < 1:
            raise ValueError("max_size must be >= 1")


@dataclass
class ExplorationReport:
    assemblies: dict            # canonical hash -> canonical Assembly
    provenance: dict            # hash -> tuple of (piece hash, offset); () for single tiles
    rounds: int
    saturated: bool
    max_size: int
    found_in_round: dict = field(default_factory=dict)

    def sizes(self) -> Counter:
        return Counter(len(a) for a in self.assemblies.values())

    def largest(self) -> list:
        if not self.assemblies:
            return []
        m = max(len(a) for a in self.assemblies.values())
        return [a for a in self.assemblies.values() if len(a) == m]


def size_spectrum(report: ExplorationReport) -> list[tuple[int, int]]:
    return sorted(report.sizes().items())


# ----------------------------------------------------------------------------
# glue sites and candidate translations

def exposed_sites(assembly: Assembly, tileset: TileSet):
    """Glues on the boundary: (point, side, label, strength) with an empty facing cell."""
    out = []
    for (x, y), n in assembly.items():
        for side, g in tileset[n].glues():
            if g.strength <= 0:
                continue
            dx, dy = STEP[side]
            if (x + dx, y + dy) not in assembly:
                out.append(((x, y), side, g.label, g.strength))
    return out


def _match_vectors(sites_a, sites_b) -> dict:
    """Vectors v placing b so that one of its sites faces a matching site of a.

    Returns v -> summed strength of all matched facing pairs (overlap not checked).
    """
    index = defaultdict(list)
    for q, side, label, s in sites_b:
        index[(label, side)].append(q)
    out = defaultdict(int)
    for (px, py), side, label, s in sites_a:
        qs = index.get((label, OPPOSITE[side]))
        if not qs:
            continue
        dx, dy = STEP[side]
        tx, ty = px + dx, py + dy
        for qx, qy in qs:
            out[(tx - qx, ty - qy)] += s
    return out


def _overlaps(a_points, b_points, v) -> bool:
    vx, vy = v
    if len(a_points) <= len(b_points):
        return any((x - vx, y - vy) in b_points for x, y in a_points)
    return any((x + vx, y + vy) in a_points for x, y in b_points)


def candidate_translations(anchored: Assembly, mover: Assembly, tileset) -> set:
    ts = as_tileset(tileset)
    vecs = _match_vectors(exposed_sites(anchored, ts), exposed_sites(mover, ts))
    a_pts = set(anchored)
    b_pts = set(mover)
    return {v for v in vecs if not _overlaps(a_pts, b_pts, v)}


def cross_weights(parts: Sequence[Assembly], tileset: TileSet):
    """Total bond strength between each pair of disjoint placed parts.

    Returns ({(i, j): weight} for i < j with positive weight, first overlap point or None).
    Only the parts other than the largest one are scanned, so adding a few
    tiles to a big assembly costs time proportional to the few tiles.
    """
    big = max(range(len(parts)), key=lambda i: len(parts[i]))
    big_part = parts[big]
    owner = {}
    for i, part in enumerate(parts):
        if i == big:
            continue
        for p in part:
            if p in owner or p in big_part:
                return {}, p
            owner[p] = i
    w = defaultdict(int)
    for i, part in enumerate(parts):
        if i == big:
            continue
        for (x, y), n in part.items():
            t = tileset[n]
            for side, (dx, dy) in STEP.items():
                q = (x + dx, y + dy)
                j = owner.get(q)
                if j is None:
                    if q not in big_part:
                        continue
                    j = big
                elif j <= i:
                    continue   # small-small pairs are counted from the lower index
                s = facing_weight(t, tileset[parts[j][q]], side)
                if s:
                    key = (i, j) if i < j else (j, i)
                    w[key] += s
    return dict(w), None


def _piece_adjacency(n, weights) -> dict:
    adj = {i: {} for i in range(n)}
    for (i, j), s in weights.items():
        adj[i][j] = adj[i].get(j, 0) + s
        adj[j][i] = adj[j].get(i, 0) + s
    return adj


def piece_level_stable(n: int, weights: Mapping, tau: int) -> bool:
    """Union of n disjoint tau-stable pieces is stable iff the piece graph is."""
    return adjacency_is_stable(_piece_adjacency(n, weights), tau)


def piece_level_cut(n: int, weights: Mapping) -> int:
    if n < 2:
        raise ValueError("need two pieces")
    return min_cut_weight(_piece_adjacency(n, weights))


# ----------------------------------------------------------------------------
# piece library shared by combine and explore

class _Library:
    def __init__(self, tileset: TileSet):
        self.ts = tileset
        self.pieces: list[Assembly] = []
        self.hashes: list[str] = []
        self.points: list[frozenset] = []
        self.sites: list = []
        self.by_hash: dict[str, int] = {}
        self._cand: dict = {}
        self._ovl: dict = {}

    def add(self, canon: Assembly, h: str) -> int:
        pid = len(self.pieces)
        self.pieces.append(canon)
        self.hashes.append(h)
        self.points.append(frozenset(canon))
        self.sites.append(exposed_sites(canon, self.ts))
        self.by_hash[h] = pid
        return pid

    def cand(self, i: int, j: int) -> dict:
        """v -> bond weight for piece j at offset v from piece i (disjoint, positive)."""
        key = (i, j)
        got = self._cand.get(key)
        if got is None:
            vecs = _match_vectors(self.sites[i], self.sites[j])
            pi, pj = self.points[i], self.points[j]
            got = {v: w for v, w in vecs.items() if not _overlaps(pi, pj, v)}
            self._cand[key] = got
        return got

    def overlaps(self, i: int, j: int, v) -> bool:
        key = (i, j, v)
        got = self._ovl.get(key)
        if got is None:
            got = _overlaps(self.points[i], self.points[j], v)
            self._ovl[key] = got
        return got

    def union(self, placement) -> Assembly:
        tiles = {}
        for pid, (ox, oy) in placement:
            for (x, y), n in self.pieces[pid].items():
                tiles[(x + ox, y + oy)] = n
        return Assembly(tiles)


def _norm(placement) -> frozenset:
    mx = min(o for _, o in placement)
    return frozenset((pid, (o[0] - mx[0], o[1] - mx[1])) for pid, o in placement)


def _try_place(lib: _Library, placement, pid, off):
    """Weights from a new piece at `off` to each placed piece, or None on overlap."""
    ws = []
    for k, (qid, qoff) in enumerate(placement):
        rel = (off[0] - qoff[0], off[1] - qoff[1])
        w = lib.cand(qid, pid).get(rel)
        if w:
            ws.append((k, w))
        elif lib.overlaps(qid, pid, rel):
            return None
    return ws


def combine_candidates(pieces: Sequence[Assembly], system: AssemblySystem):
    """Yield (union, piece-level stability) for every disjoint placement of all
    pieces in which each piece touches the others through positive bonds."""
    ts = system.tileset
    lib = _Library(ts)
    pids = []
    for p in pieces:
        canon, h = canonicalize(p)
        pids.append(lib.by_hash[h] if h in lib.by_hash else lib.add(canon, h))
    n = len(pids)
    seen = set()
    done = set()
    start = ((pids[0], (0, 0)),)
    stack = [(start, (0,), {})]
    while stack:
        placement, used, weights = stack.pop()
        if len(placement) == n:
            key = _norm(placement)
            if key in done:
                continue
            done.add(key)
            yield lib.union(placement), piece_level_stable(n, weights, system.tau)
            continue
        for k, (qid, qoff) in enumerate(placement):
            for idx in range(n):
                if idx in used:
                    continue
                pid = pids[idx]
                for v in lib.cand(qid, pid):
                    off = (qoff[0] + v[0], qoff[1] + v[1])
                    ws = _try_place(lib, placement, pid, off)
                    if ws is None:
                        continue
                    nxt = placement + ((pid, off),)
                    nused = tuple(sorted(used + (idx,)))
                    key = (nused, _norm(nxt))
                    if key in seen:
                        continue
                    seen.add(key)
                    nw = dict(weights)
                    m = len(placement)
                    for kk, w in ws:
                        nw[(kk, m)] = nw.get((kk, m), 0) + w
                    stack.append((nxt, nused, nw))


def combine(pieces: Sequence[Assembly], system: AssemblySystem) -> set:
    """All canonical tau-stable unions of exactly these pieces."""
    if len(pieces) > system.hands:
        raise HandCountExceeded(f"{len(pieces)} pieces but only {system.hands} hands")
    if len(pieces) < 2:
        return set()
    from .core import is_tau_stable
    for k, p in enumerate(pieces):
        if not is_tau_stable(p, system.tileset, system.tau):
            raise FractalHamError(f"piece {k} is not {system.tau}-stable")
    out = set()
    for union, stable in combine_candidates(pieces, system):
        if stable:
            out.add(canonicalize(union)[0])
    return out


# ----------------------------------------------------------------------------
# exploration

def explore(system: AssemblySystem, config: ExplorationConfig) -> ExplorationReport:
    """Producible assemblies of size <= max_size, by semi-naive rounds.

    Each round grows, from every piece that was new in the previous round,
    connected unions of up to h known pieces placed by glue contact.  A union
    that becomes stable is recorded and not grown further; it re-enters the
    search as a piece next round, which keeps the search complete.
    """
    if system.is_atam:
        raise FractalHamError("explore needs an h-HAM system (no seed)")
    ts = system.tileset
    tau, hands, N = system.tau, system.hands, config.max_size
    lib = _Library(ts)
    provenance = {}
    found_in = {}
    new = []
    for name in sorted(ts):
        canon, h = canonicalize(Assembly({(0, 0): name}))
        new.append(lib.add(canon, h))
        provenance[h] = ()
        found_in[h] = 0
    rounds = 0
    states = 0
    saturated = False

    def report(sat):
        return ExplorationReport(
            assemblies={h: lib.pieces[i] for h, i in lib.by_hash.items()},
            provenance=provenance if config.record_provenance else {},
            rounds=rounds, saturated=sat, max_size=N, found_in_round=found_in)

    while True:
        if config.max_rounds is not None and rounds >= config.max_rounds:
            break
        rounds += 1
        known = len(lib.pieces)
        sizes = [len(p) for p in lib.pieces]
        partners = {}   # piece id -> [(known piece, offset)] with a positive bond
        added = {}
        seen = set()
        for s in new:
            if hands < 2:
                break
            stack = [(((s, (0, 0)),), sizes[s], {}, (0,))]
            while stack:
                placement, size, weights, degs = stack.pop()
                m = len(placement)
                for k, (qid, qoff) in enumerate(placement):
                    plist = partners.get(qid)
                    if plist is None:
                        plist = [(j, v) for j in range(known) for v in lib.cand(qid, j)]
                        partners[qid] = plist
                    for j, v in plist:
                        nsize = size + sizes[j]
                        if nsize > N:
                            continue
                        off = (qoff[0] + v[0], qoff[1] + v[1])
                        ws = _try_place(lib, placement, j, off)
                        if ws is None:
                            continue
                        nxt = placement + ((j, off),)
                        key = _norm(nxt)
                        if key in seen:
                            continue
                        seen.add(key)
                        states += 1
                        if config.max_states is not None and states > config.max_states:
                            raise BudgetExceeded(
                                f"state budget {config.max_states} exhausted in round {rounds}",
                                report(False))
                        nw = dict(weights)
                        ndeg = list(degs) + [0]
                        heavy = False
                        for kk, w in ws:
                            nw[(kk, m)] = w
                            ndeg[kk] += w
                            ndeg[m] += w
                            heavy = heavy or w >= tau
                        if min(ndeg) >= tau and piece_level_stable(m + 1, nw, tau):
                            union = lib.union(nxt)
                            canon, h = canonicalize(union)
                            if h not in lib.by_hash and h not in added:
                                mx = min(p[0] for p in union)
                                my = min(p[1] for p in union)
                                added[h] = (canon, tuple(sorted(
                                    (lib.hashes[pid], (o[0] - mx, o[1] - my)) for pid, o in nxt)))
                        elif heavy:
                            # two of the pieces already form a stable pair; that pair is
                            # producible on its own and any extension is reached from it
                            continue
                        elif m + 1 < hands:
                            stack.append((nxt, nsize, nw, tuple(ndeg)))
        new = []
        for h in sorted(added):
            canon, prov = added[h]
            new.append(lib.add(canon, h))
            provenance[h] = prov
            found_in[h] = rounds
        if not new:
            saturated = True
            break
    return report(saturated)


# ----------------------------------------------------------------------------
# guided scripts

@dataclass(frozen=True)
class Operand:
    ref: str
    translation: Point = (0, 0)


@dataclass(frozen=True)
class Step:
    id: str
    operands: tuple

    def __post_init__(self):
        ops = tuple(o if isinstance(o, Operand) else Operand(o[0], tuple(o[1]))
                    for o in self.operands)
        object.__setattr__(self, "operands", ops)


@dataclass
class GuidedScript:
    """Ordered combination steps.

    Operand references resolve, in order, to earlier step ids, to inline
    ``pieces`` and finally to tile names (a single tile at the origin).
    """
    steps: list
    pieces: dict = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        self.steps = [s if isinstance(s, Step) else Step(s[0], tuple(s[1])) for s in self.steps]
        ids = set()
        for s in self.steps:
            if s.id in ids or s.id in self.pieces:
                raise ScriptError(f"step id {s.id!r} defined twice")
            if not s.operands:
                raise ScriptError(f"step {s.id!r} has no operands")
            ids.add(s.id)

    @property
    def final(self) -> str:
        return self.steps[-1].id


def run_script(system: AssemblySystem, script: GuidedScript) -> dict:
    """Execute every step; returns step id -> assembly."""
    ts = system.tileset
    env: dict[str, Assembly] = {}
    checked_inline = set()
    for step in script.steps:
        if len(step.operands) > system.hands:
            raise HandCountExceeded(
                f"step {step.id!r} uses {len(step.operands)} operands, hands = {system.hands}")
        parts = []
        for op in step.operands:
            if op.ref in env:
                base = env[op.ref]
            elif op.ref in script.pieces:
                base = script.pieces[op.ref]
                if op.ref not in checked_inline:
                    from .core import is_tau_stable
                    if not is_tau_stable(base, ts, system.tau):
                        raise ScriptError(f"inline piece {op.ref!r} is not stable")
                    checked_inline.add(op.ref)
            elif op.ref in ts:
                base = Assembly({(0, 0): op.ref})
            else:
                raise ScriptError(f"step {step.id!r}: undefined reference {op.ref!r}")
            parts.append(translate(base, op.translation))
        weights, clash = cross_weights(parts, ts)
        if clash is not None:
            raise StepOverlap(step.id, clash)
        if len(parts) > 1 and not piece_level_stable(len(parts), weights, system.tau):
            raise StepUnstable(step.id, piece_level_cut(len(parts), weights), system.tau)
        tiles = {}
        for part in parts:
            tiles.update(part)
        env[step.id] = Assembly._trusted(tiles)
    return env


def guided_assemble(system: AssemblySystem, script: GuidedScript) -> Assembly:
    if not script.steps:
        raise ScriptError("empty script")
    return run_script(system, script)[script.final]


# ----------------------------------------------------------------------------
# aTAM

def _attachments(asm: Mapping, ts: TileSet, tau: int):
    empty = set()
    for x, y in asm:
        for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            q = (x + dx, y + dy)
            if q not in asm:
                empty.add(q)
    for q in sorted(empty):
        for name in sorted(ts):
            t = ts[name]
            total = 0
            for side, (dx, dy) in STEP.items():
                nb = asm.get((q[0] + dx, q[1] + dy))
                if nb is not None:
                    total += facing_weight(t, ts[nb], side)
            if total >= tau:
                yield q, name


def atam_grow(system: AssemblySystem, max_steps: int) -> set:
    """Breadth-first single-tile growth from the seed.

    Returns the frontier: assemblies reached after ``max_steps`` attachments,
    plus terminal assemblies (no attachment possible) met earlier.
    """
    if not system.is_atam:
        raise FractalHamError("atam_grow needs a seeded system")
    ts, tau = system.tileset, system.tau
    layer = {system.seed}
    out = set()
    for _ in range(max_steps):
        nxt = set()
        for a in layer:
            grown = False
            for q, name in _attachments(a, ts, tau):
                grown = True
                nxt.add(Assembly({**a, q: name}))
            if not grown:
                out.add(a)
        if not nxt:
            layer = set()
            break
        layer = nxt
    return out | layer


def atam_reachable(system: AssemblySystem, max_steps: int) -> set:
    """Every assembly reachable within max_steps attachments."""
    ts, tau = system.tileset, system.tau
    layer = {system.seed}
    seen = set(layer)
    for _ in range(max_steps):
        nxt = set()
        for a in layer:
            for q, name in _attachments(a, ts, tau):
                b = Assembly({**a, q: name})
                if b not in seen:
                    seen.add(b)
                    nxt.add(b)
        if not nxt:
            break
        layer = nxt
    return seen
