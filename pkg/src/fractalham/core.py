"""Tiles, assemblies, bond graphs and tau-stability.

Everything here is an immutable value.  Points are plain ``(x, y)`` integer
tuples; an assembly maps points to tile-type names and only becomes
meaningful together with a tile set.
"""
from __future__ import annotations

import hashlib
import heapq
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

Point = tuple[int, int]

SIDES = ("north", "east", "south", "west")
STEP = {"north": (0, 1), "east": (1, 0), "south": (0, -1), "west": (-1, 0)}
OPPOSITE = {"north": "south", "south": "north", "east": "west", "west": "east"}


class FractalHamError(Exception):
    """Base class for every error raised by this package."""


class UnknownTileName(FractalHamError, KeyError):
    def __str__(self):
        return f"unknown tile name: {self.args[0]!r}"


class InvalidTileSet(FractalHamError, ValueError):
    pass


@dataclass(frozen=True, order=True)
class Glue:
    label: str
    strength: int

    def __post_init__(self):
        if not isinstance(self.strength, int) or self.strength < 0:
            raise InvalidTileSet(f"glue {self.label!r} has bad strength {self.strength!r}")
        if not self.label:
            raise InvalidTileSet("glue label must be non-empty")


@dataclass(frozen=True)
class TileType:
    name: str
    north: Glue | None = None
    east: Glue | None = None
    south: Glue | None = None
    west: Glue | None = None
    display_label: str = ""

    def glue(self, side: str) -> Glue | None:
        return getattr(self, side)

    def glues(self) -> Iterator[tuple[str, Glue]]:
        for side in SIDES:
            g = getattr(self, side)
            if g is not None:
                yield side, g


class TileSet(Mapping):
    """Validated collection of tile types keyed by name.

    Tile names must be unique and every glue label must carry one strength.
    """

    def __init__(self, tiles: Iterable[TileType]):
        self._tiles: dict[str, TileType] = {}
        strength: dict[str, int] = {}
        for t in tiles:
            if not isinstance(t, TileType):
                raise InvalidTileSet(f"not a tile type: {t!r}")
            if t.name in self._tiles:
                raise InvalidTileSet(f"duplicate tile name {t.name!r}")
            self._tiles[t.name] = t
            for side, g in t.glues():
                seen = strength.setdefault(g.label, g.strength)
                if seen != g.strength:
                    raise InvalidTileSet(
                        f"glue label {g.label!r} used with strengths {seen} and {g.strength}"
                        f" (tile {t.name!r}, {side})")
        self._strength = strength

    def __getitem__(self, name):
        try:
            return self._tiles[name]
        except KeyError:
            raise UnknownTileName(name) from None

    def __iter__(self):
        return iter(self._tiles)

    def __len__(self):
        return len(self._tiles)

    def __eq__(self, other):
        if isinstance(other, TileSet):
            return self._tiles == other._tiles
        return NotImplemented

    __hash__ = None

    @property
    def label_strengths(self) -> dict[str, int]:
        return dict(self._strength)

    def types(self) -> list[TileType]:
        return list(self._tiles.values())


def as_tileset(tileset) -> TileSet:
    if isinstance(tileset, TileSet):
        return tileset
    if isinstance(tileset, Mapping):
        return TileSet(tileset.values())
    return TileSet(tileset)


def facing_weight(a: TileType, b: TileType, side: str) -> int:
    """Bond weight between ``a`` and ``b`` when ``b`` sits on ``side`` of ``a``."""
    ga = a.glue(side)
    gb = b.glue(OPPOSITE[side])
    if ga is None or gb is None or ga.label != gb.label:
        return 0
    return min(ga.strength, gb.strength)


class Shape(frozenset):
    """A finite set of lattice points."""

    def translate(self, v: Point) -> "Shape":
        dx, dy = v
        return Shape((x + dx, y + dy) for x, y in self)

    def bbox(self):
        xs = [p[0] for p in self]
        ys = [p[1] for p in self]
        return min(xs), min(ys), max(xs), max(ys)

    def __repr__(self):
        return f"Shape({sorted(self)})"


class Assembly(Mapping):
    """Finite, nonempty placement of tile names at distinct lattice points."""

    __slots__ = ("_tiles", "_hash")

    def __init__(self, tiles: Mapping[Point, str] | Iterable[tuple[Point, str]]):
        items = tiles.items() if isinstance(tiles, Mapping) else tiles
        d: dict[Point, str] = {}
        for p, name in items:
            p = (int(p[0]), int(p[1]))
            if p in d:
                raise FractalHamError(f"two tiles at {p}")
            d[p] = name
        if not d:
            raise FractalHamError("an assembly needs at least one tile")
        self._tiles = d
        self._hash = None

    @classmethod
    def _trusted(cls, d: dict) -> "Assembly":
        # d is a fresh, nonempty dict with integer points; skips validation
        obj = cls.__new__(cls)
        obj._tiles = d
        obj._hash = None
        return obj

    def __getitem__(self, p):
        return self._tiles[p]

    def __iter__(self):
        return iter(self._tiles)

    def __len__(self):
        return len(self._tiles)

    def __eq__(self, other):
        if isinstance(other, Assembly):
            return self._tiles == other._tiles
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._tiles.items()))
        return self._hash

    def __repr__(self):
        body = ", ".join(f"{p}: {n!r}" for p, n in sorted(self._tiles.items())[:6])
        more = "" if len(self) <= 6 else f", ... ({len(self)} tiles)"
        return f"Assembly({{{body}{more}}})"

    @property
    def size(self) -> int:
        return len(self._tiles)

    def shape(self) -> Shape:
        return Shape(self._tiles)

    def union(self, other: "Assembly") -> "Assembly":
        clash = self._tiles.keys() & other._tiles.keys()
        if clash:
            raise FractalHamError(f"assemblies overlap at {sorted(clash)[:3]}")
        return Assembly({**self._tiles, **other._tiles})


def translate(assembly: Assembly, v: Point) -> Assembly:
    dx, dy = v
    if dx == 0 and dy == 0:
        return assembly
    return Assembly._trusted({(x + dx, y + dy): n for (x, y), n in assembly.items()})


def anchor_of(points: Iterable[Point]) -> Point:
    """(min x, min y) over the points; the canonical origin."""
    pts = list(points)
    return min(p[0] for p in pts), min(p[1] for p in pts)


def canonical_items(assembly: Assembly) -> tuple:
    mx, my = anchor_of(assembly)
    return tuple(sorted(((x - mx, y - my), n) for (x, y), n in assembly.items()))


def digest(items: tuple) -> str:
    h = hashlib.sha256()
    for (x, y), n in items:
        h.update(f"{x},{y}:{n};".encode())
    return h.hexdigest()[:20]


def canonicalize(assembly: Assembly) -> tuple[Assembly, str]:
    """Translate so min x = min y = 0; return it with a stable digest."""
    items = canonical_items(assembly)
    return Assembly(items), digest(items)


def canonical_hash(assembly: Assembly) -> str:
    return digest(canonical_items(assembly))


@dataclass(frozen=True)
class BondGraph:
    vertices: tuple
    edges: Mapping  # (p, q) with p < q  ->  weight, one entry per adjacent pair

    def weight(self, p, q) -> int:
        key = (p, q) if p < q else (q, p)
        return self.edges.get(key, 0)

    def positive_adjacency(self) -> dict:
        adj = {v: {} for v in self.vertices}
        for (p, q), w in self.edges.items():
            if w > 0:
                adj[p][q] = w
                adj[q][p] = w
        return adj


def bond_graph(assembly: Assembly, tileset) -> BondGraph:
    ts = as_tileset(tileset)
    types = {p: ts[n] for p, n in assembly.items()}
    edges = {}
    for (x, y), t in types.items():
        for side in ("east", "north"):
            dx, dy = STEP[side]
            q = (x + dx, y + dy)
            u = types.get(q)
            if u is not None:
                edges[((x, y), q)] = facing_weight(t, u, side)
    return BondGraph(tuple(sorted(types)), edges)


def stoer_wagner(adj: Mapping) -> tuple[int, frozenset]:
    """Exact global minimum cut of an undirected weighted graph.

    ``adj`` maps vertex -> {neighbour: weight}; weights must be positive.
    Returns (weight, one shore).  A disconnected graph has cut 0.
    """
    verts = list(adj)
    n = len(verts)
    if n < 2:
        raise ValueError("min cut needs at least two vertices")
    index = {v: i for i, v in enumerate(verts)}
    g = [dict() for _ in range(n)]
    for v, nb in adj.items():
        i = index[v]
        for u, w in nb.items():
            if w > 0 and u != v:
                g[i][index[u]] = g[i].get(index[u], 0) + w
    members = [[v] for v in verts]
    alive = set(range(n))

    best = None
    best_side = None
    while len(alive) > 1:
        key = {v: 0 for v in alive}
        added = set()
        heap = []
        order = []
        start = min(alive)
        heapq.heappush(heap, (0, start))
        while len(added) < len(alive):
            if heap:
                negk, v = heapq.heappop(heap)
                if v in added or -negk != key[v]:
                    continue
            else:
                # disconnected remainder: continue with key 0
                v = min(alive - added)
            added.add(v)
            order.append(v)
            for u, w in g[v].items():
                if u not in added:
                    key[u] += w
                    heapq.heappush(heap, (-key[u], u))
        last = order[-1]
        prev = order[-2]
        cut = key[last]
        if best is None or cut < best:
            best = cut
            best_side = frozenset(members[last])
            if best == 0:
                break
        # merge last into prev
        for u, w in g[last].items():
            if u == prev:
                continue
            g[prev][u] = g[prev].get(u, 0) + w
            g[u][prev] = g[u].get(prev, 0) + w
            del g[u][last]
        g[prev].pop(last, None)
        g[last] = {}
        members[prev].extend(members[last])
        alive.discard(last)
    return best, best_side


def _connected(adj) -> bool:
    it = iter(adj)
    start = next(it)
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == len(adj)


def contract_heavy(adj: Mapping, tau: int) -> dict:
    """Merge endpoints of every edge of weight >= tau, repeatedly.

    Any cut separating such endpoints weighs at least tau, so the answer to
    "is the min cut >= tau" is unchanged.
    """
    parent = {v: v for v in adj}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    cur = {v: dict(nb) for v, nb in adj.items()}
    while True:
        merged = False
        for v, nb in cur.items():
            for u, w in nb.items():
                if w >= tau:
                    a, b = find(v), find(u)
                    if a != b:
                        parent[b] = a
                        merged = True
        if not merged:
            return cur
        nxt = {}
        for v, nb in cur.items():
            a = find(v)
            row = nxt.setdefault(a, {})
            for u, w in nb.items():
                b = find(u)
                if a != b:
                    row[b] = row.get(b, 0) + w
        cur = nxt


def min_cut_weight(adj: Mapping) -> int:
    if len(adj) < 2:
        raise ValueError("min cut needs at least two vertices")
    return stoer_wagner(adj)[0]


def adjacency_is_stable(adj: Mapping, tau: int) -> bool:
    if len(adj) <= 1:
        return True
    if not _connected(adj):
        return False
    reduced = contract_heavy(adj, tau)
    if len(reduced) == 1:
        return True
    return stoer_wagner(reduced)[0] >= tau


def is_tau_stable(assembly: Assembly, tileset, tau: int) -> bool:
    if tau < 1:
        raise ValueError("temperature must be positive")
    return adjacency_is_stable(bond_graph(assembly, tileset).positive_adjacency(), tau)


def assembly_min_cut(assembly: Assembly, tileset) -> int | None:
    """Exact min-cut weight of the bond graph, or None for a single tile."""
    if len(assembly) == 1:
        return None
    return min_cut_weight(bond_graph(assembly, tileset).positive_adjacency())
