"""Discrete Sierpinski triangle and carpet: stages, membership, choke edges."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

from .core import FractalHamError, Point, Shape

S0 = ((0, 0), (-1, 0), (0, 1), (-1, 1))
CARPET_V = ((1, 0), (0, 1), (0, 2), (2, 0), (1, 2), (2, 1), (2, 2))


class PreconditionViolated(FractalHamError, ValueError):
    pass


class Kind(str, enum.Enum):
    TRIANGLE = "triangle"
    CARPET = "carpet"


@dataclass(frozen=True)
class FractalKind:
    kind: Kind
    scale: int = 1

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if self.scale < 1:
            raise ValueError("scale must be >= 1")

    def stage(self, i: int) -> Shape:
        if self.kind is Kind.TRIANGLE:
            return sierpinski_triangle(i, self.scale)
        return sierpinski_carpet(i, self.scale)

    def contains(self, p: Point) -> bool:
        if self.kind is Kind.TRIANGLE:
            return in_triangle(p, self.scale)
        return in_carpet(p, self.scale)


TRIANGLE = FractalKind(Kind.TRIANGLE, 1)
CARPET = FractalKind(Kind.CARPET, 1)


@dataclass(frozen=True)
class LatticeEdge:
    a: Point
    b: Point

    def __post_init__(self):
        if abs(self.a[0] - self.b[0]) + abs(self.a[1] - self.b[1]) != 1:
            raise ValueError(f"{self.a} and {self.b} are not at unit distance")
        if self.b < self.a:
            a, b = self.b, self.a
            object.__setattr__(self, "a", a)
            object.__setattr__(self, "b", b)


def scale_points(points, c: int) -> Shape:
    if c == 1:
        return Shape(points)
    return Shape((c * x + dx, c * y + dy) for x, y in points
                 for dx in range(c) for dy in range(c))


@lru_cache(maxsize=None)
def _triangle_unit(i: int) -> frozenset:
    if i == 0:
        return frozenset(S0)
    prev = _triangle_unit(i - 1)
    s = 1 << (i - 1)
    return prev | {(x + s, y + 2 * s) for x, y in prev} | {(x - s, y + 2 * s) for x, y in prev}


@lru_cache(maxsize=None)
def _carpet_unit(i: int) -> frozenset:
    if i == 0:
        return frozenset({(0, 0)})
    prev = _carpet_unit(i - 1)
    s = 3 ** (i - 1)
    out = set(prev)
    for vx, vy in CARPET_V:
        out.update((x + s * vx, y + s * vy) for x, y in prev)
    return frozenset(out)


def sierpinski_triangle(i: int, c: int = 1) -> Shape:
    if i < 0 or c < 1:
        raise ValueError("need i >= 0 and c >= 1")
    return scale_points(_triangle_unit(i), c)


def sierpinski_carpet(i: int, c: int = 1) -> Shape:
    if i < 0 or c < 1:
        raise ValueError("need i >= 0 and c >= 1")
    return scale_points(_carpet_unit(i), c)


def in_triangle(p: Point, c: int = 1) -> bool:
    x, y = p[0] // c, p[1] // c
    if y < 0:
        return False
    # smallest stage whose height covers y; stage i spans y in [0, 2^(i+1))
    i = 0
    while y >= 2 << i:
        i += 1
    # descend: stage i = S_{i-1} and two copies shifted by 2^(i-1)(+-1, 2)
    while i > 0:
        s = 1 << (i - 1)
        if y >= 2 * s:
            y -= 2 * s
            x = x - s if x >= 0 else x + s
        i -= 1
    return y in (0, 1) and x in (-1, 0)


def in_carpet(p: Point, c: int = 1) -> bool:
    x, y = p[0] // c, p[1] // c
    if x < 0 or y < 0:
        return False
    while x or y:
        if x % 3 == 1 and y % 3 == 1:
            return False
        x //= 3
        y //= 3
    return True


def choke_edges(i: int, c: int = 1, side: str = "left") -> set[LatticeEdge]:
    """Unit edges joining S^c_i to its upper-left or upper-right copy."""
    if i < 0:
        raise PreconditionViolated("stage must be >= 0")
    if side not in ("left", "right"):
        raise ValueError("side is 'left' or 'right'")
    base = sierpinski_triangle(i, c)
    sx = -c * (1 << i) if side == "left" else c * (1 << i)
    v = (sx, c * (2 << i))
    moved = base.translate(v)
    out = set()
    for x, y in base:
        for q in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
            if q in moved and q not in base:
                out.add(LatticeEdge((x, y), q))
    return out


def pointlanding_holds(c: int, i: int, j: int, k: int) -> bool:
    """Check that (-1, p_y)+v and (0, p_y)+v are never both in S^c_inf.

    v = (c2^j - c2^i, c2^(j+1) - c2^(i+1)) and p_y runs over the 2c rows
    starting at c2^(k+1).
    """
    if i < 1 or j <= i or k <= i:
        raise PreconditionViolated(f"need k, j > i >= 1, got i={i} j={j} k={k}")
    vx = c * (1 << j) - c * (1 << i)
    vy = c * (2 << j) - c * (2 << i)
    y0 = c * (2 << k)
    for py in range(y0, y0 + 2 * c):
        if in_triangle((-1 + vx, py + vy), c) and in_triangle((vx, py + vy), c):
            return False
    return True


def triangle_corners(i: int) -> set[Point]:
    """The six extreme points of S_i: two leftmost, two rightmost, two bottom."""
    s = 1 << i
    top = 2 * s
    return {(-1, 0), (0, 0), (-s, top - 2), (-s, top - 1), (s - 1, top - 2), (s - 1, top - 1)}
