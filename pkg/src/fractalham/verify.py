"""Finite checks of near-perfect assembly, near-triangles and fractal containment.

Near-perfect assembly quantifies over every stage and every producible;
these checks cover a stage range and a saturated, size-bounded report, and
their verdicts say so.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .core import Assembly, FractalHamError, Point, Shape, translate
from .engine import ExplorationReport
from .fractals import FractalKind, PreconditionViolated, sierpinski_triangle, triangle_corners


class ReportUnsaturated(FractalHamError):
    pass


def _points(x) -> frozenset:
    if isinstance(x, Assembly):
        return frozenset(x)
    return frozenset(x)


def shape_deficit(a, target) -> tuple[Point, int] | None:
    """Smallest translation t with a + t inside target, and |target| - |a|.

    Every valid t has the same deficit; the lexicographically smallest one is
    returned.  None when a fits nowhere.
    """
    a = _points(a)
    target = _points(target)
    if not a or not target:
        raise ValueError("shapes must be nonempty")
    if len(a) > len(target):
        return None
    ax, ay = min(a)
    rest = [(x - ax, y - ay) for x, y in a]
    best = None
    for tx, ty in target:
        if best is not None and (tx - ax, ty - ay) >= best:
            continue
        if all((tx + x, ty + y) in target for x, y in rest):
            best = (tx - ax, ty - ay)
    if best is None:
        return None
    return best, len(target) - len(a)


@dataclass
class NearPerfectReport:
    d: int
    stages: tuple
    max_size: int
    witnesses: dict = field(default_factory=dict)      # stage -> (hash, deficit) or None
    violations: list = field(default_factory=list)     # hashes failing condition 2
    best_deficit: dict = field(default_factory=dict)   # hash -> smallest deficit over stages
    out_of_range: list = field(default_factory=list)   # hashes larger than every checked stage

    @property
    def condition1(self) -> bool:
        return all(w is not None and w[1] <= self.d for w in self.witnesses.values())

    @property
    def condition2(self) -> bool:
        return not self.violations

    @property
    def passed(self) -> bool:
        return self.condition1 and self.condition2

    @property
    def verdict(self) -> str:
        state = "pass" if self.passed else "fail"
        lo, hi = min(self.stages), max(self.stages)
        return f"{state}: verified for stages {lo}..{hi} and producibles of size <= {self.max_size}"

    def as_dict(self) -> dict:
        return {
            "d": self.d, "stages": list(self.stages), "max_size": self.max_size,
            "passed": self.passed, "condition1": self.condition1, "condition2": self.condition2,
            "witnesses": {str(i): (None if w is None else {"hash": w[0], "deficit": w[1]})
                          for i, w in self.witnesses.items()},
            "violations": list(self.violations),
            "best_deficit": dict(self.best_deficit),
            "out_of_range": list(self.out_of_range),
            "verdict": self.verdict,
        }


def near_perfect_check(report: ExplorationReport, fractal: FractalKind,
                       stages: Iterable[int], d: int) -> NearPerfectReport:
    """Both conditions of near-perfect assembly with one constant d.

    Condition 1: each stage has a producible fitting inside it with at most d
    points missing.  Condition 2: each producible fits inside some checked
    stage with at most d points missing.  Producibles larger than the largest
    checked stage cannot be judged within the range and are listed apart.
    """
    if not report.saturated:
        raise ReportUnsaturated("exploration report is not saturated")
    stages = tuple(sorted(set(stages)))
    if not stages:
        raise ValueError("no stages to check")
    targets = {i: fractal.stage(i) for i in stages}
    for i, t in targets.items():
        if len(t) > report.max_size:
            raise PreconditionViolated(
                f"stage {i} has {len(t)} points, report only covers size <= {report.max_size}")
    out = NearPerfectReport(d=d, stages=stages, max_size=report.max_size)
    items = sorted(report.assemblies.items(), key=lambda kv: (-len(kv[1]), kv[0]))

    for i, t in targets.items():
        out.witnesses[i] = None
        for h, a in items:
            if len(a) > len(t):
                continue
            got = shape_deficit(a, t)
            if got is not None:
                out.witnesses[i] = (h, got[1])
                break

    biggest = max(len(t) for t in targets.values())
    for h, a in sorted(report.assemblies.items()):
        if len(a) > biggest:
            out.out_of_range.append(h)
            continue
        best = None
        for i, t in targets.items():
            if len(t) < len(a) or (best is not None and len(t) - len(a) >= best):
                continue
            got = shape_deficit(a, t)
            if got is not None:
                best = got[1]
        out.best_deficit[h] = best
        if best is None or best > d:
            out.violations.append(h)
    return out


def near_triangle_shape(i: int) -> Shape:
    return Shape(sierpinski_triangle(i, 1) - triangle_corners(i))


def is_near_triangle(a: Assembly, i: int, anchor: Point = (0, 0)) -> bool:
    if i < 2:
        raise PreconditionViolated("near-triangles are defined for stage >= 2")
    if len(a) != 4 * 3 ** i - 6:
        return False
    return frozenset(translate(a, anchor)) == near_triangle_shape(i)


def near_triangle_stage(a: Assembly, max_stage: int = 8) -> int | None:
    """Stage i for which some translation of a is a near-triangle, if any."""
    for i in range(2, max_stage + 1):
        if len(a) == 4 * 3 ** i - 6:
            target = near_triangle_shape(i)
            got = shape_deficit(a, target)
            if got is not None and got[1] == 0:
                return i
    return None


def within_fractal(a, fractal: FractalKind, anchor: Point = (0, 0)) -> bool:
    dx, dy = anchor
    return all(fractal.contains((x + dx, y + dy)) for x, y in _points(a))


def outside_points(a, fractal: FractalKind, anchor: Point = (0, 0)) -> list:
    dx, dy = anchor
    return sorted(p for p in ((x + dx, y + dy) for x, y in _points(a)) if not fractal.contains(p))
