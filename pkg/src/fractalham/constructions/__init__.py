"""Tile systems for the Sierpinski constructions, with guided stage scripts."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..engine import AssemblySystem
from ..fractals import FractalKind


@dataclass(frozen=True)
class ConstructionBundle:
    name: str
    system: AssemblySystem
    stage_scripts: dict          # stage index -> GuidedScript
    fractal: FractalKind
    anchor: tuple = (0, 0)       # maps script output onto fractal coordinates
    target_tile_count: int = 0
    metadata: dict = field(default_factory=dict)

    @property
    def tile_count(self) -> int:
        return len(self.system.tileset)

    @property
    def scale(self) -> int:
        return self.fractal.scale

    def count_ratio(self) -> float:
        return self.tile_count / self.target_tile_count


from .triangle6 import build_triangle_6ham  # noqa: E402
from .triangle3 import build_triangle_3ham  # noqa: E402
from .carpet2 import build_carpet_2ham  # noqa: E402

BUILDERS = {
    "triangle6": build_triangle_6ham,
    "triangle3": build_triangle_3ham,
    "carpet2": build_carpet_2ham,
}

__all__ = ["ConstructionBundle", "build_triangle_6ham", "build_triangle_3ham",
           "build_carpet_2ham", "BUILDERS"]
