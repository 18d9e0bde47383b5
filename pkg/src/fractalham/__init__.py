"""Multi-handed tile self-assembly with Sierpinski fractal constructions.

The library simulates the h-handed assembly model and seeded single-tile
growth, builds tile systems for scale-1 and scale-3 Sierpinski triangles and
the scale-3 Sierpinski carpet, and checks near-perfect assembly on finite
ranges.
"""
from .core import (
    Assembly, BondGraph, FractalHamError, Glue, InvalidTileSet, Shape, TileSet, TileType,
    UnknownTileName, assembly_min_cut, bond_graph, canonical_hash, canonicalize,
    is_tau_stable, min_cut_weight, stoer_wagner, translate,
)
from .engine import (
    AssemblySystem, BudgetExceeded, ExplorationConfig, ExplorationReport, GuidedScript,
    HandCountExceeded, Operand, ScriptError, Step, StepOverlap, StepUnstable, atam_grow,
    atam_reachable, combine, explore, guided_assemble, run_script, size_spectrum,
)
from .fractals import (
    CARPET, TRIANGLE, FractalKind, Kind, LatticeEdge, PreconditionViolated, choke_edges,
    in_carpet, in_triangle, pointlanding_holds, sierpinski_carpet, sierpinski_triangle,
    triangle_corners,
)
from .verify import (
    NearPerfectReport, ReportUnsaturated, is_near_triangle, near_perfect_check,
    near_triangle_shape, near_triangle_stage, outside_points, shape_deficit, within_fractal,
)

__version__ = "0.1.0"

__all__ = [
    "Assembly", "BondGraph", "FractalHamError", "Glue", "InvalidTileSet", "Shape", "TileSet",
    "TileType", "UnknownTileName", "assembly_min_cut", "bond_graph", "canonical_hash",
    "canonicalize", "is_tau_stable", "min_cut_weight", "stoer_wagner", "translate",
    "AssemblySystem", "BudgetExceeded", "ExplorationConfig", "ExplorationReport",
    "GuidedScript", "HandCountExceeded", "Operand", "ScriptError", "Step", "StepOverlap",
    "StepUnstable", "atam_grow", "atam_reachable", "combine", "explore", "guided_assemble",
    "run_script", "size_spectrum",
    "CARPET", "TRIANGLE", "FractalKind", "Kind", "LatticeEdge", "PreconditionViolated",
    "choke_edges", "in_carpet", "in_triangle", "pointlanding_holds", "sierpinski_carpet",
    "sierpinski_triangle", "triangle_corners",
    "NearPerfectReport", "ReportUnsaturated", "is_near_triangle", "near_perfect_check",
    "near_triangle_shape", "near_triangle_stage", "outside_points", "shape_deficit",
    "within_fractal",
]
