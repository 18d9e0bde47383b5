"""JSON file formats for tile sets, scripts, assemblies and exploration reports.

Every file is a JSON object with ``format_version`` and ``kind`` fields.
Loaders validate field by field and report the offending path, e.g.
``tiles[3].north.strength``; JSON syntax errors carry line and column.
"""
from __future__ import annotations

import json
from pathlib import Path

from .core import SIDES, Assembly, FractalHamError, Glue, InvalidTileSet, TileSet, TileType
from .engine import (
    AssemblySystem, ExplorationReport, GuidedScript, Operand, ScriptError, Step, size_spectrum,
)
from .fractals import FractalKind

FORMAT_VERSION = 1


class InputError(FractalHamError, ValueError):
    """Malformed input file; ``where`` is a field path or a line/column."""

    def __init__(self, where, msg):
        super().__init__(f"{where}: {msg}")
        self.where = where


# ----------------------------------------------------------------------------
# low-level helpers

def parse_json(text: str, source: str = "<input>"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{source}:{e.lineno}:{e.colno}", e.msg) from None


def read_json(path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise InputError(str(path), e.strerror or str(e)) from None
    return parse_json(text, str(path))


def dumps(doc) -> str:
    return json.dumps(doc, indent=1) + "\n"


def write_json(path, doc):
    Path(path).write_text(dumps(doc))


def _need(doc, key, typ, where):
    if not isinstance(doc, dict):
        raise InputError(where or "<root>", "expected an object")
    if key not in doc:
        raise InputError(f"{where}.{key}" if where else key, "missing field")
    val = doc[key]
    if typ is int and isinstance(val, bool):
        raise InputError(f"{where}.{key}" if where else key, "expected an integer")
    if not isinstance(val, typ):
        name = typ.__name__ if isinstance(typ, type) else "/".join(t.__name__ for t in typ)
        raise InputError(f"{where}.{key}" if where else key, f"expected {name}")
    return val


def _header(doc, kind):
    if not isinstance(doc, dict):
        raise InputError("<root>", "expected an object")
    v = _need(doc, "format_version", int, "")
    if v != FORMAT_VERSION:
        raise InputError("format_version", f"unsupported version {v}")
    k = _need(doc, "kind", str, "")
    if k != kind:
        raise InputError("kind", f"expected {kind!r}, got {k!r}")


def _point(v, where):
    if (not isinstance(v, list) or len(v) != 2
            or not all(isinstance(c, int) and not isinstance(c, bool) for c in v)):
        raise InputError(where, "expected [x, y] integers")
    return v[0], v[1]


# ----------------------------------------------------------------------------
# assemblies

def assembly_to_list(a: Assembly) -> list:
    return [[x, y, n] for (x, y), n in sorted(a.items())]


def assembly_from_list(rows, where) -> Assembly:
    if not isinstance(rows, list) or not rows:
        raise InputError(where, "expected a nonempty list of [x, y, tile]")
    tiles = {}
    for k, row in enumerate(rows):
        w = f"{where}[{k}]"
        if not isinstance(row, list) or len(row) != 3 or not isinstance(row[2], str):
            raise InputError(w, "expected [x, y, tile]")
        p = _point(row[:2], w)
        if p in tiles:
            raise InputError(w, f"second tile at {p}")
        tiles[p] = row[2]
    return Assembly(tiles)


def assembly_doc(a: Assembly, **extra) -> dict:
    doc = {"format_version": FORMAT_VERSION, "kind": "assembly", "size": len(a)}
    doc.update(extra)
    doc["tiles"] = assembly_to_list(a)
    return doc


def load_assembly(doc) -> Assembly:
    _header(doc, "assembly")
    return assembly_from_list(_need(doc, "tiles", list, ""), "tiles")


# ----------------------------------------------------------------------------
# tile sets

def _glue_doc(g):
    return None if g is None else {"label": g.label, "strength": g.strength}


def tileset_doc(system: AssemblySystem, fractal: FractalKind | None = None,
                anchor=None, extra: dict | None = None) -> dict:
    doc = {"format_version": FORMAT_VERSION, "kind": "tileset", "name": system.name,
           "temperature": system.tau, "hands": system.hands}
    if fractal is not None:
        doc["fractal"] = {"kind": fractal.kind.value, "scale": fractal.scale,
                          "anchor": list(anchor or (0, 0))}
    if extra:
        doc.update(extra)
    if system.seed is not None:
        doc["seed"] = assembly_to_list(system.seed)
    doc["tiles"] = [dict({"name": t.name}, **{s: _glue_doc(t.glue(s)) for s in SIDES},
                         display_label=t.display_label)
                    for t in system.tileset.types()]
    return doc


def load_tileset(doc) -> AssemblySystem:
    _header(doc, "tileset")
    name = doc.get("name", "")
    if not isinstance(name, str):
        raise InputError("name", "expected str")
    tau = _need(doc, "temperature", int, "")
    hands = _need(doc, "hands", int, "")
    if tau < 1:
        raise InputError("temperature", "must be >= 1")
    if hands < 1:
        raise InputError("hands", "must be >= 1")
    tiles = []
    for k, t in enumerate(_need(doc, "tiles", list, "")):
        w = f"tiles[{k}]"
        tname = _need(t, "name", str, w)
        glues = {}
        for s in SIDES:
            g = t.get(s)
            if g is None:
                continue
            gw = f"{w}.{s}"
            label = _need(g, "label", str, gw)
            strength = _need(g, "strength", int, gw)
            try:
                glues[s] = Glue(label, strength)
            except InvalidTileSet as e:
                raise InputError(gw, str(e)) from None
        disp = t.get("display_label", "")
        if not isinstance(disp, str):
            raise InputError(f"{w}.display_label", "expected str")
        tiles.append(TileType(tname, display_label=disp, **glues))
    try:
        ts = TileSet(tiles)
    except InvalidTileSet as e:
        raise InputError("tiles", str(e)) from None
    seed = None
    if doc.get("seed") is not None:
        seed = assembly_from_list(doc["seed"], "seed")
        for k, n in enumerate(seed.values()):
            if n not in ts:
                raise InputError(f"seed[{k}]", f"unknown tile {n!r}")
    return AssemblySystem(ts, tau=tau, hands=hands, seed=seed, name=name)


def tileset_fractal(doc):
    """(FractalKind, anchor) recorded in a tile-set file, or None."""
    f = doc.get("fractal") if isinstance(doc, dict) else None
    if f is None:
        return None
    kind = _need(f, "kind", str, "fractal")
    scale = _need(f, "scale", int, "fractal")
    try:
        fk = FractalKind(kind, scale)
    except ValueError as e:
        raise InputError("fractal", str(e)) from None
    anchor = _point(f.get("anchor", [0, 0]), "fractal.anchor")
    return fk, anchor


# ----------------------------------------------------------------------------
# scripts

def script_doc(script: GuidedScript) -> dict:
    return {
        "format_version": FORMAT_VERSION, "kind": "script", "name": script.name,
        "pieces": {k: assembly_to_list(v) for k, v in script.pieces.items()},
        "steps": [{"id": s.id,
                   "operands": [{"ref": o.ref, "translation": list(o.translation)}
                                for o in s.operands]}
                  for s in script.steps],
    }


def load_script(doc) -> GuidedScript:
    _header(doc, "script")
    name = doc.get("name", "")
    if not isinstance(name, str):
        raise InputError("name", "expected str")
    raw = doc.get("pieces", {})
    if not isinstance(raw, dict):
        raise InputError("pieces", "expected an object")
    pieces = {k: assembly_from_list(v, f"pieces.{k}") for k, v in raw.items()}
    steps = []
    for k, s in enumerate(_need(doc, "steps", list, "")):
        w = f"steps[{k}]"
        sid = _need(s, "id", str, w)
        ops = []
        for j, o in enumerate(_need(s, "operands", list, w)):
            ow = f"{w}.operands[{j}]"
            ref = _need(o, "ref", str, ow)
            tr = _point(o.get("translation", [0, 0]), f"{ow}.translation")
            ops.append(Operand(ref, tr))
        steps.append(Step(sid, tuple(ops)))
    if not steps:
        raise InputError("steps", "a script needs at least one step")
    try:
        return GuidedScript(steps, pieces=pieces, name=name)
    except ScriptError as e:
        raise InputError("steps", str(e)) from None


# ----------------------------------------------------------------------------
# exploration reports

def report_doc(report: ExplorationReport, system_name: str = "") -> dict:
    items = sorted(report.assemblies.items(), key=lambda kv: (len(kv[1]), kv[0]))
    return {
        "format_version": FORMAT_VERSION, "kind": "exploration_report",
        "system": system_name, "max_size": report.max_size, "rounds": report.rounds,
        "saturated": report.saturated, "count": len(report.assemblies),
        "size_spectrum": [list(x) for x in size_spectrum(report)],
        "assemblies": [{
            "hash": h, "size": len(a), "round": report.found_in_round.get(h),
            "provenance": [[ph, list(off)] for ph, off in report.provenance.get(h, ())],
            "tiles": assembly_to_list(a),
        } for h, a in items],
    }


def load_report(doc) -> ExplorationReport:
    _header(doc, "exploration_report")
    assemblies, provenance, found = {}, {}, {}
    for k, e in enumerate(_need(doc, "assemblies", list, "")):
        w = f"assemblies[{k}]"
        h = _need(e, "hash", str, w)
        assemblies[h] = assembly_from_list(_need(e, "tiles", list, w), f"{w}.tiles")
        prov = []
        for j, pr in enumerate(e.get("provenance", [])):
            if not isinstance(pr, list) or len(pr) != 2 or not isinstance(pr[0], str):
                raise InputError(f"{w}.provenance[{j}]", "expected [hash, [x, y]]")
            prov.append((pr[0], _point(pr[1], f"{w}.provenance[{j}]")))
        provenance[h] = tuple(prov)
        if e.get("round") is not None:
            found[h] = e["round"]
    sat = _need(doc, "saturated", bool, "")
    return ExplorationReport(assemblies=assemblies, provenance=provenance,
                             rounds=_need(doc, "rounds", int, ""), saturated=sat,
                             max_size=_need(doc, "max_size", int, ""), found_in_round=found)
