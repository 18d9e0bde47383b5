"""Command-line interface.

Exit codes: 0 success or pass, 1 verification failure (including a script
step that is not stable), 2 input error, 3 budget exceeded or an
exploration that did not saturate.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import io
from .constructions import BUILDERS
from .core import FractalHamError, UnknownTileName
from .engine import (
    BudgetExceeded, ExplorationConfig, HandCountExceeded, ScriptError, StepOverlap,
    StepUnstable, explore, guided_assemble, size_spectrum,
)
from .fractals import FractalKind, PreconditionViolated, pointlanding_holds
from .verify import (
    ReportUnsaturated, near_perfect_check, near_triangle_stage, outside_points,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(FractalHamError):
    pass


# ----------------------------------------------------------------------------
# helpers

def _emit(text: str, out):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        p = Path(out)
        p.parent.mkdir(parents=True, exist_ok=True)
        p.write_text(text)


def _note(msg):
    print(msg, file=sys.stderr)


def _stages(spec: str) -> range:
    try:
        if ".." in spec:
            lo, hi = spec.split("..", 1)
            r = range(int(lo), int(hi) + 1)
        else:
            r = range(int(spec), int(spec) + 1)
    except ValueError:
        raise UsageError(f"bad stage range {spec!r}, expected like 0..3") from None
    if not r or r.start < 0:
        raise UsageError(f"bad stage range {spec!r}")
    return r


def _ints(spec: str) -> list:
    try:
        return [int(x) for x in spec.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"bad integer list {spec!r}") from None


def _load_system(path):
    doc = io.read_json(path)
    return io.load_tileset(doc), io.tileset_fractal(doc)


def _fractal(args, recorded):
    """Fractal from flags, falling back to the one recorded in the tile-set file."""
    anchor = (0, 0)
    if recorded is not None:
        fk, anchor = recorded
        kind, scale = fk.kind.value, fk.scale
    else:
        kind, scale = "triangle", 1
    if getattr(args, "kind", None):
        kind = args.kind
    if getattr(args, "scale", None):
        scale = args.scale
    if getattr(args, "anchor", None):
        anchor = tuple(_ints(args.anchor))
        if len(anchor) != 2:
            raise UsageError("--anchor expects x,y")
    return FractalKind(kind, scale), anchor


def _final_assembly(args):
    """(assembly, system, recorded fractal) from --assembly or --tileset plus --script."""
    if getattr(args, "assembly", None):
        return io.load_assembly(io.read_json(args.assembly)), None, None
    if not (args.tileset and args.script):
        raise UsageError("need --assembly, or --tileset together with --script")
    system, recorded = _load_system(args.tileset)
    script = io.load_script(io.read_json(args.script))
    return guided_assemble(system, script), system, recorded


def _write_csv(path, header, rows):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as f:
        w = csv.writer(f)
        w.writerow(header)
        w.writerows(rows)
    return path


def _spectrum_outputs(report, out_dir, marks=()):
    from .render import render_spectrum, save_both
    out_dir = Path(out_dir)
    spec = size_spectrum(report)
    files = [_write_csv(out_dir / "spectrum.csv", ["size", "count"], spec)]
    title = f"producibles up to size {report.max_size}"
    if not report.saturated:
        title += " (not saturated)"
    files += save_both(render_spectrum, out_dir / "spectrum", spec, title=title, marks=marks)
    return files


# ----------------------------------------------------------------------------
# commands

def cmd_shapes(args):
    fk = FractalKind(args.kind, args.scale)
    pts = fk.stage(args.stage)
    fmt = args.format
    if fmt == "points":
        from .render import point_lines
        _emit(point_lines(pts), args.out)
    elif fmt == "ascii":
        from .render import ascii_grid
        _emit(ascii_grid(pts), args.out)
    elif fmt == "json":
        doc = {"format_version": io.FORMAT_VERSION, "kind": "shape", "fractal": args.kind,
               "stage": args.stage, "scale": args.scale, "size": len(pts),
               "points": [list(p) for p in sorted(pts)]}
        _emit(io.dumps(doc), args.out)
    else:
        from .render import render_shape, save_both
        if args.out in (None, "-"):
            raise UsageError("--format svg needs --out")
        files = save_both(render_shape, args.out, pts,
                          title=f"{args.kind} stage {args.stage}, scale {args.scale}")
        _note("wrote " + ", ".join(map(str, files)))
    _note(f"{args.kind} stage {args.stage} scale {args.scale}: {len(pts)} points")
    return EXIT_OK


def cmd_explore(args):
    system, _ = _load_system(args.tileset)
    cfg = ExplorationConfig(max_size=args.max_size, max_rounds=args.max_rounds,
                            max_states=args.max_states)
    try:
        report = explore(system, cfg)
    except BudgetExceeded as e:
        report = e.report
        _note(str(e))
    _emit(io.dumps(io.report_doc(report, system.name)), args.out)
    if args.report_dir:
        _spectrum_outputs(report, args.report_dir)
    _note(f"{len(report.assemblies)} producibles, {report.rounds} rounds, "
          f"{'saturated' if report.saturated else 'not saturated'}")
    return EXIT_OK if report.saturated else EXIT_BUDGET


def cmd_guided(args):
    system, _ = _load_system(args.tileset)
    script = io.load_script(io.read_json(args.script))
    a = guided_assemble(system, script)
    _emit(io.dumps(io.assembly_doc(a, script=script.name)), args.out)
    if args.render:
        from .render import render_assembly, save_both
        files = save_both(render_assembly, args.render, a, system.tileset,
                          title=f"{script.name} ({len(a)} tiles)", ticks=args.ticks)
        _note("wrote " + ", ".join(map(str, files)))
    _note(f"{script.name or 'script'}: {len(a)} tiles")
    return EXIT_OK


def _verdict(doc, passed, out):
    doc["passed"] = passed
    _emit(io.dumps(doc), out)
    _note(doc.get("verdict", "pass" if passed else "fail"))
    return EXIT_OK if passed else EXIT_FAIL


def cmd_near_perfect(args):
    if bool(args.tileset) == bool(args.report):
        raise UsageError("give exactly one of --tileset or --report")
    recorded = None
    if args.tileset:
        system, recorded = _load_system(args.tileset)
    fk, _ = _fractal(args, recorded)
    stages = _stages(args.stages)
    if args.report:
        report = io.load_report(io.read_json(args.report))
    else:
        need = max(len(fk.stage(i)) for i in stages)
        cfg = ExplorationConfig(max_size=args.max_size or need, max_rounds=args.max_rounds,
                                max_states=args.max_states)
        report = explore(system, cfg)
        if not report.saturated:
            raise ReportUnsaturated(f"exploration stopped after {report.rounds} rounds")
    res = near_perfect_check(report, fk, stages, args.constant)
    doc = dict({"format_version": io.FORMAT_VERSION, "kind": "near_perfect_report",
                "fractal": fk.kind.value, "scale": fk.scale}, **res.as_dict())
    if args.report_dir:
        from .render import render_deficits, save_both
        out = Path(args.report_dir)
        rows = sorted((len(report.assemblies[h]), res.best_deficit[h], h)
                      for h in res.best_deficit)
        _write_csv(out / "deficits.csv", ["size", "best_deficit", "hash"],
                   [(s, "" if v is None else v, h) for s, v, h in rows])
        _write_csv(out / "witnesses.csv", ["stage", "hash", "deficit"],
                   [(i, *(w or ("", ""))) for i, w in sorted(res.witnesses.items())])
        save_both(render_deficits, out / "deficits", [(s, v) for s, v, _ in rows], args.constant)
        _spectrum_outputs(report, out, marks=[len(fk.stage(i)) for i in stages])
    return _verdict(doc, res.passed, args.out)


def cmd_within_fractal(args):
    a, _, recorded = _final_assembly(args)
    fk, anchor = _fractal(args, recorded)
    bad = outside_points(a, fk, anchor)
    doc = {"format_version": io.FORMAT_VERSION, "kind": "within_fractal_report",
           "fractal": fk.kind.value, "scale": fk.scale, "anchor": list(anchor),
           "size": len(a), "outside": [list(p) for p in bad]}
    doc["verdict"] = ("pass" if not bad else "fail") + f": {len(bad)} of {len(a)} points outside"
    return _verdict(doc, not bad, args.out)


def cmd_near_triangle(args):
    a, _, _ = _final_assembly(args)
    i = near_triangle_stage(a, args.max_stage)
    doc = {"format_version": io.FORMAT_VERSION, "kind": "near_triangle_report",
           "size": len(a), "stage": i,
           "verdict": (f"pass: near-triangle of stage {i}" if i is not None
                       else f"fail: not a near-triangle of any stage 2..{args.max_stage}")}
    return _verdict(doc, i is not None, args.out)


def cmd_lemma(args):
    cs = _ints(args.c)
    if not cs or min(cs) < 1:
        raise UsageError("--c needs positive scale factors")
    checked, bad = 0, []
    for c in cs:
        for i in range(1, args.imax + 1):
            for j in range(i + 1, args.jmax + 1):
                for k in range(i + 1, args.kmax + 1):
                    checked += 1
                    if not pointlanding_holds(c, i, j, k):
                        bad.append([c, i, j, k])
    doc = {"format_version": io.FORMAT_VERSION, "kind": "lemma_report", "c": cs,
           "imax": args.imax, "jmax": args.jmax, "kmax": args.kmax,
           "checked": checked, "counterexamples": bad,
           "verdict": f"{'pass' if not bad else 'fail'}: {checked} cases, "
                      f"{len(bad)} counterexamples"}
    if checked == 0:
        raise UsageError("the ranges leave no (i, j, k) with i < j and i < k")
    return _verdict(doc, not bad, args.out)


def cmd_build(args):
    kw = {} if args.max_stage is None else {"max_stage": args.max_stage}
    b = BUILDERS[args.construction](**kw)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    meta = {"construction": b.name, "tile_count": b.tile_count,
            "target_tile_count": b.target_tile_count, "count_ratio": round(b.count_ratio(), 4),
            "temperature": b.system.tau, "hands": b.system.hands}
    io.write_json(out / "tileset.json", io.tileset_doc(b.system, b.fractal, b.anchor, meta))
    scripts = {}
    for i, s in sorted(b.stage_scripts.items()):
        name = f"script_stage{i}.json"
        io.write_json(out / name, io.script_doc(s))
        scripts[str(i)] = name
    meta.update({"fractal": b.fractal.kind.value, "scale": b.scale, "anchor": list(b.anchor),
                 "scripts": scripts,
                 "metadata": json.loads(json.dumps(b.metadata, default=str))})
    io.write_json(out / "metadata.json", meta)
    _note(f"{b.name}: {b.tile_count} tiles (target {b.target_tile_count}, "
          f"ratio {b.count_ratio():.3f}), tau={b.system.tau}, hands={b.system.hands}")
    return EXIT_OK


def cmd_report(args):
    report = io.load_report(io.read_json(args.report))
    files = _spectrum_outputs(report, args.out_dir)
    _note("wrote " + ", ".join(map(str, files)))
    return EXIT_OK


# ----------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fractalham", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("shapes", help="write a fractal stage")
    s.add_argument("--kind", choices=("triangle", "carpet"), default="triangle")
    s.add_argument("--stage", type=int, required=True)
    s.add_argument("--scale", type=int, default=1)
    s.add_argument("--format", choices=("svg", "ascii", "points", "json"), default="points")
    s.add_argument("--out", default="-")
    s.set_defaults(func=cmd_shapes)

    s = sub.add_parser("explore", help="saturating exploration of producible assemblies")
    s.add_argument("--tileset", required=True)
    s.add_argument("--max-size", type=int, required=True)
    s.add_argument("--max-rounds", type=int)
    s.add_argument("--max-states", type=int)
    s.add_argument("--out", default="-")
    s.add_argument("--report-dir", help="also write spectrum.csv/.svg/.png here")
    s.set_defaults(func=cmd_explore)

    s = sub.add_parser("guided", help="run a guided assembly script")
    s.add_argument("--tileset", required=True)
    s.add_argument("--script", required=True)
    s.add_argument("--out", default="-")
    s.add_argument("--render", help="figure path stem; writes .svg and .png")
    s.add_argument("--ticks", action="store_true", help="mark glues by strength")
    s.set_defaults(func=cmd_guided)

    v = sub.add_parser("verify", help="finite checks").add_subparsers(dest="check", required=True)

    s = v.add_parser("near-perfect")
    s.add_argument("--tileset")
    s.add_argument("--report", help="saved exploration report instead of exploring")
    s.add_argument("--kind", choices=("triangle", "carpet"))
    s.add_argument("--scale", type=int)
    s.add_argument("--stages", "--stage", default="0..3")
    s.add_argument("--constant", "-d", type=int, required=True)
    s.add_argument("--max-size", type=int)
    s.add_argument("--max-rounds", type=int)
    s.add_argument("--max-states", type=int)
    s.add_argument("--out", default="-")
    s.add_argument("--report-dir", help="write deficit/spectrum CSV and figures here")
    s.set_defaults(func=cmd_near_perfect)

    for name, func in (("within-fractal", cmd_within_fractal),
                       ("near-triangle", cmd_near_triangle)):
        s = v.add_parser(name)
        s.add_argument("--tileset")
        s.add_argument("--script")
        s.add_argument("--assembly")
        s.add_argument("--out", default="-")
        if name == "within-fractal":
            s.add_argument("--kind", choices=("triangle", "carpet"))
            s.add_argument("--scale", type=int)
            s.add_argument("--anchor", help="x,y added to every point")
        else:
            s.add_argument("--max-stage", type=int, default=8)
        s.set_defaults(func=func)

    s = v.add_parser("lemma")
    s.add_argument("--c", "--scale", dest="c", default="1", help="comma-separated scale factors")
    s.add_argument("--imax", type=int, default=4)
    s.add_argument("--jmax", type=int, default=5)
    s.add_argument("--kmax", type=int, default=6)
    s.add_argument("--out", default="-")
    s.set_defaults(func=cmd_lemma)

    s = sub.add_parser("build", help="export a construction's tile set and stage scripts")
    s.add_argument("construction", choices=sorted(BUILDERS))
    s.add_argument("--out", required=True)
    s.add_argument("--max-stage", type=int)
    s.set_defaults(func=cmd_build)

    s = sub.add_parser("report", help="CSV and figures for a saved exploration report")
    s.add_argument("--report", required=True)
    s.add_argument("--out-dir", required=True)
    s.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (io.InputError, UsageError, ScriptError, UnknownTileName, PreconditionViolated,
            ValueError, OSError) as e:
        _note(f"error: {e}")
        return EXIT_INPUT
    except (BudgetExceeded, ReportUnsaturated) as e:
        _note(f"budget: {e}")
        return EXIT_BUDGET
    except (StepUnstable, StepOverlap, HandCountExceeded) as e:
        _note(f"failed: {e}")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
