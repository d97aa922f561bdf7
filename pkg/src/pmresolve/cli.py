"""Command line interface.

Exit codes: 0 success, 2 schema error, 3 validation error, 4 state cap
exceeded, 5 internal invariant or verification failure.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import io
from .complex_core import orient, validate
from .errors import CapExceeded, ResolveError
from .labeling import verify_good


def _print(obj):
    sys.stdout.write(io.dumps(obj))


def cmd_validate(args):
    cf = io.parse(args.input)
    k = cf.complex()
    rep = validate(k)
    signs = orient(k)
    _print({"valid": True, "orientable": True, "ridge_degrees": rep.ridge_degrees,
            "singular_faces": [list(f) for f in rep.singular_faces],
            "partial_faces": [list(f) for f in rep.partial_faces],
            "orientation": list(signs)})
    return 0


def cmd_label(args):
    from .pipeline import prepare

    cf = io.parse(args.input)
    if args.coloring:
        with open(args.coloring, encoding="utf-8") as fh:
            data = json.load(fh)
        cf.coloring = data["coloring"] if isinstance(data, dict) else data
    pm, lab, prov, _ = prepare(cf)
    rep = verify_good(pm, lab)
    out = io.ComplexFile.from_pm(pm, labels=dict(lab.labels)).to_dict()
    out["provenance"] = prov
    out["good"] = rep.good
    if args.output:
        io.emit(out, args.output)
    else:
        _print(out)
    return 0 if rep.good else 5


def cmd_resolve(args):
    from .pipeline import (RunConfig, base_coordinates, census_section, export_cubes,
                           failed, off_mesh, prepare, resolve, run_report)

    cf = io.parse(args.input)
    pm, lab, prov, origin = prepare(cf)
    config = RunConfig(args.seed_flag, args.max_states, args.census)
    flags = config.as_flags()
    seeds = [args.seed_flag]
    if args.all_from:
        with open(args.all_from, encoding="utf-8") as fh:
            seeds = list(json.load(fh))
        flags["all_from"] = seeds
    try:
        runs = []
        seen = set()
        resolver = None
        for seed in seeds:
            res = resolve(pm, lab, prov, seed_flag=seed, max_states=args.max_states,
                          resolver=resolver)
            resolver = res.resolver
            res.origin = origin
            first = res.comp.states[0]
            if first in seen:
                continue
            seen.update(res.comp.states)
            runs.append(res)
    except CapExceeded as e:
        partial = e.partial
        sys.stderr.write(f"CapExceeded: explored {len(partial.states)} states "
                         f"(cap {e.cap})\n")
        _print({"schema": io.REPORT_SCHEMA, "error": "CapExceeded", "cap": e.cap,
                "explored": len(partial.states), "flags": flags})
        return e.exit_code
    res = runs[0]
    census = census_section(res) if config.census else None
    report = run_report(cf, res, flags, census)
    if len(runs) > 1:
        report["additional_components"] = [r.summary() for r in runs[1:]]
    if args.export:
        io.emit(export_cubes(res), args.export)
    if args.export_off:
        io.write_text(off_mesh(res, base_coordinates(cf, res)), args.export_off)
    if args.report:
        io.emit(report, args.report)
    else:
        _print(report)
    bad = [f for r in runs for f in failed(r)]
    if bad:
        sys.stderr.write(f"verification failed: {sorted(set(bad))}\n")
        return 5
    return 0


def cmd_verify(args):
    from .pipeline import verify_export

    with open(args.input, encoding="utf-8") as fh:
        data = json.load(fh)
    out = verify_export(data)
    _print(out)
    v = out["verdicts"]
    ok = out["match"] and v["manifold"] and v["orientable"] and v["degree_consistent"]
    return 0 if ok else 5


def cmd_census(args):
    from .census import census_match
    from .errors import PatternMismatch

    cf = io.parse(args.manifold)
    pm = cf.pseudomanifold()
    ys = io.parse_prescription(args.prescription)
    try:
        rep = census_match(pm.complex, ys, pm.orientation)
    except PatternMismatch as e:
        out = e.report.as_dict()
        out["mismatch"] = True
        _print(out)
        return e.exit_code
    _print(rep.as_dict())
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="pmresolve", description=(
        "Resolve singularities of oriented simplicial pseudo-manifolds by a "
        "cube-complex construction."))
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="pseudo-manifold and orientation checks")
    v.add_argument("input")
    v.set_defaults(func=cmd_validate)

    lab = sub.add_parser("label", help="write a good labeling (subdividing if needed)")
    lab.add_argument("input")
    lab.add_argument("--coloring", help="JSON list (or {'coloring': [...]}) of vertex colors")
    lab.add_argument("-o", "--output")
    lab.set_defaults(func=cmd_label)

    r = sub.add_parser("resolve", help="run the full pipeline and print a report")
    r.add_argument("input")
    r.add_argument("--seed-flag", type=int, default=None,
                   help="index into the lexicographic flag list (default: smallest)")
    r.add_argument("--max-states", type=int, default=1_000_000)
    r.add_argument("--all-from", help="JSON list of seed flag indices")
    r.add_argument("--export", help="write the cube list JSON here")
    r.add_argument("--export-off", help="write an OFF mesh here (n = 2 only)")
    r.add_argument("--report", help="write the report here instead of stdout")
    r.add_argument("--census", action="store_true",
                   help="add a vertex-link census of M's order complex")
    r.set_defaults(func=cmd_resolve)

    ver = sub.add_parser("verify", help="re-check an exported cube list")
    ver.add_argument("input")
    ver.set_defaults(func=cmd_verify)

    c = sub.add_parser("census", help="match vertex links against a prescription")
    c.add_argument("manifold")
    c.add_argument("prescription")
    c.set_defaults(func=cmd_census)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ResolveError as e:
        sys.stderr.write(f"{type(e).__name__}: {e}\n")
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
