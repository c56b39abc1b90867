"""Command-line front end: ``ringcav point`` and ``ringcav sweep``."""

import argparse
import csv
import io
import json
import os
import sys
import time
from pathlib import Path

from . import __version__, backend
from .config import load_config
from .errors import ConfigError
from .params import derive
from .sweep import DEFAULT_QUANTITIES, PAIR_LABELS, evaluate_point, run_sweep

EXIT_OK, EXIT_CONFIG, EXIT_UNSTABLE = 0, 1, 2
POINT_TRIPLES = {"T_m1m2a": "E1", "T_am1op": "E2", "T_m1m2op": "E3"}


def fmt(x):
    return format(x, ".17g")


def _overrides(items):
    out = {}
    for item in items or ():
        if "=" not in item:
            raise ConfigError(item, "override must look like key=value")
        key, value = item.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def cmd_point(args, out=None):
    out = out or sys.stdout
    cfg = load_config(args.config, _overrides(args.set))
    if cfg.sweep is not None:
        raise ConfigError("sweep_axis", "config has a sweep section; use the 'sweep' command")
    p = cfg.params
    d = derive(p)
    quantities = tuple(PAIR_LABELS) + tuple(POINT_TRIPLES)
    res = evaluate_point(p, quantities)
    if args.json:
        report = {
            "derived": {
                "omega_L": d.omega_L, "E_L": d.E_L, "G0": d.G0, "cos2": d.cos2,
                "a_s": [d.a_s.real, d.a_s.imag], "G": d.G, "n_th": d.n_th,
                "N": d.N, "M": [d.M.real, d.M.imag],
            },
            "stable": res.stable,
            "max_real_part": res.max_real_part,
            "values": res.values,
            "lyapunov_residual": res.residual,
            "min_symplectic_eigenvalue": res.min_symplectic,
        }
        json.dump(report, out, indent=2)
        out.write("\n")
    else:
        print("derived parameters:", file=out)
        for name, val in (("omega_L", d.omega_L), ("E_L", d.E_L), ("G0", d.G0), ("cos^2(theta/2)", d.cos2),
                          ("|a_s|", abs(d.a_s)), ("G", d.G), ("G_eff", d.g_eff), ("n_th", d.n_th),
                          ("N", d.N), ("|M|", abs(d.M))):
            print(f"  {name:<16}{val:.10g}", file=out)
        verdict = "stable" if res.stable else "UNSTABLE"
        print(f"stability: {verdict} (max Re eig = {res.max_real_part:.6g} rad/s)", file=out)
        if res.stable:
            print("bipartite log-negativity:", file=out)
            for q in PAIR_LABELS:
                print(f"  {q:<10}{res.values[q]:.10g}", file=out)
            print("tripartite negativity:", file=out)
            for q, short in POINT_TRIPLES.items():
                print(f"  {short} {q:<10}{res.values[q]:.10g}", file=out)
            print(f"lyapunov residual: {res.residual:.3e}", file=out)
            print(f"min symplectic eigenvalue: {res.min_symplectic:.12g}", file=out)
    return EXIT_OK if res.stable else EXIT_UNSTABLE


def render_csv(rows, quantities):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["axis", *quantities, "stable"])
    for row in rows:
        vals = [fmt(row.values[q]) if row.stable else "" for q in quantities]
        w.writerow([fmt(row.axis_value), *vals, "1" if row.stable else "0"])
    return buf.getvalue()


def render_json(rows, spec):
    doc = {
        "axis": spec.axis,
        "quantities": list(spec.quantities),
        "rows": [
            {"axis": r.axis_value, "stable": r.stable, "values": {q: r.values[q] for q in spec.quantities} if r.stable else {}}
            for r in rows
        ],
    }
    return json.dumps(doc, indent=1) + "\n"


def manifest_path(out_path):
    p = Path(out_path)
    return p.with_name(p.stem + ".manifest.json")


def cmd_sweep(args, out=None):
    out = out or sys.stdout
    overrides = _overrides(args.set)
    if args.format:
        overrides["output_format"] = args.format
    cfg = load_config(args.config, overrides)
    if cfg.sweep is None:
        raise ConfigError("sweep_axis", "no sweep section in config")
    out_path = args.out or cfg.output_path
    if not out_path:
        raise ConfigError("output_path", "no output path (use --out or output_path)")
    cfg.resolved["output_path"] = str(out_path)
    cfg.resolved["output_format"] = cfg.output_format
    spec = cfg.sweep

    t0 = time.perf_counter()
    rows = run_sweep(spec, workers=cfg.sweep_workers)
    duration = time.perf_counter() - t0

    body = render_csv(rows, spec.quantities) if cfg.output_format == "csv" else render_json(rows, spec)
    manifest = {
        "artifact": "ringcav",
        "version": __version__,
        "backend": backend,
        "config": cfg.resolved,
        "params_si": {k: v for k, v in vars(cfg.params).items()},
        "grid": {
            "axis": spec.axis, "min": spec.min, "max": spec.max, "count": spec.count,
            "scale": spec.scale, "normalize_axis": spec.normalize_axis,
            "points": [fmt(x) for x in spec.grid()],
        },
        "quantities": list(spec.quantities),
        "stable_points": sum(r.stable for r in rows),
        "duration_s": duration,
    }
    try:
        Path(out_path).write_text(body)
        manifest_path(out_path).write_text(json.dumps(manifest, indent=2) + "\n")
    except OSError as exc:
        raise ConfigError("output_path", f"cannot write {out_path}: {exc.strerror or exc}") from None
    print(f"wrote {len(rows)} rows to {out_path} ({manifest['stable_points']} stable, {duration:.3f} s)", file=out)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="ringcav", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__} ({backend} kernels)")
    sub = parser.add_subparsers(dest="command", required=True)

    pp = sub.add_parser("point", help="evaluate one parameter set")
    pp.add_argument("--config", help="flat key = value file or a sweep manifest (defaults if omitted)")
    pp.add_argument("--set", action="append", metavar="KEY=VALUE", help="override a config key")
    pp.add_argument("--json", action="store_true", help="machine-readable report")
    pp.set_defaults(func=cmd_point)

    sp = sub.add_parser("sweep", help="run a one-dimensional sweep")
    sp.add_argument("--config", required=True)
    sp.add_argument("--out", help="output file; the manifest goes next to it")
    sp.add_argument("--format", choices=("csv", "json"))
    sp.add_argument("--set", action="append", metavar="KEY=VALUE")
    sp.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
