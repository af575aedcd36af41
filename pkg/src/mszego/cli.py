"""Command-line front end producing reproducible CSV/JSON/SVG artifacts.

Subcommands
-----------
validate   check a configuration document
levels     solve the level structure, print it as JSON
curve      trace the region-boundary curve to CSV (and optional SVG)
asymp      evaluate the asymptotic formulas on a grid or point list
fc         tabulate the truncated-exponential function on a grid
fc-zeros   locate zeros of its entire companion in a box
oracle     build the exact polynomial, dump its roots
compare    asymptotics vs oracle error table plus root-curve distances

Every command writes a run manifest next to its outputs.  CSV files are
byte-deterministic: fixed column order, row order, and shortest
round-trip float formatting.

Exit codes: 0 ok, 2 invalid configuration, 3 non-generic configuration,
4 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from . import __version__
from .asym import build_model
from .branches import OnCut
from .core import ConfigError, load_config
from .oracle import (IllConditioned, NoConvergence, QuadratureNotConverged,
                     exact_moments, monic_op, orthogonality_residuals,
                     quad_moments, root_curve_distance, roots, poly_eval)
from .specfun import ContourThroughZero, FcEvaluator, zeros_E_c
from .szego import DegenerateArc, NonGeneric, solve_structure, trace_curve

EXIT_OK = 0
EXIT_BAD_CONFIG = 2
EXIT_NON_GENERIC = 3
EXIT_NUMERICAL = 4


def _fmt(x: float) -> str:
    """Shortest round-trip decimal form (never more than 17 digits)."""
    return repr(float(x))


def _write_csv(path: str, header: list[str], rows) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) if isinstance(v, float) else str(v)
                              for v in row) + "\n")


def _write_manifest(out_path: str, args, outputs: list[str], t0: float) -> None:
    doc = {
        "command": args.command,
        "config": getattr(args, "config", None),
        "parameters": {k: v for k, v in sorted(vars(args).items())
                       if k not in ("command", "func")},
        "outputs": sorted(outputs),
        "tool_version": __version__,
        "wall_time_s": time.time() - t0,
    }
    with open(out_path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True, default=str)
        fh.write("\n")


def _svg_plot(path: str, arcs, dots=(), extent: float = 1.2) -> None:
    """Static plot: one polyline per arc, small circles for dots."""
    palette = ["#d95f02", "#1b9e77", "#7570b3", "#e7298a", "#66a61e", "#e6ab02"]
    size = 800
    sc = size / (2 * extent)

    def xy(z):
        return (z.real + extent) * sc, (extent - z.imag) * sc

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
        f'<circle cx="{size/2}" cy="{size/2}" r="{sc}" fill="none" '
        'stroke="#bbbbbb" stroke-dasharray="4 4"/>',
    ]
    for i, arc in enumerate(arcs):
        color = palette[i % len(palette)]
        pts = " ".join(f"{xy(p)[0]:.2f},{xy(p)[1]:.2f}" for p in arc.points)
        parts.append(f'<polyline points="{pts}" fill="none" stroke="{color}" '
                     'stroke-width="1.5"/>')
    for z in dots:
        x, y = xy(z)
        parts.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="2.5" fill="#2166ac"/>')
    parts.append("</svg>")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(parts) + "\n")


def _json_complex(z: complex) -> list[float]:
    return [z.real, z.imag]


# -- subcommand implementations ---------------------------------------------


def cmd_validate(args) -> int:
    cfg = load_config(args.config)
    print(json.dumps({"ok": True, "nu": cfg.nu, "n": cfg.n, "N": cfg.N,
                      "a": [_json_complex(z) for z in cfg.a], "c": list(cfg.c)},
                     sort_keys=True))
    return EXIT_OK


def cmd_levels(args) -> int:
    t0 = time.time()
    cfg = load_config(args.config)
    structure = solve_structure(cfg)
    model = build_model(cfg, structure)
    doc = {
        "L": list(structure.L),
        "ell": [_json_complex(v) for v in structure.ell],
        "chains": [list(ch) for ch in structure.chains],
        "levels": list(structure.levels),
        "chain_constants": [_json_complex(v) for v in model.chain_const],
        "generic": list(structure.generic),
        "empty_regions": list(structure.empty_regions),
    }
    text = json.dumps(doc, indent=2, sort_keys=True)
    print(text)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        _write_manifest(args.out + ".manifest.json", args, [args.out], t0)
    return EXIT_OK


def cmd_curve(args) -> int:
    t0 = time.time()
    cfg = load_config(args.config)
    structure = solve_structure(cfg)
    curve = trace_curve(structure, grid=args.grid, tol=args.tol)
    rows = []
    for i, arc in enumerate(curve.arcs):
        for p in arc.points:
            rows.append((i, arc.j, arc.k, float(p.real), float(p.imag)))
    _write_csv(args.out, ["arc_id", "j", "k", "re", "im"], rows)
    outputs = [args.out]
    if args.svg:
        _svg_plot(args.svg, curve.arcs, dots=cfg.a)
        outputs.append(args.svg)
    _write_manifest(args.out + ".manifest.json", args, outputs, t0)
    print(f"{len(curve.arcs)} arcs, {len(rows)} points, "
          f"{len(curve.triple_points)} junction cells")
    return EXIT_OK


def _asymp_points(args, cfg):
    if args.points:
        pts = []
        with open(args.points, "r", encoding="utf-8") as fh:
            header = fh.readline()
            for line in fh:
                parts = line.strip().split(",")
                if len(parts) >= 2:
                    pts.append(complex(float(parts[0]), float(parts[1])))
        return pts
    g = args.grid
    xs = np.linspace(-args.extent, args.extent, g)
    return [complex(x, y) for x in xs for y in xs]


def cmd_asymp(args) -> int:
    t0 = time.time()
    cfg = load_config(args.config)
    model = build_model(cfg)
    pts = _asymp_points(args, cfg)
    rows = []
    for z in pts:
        label = model.classify(z)
        try:
            if args.mode == "region":
                v = model.eval_region(z, label)
            elif args.mode == "uniform":
                v = model.eval_uniform(z, tau=args.tau)
            else:
                j = min(range(1, cfg.nu + 1), key=lambda i: abs(z - cfg.a[i - 1]))
                v = model.eval_local(z, j)
        except (OnCut, ValueError, ZeroDivisionError):
            continue  # cut rays and the origin are skipped, not padded
        rows.append((float(z.real), float(z.imag), float(v.real), float(v.imag),
                     label, args.mode))
    _write_csv(args.out, ["re", "im", "value_re", "value_im", "label",
                          "formula_used"], rows)
    _write_manifest(args.out + ".manifest.json", args, [args.out], t0)
    print(f"{len(rows)} points evaluated ({args.mode})")
    return EXIT_OK


def cmd_fc(args) -> int:
    t0 = time.time()
    ev = FcEvaluator(args.c)
    xs = np.linspace(-args.extent, args.extent, args.grid)
    rows = []
    for x in xs:
        for y in xs:
            z = complex(x, y)
            if z.imag == 0.0 and z.real <= 0.0:
                continue
            v = ev.f(z)
            rows.append((float(x), float(y), float(v.real), float(v.imag)))
    _write_csv(args.out, ["re", "im", "f_re", "f_im"], rows)
    _write_manifest(args.out + ".manifest.json", args, [args.out], t0)
    print(f"{len(rows)} samples of the truncated exponential (c={args.c})")
    return EXIT_OK


def cmd_fc_zeros(args) -> int:
    t0 = time.time()
    ev = FcEvaluator(args.c)
    zs = zeros_E_c(args.c, tuple(args.box), tol=args.tol)
    rows = [(float(z.real), float(z.imag), float(abs(ev.entire(z)))) for z in zs]
    _write_csv(args.out, ["re", "im", "abs_Ec"], rows)
    _write_manifest(args.out + ".manifest.json", args, [args.out], t0)
    print(f"{len(zs)} zeros in box {args.box}")
    return EXIT_OK


def _oracle_poly(cfg, degree, method):
    run_cfg = cfg.replace_degree(degree, cfg.N) if degree != cfg.n else cfg
    if method == "exact":
        moments = exact_moments(run_cfg)
    else:
        moments = quad_moments(run_cfg)
    poly = monic_op(moments, degree)
    return run_cfg, moments, poly


def cmd_oracle(args) -> int:
    t0 = time.time()
    cfg = load_config(args.config)
    degree = args.degree if args.degree is not None else cfg.n
    run_cfg, moments, poly = _oracle_poly(cfg, degree, args.method)
    rts, resid = roots(poly)
    rows = [(float(r.real), float(r.imag), float(q)) for r, q in zip(rts, resid)]
    _write_csv(args.out, ["re", "im", "residual"], rows)
    outputs = [args.out]
    if args.moments_out:
        doc = {"method": moments.method, "size": moments.size,
               "entries": [[_json_complex(v) for v in row]
                           for row in moments.entries.tolist()]}
        with open(args.moments_out, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, sort_keys=True)
            fh.write("\n")
        outputs.append(args.moments_out)
    _write_manifest(args.out + ".manifest.json", args, outputs, t0)
    ortho = float(orthogonality_residuals(moments, poly).max()) if degree else 0.0
    print(json.dumps({"degree": degree, "h_n": poly.h_n,
                      "max_orthogonality_residual": ortho,
                      "cond_estimate": poly.cond_estimate}, sort_keys=True))
    return EXIT_OK


def cmd_compare(args) -> int:
    t0 = time.time()
    cfg = load_config(args.config)
    degree = args.degree if args.degree is not None else cfg.n
    run_cfg = cfg.replace_degree(degree)
    structure = solve_structure(run_cfg)
    model = build_model(run_cfg, structure)
    _, moments, poly = _oracle_poly(run_cfg, degree, args.method)

    # sample ring in the outer region plus the deepest grid node per region
    from .szego import _plane_values, classify_many

    samples = [1.5 * np.exp(1j * (0.2 + 2 * np.pi * k / 8)) for k in range(8)]
    xs = np.linspace(-0.95, 0.95, 61)
    Z = np.array([[complex(x, y) for y in xs] for x in xs])
    labels = classify_many(Z, run_cfg, structure.L)
    for j in range(1, run_cfg.nu + 1):
        mask = labels == j
        if not mask.any():
            continue
        # deepest point: maximize the margin over the runner-up plane
        best, best_margin = None, -np.inf
        for z in Z[mask].ravel():
            pv = _plane_values(z, run_cfg.a, structure.L)
            margin = pv[j] - max(v for i, v in enumerate(pv) if i != j)
            if margin > best_margin:
                best, best_margin = z, margin
        samples.append(best)

    rows = []
    for z in samples:
        z = complex(z)
        label = model.classify(z)
        try:
            approx = model.eval_region(z, label)
        except OnCut:
            continue
        exact = poly_eval(poly, z)
        rel = abs(approx - exact) / abs(exact) if exact != 0 else float("inf")
        rows.append((float(z.real), float(z.imag), label,
                     float(exact.real), float(exact.imag),
                     float(approx.real), float(approx.imag), float(rel)))
    _write_csv(args.out, ["re", "im", "label", "oracle_re", "oracle_im",
                          "asymp_re", "asymp_im", "rel_err"], rows)

    curve = trace_curve(structure, grid=args.grid, tol=1e-8)
    rts, _ = roots(poly)
    excl = max(model.disk_radius(j) for j in range(1, run_cfg.nu + 1))
    summary = root_curve_distance(rts, curve, excl, centers=run_cfg.a)
    _write_manifest(args.out + ".manifest.json", args, [args.out], t0)
    print(json.dumps({
        "degree": degree,
        "max_rel_err": max(r[-1] for r in rows),
        "root_curve_distance": {"max": summary.max, "mean": summary.mean,
                                "count": summary.count},
    }, sort_keys=True))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mszego", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a configuration document")
    p.add_argument("config")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("levels", help="solve levels, chains and constants")
    p.add_argument("config")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_levels)

    p = sub.add_parser("curve", help="trace the region-boundary curve")
    p.add_argument("config")
    p.add_argument("--grid", type=int, default=400)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--out", required=True)
    p.add_argument("--svg", default=None)
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("asymp", help="evaluate asymptotic formulas")
    p.add_argument("config")
    p.add_argument("--mode", choices=["region", "uniform", "local"],
                   default="region")
    p.add_argument("--points", default=None, help="CSV of re,im sample points")
    p.add_argument("--grid", type=int, default=41)
    p.add_argument("--extent", type=float, default=1.2)
    p.add_argument("--tau", type=float, default=40.0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_asymp)

    p = sub.add_parser("fc", help="tabulate the truncated exponential")
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--grid", type=int, default=41)
    p.add_argument("--extent", type=float, default=10.0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_fc)

    p = sub.add_parser("fc-zeros", help="zeros of the entire companion")
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--box", type=float, nargs=4, required=True,
                   metavar=("X0", "X1", "Y0", "Y1"))
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_fc_zeros)

    p = sub.add_parser("oracle", help="exact polynomial and its roots")
    p.add_argument("config")
    p.add_argument("--degree", type=int, default=None)
    p.add_argument("--method", choices=["exact", "quad"], default="exact")
    p.add_argument("--out", required=True)
    p.add_argument("--moments-out", default=None)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("compare", help="asymptotics vs oracle error table")
    p.add_argument("config")
    p.add_argument("--degree", type=int, default=None)
    p.add_argument("--method", choices=["exact", "quad"], default="exact")
    p.add_argument("--grid", type=int, default=300)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_compare)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return EXIT_BAD_CONFIG
    except NonGeneric as exc:
        print(f"non-generic configuration: {exc}", file=sys.stderr)
        if exc.report:
            print(json.dumps(exc.report, sort_keys=True, default=str),
                  file=sys.stderr)
        return EXIT_NON_GENERIC
    except (QuadratureNotConverged, IllConditioned, NoConvergence,
            ContourThroughZero, DegenerateArc, OnCut) as exc:
        print(f"numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    raise SystemExit(main())
