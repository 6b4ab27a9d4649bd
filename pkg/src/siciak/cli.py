"""Command-line front end.

Exit codes: 0 success, 2 validation failure, 3 numerical failure.  Errors
emit a machine-readable JSON object on stderr.  All floating-point output is
printed with 15 significant digits and CSV files use '.' decimals and LF
line endings for byte-identical reruns.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys

import numpy as np

from . import samples as sample_io
from .body import ConvexBody, preimage_body
from .extremal import (NumericalError, compare, oracle_V, pullback_identity,
                       siciak_limsup, siciak_m)
from .lattice import construct_L, smith_normal_form, verify_map
from .poly import SparsePolynomial


def _fmt(x: float) -> str:
    return f"{x:.15g}"


def _write_csv(path: str, header, rows):
    with open(path, "w", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


def _parse_complex_vector(text: str):
    """Parse "re,im,re,im,..." into a complex tuple."""
    parts = [float(p) for p in text.split(",")]
    if len(parts) % 2:
        raise ValueError("expected an even list of re,im values")
    return tuple(complex(parts[2 * i], parts[2 * i + 1])
                 for i in range(len(parts) // 2))


def _load_grid(path: str):
    with open(path) as fh:
        data = json.load(fh)
    return [tuple(complex(c[0], c[1]) for c in z) for z in data]


def _z_columns(n: int):
    cols = []
    for j in range(1, n + 1):
        cols += [f"z_re_{j}", f"z_im_{j}"]
    return cols


def _z_values(z):
    vals = []
    for c in z:
        vals += [_fmt(c.real), _fmt(c.imag)]
    return vals


def cmd_body_show(args):
    S = ConvexBody.load(args.spec)
    dense, witness = S.is_rationally_dense()
    print(f"n = {S.n}")
    print(f"ell = {S.ell}")
    print("vertices:")
    for v in S.vertices:
        print("  (" + ", ".join(repr(c) for c in v) + ")")
    print(f"dense = {str(dense).lower()}")
    print(f"witness = {witness}")
    return 0


def cmd_body_support(args):
    S = ConvexBody.load(args.spec)
    xi = [float(x) for x in args.xi.split(",")]
    print(_fmt(S.support_value(xi)))
    return 0


def cmd_lattice_map(args):
    S = ConvexBody.load(args.spec)
    lat = construct_L(S)
    print("L columns:")
    for col in lat.columns:
        print("  " + str(list(col)))
    print("kernel rows:")
    for row in lat.kernel_rows:
        print("  " + str(list(row)))
    A = [[lat.columns[k][j] for k in range(lat.ell)] for j in range(lat.n)]
    print(f"snf diagonal: {smith_normal_form(A).diagonal}")
    cert = verify_map(lat, S)
    for name, ok in cert.items():
        print(f"check {name}: {'pass' if ok else 'FAIL'}")
    if not all(cert.values()):
        raise NumericalError("certificate violation")
    return 0


def cmd_lattice_snf(args):
    with open(args.matrix) as fh:
        A = json.load(fh)
    snf = smith_normal_form(A)
    print(f"U = {snf.U}")
    print(f"D = {snf.D}")
    print(f"V = {snf.V}")
    return 0


def cmd_map_apply(args):
    S = ConvexBody.load(args.spec)
    lat = construct_L(S)
    w = lat.apply(_parse_complex_vector(args.z))
    print(",".join(f"{_fmt(c.real)},{_fmt(c.imag)}" for c in w))
    return 0


def cmd_map_preimage(args):
    S = ConvexBody.load(args.spec)
    lat = construct_L(S)
    z = lat.solve_preimage(_parse_complex_vector(args.w))
    print(",".join(f"{_fmt(c.real)},{_fmt(c.imag)}" for c in z))
    return 0


def cmd_fibers_check(args):
    S = ConvexBody.load(args.spec)
    lat = construct_L(S)
    z = _parse_complex_vector(args.z)
    rng = random.Random(args.seed)
    base = lat.apply(z)
    worst = 0.0
    for _ in range(args.samples):
        t_pp = tuple(
            math.exp(rng.uniform(-2, 2)) *
            complex(math.cos(a := rng.uniform(0, 2 * math.pi)), math.sin(a))
            for _ in range(lat.n - lat.ell))
        img = lat.apply(lat.fiber_point(z, t_pp))
        dev = max(abs(a - b) / (1 + abs(b)) for a, b in zip(img, base))
        worst = max(worst, dev)
    print(f"max fiber deviation: {_fmt(worst)}")
    if worst > 1e-9:
        raise NumericalError("fiber constancy violated")
    return 0


def cmd_eval(args):
    S = ConvexBody.load(args.spec)
    samples = sample_io.load(args.set)
    grid = _load_grid(args.points)
    rows = []
    for z in grid:
        r = siciak_m(S, samples, args.m, z, args.facets)
        if r.lp_status != "optimal":
            raise NumericalError(f"LP status {r.lp_status}")
        rows.append(_z_values(z) + [str(args.m), _fmt(r.log_phi_raw),
                                    _fmt(r.log_phi_certified), "", ""])
    header = _z_columns(S.n) + ["m", "log_phi_raw", "log_phi_certified",
                                "oracle_V", "err"]
    _write_csv(args.out, header, rows)
    print(f"evaluated {len(rows)} points at m={args.m}")
    return 0


def cmd_compare(args):
    S = ConvexBody.load(args.spec)
    m_list = [int(m) for m in args.m_list.split(",")]
    grid = _load_grid(args.grid)
    case = {"torus": "torus_unweighted",
            "circle": "circle_sigma_constant"}[args.oracle]
    if args.set:
        samples = sample_io.load(args.set)
    elif case == "torus_unweighted":
        samples = sample_io.torus_samples(S.n, weight=args.weight_c)
    else:
        samples = sample_io.circle_samples(weight=args.weight_c)
    table = compare(S, case, m_list, grid, facets=args.facets,
                    samples=samples, weight_c=args.weight_c)
    rows = [_z_values(r["z"]) + [str(r["m"]), _fmt(r["log_phi_raw"]),
                                 _fmt(r["log_phi_certified"]),
                                 _fmt(r["oracle_V"]), _fmt(r["err"])]
            for r in table]
    header = _z_columns(S.n) + ["m", "log_phi_raw", "log_phi_certified",
                                "oracle_V", "err"]
    _write_csv(args.out, header, rows)
    print(f"max |err| = {_fmt(max(abs(r['err']) for r in table))}")
    return 0


def cmd_pullback(args):
    S = ConvexBody.load(args.spec)
    samples = sample_io.load(args.set)
    m_list = [int(m) for m in args.m_list.split(",")]
    grid = _load_grid(args.grid)
    table = pullback_identity(S, samples, m_list, grid, facets=args.facets)
    rows = [_z_values(r["z"]) + [str(r["m"]), _fmt(r["log_phi_S"]),
                                 _fmt(r["log_phi_T"]), _fmt(r["diff"])]
            for r in table]
    header = _z_columns(S.n) + ["m", "log_phi_S", "log_phi_T", "diff"]
    _write_csv(args.out, header, rows)
    print(f"max diff = {_fmt(max(r['diff'] for r in table))}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="siciak",
        description="Exact convex-body gradings and LP Siciak evaluation.")
    sub = parser.add_subparsers(dest="command", required=True)

    body = sub.add_parser("body", help="body inspection").add_subparsers(
        dest="subcommand", required=True)
    p = body.add_parser("show", help="print dimensions, vertices, density")
    p.add_argument("--spec", required=True)
    p.set_defaults(func=cmd_body_show)
    p = body.add_parser("support", help="supporting function value")
    p.add_argument("--spec", required=True)
    p.add_argument("--xi", required=True, help="comma-separated direction")
    p.set_defaults(func=cmd_body_support)

    lat = sub.add_parser("lattice", help="lattice algebra").add_subparsers(
        dest="subcommand", required=True)
    p = lat.add_parser("map", help="construct and certify the lattice map")
    p.add_argument("--spec", required=True)
    p.set_defaults(func=cmd_lattice_map)
    p = lat.add_parser("snf", help="Smith normal form of a JSON matrix")
    p.add_argument("--matrix", required=True)
    p.set_defaults(func=cmd_lattice_snf)

    mp = sub.add_parser("map", help="monomial map").add_subparsers(
        dest="subcommand", required=True)
    p = mp.add_parser("apply")
    p.add_argument("--spec", required=True)
    p.add_argument("--z", required=True, help="re,im pairs")
    p.set_defaults(func=cmd_map_apply)
    p = mp.add_parser("preimage")
    p.add_argument("--spec", required=True)
    p.add_argument("--w", required=True, help="re,im pairs")
    p.set_defaults(func=cmd_map_preimage)

    fib = sub.add_parser("fibers", help="fiber checks").add_subparsers(
        dest="subcommand", required=True)
    p = fib.add_parser("check")
    p.add_argument("--spec", required=True)
    p.add_argument("--z", required=True, help="re,im pairs")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_fibers_check)

    p = sub.add_parser("eval", help="evaluate the degree-m extremal value")
    p.add_argument("--spec", required=True)
    p.add_argument("--set", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--facets", type=int, default=64)
    p.add_argument("--points", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("compare", help="oracle comparison table")
    p.add_argument("--spec", required=True)
    p.add_argument("--oracle", choices=["torus", "circle"], required=True)
    p.add_argument("--m-list", required=True)
    p.add_argument("--grid", required=True)
    p.add_argument("--set", default=None)
    p.add_argument("--facets", type=int, default=64)
    p.add_argument("--weight-c", type=float, default=0.0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("pullback",
                       help="graded-LP identity through the monomial map")
    p.add_argument("--spec", required=True)
    p.add_argument("--set", required=True)
    p.add_argument("--m-list", required=True)
    p.add_argument("--grid", required=True)
    p.add_argument("--facets", type=int, default=64)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_pullback)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "m", 1) < 1:
            raise ValueError("degree must be >= 1")
        if getattr(args, "facets", 8) < 8:
            raise ValueError("facet count must be >= 8")
        return args.func(args)
    except NumericalError as exc:
        json.dump({"error": "numerical", "message": str(exc)}, sys.stderr)
        sys.stderr.write("\n")
        return 3
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        json.dump({"error": "validation", "message": str(exc)}, sys.stderr)
        sys.stderr.write("\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
