"""Command-line front end: bounds, oracle zeros, Bessel zeros, sweeps, sharpness and spacing."""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from . import bounds as bd
from . import verify as vf
from .errors import ExtremeZerosError, InapplicableError, OracleFailure, SearchFailure
from .families import BesselSpec, GeneralizedHermite, Jacobi, make_spec, ode_coefficients
from .zero_oracle import DEFAULT_TOL, bessel_first_zero, zeros

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2
METHOD_CHOICES = ("closed", "numeric", "resultant", "reference", "all")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _family_args(p, with_k=True):
    p.add_argument("--family", choices=("hermite", "laguerre", "jacobi"), required=True)
    if with_k:
        p.add_argument("--k", type=int, required=True, help="polynomial degree")
    p.add_argument("--mu", type=float, help="generalized Hermite parameter (default 0)")
    p.add_argument("--alpha", type=float, help="Laguerre/Jacobi alpha (default 0)")
    p.add_argument("--beta", type=float, help="Jacobi beta (default 0)")


def _output_args(p):
    p.add_argument("--format", choices=("table", "csv", "json"), default="table")
    p.add_argument("--out", metavar="PATH", help="write output here instead of standard output")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="extreme-zeros", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("bounds", help="bounds on the extreme zeros of one polynomial")
    _family_args(p)
    p.add_argument("--method", choices=METHOD_CHOICES, default="all")
    p.add_argument("--symmetric", action="store_true",
                   help="for Jacobi with alpha < beta, reflect to (beta, alpha) instead of failing")
    _output_args(p)

    p = sub.add_parser("zeros", help="oracle zeros with residual certificates")
    _family_args(p)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    _output_args(p)

    p = sub.add_parser("bessel", help="first positive Bessel zero against its lower bound")
    p.add_argument("--nu", type=float, required=True)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    _output_args(p)

    p = sub.add_parser("verify", help="sweep every bound against the oracle over parameter grids")
    p.add_argument("--suite", choices=sorted(vf.SUITES), default="default")
    p.add_argument("--family", choices=vf.FAMILIES, action="append",
                   help="restrict to a family (repeatable)")
    p.add_argument("--method", choices=METHOD_CHOICES, default="all")
    p.add_argument("--kmax", type=int, help="drop degrees above this")
    _output_args(p)

    p = sub.add_parser("sharpness", help="scaled second-term constants of the largest-zero bounds")
    _family_args(p, with_k=False)
    p.add_argument("--ks", default="10,100,1000,10000", help="comma-separated ascending degrees")
    p.add_argument("--kmax", type=int, help="drop degrees above this")
    p.add_argument("--delta", type=float, help="use parameters delta*k instead of fixed ones")
    _output_args(p)

    p = sub.add_parser("spacing", help="zero-gap lower bounds against oracle gaps")
    _family_args(p)
    p.add_argument("--i", type=int, help="first zero index (0-based); default all consecutive pairs")
    p.add_argument("--j", type=int, help="second zero index (default i+1)")
    _output_args(p)
    return parser


# -- output ------------------------------------------------------------------------


def _cell(v, precise):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format(v, ".17g" if precise else ".10g")
    if isinstance(v, (tuple, list)):
        return ";".join(str(x) for x in v)
    return str(v)


def _json_safe(v):
    if isinstance(v, float) and not math.isfinite(v):
        return None
    if isinstance(v, tuple):
        return list(v)
    return v


def render(rows, columns, fmt) -> str:
    if fmt == "json":
        return json.dumps([{c: _json_safe(r.get(c)) for c in columns} for r in rows], indent=1) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([_cell(r.get(c), True) for c in columns])
        return buf.getvalue()
    cells = [[_cell(r.get(c), False) for c in columns] for r in rows]
    widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip()]
    lines += ["  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() for row in cells]
    return "\n".join(lines) + "\n"


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {out!r}: {exc}") from exc


# -- subcommands ---------------------------------------------------------------------


def _spec(args):
    return make_spec(args.family, mu=args.mu, alpha=args.alpha, beta=args.beta)


def _methods(choice):
    return vf.METHODS if choice == "all" else (choice,)


def cmd_bounds(args):
    spec = _spec(args)
    k = args.k
    p1, p2 = spec.params
    base = {"family": spec.family, "k": k, "param1": p1, "param2": p2}
    reflect = args.symmetric and isinstance(spec, Jacobi)
    rows = []
    for m in _methods(args.method):
        if m == "closed" and isinstance(spec, Jacobi):
            b = (bd.jacobi_bounds_symmetric if reflect else bd.jacobi_bounds)(k, spec.alpha, spec.beta)
        elif m == "closed":
            b = bd.closed_form_bounds(spec, k)
        elif m == "numeric":
            b = bd.numeric_bounds_symmetric(spec, k) if reflect else bd.theorem1_numeric_bounds(spec, k)
        elif m == "resultant":
            if not (isinstance(spec, GeneralizedHermite) and spec.mu == 0.0):
                if args.method == "all":
                    continue
                raise InapplicableError("resultant bound applies to Hermite (mu = 0) only")
            b = bd.ExtremeBounds(None, bd.hermite_resultant_bound(k), bd.RESULTANT)
        else:
            try:
                b = bd.reference_bounds(spec, k)
            except InapplicableError:
                if args.method == "all":
                    continue
                raise
        rows.append({**base, "method": b.method, "lower": b.min_zero_lower, "upper": b.max_zero_upper,
                     "flags": b.flags})
    cols = ("family", "k", "param1", "param2", "method", "lower", "upper", "flags")
    _emit(render(rows, cols, args.format), args.out)
    return EXIT_OK


def cmd_zeros(args):
    zs = zeros(_spec(args), args.k, tol=args.tol)
    rows = [{"index": i, "zero": float(x), "residual": float(r)} for i, (x, r) in enumerate(zip(zs.zeros, zs.residuals))]
    _emit(render(rows, ("index", "zero", "residual"), args.format), args.out)
    return EXIT_OK


def cmd_bessel(args):
    BesselSpec(args.nu)
    bound = bd.bessel_lower_bound(args.nu)
    root = bessel_first_zero(args.nu, args.tol)
    margin = root - bound
    ok = margin > vf.PASS_RTOL * max(1.0, root)
    row = {"nu": args.nu, "bound": bound, "oracle": root, "margin": margin, "pass": ok}
    _emit(render([row], ("nu", "bound", "oracle", "margin", "pass"), args.format), args.out)
    return EXIT_OK if ok else EXIT_FAILED


def cmd_verify(args):
    cfg = vf.SUITES[args.suite]
    changes = {"methods": _methods(args.method)}
    if args.family:
        changes["families"] = tuple(dict.fromkeys(args.family))
    cfg = vf.replace(cfg, **changes)
    if args.kmax is not None:
        cfg = cfg.limited(args.kmax)
    if args.out is not None:
        vf._check_writable(args.out)
    records = vf.run_sweep(cfg)
    failed = [r for r in records if not r.passed]
    if args.format in ("csv", "json"):
        _emit(vf.format_report(records, args.format), args.out)
    else:
        rows = [r.row() for r in records]
        text = render(rows, vf.CSV_COLUMNS, "table")
        text += f"\n{len(records)} records, {len(failed)} failed\n"
        _emit(text, args.out)
    if failed:
        print(f"{len(failed)} of {len(records)} records failed", file=sys.stderr)
    return EXIT_FAILED if failed else EXIT_OK


def cmd_sharpness(args):
    try:
        ks = [int(v) for v in args.ks.split(",") if v.strip()]
    except ValueError:
        raise _UsageError(f"--ks must be comma-separated integers, got {args.ks!r}") from None
    if args.kmax is not None:
        ks = [k for k in ks if k <= args.kmax]
    regime = "fixed" if args.delta is None else "proportional"
    s = vf.sharpness_constants(args.family, regime, ks, mu=args.mu or 0.0, alpha=args.alpha or 0.0,
                               beta=args.beta or 0.0, delta=args.delta)
    rows = []
    for i, k in enumerate(s.k_list):
        rows.append({"k": k, "closed": s.closed[i], "oracle": s.oracle[i], "ratio": s.ratio[i],
                     "resultant": s.resultant[i] if s.resultant else None})
    _emit(render(rows, ("k", "closed", "oracle", "ratio", "resultant"), args.format), args.out)
    if s.flags:
        print("flags: " + ", ".join(s.flags), file=sys.stderr)
    return EXIT_OK


def cmd_spacing(args):
    spec = _spec(args)
    zs = zeros(spec, args.k)
    n = len(zs.zeros)
    if args.i is not None:
        j = args.i + 1 if args.j is None else args.j
        pairs = [(args.i, j)]
    else:
        pairs = [(i, i + 1) for i in range(n - 1)]
    ode = ode_coefficients(spec, args.k)
    rows, failed = [], False
    for i, j in pairs:
        if not 0 <= i < j < n:
            raise _UsageError(f"need 0 <= i < j < {n}, got ({i}, {j})")
        xi, xj = float(zs.zeros[i]), float(zs.zeros[j])
        gap = xj - xi
        row = {"i": i, "j": j, "xi": xi, "xj": xj, "gap": gap}
        try:
            sb = bd.spacing_bounds(ode, xi, xj)
        except InapplicableError:
            row["status"] = "inapplicable"
        else:
            ok = gap >= sb.gap_lower_simple * (j - i) - 1e-12 and gap * gap >= sb.gap_sq_lower * (1 - 1e-12)
            failed |= not ok
            row.update(gap_lower_simple=sb.gap_lower_simple, gap_sq_lower=sb.gap_sq_lower,
                       status="ok" if ok else "violated")
        rows.append(row)
    cols = ("i", "j", "xi", "xj", "gap", "gap_lower_simple", "gap_sq_lower", "status")
    _emit(render(rows, cols, args.format), args.out)
    return EXIT_FAILED if failed else EXIT_OK


COMMANDS = {
    "bounds": cmd_bounds,
    "zeros": cmd_zeros,
    "bessel": cmd_bessel,
    "verify": cmd_verify,
    "sharpness": cmd_sharpness,
    "spacing": cmd_spacing,
}


def main(argv=None) -> int:
    """Run one subcommand; 0 on success, 1 on a failed check, 2 on usage or domain errors."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OracleFailure, SearchFailure) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except (ExtremeZerosError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
