"""harmshear command line.

Exit codes: 0 success, 1 a verification failed, 2 usage error, 3 I/O error.
"""

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction

import numpy as np

from . import __version__
from .mappings import MAX_RADIUS, NAMES, MobiusDilatation, ParamOutOfRange, catalog, polar_grid
from .series import TruncatedSeries, as_fraction, binomial_expand, mobius_series
from .shear import BadDilatation, BadTarget, ShearProblem, shear
from .verify import TAGS, IncompatibleTag, check_bounds, dilatation_scan, jacobian_scan, sharpness_gap

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3
MAX_NMAX = 10000

# options whose values may legitimately start with '-'
_SIGNED_OPTS = ("--param", "--mobius", "--a", "--scale")


class UsageError(Exception):
    pass


def fmt_exact(x):
    return str(Fraction(x))


def fmt_float(x):
    x = float(x) + 0.0
    return np.format_float_positional(x, unique=True, trim="0")


def scalar_json(x, exact):
    if isinstance(x, complex):
        return [x.real, x.imag]
    return fmt_exact(x) if exact else float(x)


def parse_rational(text):
    try:
        return as_fraction(text)
    except (ValueError, ZeroDivisionError, TypeError):
        raise UsageError(f"not a rational number: {text!r}")


def _envelope(command, mode, payload):
    return {"toolVersion": __version__, "command": command, "mode": mode, "payload": payload}


def _emit_json(obj, out):
    out.write(json.dumps(obj, indent=2) + "\n")


def _emit_csv(header, rows, out):
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)


def _spec(args):
    param = None if args.param is None else parse_rational(args.param)
    try:
        return catalog(args.map, param)
    except ParamOutOfRange as e:
        raise UsageError(str(e))


def cmd_coeffs(args, out):
    if not 1 <= args.nmax <= MAX_NMAX:
        raise UsageError(f"--nmax must be in 1..{MAX_NMAX}")
    spec = _spec(args)
    exact = args.mode == "exact"
    rows = spec.coefficients(args.nmax)
    if args.format == "csv":
        fmt = fmt_exact if exact else fmt_float
        _emit_csv(["n", "a_n", "b_n"], [(n, fmt(a), fmt(b)) for n, a, b in rows], out)
    else:
        payload = {
            "map": spec.name,
            "param": None if spec.param is None else fmt_exact(spec.param),
            "nmax": args.nmax,
            "rows": [{"n": n, "a": scalar_json(a, exact), "b": scalar_json(b, exact)}
                     for n, a, b in rows],
        }
        _emit_json(_envelope("coeffs", args.mode, payload), out)
    return EXIT_OK


def _report_payload(report, exact):
    s = lambda x: scalar_json(x, exact)
    return {
        "map": report.map_name,
        "param": None if report.param is None else fmt_exact(report.param),
        "conjecture": report.tag,
        "label": report.label,
        "boundA": None if report.bound_a is None else fmt_exact(report.bound_a),
        "passed": report.passed,
        "zeroSlack": report.zero_slack,
        "rows": [
            {"n": r.n, "absA": s(r.abs_a), "aBound": s(r.a_bound), "aSlack": s(r.a_slack),
             "absB": s(r.abs_b), "bBound": s(r.b_bound), "bSlack": s(r.b_slack),
             "verdict": r.verdict}
            for r in report.rows
        ],
    }


def cmd_verify(args, out):
    if not 2 <= args.nmax <= MAX_NMAX:
        raise UsageError(f"--nmax must be in 2..{MAX_NMAX}")
    spec = _spec(args)
    exact = args.mode == "exact"
    a = None if args.a is None else parse_rational(args.a)
    try:
        report = check_bounds(spec, args.conjecture, args.nmax, a=a, exact=exact)
    except IncompatibleTag as e:
        raise UsageError(str(e))
    payload = _report_payload(report, exact)
    ok = report.passed
    if args.scan_jacobian:
        scan = jacobian_scan(spec, threads=args.threads)
        dmax = dilatation_scan(spec, threads=args.threads)
        scan_ok = scan.min_jacobian > 0 and dmax < 1
        payload["jacobianScan"] = {
            "radii": 24, "angles": 360,
            "minJacobian": scan.min_jacobian,
            "argmin": [scan.argmin.real, scan.argmin.imag],
            "maxDilatation": dmax,
            "passed": scan_ok,
        }
        ok = ok and scan_ok
    _emit_json(_envelope("verify", args.mode, payload), out)
    return EXIT_OK if ok else EXIT_FAIL


def _read_series_file(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise OSError(f"cannot read series file {path}: {e}")
    try:
        data = json.loads(text)
        if isinstance(data, dict):
            data = data["coeffs"]
        if not isinstance(data, list) or not data:
            raise ValueError("expected a non-empty list of coefficients")
        return TruncatedSeries(tuple(as_fraction(c) for c in data))
    except (ValueError, KeyError, TypeError, ZeroDivisionError) as e:
        raise UsageError(f"malformed series file {path}: {e}")


def _parse_mobius(text):
    try:
        alpha, beta = text.split(",")
        alpha, beta = parse_rational(alpha), int(beta)
    except ValueError:
        raise UsageError(f"--mobius expects 'alpha,beta', got {text!r}")
    try:
        return MobiusDilatation(alpha, beta)
    except ValueError as e:
        raise UsageError(str(e))


def cmd_shear(args, out):
    if not 1 <= args.nmax <= MAX_NMAX:
        raise UsageError(f"--nmax must be in 1..{MAX_NMAX}")
    d = _parse_mobius(args.mobius)
    scale = parse_rational(args.scale)
    n = args.nmax
    if args.target == "koebe":
        F = binomial_expand(2, n - 1).shifted()
    elif args.target == "halfplane":
        F = binomial_expand(1, n - 1).shifted()
    else:
        if not args.series_file:
            raise UsageError("--target series-file needs --series-file PATH")
        F = _read_series_file(args.series_file)
        n = min(n, F.order)
        if n < 1:
            raise UsageError("series file must hold at least c_0 and c_1")
        F = F.truncate(n)
    F = F.scale(scale)
    omega = mobius_series(d, n)
    phi = 0.0 if args.phi == "0" else math.pi / 2
    exact = args.mode == "exact"
    if not exact:
        F, omega = F.to_float(), omega.to_float()
    try:
        result = shear(ShearProblem(F, omega, phi))
    except (BadTarget, BadDilatation) as e:
        raise UsageError(str(e))
    s = lambda x: scalar_json(x, exact)
    payload = {
        "target": args.target,
        "scale": fmt_exact(scale),
        "mobius": {"alpha": fmt_exact(d.alpha), "beta": d.beta},
        "phi": args.phi,
        "nmax": n,
        "h": [s(c) for c in result.h],
        "g": [s(c) for c in result.g],
        "residual": s(result.residual) if exact else float(result.residual),
    }
    _emit_json(_envelope("shear", args.mode, payload), out)
    return EXIT_OK


def grid_radii(count, radius_list=None):
    if radius_list:
        try:
            radii = [float(r) for r in radius_list.split(",")]
        except ValueError:
            raise UsageError(f"bad --radius-list {radius_list!r}")
    else:
        if count < 1:
            raise UsageError("--radii must be at least 1")
        radii = [i / (count + 1) for i in range(1, count + 1)]
    if any(not 0 <= r <= MAX_RADIUS for r in radii):
        raise UsageError(f"radii must lie in [0, {MAX_RADIUS}]")
    return radii


def grid_rows(spec, radii, angles, threads=1):
    """x, y, u, v, jacobian rows; radius-major, then angle."""
    z = polar_grid(radii, angles).ravel()
    spans = np.array_split(np.arange(z.size), max(1, min(threads, z.size)))

    def work(idx):
        zz = z[idx]
        return spec.f(zz), spec.jacobian(zz)

    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(work, spans))
    else:
        parts = [work(idx) for idx in spans]
    f = np.concatenate([p[0] for p in parts])
    J = np.concatenate([p[1] for p in parts])
    return [
        tuple(fmt_float(v) for v in (zk.real, zk.imag, fk.real, fk.imag, jk))
        for zk, fk, jk in zip(z, f, J)
    ]


def cmd_grid(args, out):
    if args.angles < 1:
        raise UsageError("--angles must be at least 1")
    spec = _spec(args)
    radii = grid_radii(args.radii, args.radius_list)
    rows = grid_rows(spec, radii, args.angles, threads=args.threads)
    buf = io.StringIO()
    _emit_csv(["x", "y", "u", "v", "jacobian"], rows, buf)
    if args.out in (None, "-"):
        out.write(buf.getvalue())
        return EXIT_OK
    try:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
    except OSError as e:
        print(f"error: cannot write {args.out}: {e}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def sharpness_rows(n, steps):
    """Rows (a, |a_n(k_a)|, (2n^2+1)/3, gap) on a_j = -1 + 2j/(steps+1)."""
    bound = Fraction(2 * n * n + 1, 3)
    rows = []
    for j in range(1, steps + 1):
        a = Fraction(-1) + Fraction(2 * j, steps + 1)
        gap = sharpness_gap(n, a)
        rows.append((a, bound - gap, bound, gap))
    return rows


def cmd_scan(args, out):
    if not args.sharpness:
        raise UsageError("scan needs --sharpness")
    if args.n < 2 or args.a_steps < 2:
        raise UsageError("--n and --a-steps must be at least 2")
    rows = sharpness_rows(args.n, args.a_steps)
    exact = args.mode == "exact"
    if args.format == "csv":
        fmt = fmt_exact if exact else fmt_float
        _emit_csv(["a", "abs_a_n", "bound", "gap"], [tuple(fmt(x) for x in r) for r in rows], out)
    else:
        s = lambda x: scalar_json(x, exact)
        payload = {
            "n": args.n,
            "aSteps": args.a_steps,
            "rows": [{"a": s(a), "absA": s(an), "bound": s(b), "gap": s(gap)}
                     for a, an, b, gap in rows],
        }
        _emit_json(_envelope("scan", args.mode, payload), out)
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser():
    p = _Parser(prog="harmshear", description="Shear construction and coefficient bounds for harmonic maps.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, default_mode):
        sp.add_argument("--threads", type=int, default=1)
        if default_mode:
            sp.add_argument("--mode", choices=("exact", "float"), default=default_mode)

    def map_args(sp):
        sp.add_argument("--map", required=True, choices=NAMES)
        sp.add_argument("--param")

    sp = sub.add_parser("coeffs", help="signed Taylor coefficients a_n, b_n")
    map_args(sp)
    sp.add_argument("--nmax", type=int, default=10)
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    common(sp, "exact")
    sp.set_defaults(func=cmd_coeffs)

    sp = sub.add_parser("verify", help="check coefficient bounds")
    map_args(sp)
    sp.add_argument("--conjecture", required=True, choices=TAGS)
    sp.add_argument("--nmax", type=int, default=50)
    sp.add_argument("--a", help="explicit a for the improved bound (report becomes parametric)")
    sp.add_argument("--scan-jacobian", action="store_true")
    common(sp, "exact")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("shear", help="shear an analytic target")
    sp.add_argument("--target", choices=("koebe", "halfplane", "series-file"), default="koebe")
    sp.add_argument("--series-file")
    sp.add_argument("--scale", default="1")
    sp.add_argument("--mobius", default="0,1", help="alpha,beta with beta in {-1,0,+1}")
    sp.add_argument("--phi", choices=("0", "pi/2"), default="0")
    sp.add_argument("--nmax", type=int, default=10)
    common(sp, "exact")
    sp.set_defaults(func=cmd_shear)

    sp = sub.add_parser("grid", help="CSV of f and J_f on a polar grid")
    map_args(sp)
    sp.add_argument("--radii", type=int, default=24, help="R radii i/(R+1), i = 1..R")
    sp.add_argument("--radius-list", help="explicit comma-separated radii (overrides --radii)")
    sp.add_argument("--angles", type=int, default=360)
    sp.add_argument("--out")
    common(sp, None)
    sp.set_defaults(func=cmd_grid, mode="float")

    sp = sub.add_parser("scan", help="sharpness gap of the S_H bound along k_a")
    sp.add_argument("--sharpness", action="store_true")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--a-steps", type=int, required=True)
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    common(sp, "exact")
    sp.set_defaults(func=cmd_scan)
    return p


def _join_signed(argv):
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _SIGNED_OPTS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = build_parser().parse_args(_join_signed(argv))
        if args.threads < 1:
            raise UsageError("--threads must be at least 1")
        return args.func(args, out)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
