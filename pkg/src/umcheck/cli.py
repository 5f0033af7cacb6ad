"""Command-line entry point: ``umcheck <subcommand> [flags]``.

Exit codes: 0 success or certified, 1 the computation ran but verification
failed or nothing was certified, 2 invalid input.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys

import numpy as np

from . import counterexample as cx
from . import series as ser
from . import umclass as um
from .errors import InvalidRegime, NoSignChange, OutsideWindow
from .schur import BlaschkeProduct, Constant, NegatedMobius, SchurFunction, TaylorSchur
from .search import BOUND_TOL, probe_a3, probe_bn, probe_proved_bounds

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2
CURVE_POINTS = 200


def parse_omega(text: str) -> SchurFunction:
    """Parse ``const:re,im``, ``negmob:a``, ``blaschke:theta;re,im;...``, ``taylor:c0,c1,...``."""
    kind, _, body = text.partition(":")
    kind = kind.strip().lower()
    try:
        if kind == "const":
            parts = [float(x) for x in body.split(",")]
            if len(parts) not in (1, 2):
                raise ValueError
            return Constant(complex(parts[0], parts[1] if len(parts) == 2 else 0.0))
        if kind == "negmob":
            return NegatedMobius(float(body))
        if kind == "blaschke":
            head, *zeros = [s for s in body.split(";") if s.strip()]
            zs = []
            for z in zeros:
                re, im = (float(x) for x in z.split(","))
                zs.append(complex(re, im))
            return BlaschkeProduct(float(head), tuple(zs))
        if kind == "taylor":
            return TaylorSchur(tuple(complex(c.strip().replace(" ", "")) for c in body.split(",")))
    except ValueError as exc:
        raise ValueError(f"cannot parse omega {text!r}: {exc}") from None
    raise ValueError(f"unknown omega kind {kind!r}; expected const, negmob, blaschke or taylor")


# -- serialization ----------------------------------------------------------

def _jsonable(x):
    if isinstance(x, (complex, np.complexfloating)):
        return {"re": float(x.real), "im": float(x.imag)}
    if isinstance(x, (np.floating, float)):
        return float(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _flatten(d: dict, prefix: str = "") -> dict:
    out = {}
    for k, v in d.items():
        key = f"{prefix}{k}"
        v = _jsonable(v)
        if isinstance(v, dict):
            out.update(_flatten(v, key + "."))
        else:
            out[key] = v
    return out


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, float):
        return format(v, ".17g")
    if isinstance(v, list):
        return json.dumps(v)
    return str(v)


def emit(document, rows, fmt: str, out) -> None:
    """Write ``document`` (json/text) or ``rows`` (csv) to ``out``."""
    if fmt == "json":
        json.dump(_jsonable(document), out, indent=2)
        out.write("\n")
    elif fmt == "csv":
        flat = [_flatten(r) for r in rows]
        cols: list[str] = []
        for r in flat:
            cols += [c for c in r if c not in cols]
        w = csv.writer(out, lineterminator="\n")
        w.writerow(cols)
        for r in flat:
            w.writerow([_fmt(r.get(c)) for c in cols])
    else:
        docs = document if isinstance(document, list) else [document]
        for i, d in enumerate(docs):
            if i:
                out.write("\n")
            for k, v in _flatten(d).items():
                out.write(f"{k}={_fmt(v)}\n")


def write_curve(path: str, header: tuple[str, str], xs, ys) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for x, y in zip(xs, ys):
            w.writerow([format(float(x), ".17g"), format(float(y), ".17g")])


# -- subcommands ------------------------------------------------------------

def cmd_roots(args):
    doc = {"p0": cx.p0(), "threshold": um.THRESHOLD_P}
    if args.p is not None:
        p = args.p
        doc.update(p=p, phi=um.phi(p), a_p=None, a0=None, lambda_limit=None)
        try:
            doc["lambda_limit"] = cx.lambda_limit(p)
            doc["a_p"] = cx.find_ap(p)
            doc["a0"] = cx.find_a0(p)
        except (InvalidRegime, NoSignChange) as exc:
            doc["note"] = str(exc)
    return doc, [doc], EXIT_OK


def _certify_doc(p, lam, order):
    try:
        rec = cx.certify(p, lam, order)
    except InvalidRegime as exc:
        return {"status": cx.INVALID_REGIME, "p": p, "lam": lam, "reason": str(exc)}, EXIT_FAILED
    except OutsideWindow as exc:
        return {"status": cx.OUTSIDE_WINDOW, "p": p, "lam": lam, "reason": str(exc)}, EXIT_FAILED
    except cx.CertificationFailed as exc:
        return {"status": cx.FAILED, "p": p, "lam": lam, "reason": str(exc)}, EXIT_FAILED
    return {"status": cx.CERTIFIED, **rec.as_dict()}, EXIT_OK


def cmd_certify(args):
    doc, code = _certify_doc(args.p, args.lam, args.series_order)
    return doc, [doc], code


SCAN_COLUMNS = ("p", "lam", "status", "a", "a0", "a3_series", "a3_closed", "bound",
                "margin", "window_hi", "L_at_a", "membership_margin")


def cmd_scan(args):
    ps = np.linspace(args.p_min, args.p_max, args.p_steps)
    ls = np.linspace(args.lambda_min, args.lambda_max, args.lambda_steps)
    rows = []
    for cell in cx.scan(ps, ls, args.series_order):
        rec = cell["record"].as_dict() if cell["record"] else {}
        row = {k: None for k in SCAN_COLUMNS}
        row.update(rec)
        row.update(p=cell["p"], lam=cell["lam"], status=cell["status"])
        rows.append({k: row[k] for k in SCAN_COLUMNS})
    if args.emit_curve:
        lo = max(args.p_min, cx.p0() + cx.P_GUARD)
        grid = np.linspace(lo, min(args.p_max, 1.0 - cx.P_GUARD), CURVE_POINTS) if lo < args.p_max else []
        write_curve(args.emit_curve, ("p", "lambda_limit"), grid, [cx.lambda_limit(p) for p in grid])
    code = EXIT_FAILED if any(r["status"] == cx.FAILED for r in rows) else EXIT_OK
    return rows, rows, code


def cmd_bounds(args):
    params = um.PoleParams(args.p, args.lam)
    disk = um.a2_disk(params)
    rng = um.residue_modulus_range(params)
    bound, case = um.b0_bound(params)
    doc = {
        "p": params.p, "lam": params.lam,
        "a2_center": disk.center,
        "a2_radius": disk.radius,
        "a2_abs_min": disk.modulus_range.lo, "a2_abs_max": disk.modulus_range.hi,
        "residue_abs_min": rng.lo, "residue_abs_max": rng.hi,
        "phi": um.phi(params.p), "b0_case": case.value, "b0_bound": bound,
        "b0_argmax_x": um.d_argmax(params),
        "b0_case_iii_extremal_a": um.b0_case_iii_extremal_a(params) if case is um.B0Case.III else None,
        "bhowmik_parveen_b0": um.bhowmik_parveen_bound(params, 0),
    }
    return doc, [doc], EXIT_OK


def cmd_series(args):
    params = um.PoleParams(args.p, args.lam)
    omega = parse_omega(args.omega)
    u = um.build(params, omega, args.order)
    n = u.order
    resid = um.uf_series(u).truncate(n - 1) - (args.lam * omega.taylor(n).shift().shift()).truncate(n - 1)
    doc = {
        "p": params.p, "lam": params.lam, "omega": omega.to_spec(), "order": n,
        "omega_certified": omega.certified,
        "coefficients": [u.taylor_coefficient(k) for k in range(1, n + 1)],
        "uf_residual_max": float(np.max(np.abs(resid.coeffs))),
        "residue_closed": um.residue(params, omega),
        "residue_contour": um.laurent_numeric(u, -1),
        "b0_closed": um.laurent_b0(params, omega),
        "b0_contour": um.laurent_numeric(u, 0),
        "membership_margin": um.membership_margin(u),
    }
    rows = [{"n": k, "a_n": u.taylor_coefficient(k)} for k in range(1, n + 1)]
    ok = doc["uf_residual_max"] <= 1e-10 and doc["membership_margin"] > 0
    return doc, rows, EXIT_OK if ok else EXIT_FAILED


def cmd_probe(args):
    params = um.PoleParams(args.p, args.lam)
    q = args.quantity
    if q in ("a2", "residue", "b0"):
        reports = [r for r in probe_proved_bounds(params, args.samples, args.seed, tol=args.bound_tol)
                   if r.quantity == q]
    elif q == "a3":
        reports = [probe_a3(params, args.grid_size, args.seed, args.samples)]
    else:
        reports = [probe_bn(params, args.n, args.samples, args.seed, tol=args.bound_tol)]
    if args.emit_curve:
        a = np.linspace(1e-3, 1.0 - 1e-3, CURVE_POINTS)
        write_curve(args.emit_curve, ("a", "L"), a, [cx.L(args.p, s) for s in a])
    docs = [r.as_dict() for r in reports]
    bad = any(r.proved and r.violated for r in reports)
    return docs[0] if len(docs) == 1 else docs, docs, EXIT_FAILED if bad else EXIT_OK


# -- argument parsing -------------------------------------------------------

def _unit(name):
    def conv(text):
        x = float(text)
        if not (0.0 < x < 1.0) or not math.isfinite(x):
            raise argparse.ArgumentTypeError(f"{name} must lie in (0, 1), got {text}")
        return x
    return conv


def _positive_int(text):
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return n


def _nonneg_int(text):
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output-format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--series-order", type=_positive_int, default=ser.DEFAULT_ORDER,
                        help="truncation order of Taylor series (default 32)")

    parser = argparse.ArgumentParser(prog="umcheck", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("roots", parents=[common], help="p0, the case threshold and per-p roots")
    s.add_argument("--p", type=_unit("p"))
    s.set_defaults(func=cmd_roots)

    s = sub.add_parser("certify", parents=[common], help="certify a violation of the a3 conjecture")
    s.add_argument("--p", type=_unit("p"), required=True)
    s.add_argument("--lambda", dest="lam", type=_unit("lambda"), required=True)
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("scan", parents=[common], help="certify over a (p, lambda) grid")
    s.add_argument("--p-min", type=_unit("p"), required=True)
    s.add_argument("--p-max", type=_unit("p"), required=True)
    s.add_argument("--p-steps", type=_positive_int, default=5)
    s.add_argument("--lambda-min", type=_unit("lambda"), required=True)
    s.add_argument("--lambda-max", type=_unit("lambda"), required=True)
    s.add_argument("--lambda-steps", type=_positive_int, default=5)
    s.add_argument("--emit-curve", metavar="PATH", help="write (p, lambda_limit) CSV")
    s.set_defaults(func=cmd_scan)

    s = sub.add_parser("bounds", parents=[common], help="proved bounds at (p, lambda)")
    s.add_argument("--p", type=_unit("p"), required=True)
    s.add_argument("--lambda", dest="lam", type=_unit("lambda"), required=True)
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("series", parents=[common], help="coefficients of one member")
    s.add_argument("--p", type=_unit("p"), required=True)
    s.add_argument("--lambda", dest="lam", type=_unit("lambda"), required=True)
    s.add_argument("--omega", required=True, help="const:re,im | negmob:a | blaschke:theta;re,im;... | taylor:c0,c1,...")
    s.add_argument("--order", type=int, default=None, help="series order (default: --series-order)")
    s.set_defaults(func=cmd_series)

    s = sub.add_parser("probe", parents=[common], help="randomized extremal probe")
    s.add_argument("--p", type=_unit("p"), required=True)
    s.add_argument("--lambda", dest="lam", type=_unit("lambda"), required=True)
    s.add_argument("--quantity", choices=("a2", "residue", "b0", "a3", "bn"), required=True)
    s.add_argument("--n", type=_nonneg_int, default=0, help="Laurent index for --quantity bn")
    s.add_argument("--samples", type=_positive_int, default=1000)
    s.add_argument("--seed", type=_nonneg_int, default=0)
    s.add_argument("--grid-size", type=int, default=1000, help="Mobius grid size for --quantity a3")
    s.add_argument("--bound-tol", type=float, default=BOUND_TOL, help="slack before a bound counts as violated")
    s.add_argument("--emit-curve", metavar="PATH", help="write (a, L_p(a)) CSV")
    s.set_defaults(func=cmd_probe)
    return parser


def _validate(parser, args):
    if args.command == "scan":
        if args.p_min > args.p_max or args.lambda_min > args.lambda_max:
            parser.error("grid minimum exceeds maximum")
    if args.command == "series":
        if args.order is None:
            args.order = args.series_order
        if args.order < 4:
            parser.error("--order must be at least 4")
        try:
            parse_omega(args.omega)
        except ValueError as exc:
            parser.error(str(exc))
    if args.command == "probe":
        if args.quantity == "a3" and args.grid_size < 10:
            parser.error("--grid-size must be at least 10")
        if not args.bound_tol >= 0:
            parser.error("--bound-tol must be nonnegative")


def run(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _validate(parser, args)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    doc, rows, code = args.func(args)
    emit(doc, rows, args.output_format, out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
