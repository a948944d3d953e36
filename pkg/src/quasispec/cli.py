"""Command-line front end: ``quasispec <command> [options]``.

Exit status is 0 on success, 1 when a numeric check fails (a residual above
tolerance, a table cell off, a degenerate transform), and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction
from typing import Optional

from . import lab
from .config import ConfigError, load_config, resolve
from .errors import InvalidAlpha, OPSError
from .laguerre import geronimus_laguerre, laguerre_pair
from .ops import eval_all, eval_numerator, monomial_coeffs, to_exact
from .poly import Poly
from .quasi import (G_VARIANTS, U_VARIANTS, QuasiSpec, ShiftSequence, cf_spec, diffeq_residual_g,
                    diffeq_residual_u, eval_quasi, propagate_shift, restored_recurrence,
                    restored_ttrr_residual, shift_condition_residual, shift_from_cf,
                    transfer_residual_g, transfer_residual_u)
from . import recovery
from .roots import count_outside, zeros_linear_combo
from .transforms import christoffel, geronimus, uvarov

RECOVERY_IDS = {
    "quasi-geronimus-pair": "source_from_quasi_geronimus_pair",
    "geronimus-step": "geronimus_step_identity",
    "geronimus-partner": "recover_via_geronimus_partner",
    "uvarov-partner": "recover_via_uvarov_partner",
    "christoffel-partner": "recover_via_christoffel_partner",
    "uvarov-pair": "source_from_uvarov_pair",
    "quasi-uvarov-pair": "source_from_quasi_uvarov_pair",
    "quasi-uvarov-christoffel": "recover_quasiU_via_christoffel",
    "quasi-uvarov-geronimus": "recover_quasiU_via_geronimus",
}


class UsageError(Exception):
    pass


class NumericFailure(Exception):
    pass


# --------------------------------------------------------------------------
# scalar and family construction


def _num(text, exact: bool):
    try:
        v = Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a number: {text!r}") from exc
    return v if exact else float(v)


def _plain(v):
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else int(v)
    if isinstance(v, float) and not math.isfinite(v):
        return str(v)
    return v


def _alpha(cfg):
    if len(cfg.alpha) != 1:
        raise UsageError("this command takes a single --alpha")
    return _num(cfg.alpha[0], cfg.exact)


def _gamma_ratio(alpha, mass, exact):
    """M / L(1) for the Laguerre functional, ``L(1) = Gamma(alpha + 1)``."""
    if exact:
        if alpha.denominator != 1 or alpha < 0:
            raise UsageError("an explicit Geronimus mass in exact mode needs a nonnegative integer alpha")
        return mass / math.factorial(int(alpha))
    return mass / math.gamma(alpha + 1)


def _geronimus_data(cfg, alpha, a, mass_text, n_top):
    rec = laguerre_pair(alpha, n_top, cfg.exact)
    if mass_text in (None, "gamma"):
        ratio = 1 / alpha
    else:
        ratio = _gamma_ratio(alpha, _num(mass_text, cfg.exact), cfg.exact)
    return geronimus(rec, a, n_max=n_top, mass_ratio=ratio)


def _uvarov_data(cfg, alpha, a, mass_text, n_top):
    rec = laguerre_pair(alpha, n_top, cfg.exact)
    mass = _num("1" if mass_text in (None, "gamma") else mass_text, cfg.exact)
    return uvarov(rec, a, mass, n_top)


def _base(cfg, n_top):
    alpha = _alpha(cfg)
    a = _num(cfg.a, cfg.exact)
    if cfg.flavor == "uvarov":
        return _uvarov_data(cfg, alpha, a, cfg.mass, n_top)
    return _geronimus_data(cfg, alpha, a, cfg.mass, n_top)


def _shift(cfg, base, alpha, n_top) -> ShiftSequence:
    text = cfg.alpha_shift if cfg.flavor == "uvarov" else cfg.beta
    if text is None:
        text = cfg.beta if cfg.beta is not None else cfg.alpha_shift
    if text is None:
        text = "seeds:1,1" if cfg.flavor == "uvarov" else "closed-form"
    text = text.strip()
    if text == "closed-form":
        if cfg.flavor == "uvarov":
            raise UsageError("no closed-form shift is known for the quasi-Uvarov case; use seeds:s1,s2")
        return ShiftSequence.closed_form(lambda k: k + alpha - 1, n_top)
    if text.startswith("seeds:"):
        parts = [p for p in text[6:].split(",") if p.strip()]
        if len(parts) != 2:
            raise UsageError("seeds policy needs two values, e.g. seeds:1,2")
        return propagate_shift(base, _num(parts[0], cfg.exact), _num(parts[1], cfg.exact), n_top)
    if text.startswith("list:"):
        vals = [_num(p, cfg.exact) for p in text[5:].split(",") if p.strip()]
        return ShiftSequence.explicit(vals)
    if text.startswith("constant:"):
        text = text[9:]
    return ShiftSequence.constant(_num(text, cfg.exact), n_top)


def _spec(cfg, n_top):
    base = _base(cfg, n_top)
    return QuasiSpec(base, _shift(cfg, base, _alpha(cfg), n_top))


def _xs(cfg, a):
    if cfg.x:
        return [_num(v, cfg.exact) for v in cfg.x]
    return recovery.sample_points(float(a), count=cfg.samples)


# --------------------------------------------------------------------------
# output


def _emit(cfg, payload: dict, rows: Optional[list] = None, header: Optional[list] = None):
    if cfg.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if rows is None:
            w.writerow(["key", "value"])
            for k in sorted(payload):
                w.writerow([k, json.dumps(payload[k], default=_plain, sort_keys=True)])
        else:
            w.writerow(header)
            w.writerows([[_plain(v) for v in r] for r in rows])
        text = buf.getvalue()
    else:
        text = json.dumps(payload, indent=2, sort_keys=True, default=_plain) + "\n"
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _seq(values, lo=1):
    return [_plain(v) for v in values[lo:]]


# --------------------------------------------------------------------------
# commands


def cmd_ops(cfg, args):
    rec = laguerre_pair(_alpha(cfg), max(cfg.n, 1) + 1, cfg.exact)
    xs = [_num(v, cfg.exact) for v in (cfg.x or ["0"])]
    rows = []
    for x in xs:
        vals = eval_all(rec, cfg.n, x)
        rows.append([_plain(x), cfg.n, _plain(vals[cfg.n]), _plain(eval_numerator(rec, cfg.n, x))])
    payload = {"n": cfg.n, "coeffs": [_plain(c) for c in monomial_coeffs(rec, cfg.n).coeffs],
               "values": [{"x": r[0], "P_n": r[2], "Q_n": r[3]} for r in rows]}
    _emit(cfg, payload, rows, ["x", "n", "P_n", "Q_n"])
    return 0


def cmd_transform(cfg, args):
    alpha = _alpha(cfg)
    a = _num(cfg.a, cfg.exact)
    n_top = max(cfg.n, 1) + 1
    if args.kind == "christoffel":
        data = christoffel(laguerre_pair(alpha, n_top, cfg.exact), a)
        c, lam, extra = data.c_c, data.lambda_c, {}
    elif args.kind == "geronimus":
        data = _geronimus_data(cfg, alpha, a, cfg.mass, n_top)
        c, lam, extra = data.c_g, data.lambda_g, {"chi": _seq(data.chi, 0)}
    else:
        data = _uvarov_data(cfg, alpha, a, cfg.mass, n_top)
        c, lam, extra = data.c_u, data.lambda_u, {"t": _seq(data.t, 0)}
    k = min(cfg.n, len(c) - 1)
    payload = {"transform": args.kind, "c": _seq(c[: k + 1]), "lambda": _seq(lam[: k + 1]), **extra}
    rows = [[i, _plain(c[i]), _plain(lam[i])] for i in range(1, k + 1)]
    _emit(cfg, payload, rows, ["index", "c", "lambda"])
    return 0


def cmd_quasi(cfg, args):
    action = args.action
    if action == "cf":
        return _quasi_cf(cfg)
    spec = _spec(cfg, cfg.n + 4)
    a = spec.base.a
    if action == "eval":
        rows = [[_plain(x), k, _plain(eval_quasi(spec, k, x))]
                for x in [_num(v, cfg.exact) for v in (cfg.x or ["0"])] for k in range(cfg.n + 1)]
        _emit(cfg, {"values": [{"x": r[0], "n": r[1], "value": r[2]} for r in rows]}, rows, ["x", "n", "value"])
        return 0
    if action == "propagate":
        vals = spec.shift.values[1: cfg.n + 1]
        res = [_plain(shift_condition_residual(spec, k)) for k in range(2, min(cfg.n, spec.n_max - 1) + 1)]
        rows = [[k, _plain(v)] for k, v in enumerate(vals, start=1)]
        _emit(cfg, {"shift": [_plain(v) for v in vals], "condition_residuals": res}, rows, ["n", "shift"])
        return 0
    if action == "restore":
        rr = restored_recurrence(spec)
        top = min(cfg.n, len(rr.c_q) - 1)
        xs = _xs(cfg, a)[:5]
        ttrr = max(abs(float(restored_ttrr_residual(spec, rr, k, x))) / (1 + abs(float(eval_quasi(spec, k + 1, x))))
                   for k in range(1, top) for x in xs) if top > 1 else 0.0
        rows = [[k, _plain(rr.c_q[k]), _plain(rr.lambda_q[k])] for k in range(1, top + 1)]
        payload = {"flavor": rr.flavor, "classification": rr.classification,
                   "c_q": [_plain(v) for v in rr.c_q[1: top + 1]],
                   "lambda_q": [_plain(v) for v in rr.lambda_q[1: top + 1]],
                   "ttrr_relative_residual": ttrr}
        _emit(cfg, payload, rows, ["n", "c_q", "lambda_q"])
        return 0 if ttrr <= cfg.tol else 1
    if action == "residual":
        return _quasi_residual(cfg, spec)
    raise UsageError(f"unknown quasi action {action}")


def _quasi_residual(cfg, spec):
    n, a = cfg.n, spec.base.a
    xs = [x for x in _xs(cfg, a) if x != a]
    g = spec.flavor == "geronimus"
    variants = G_VARIANTS if g else U_VARIANTS
    if cfg.variant not in variants:
        raise UsageError(f"variant must be one of {variants}")
    diffeq = diffeq_residual_g if g else diffeq_residual_u
    transfer = transfer_residual_g if g else transfer_residual_u
    out = {}
    for v in variants:
        d = max(float(diffeq(spec, n, x, v, relative=True)) for x in xs)
        t = max(float(transfer(spec, n, x, v)) for x in xs)
        out[v] = {"diffeq": d, "transfer": t}
    worst = max(out[cfg.variant].values())
    payload = {"flavor": spec.flavor, "n": n, "variant": cfg.variant, "residuals": out,
               "pass": worst <= cfg.tol}
    rows = [[v, out[v]["diffeq"], out[v]["transfer"]] for v in variants]
    _emit(cfg, payload, rows, ["variant", "diffeq", "transfer"])
    return 0 if worst <= cfg.tol else 1


def _quasi_cf(cfg):
    depths = sorted(cfg.depth)
    spec = _spec(cfg, cfg.n + max(depths) + 2)
    cf = cf_spec(spec)
    tail = _num(cfg.tail, cfg.exact)
    truth = spec.shift[cfg.n]
    rows = []
    for d in depths:
        v = shift_from_cf(cf, cfg.n, d, tail)
        rows.append([d, _plain(v), float(abs(v - truth))])
    payload = {"C": _plain(cf.C_const), "n": cfg.n, "shift_n": _plain(truth),
               "rows": [{"depth": r[0], "value": r[1], "abs_error": r[2]} for r in rows]}
    _emit(cfg, payload, rows, ["depth", "value", "abs_error"])
    return 0


def cmd_recover(cfg, args):
    name = RECOVERY_IDS[args.identity]
    fn = getattr(recovery, name)
    n = cfg.n
    n_top = n + 4
    alpha = _alpha(cfg)
    a = _num(cfg.a, cfg.exact)
    a2 = _num(cfg.partner_a, cfg.exact)
    quasi_u = args.identity.startswith("quasi-uvarov")
    if args.identity == "geronimus-step":
        call = (_geronimus_data(cfg, alpha, a, cfg.mass, n_top), n)
    elif args.identity == "uvarov-pair":
        call = (_uvarov_data(cfg, alpha, a, cfg.mass, n_top), n)
    else:
        cfg.flavor = "uvarov" if quasi_u else "geronimus"
        spec = _spec(cfg, n_top)
        rec = laguerre_pair(alpha, n_top, cfg.exact)
        if args.identity.endswith("christoffel") or args.identity == "christoffel-partner":
            call = (spec, christoffel(rec, a2), n)
        elif args.identity.endswith("geronimus") or args.identity == "geronimus-partner":
            call = (spec, _geronimus_data(cfg, alpha, a2, cfg.partner_mass, n_top), n)
        elif args.identity == "uvarov-partner":
            call = (spec, _uvarov_data(cfg, alpha, a2, cfg.partner_mass, n_top), n)
        else:
            call = (spec, n)
    xs = [_num(v, cfg.exact) for v in cfg.x] if cfg.x else None
    cert = fn(*call, sample_xs=xs)
    payload = cert.to_dict()
    payload["identity"] = args.identity
    ok = cert.ok and float(cert.residual_max) <= cfg.tol
    payload["pass"] = ok
    _emit(cfg, payload)
    return 0 if ok else 1


def cmd_roots(cfg, args):
    n = cfg.n
    of = args.of
    alpha = _alpha(cfg)
    if of == "base":
        fam, beta = laguerre_pair(alpha, n + 1, False), 0.0
    elif of == "transform":
        base = _base(cfg, n + 2)
        fam, beta = base.rec, 0.0
    else:
        spec = _spec(cfg, n + 2)
        fam, beta = spec.base.rec, spec.shift[n]
    if not isinstance(beta, float):
        beta = float(beta)
    fam_f = fam if not fam.exact else type(fam)(tuple(None if v is None else float(v) for v in fam.c),
                                                 tuple(None if v is None else float(v) for v in fam.lam), None)
    zs = zeros_linear_combo(fam_f, n, beta)
    payload = {"of": of, "n": n, "zeros": list(zs.zeros), "method": zs.method,
               "complex_count": zs.complex_count, "count_outside_0_inf": count_outside(zs, 0.0)}
    rows = [[i, z] for i, z in enumerate(zs.zeros, start=1)]
    _emit(cfg, payload, rows, ["zero_index", "value"])
    return 0


def cmd_reproduce(cfg, args):
    keys = sorted(lab.TABLES) if args.which == "all" else [args.which]
    tables = {k: lab.reproduce_table(k) for k in keys}
    ok = all(t["pass"] for t in tables.values())
    if cfg.figures:
        lab.write_figures(cfg.figures)
    if cfg.format == "csv":
        text = lab.report_csv(tables)
    else:
        payload = {"tables": tables, "pass": ok}
        if args.which == "all":
            payload = lab.full_report()
            payload["pass"] = ok and payload.get("closed_forms_pass", True)
            ok = payload["pass"]
        text = lab.report_json(payload)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if ok else 1


def cmd_report(cfg, args):
    report = lab.full_report()
    report["pass"] = report["tables_pass"] and report["closed_forms_pass"]
    text = lab.report_json(report) if cfg.format == "json" else lab.report_csv(report["tables"])
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if cfg.figures:
        lab.write_figures(cfg.figures)
    return 0 if report["pass"] else 1


# --------------------------------------------------------------------------
# parser


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("common options")
    g.add_argument("--alpha", help="Laguerre parameter (comma list where accepted)")
    g.add_argument("--a", help="transform point (default 0)")
    g.add_argument("--mass", help="mass M, or 'gamma' for M = Gamma(alpha)")
    g.add_argument("--beta", help="quasi-Geronimus shift: number, closed-form, seeds:s1,s2 or list:v1,...")
    g.add_argument("--alpha-shift", dest="alpha_shift", help="quasi-Uvarov shift, same syntax as --beta")
    g.add_argument("--n", type=int, help="degree or index")
    g.add_argument("--format", choices=("json", "csv"))
    g.add_argument("--out", help="write output to PATH")
    g.add_argument("--exact", action="store_true", default=None, help="rational arithmetic")
    g.add_argument("--config", help="key = value config file")
    g.add_argument("--x", help="comma-separated evaluation points")
    g.add_argument("--flavor", choices=("geronimus", "uvarov"))
    g.add_argument("--variant", help="formula variant for residual checks")
    g.add_argument("--depth", help="comma-separated continued-fraction depths")
    g.add_argument("--tail", help="continued-fraction tail value")
    g.add_argument("--partner-a", dest="partner_a", help="partner transform point")
    g.add_argument("--partner-mass", dest="partner_mass", help="partner transform mass")
    g.add_argument("--samples", type=int, help="number of sample points")
    g.add_argument("--tol", type=float, help="residual tolerance")
    g.add_argument("--figures", help="directory for figure point files")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="quasispec", description="Spectral transforms and quasi-orthogonal polynomials.")
    sub = parser.add_subparsers(dest="command", required=True)

    ops = sub.add_parser("ops", parents=[common], help="base Laguerre polynomials")
    ops.add_argument("action", choices=("eval",))
    ops.set_defaults(func=cmd_ops)

    tr = sub.add_parser("transform", parents=[common], help="transformed recurrence coefficients")
    tr.add_argument("kind", choices=("christoffel", "geronimus", "uvarov"))
    tr.set_defaults(func=cmd_transform)

    q = sub.add_parser("quasi", parents=[common], help="quasi-Geronimus / quasi-Uvarov tools")
    q.add_argument("action", choices=("eval", "residual", "restore", "propagate", "cf"))
    q.set_defaults(func=cmd_quasi)

    rc = sub.add_parser("recover", parents=[common], help="source-recovery identity certificates")
    rc.add_argument("identity", choices=sorted(RECOVERY_IDS))
    rc.set_defaults(func=cmd_recover)

    rt = sub.add_parser("roots", parents=[common], help="real zeros")
    rt.add_argument("--of", choices=("quasi", "base", "transform"), default="quasi")
    rt.set_defaults(func=cmd_roots)

    rp = sub.add_parser("reproduce", parents=[common], help="reproduce the Laguerre zero tables")
    rp.add_argument("which", choices=("table1", "table2", "table3", "table4", "all"))
    rp.set_defaults(func=cmd_reproduce)

    rep = sub.add_parser("report", parents=[common], help="full machine-readable report")
    rep.set_defaults(func=cmd_report)
    return parser


_OVERRIDES = ("alpha", "a", "mass", "beta", "alpha_shift", "n", "format", "out", "exact", "x",
              "flavor", "variant", "depth", "tail", "partner_a", "partner_mass", "samples", "tol", "figures")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        file_values = load_config(args.config) if args.config else None
        cfg = resolve({k: getattr(args, k) for k in _OVERRIDES}, file_values)
        return args.func(cfg, args)
    except (UsageError, ConfigError, InvalidAlpha, OSError) as exc:
        print(f"quasispec: error: {exc}", file=sys.stderr)
        return 2
    except OPSError as exc:
        print(f"quasispec: numeric failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
