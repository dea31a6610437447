"""Command-line front end: compute, verify and export."""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from .multipoly import HyperplaneDivisionError, MultiPoly, VarSpace
from .opspec import PRESETS, OperatorSpec, parse_spec
from .partitions import IntVector, Partition, parse_partition
from .scalarfield import RationalFunction, parse_rational

SCHEMA = "cms-eigenbasis/1"


class UsageError(Exception):
    pass


class VerificationFailed(Exception):
    pass


def _vector(text: str) -> tuple[int, ...]:
    body = text.strip().strip("()")
    if "|" in body:
        return IntVector.parse(text).entries
    return tuple(int(t) for t in body.split(",") if t.strip())


def _fraction(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _partition(text: str) -> Partition:
    try:
        return parse_partition(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _spec(args) -> OperatorSpec:
    try:
        return parse_spec(args.spec, getattr(args, "pa", None), getattr(args, "pb", None))
    except (ValueError, KeyError) as exc:
        raise UsageError(f"bad --spec: {exc}") from exc


# ---------------------------------------------------------------------------
# output helpers


def _eval_poly(p: MultiPoly, theta):
    return p.evaluate_theta(theta) if theta is not None else p


def _eval_rf(r: RationalFunction, theta):
    return RationalFunction(r.evaluate(theta)) if theta is not None else r


def _emit(args, payload: dict, text: str):
    if args.json:
        out = json.dumps({"schema": SCHEMA, **payload}, indent=1, sort_keys=True, ensure_ascii=False)
    else:
        out = text
    if getattr(args, "out", None):
        Path(args.out).write_text(out + "\n", encoding="utf-8")
    else:
        sys.stdout.write(out + "\n")


def _poly_payload(command: str, p: MultiPoly, args, **extra) -> dict:
    d = {"command": command, "space": p.space.to_json(), "polynomial": p.to_json()}
    if args.theta is not None:
        d["theta"] = str(args.theta)
    d.update(extra)
    return d


# ---------------------------------------------------------------------------
# commands


def cmd_jack(args):
    from .jacksuite import jack_polynomial
    p = _eval_poly(jack_polynomial(args.lam, args.n).value, args.theta)
    _emit(args, _poly_payload("jack", p, args, **{"lambda": str(args.lam)}), str(p))


def cmd_superjack(args):
    from .jacksuite import super_jack
    p = _eval_poly(super_jack(args.lam, VarSpace(args.n, args.nt)).value, args.theta)
    _emit(args, _poly_payload("superjack", p, args, **{"lambda": str(args.lam)}), str(p))


def cmd_superschur(args):
    from .jacksuite import super_schur
    p = super_schur(args.lam, VarSpace(args.n, args.nt))
    _emit(args, _poly_payload("superschur", p, args, **{"lambda": str(args.lam)}), str(p))


def cmd_fpoly(args):
    from .fbasis import direct_series_oracle, f_polynomial
    a = _vector(args.a)
    if len(a) != args.m + args.mt:
        raise UsageError(f"--a has {len(a)} entries but m + mt = {args.m + args.mt}")
    f = f_polynomial(a, (args.n, args.nt), (args.m, args.mt))
    p = _eval_poly(f.value, args.theta)
    extra = {"a": str(IntVector(a, args.m))}
    text = str(p)
    if args.oracle:
        bound = args.bound if args.bound is not None else sum(a) + 2
        o = direct_series_oracle(a, (args.n, args.nt), (args.m, args.mt), bound)
        agree = o == f.value
        extra["oracle"] = {"bound": bound, "agree": agree}
        text += f"\noracle (bound {bound}): {'agree' if agree else 'DIFFER'}"
        if not agree:
            _emit(args, _poly_payload("fpoly", p, args, **extra), text)
            raise VerificationFailed("series oracle disagrees")
    _emit(args, _poly_payload("fpoly", p, args, **extra), text)


def _recheck_theta(ef, spec, theta):
    """Admissibility re-check at a specific rational theta."""
    from .eigensolver import eigenvalue_of_vector, ladder_offsets
    from .partitions import phi_map
    phi = phi_map(ef.lam, ef.mbar)
    top = ef.eigenvalue
    for a in ladder_offsets(ef.lam, spec, ef.nbar, ef.mbar):
        if any(a):
            b = tuple(p - x for p, x in zip(phi, a))
            if (top - eigenvalue_of_vector(b, spec, ef.nbar, ef.mbar)).evaluate(theta) == 0:
                raise ArithmeticError(f"degenerate eigenvalue ladder at theta = {theta}")


def _eigen_output(command, ef, spec, args):
    if args.theta is not None:
        _recheck_theta(ef, spec, args.theta)
    p = _eval_poly(ef.value, args.theta)
    ev = _eval_rf(ef.eigenvalue, args.theta)
    coeffs = sorted(ef.coefficients.items())
    m = ef.mbar[0]
    payload = _poly_payload(command, p, args, **{
        "lambda": str(ef.lam),
        "nbar": list(ef.nbar),
        "mbar": list(ef.mbar),
        "spec": spec.label(),
        "eigenvalue": ev.to_json(),
        "coefficients": [{"a": str(IntVector(a, m)), "u": _eval_rf(u, args.theta).to_json()} for a, u in coeffs],
    })
    lines = [f"eigenvalue: {ev}"]
    for a, u in coeffs:
        lines.append(f"u{IntVector(a, m)} = {_eval_rf(u, args.theta)}")
    lines.append(f"P = {p}")
    _emit(args, payload, "\n".join(lines))


def cmd_eigenfunction(args):
    from .eigensolver import solve_eigenfunction
    spec = _spec(args)
    ef = solve_eigenfunction(args.lam, spec, (args.n, args.nt), (args.m, args.mt))
    _eigen_output("eigenfunction", ef, spec, args)


def cmd_superjack_series(args):
    from .eigensolver import D2_SPEC, super_jack_series
    ef = super_jack_series(args.lam, (args.n, args.nt), (args.m, args.mt))
    _eigen_output("superjack-series", ef, D2_SPEC, args)


def _report(args, name: str, report: dict):
    report = {k: v for k, v in report.items() if k not in ("lhs", "rhs")}
    text = f"{name}: {'pass' if report.get('pass') else 'FAIL'}"
    if "checked" in report:
        text += f" (checked {report['checked']})"
    _emit(args, {"command": f"verify {name}", **report}, text)
    if not report.get("pass"):
        raise VerificationFailed(f"{name} failed")


def cmd_verify_identity(args):
    from .cmsops import verify_identity
    kind = args.kind
    spec = _spec(args) if kind == "LId" else None
    index = args.k if kind == "DId" else args.l if kind == "EId" else None
    if kind in ("EId", "DId") and index is None:
        raise UsageError(f"{kind} needs {'--l' if kind == 'EId' else '--k'}")
    rep = verify_identity(kind, (args.n, args.nt), (args.m, args.mt), args.deg, k=index, spec=spec)
    _report(args, "identity", rep)


def cmd_verify_adjoint(args):
    from .cmsops import verify_adjointness
    rep = verify_adjointness(_spec(args), (args.n, args.nt), args.deg)
    _report(args, "adjoint", rep)


def cmd_verify_action(args):
    from .cmsops import apply_D, apply_E
    from .eigensolver import action_on_f
    from .fbasis import f_value
    a = _vector(args.a)
    nbar, mbar = (args.n, args.nt), (args.m, args.mt)
    f = f_value(a, nbar, mbar)
    w = args.which
    direct = apply_E(int(w[1]), f) if w[0] == "E" else apply_D(int(w[1]), f)
    rhs = MultiPoly.zero(f.space)
    for b, c in action_on_f(w, a, nbar, mbar):
        rhs = rhs + f_value(b.entries, nbar, mbar).scale(c)
    _report(args, "action", {"pass": direct == rhs, "checked": 1, "operator": w, "a": list(a)})


def cmd_verify_stanley(args):
    from .cmsops import verify_stanley, verify_super_kernel
    if args.nt or args.mt:
        rep = verify_super_kernel((args.n, args.nt), (args.m, args.mt), args.deg)
    else:
        rep = verify_stanley(args.n, args.m, args.deg)
    _report(args, "stanley", rep)


def cmd_m_independence(args):
    from .eigensolver import check_m_independence
    rep = check_m_independence(args.lam, _spec(args), (args.n, args.nt), (args.m1, args.mt1), (args.m2, args.mt2))
    _report(args, "m-independence", rep)


def cmd_batch(args):
    from .cmsops import apply_L
    from .eigensolver import solve_eigenfunction
    from .partitions import hook_partitions
    spec = _spec(args)
    nbar, mbar = (args.n, args.nt), (args.m, args.mt)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    for k in range(args.deg + 1):
        entries = []
        for lam in hook_partitions(k, nbar, mbar):
            ef = solve_eigenfunction(lam, spec, nbar, mbar)
            residual = apply_L(spec, ef.value) - ef.value.scale(ef.eigenvalue)
            poly_json = ef.value.to_json()
            digest = hashlib.sha256(json.dumps(poly_json, sort_keys=True).encode()).hexdigest()
            entry = ef.to_json()
            entry["verification"] = {"residual": residual.to_json(), "sha256": digest}
            entries.append(entry)
        table = {"schema": SCHEMA, "degree": k, "nbar": list(nbar), "mbar": list(mbar),
                 "spec": spec.label(), "entries": entries}
        path = outdir / f"table_deg{k}.json"
        path.write_text(json.dumps(table, indent=1, sort_keys=True, ensure_ascii=False) + "\n", encoding="utf-8")
        written.append({"degree": k, "path": str(path), "entries": len(entries)})
    text = "\n".join(f"degree {w['degree']}: {w['entries']} entries -> {w['path']}" for w in written)
    _emit(args, {"command": "batch", "files": written}, text)


# ---------------------------------------------------------------------------
# parser


def _common(p: argparse.ArgumentParser):
    p.add_argument("--json", action="store_true", help="emit JSON instead of text")
    p.add_argument("--theta", type=_fraction, default=None, help="evaluate the result at a rational theta p/q")
    p.add_argument("--out", default=None, help="write output to a file")


def _shape(p, m=False):
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--nt", type=int, default=0)
    if m:
        p.add_argument("--m", type=int, default=1)
        p.add_argument("--mt", type=int, default=0)


def _spec_args(p, default="trig"):
    p.add_argument("--spec", default=default,
                   help=f"preset ({', '.join(PRESETS)}) or coefficients like a2=1,b1=-2")
    p.add_argument("--pa", type=_fraction, default=None, help="preset parameter a")
    p.add_argument("--pb", type=_fraction, default=None, help="preset parameter b")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cmsbasis", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("jack", help="Jack polynomial P_lambda in n variables")
    p.add_argument("--lambda", dest="lam", type=_partition, required=True)
    p.add_argument("--n", type=int, required=True)
    _common(p)
    p.set_defaults(func=cmd_jack)

    for name, fn, hlp in (("superjack", cmd_superjack, "super Jack polynomial"),
                          ("superschur", cmd_superschur, "super Schur polynomial")):
        p = sub.add_parser(name, help=hlp)
        p.add_argument("--lambda", dest="lam", type=_partition, required=True)
        _shape(p)
        _common(p)
        p.set_defaults(func=fn)

    p = sub.add_parser("fpoly", help="the polynomial f_a")
    p.add_argument("--a", required=True, help="integer vector, e.g. 3 or 1,0,2 (use --a=-1,2 for a leading minus)")
    _shape(p, m=True)
    p.add_argument("--oracle", action="store_true", help="cross-check with the direct series expansion")
    p.add_argument("--bound", type=int, default=None, help="cross-factor order for --oracle")
    _common(p)
    p.set_defaults(func=cmd_fpoly)

    p = sub.add_parser("eigenfunction", help="eigenfunction of a deformed CMS operator")
    p.add_argument("--lambda", dest="lam", type=_partition, required=True)
    _shape(p, m=True)
    _spec_args(p)
    _common(p)
    p.set_defaults(func=cmd_eigenfunction)

    p = sub.add_parser("superjack-series", help="explicit series for b_lambda SP_lambda")
    p.add_argument("--lambda", dest="lam", type=_partition, required=True)
    _shape(p, m=True)
    _common(p)
    p.set_defaults(func=cmd_superjack_series)

    def m_indep(sp):
        q = sp.add_parser("m-independence", help="compare eigenfunctions built from two shapes")
        q.add_argument("--lambda", dest="lam", type=_partition, required=True)
        _shape(q)
        for s in ("m1", "mt1", "m2", "mt2"):
            q.add_argument(f"--{s}", type=int, required=True)
        _spec_args(q)
        _common(q)
        q.set_defaults(func=cmd_m_independence)

    v = sub.add_parser("verify", help="run a verification")
    vs = v.add_subparsers(dest="what", required=True)

    q = vs.add_parser("identity", help="kernel identity for E, D or L")
    q.add_argument("--kind", choices=["EId", "DId", "LId"], required=True)
    q.add_argument("--k", type=int, choices=[0, 1, 2], default=None)
    q.add_argument("--l", type=int, choices=[0, 1], default=None)
    q.add_argument("--deg", type=int, default=5)
    _shape(q, m=True)
    _spec_args(q)
    _common(q)
    q.set_defaults(func=cmd_verify_identity)

    q = vs.add_parser("adjoint", help="adjointness for the scalar product")
    q.add_argument("--deg", type=int, default=3)
    _shape(q)
    _spec_args(q)
    _common(q)
    q.set_defaults(func=cmd_verify_adjoint)

    q = vs.add_parser("action", help="operator action on one f_a")
    q.add_argument("--which", choices=["E0", "E1", "D0", "D1", "D2"], required=True)
    q.add_argument("--a", required=True)
    _shape(q, m=True)
    _common(q)
    q.set_defaults(func=cmd_verify_action)

    q = vs.add_parser("stanley", help="kernel expansion in (super) Jack polynomials")
    q.add_argument("--deg", type=int, default=4)
    _shape(q, m=True)
    _common(q)
    q.set_defaults(func=cmd_verify_stanley)

    m_indep(vs)

    c = sub.add_parser("check", help="alias group for checks")
    cs = c.add_subparsers(dest="what", required=True)
    m_indep(cs)

    p = sub.add_parser("batch", help="write eigenfunction tables, one file per degree")
    p.add_argument("--deg", type=int, required=True)
    p.add_argument("--outdir", default="tables")
    _shape(p, m=True)
    _spec_args(p)
    _common(p)
    p.set_defaults(func=cmd_batch)
    return parser


def _validate(args):
    for name in ("n", "nt", "m", "mt", "m1", "mt1", "m2", "mt2", "deg"):
        v = getattr(args, name, None)
        if v is not None and v < 0:
            raise UsageError(f"--{name} must be nonnegative")


def _cache_path(argv) -> Path | None:
    root = os.environ.get("CMS_CACHE_DIR")
    if not root:
        return None
    key = hashlib.sha256(json.dumps(list(argv)).encode()).hexdigest()
    return Path(root) / f"{key}.out"


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    cacheable = args.command != "batch" and not getattr(args, "out", None)
    cache = _cache_path(argv) if cacheable else None
    if cache is not None and cache.exists():
        sys.stdout.write(cache.read_text(encoding="utf-8"))
        return 0
    try:
        _validate(args)
        if cache is not None:
            import io
            buf = io.StringIO()
            old, sys.stdout = sys.stdout, buf
            try:
                args.func(args)
            finally:
                sys.stdout = old
            cache.parent.mkdir(parents=True, exist_ok=True)
            cache.write_text(buf.getvalue(), encoding="utf-8")
            sys.stdout.write(buf.getvalue())
        else:
            args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except VerificationFailed as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 1
    except (ArithmeticError, HyperplaneDivisionError) as exc:
        print(f"math error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
