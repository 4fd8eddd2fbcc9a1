"""Command-line front end.

Exit status: 0 on success, 1 when a verification fails, 2 on usage errors
or unknown names. With ``--json`` a single object
``{argv, verb, params, result | report}`` is written to stdout.
"""
from __future__ import annotations

import argparse
import json
import sys

from .oracle import BudgetExceeded
from .profiles import parse_profile
from .solver import ConvergenceError

DEFAULT_ORDER = 40


class UsageError(Exception):
    pass


def _profile(text):
    try:
        return parse_profile(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _nonneg(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return v


def _series_text(coeffs) -> str:
    return "[" + ", ".join(str(c) for c in coeffs) + "]"


def _zq_result(F) -> dict:
    return {"zdeg": F.zdeg - 1, "order": F.order, "coeffs": F.to_json()}


def _print_zq(F) -> None:
    if F.zdeg == 1:
        print(_series_text(F[0].coeffs))
        return
    for m in range(F.zdeg):
        print(f"z^{m}: {_series_text(F[m].coeffs)}")


# --- verbs ---------------------------------------------------------------

def cmd_borodin(args):
    from .products import F_product, G_product
    from .profiles import borodin_exponents

    c = args.profile
    series = G_product(c, args.order) if args.g else F_product(c, args.order)
    result = {
        "profile": list(c.parts),
        "kind": "G" if args.g else "F",
        "exponents": borodin_exponents(c).to_json(),
        "series": series.to_json(),
    }
    if not args.json:
        print(_series_text(series.coeffs))
    return 0, result


def cmd_solve(args):
    from .solver import solve_F, solve_G

    c = args.profile
    M = args.zdeg + 1
    F = solve_F(c, M, args.order) if args.f else solve_G(c, M, args.order, schedule=args.schedule)[c]
    if not args.json:
        _print_zq(F)
    return 0, {"profile": list(c.parts), "kind": "F" if args.f else "G", **_zq_result(F)}


def cmd_sum(args):
    from .sums import eval_sum, eval_sum_at_1, lookup_spec

    try:
        spec = lookup_spec(args.name)
    except (KeyError, ValueError) as exc:
        raise UsageError(exc.args[0]) from None
    if args.z1 or spec.z_index is None:
        s = eval_sum_at_1(spec, args.order)
        if not args.json:
            print(_series_text(s.coeffs))
        return 0, {"name": spec.name, "at_z1": True, "order": args.order, "coeffs": s.to_json()}
    F = eval_sum(spec, args.zdeg + 1, args.order)
    if not args.json:
        _print_zq(F)
    return 0, {"name": spec.name, **_zq_result(F)}


def cmd_oracle(args):
    from .oracle import enumerate_cylindric

    table = enumerate_cylindric(args.profile, args.max_part, args.max_size, budget=args.budget)
    if not args.json:
        for m, row in enumerate(table.counts):
            print(f"max={m}: {_series_text(row)}")
        print(f"total: {_series_text(table.totals())}")
    return 0, table.to_json()


def cmd_verify(args):
    from .identities import verify_identity

    params = {"zdeg": args.zdeg, "r": args.r, "i": args.i, "profile": args.profile, "source": args.source}
    try:
        report = verify_identity(args.identity, args.order, **params)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    if not args.json:
        status = "OK" if report.ok else "FAILED"
        print(f"{report.name}: {status}")
        for p in report.parts:
            print(f"  {p.name}: {'ok' if p.ok else 'FAILED'}")
        bad = report.first_failure()
        if bad is not None:
            print(f"first failure: {bad.name} {json.dumps(bad.detail)}")
    return (0 if report.ok else 1), report.to_json()


def cmd_conjecture(args):
    from .checks import compute_P, compute_Q

    c = args.profile
    if c.k != 3:
        raise UsageError("conjecture needs a three-part profile")
    kinds = ["P", "Q"] if args.kind == "both" else [args.kind]
    reports = []
    for kind in kinds:
        fn = compute_P if kind == "P" else compute_Q
        reports.append(fn(c, args.n, args.order))
    ok = all(r.ok for r in reports)
    if not args.json:
        for r in reports:
            print(
                f"{r.kind}_{{{r.n},{r.profile.label()}}}: degree {r.degree}, zero on [{r.degree + 1}, {r.order}), "
                f"nonnegative={r.nonnegative}, value at 1={r.value_at_1}, expected={r.expected_at_1}"
            )
    return (0 if ok else 1), [r.to_json() for r in reports]


def cmd_recurrence(args):
    from .identities import verify_identity

    name = "qrec410" if args.qrec else "recg410"
    kmin = args.kmin if args.kmin is not None else (1 if args.qrec else 4)
    report = verify_identity(name, args.order, kmin=kmin, kmax=args.kmax, source=args.source)
    if not args.json:
        for p in report.parts:
            print(f"{p.name}: {'ok' if p.ok else 'FAILED ' + json.dumps(p.detail)}")
    return (0 if report.ok else 1), report.to_json()


# --- parser --------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cylindric", description="Exact q-series for cylindric partitions.")
    sub = parser.add_subparsers(dest="verb", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=fn)
        p.add_argument("--order", type=_nonneg, default=DEFAULT_ORDER, help="q-order N (coefficients q^0..q^{N-1})")
        p.add_argument("--json", action="store_true")
        return p

    p = add("borodin", cmd_borodin, "product side F_c(1,q) or G_c(1,q)")
    p.add_argument("--profile", type=_profile, required=True)
    p.add_argument("--g", action="store_true", help="remove the 1/(q;q)_oo factor")

    p = add("solve", cmd_solve, "solve the q-difference system for G_c(z,q)")
    p.add_argument("--profile", type=_profile, required=True)
    p.add_argument("--zdeg", type=_nonneg, default=4, help="largest z-degree kept")
    kind = p.add_mutually_exclusive_group()
    kind.add_argument("--f", action="store_true")
    kind.add_argument("--g", action="store_true")
    p.add_argument("--schedule", choices=["jacobi", "gauss-seidel"], default="jacobi")

    p = add("sum", cmd_sum, "evaluate a built-in sum side")
    p.add_argument("--name", required=True)
    p.add_argument("--zdeg", type=_nonneg, default=4)
    p.add_argument("--z1", action="store_true", help="evaluate at z = 1")

    p = add("oracle", cmd_oracle, "brute-force count table")
    p.add_argument("--profile", type=_profile, required=True)
    p.add_argument("--max-part", type=_nonneg, default=4)
    p.add_argument("--max-size", type=_nonneg, default=12)
    p.add_argument("--budget", type=int, default=10**7)

    p = add("verify", cmd_verify, "check a named identity")
    p.add_argument("--identity", required=True)
    p.add_argument("--zdeg", type=_nonneg)
    p.add_argument("--r", type=int)
    p.add_argument("--i", type=int)
    p.add_argument("--profile", type=_profile)
    p.add_argument("--source", choices=["solver", "sums", "both"])

    p = add("conjecture", cmd_conjecture, "P/Q polynomial report")
    p.add_argument("--profile", type=_profile, required=True)
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--kind", choices=["P", "Q", "both"], default="both")

    p = add("recurrence", cmd_recurrence, "residuals of the order-4 recurrence")
    p.add_argument("--kmin", type=_nonneg)
    p.add_argument("--kmax", type=_nonneg, default=12)
    p.add_argument("--source", choices=["solver", "sums", "both"], default="both")
    p.add_argument("--qrec", action="store_true", help="check the coupled coefficient relation instead")
    return parser


def _params(args) -> dict:
    out = {}
    for key, value in vars(args).items():
        if key in ("func", "verb", "json"):
            continue
        if hasattr(value, "parts"):
            value = list(value.parts)
        out[key] = value
    return out


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        code, result = args.func(args)
    except UsageError as exc:
        print(f"cylindric: error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"cylindric: error: {exc}", file=sys.stderr)
        return 2
    except (BudgetExceeded, ConvergenceError) as exc:
        print(f"cylindric: error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        key = "report" if args.verb in ("verify", "conjecture", "recurrence") else "result"
        doc = {"argv": argv, "verb": args.verb, "params": _params(args), key: result}
        sys.stdout.write(json.dumps(doc, ensure_ascii=False) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
