"""``symfields`` command line: run verification suites and evaluate single objects.

Exit codes: 0 success, 1 verification failure or math error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import alpha, divdiff, lie, wp
from .elliptic import (
    WeierstrassQuintuple,
    b_invariants,
    beta_map,
    cokernel_size_by_enumeration,
    is_smooth,
    isomorphic_by_invariants,
    isomorphic_over,
    j_invariant,
    short_form_invariants,
)
from .elliptic.isomorphism import MAX_ORDER
from .elliptic.twists import beta_image, characteristic
from .errors import (
    IncompleteAssignmentError,
    InternalConsistencyError,
    ParseError,
    PoleError,
    SymfieldsError,
    UnknownVariableError,
)
from .kernel import GF, QQ, Field, FiniteField, Registry, field_from_spec, parse_expr, print_canonical
from .report import Check, Report, run_checks
from .suites import run_suite, suite_names

OK, FAILURE, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- argument helpers ---------------------------------------------------------------


def _field(text: str) -> Field:
    try:
        return field_from_spec(text)
    except (ValueError, SymfieldsError) as exc:
        raise argparse.ArgumentTypeError(f"bad field {text!r}: {exc}") from None


def _value(text: str, field: Field):
    """A field element written in the expression grammar (e.g. 3, -1/2, gen+1)."""
    f = parse_expr(text, Registry(), field)
    if not f.is_constant():
        raise UsageError(f"{text!r} is not a constant")
    return f.constant_value()


def _values(text: str, field: Field, count: int | None = None) -> list:
    parts = text.split(",")
    if count is not None and len(parts) != count:
        raise UsageError(f"expected {count} comma-separated values, got {text!r}")
    return [_value(s, field) for s in parts]


def _assignment(text: str) -> dict[str, str]:
    out = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        name, sep, value = item.partition("=")
        if not sep or not name.strip() or not value.strip():
            raise UsageError(f"bad assignment {item!r}; expected var=value")
        out[name.strip()] = value.strip()
    return out


def _fmt(field: Field, v) -> str:
    return field.format(field.convert(v))


def _emit(args, data: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(data, indent=2))
    else:
        print("\n".join(lines))


def _emit_report(args, report: Report) -> int:
    print(report.to_json() if args.json else report.table())
    return report.exit_code()


# -- verbs -------------------------------------------------------------------------


def cmd_verify_suite(args) -> int:
    if args.suite not in suite_names():
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(suite_names())}")
    return _emit_report(args, run_suite(args.suite, args.seed))


def cmd_parse(args) -> int:
    f = parse_expr(args.expr, Registry(), args.field)
    out = print_canonical(f)
    _emit(args, {"expr": args.expr, "field": str(args.field), "canonical": out}, [out])
    return OK


def cmd_eval(args) -> int:
    reg = Registry()
    f = parse_expr(args.expr, reg, args.field)
    values = {}
    for name, text in _assignment(args.assignment).items():
        try:
            reg.lookup(name)
        except UnknownVariableError:
            raise UsageError(f"{name!r} does not occur in the expression") from None
        values[name] = _value(text, args.field)
    v = f.evaluate(values)
    out = args.field.format(args.field.convert(v))
    _emit(args, {"expr": args.expr, "assignment": args.assignment, "value": out}, [out])
    return OK


def _ec_field(args) -> Field:
    if args.p is not None:
        return QQ if args.p == 0 else GF(args.p)
    return args.field


def cmd_ec_invariants(args) -> int:
    F = _ec_field(args)
    w = WeierstrassQuintuple.make(_values(args.a, F, 5), F)
    b = b_invariants(w)
    data = {"field": str(F), "a": [_fmt(F, c) for c in w.coeffs]}
    data.update({k: _fmt(F, getattr(b, k)) for k in ("b2", "b4", "b6", "b8", "delta")})
    data["smooth"] = is_smooth(w)
    data["j"] = _fmt(F, j_invariant(w)) if data["smooth"] else None
    data["twist"] = None
    if data["smooth"] and w.is_short() and characteristic(F) not in (2, 3):
        t = short_form_invariants(w).twist
        data["twist"] = {"n": t.n, "gamma": F.format(t.gamma)}
    lines = [f"{k:6} {data[k]}" for k in ("field", "b2", "b4", "b6", "b8", "delta", "smooth", "j")]
    if data["twist"]:
        lines.append(f"twist  n={data['twist']['n']}, gamma={data['twist']['gamma']} mod K^x{data['twist']['n']}")
    _emit(args, data, lines)
    return OK


def cmd_ec_isomorphic(args) -> int:
    F = args.field
    w1 = WeierstrassQuintuple.make(_values(args.w1, F, 5), F)
    w2 = WeierstrassQuintuple.make(_values(args.w2, F, 5), F)
    data: dict = {"field": str(F), "w1": str(w1), "w2": str(w2)}
    verdicts = []
    if isinstance(F, FiniteField) and F.order <= MAX_ORDER:
        h = isomorphic_over(F, w1, w2)
        data["witness"] = None if h is None else {k: _fmt(F, getattr(h, k)) for k in "cdef"}
        verdicts.append(h is not None)
    if w1.is_short() and w2.is_short() and characteristic(F) not in (2, 3):
        by_inv = isomorphic_by_invariants(w1, w2)
        data["by_invariants"] = by_inv
        verdicts.append(by_inv)
    if not verdicts:
        raise UsageError(f"no decision procedure: brute force needs a finite field of order <= {MAX_ORDER}, "
                         "the invariant predicate needs short forms in characteristic not 2 or 3")
    if len(set(verdicts)) > 1:
        raise InternalConsistencyError("brute force and the invariant predicate disagree")
    data["isomorphic"] = verdicts[0]
    lines = [f"isomorphic: {'yes' if verdicts[0] else 'no'}"]
    if data.get("witness"):
        wt = data["witness"]
        lines.append(f"witness: c={wt['c']}, d={wt['d']}, e={wt['e']}, f={wt['f']}")
    _emit(args, data, lines)
    return OK


def cmd_ec_beta(args) -> int:
    F = args.field
    if not isinstance(F, FiniteField):
        raise UsageError("beta maps need a finite field")
    a = _value(args.a, F)
    beta = beta_map(args.q, a, F)
    enum = cokernel_size_by_enumeration(args.q, a, F)
    image = sorted(F.format(x) for x in beta_image(args.q, a, F))
    data = {"field": str(F), "q": args.q, "a": _fmt(F, a), "rank": beta.rank,
            "cokernel_size": beta.cokernel_size, "cokernel_size_enumerated": enum, "image": image}
    _emit(args, data, [f"rank           {beta.rank}", f"cokernel size  {beta.cokernel_size}",
                       f"enumerated     {enum}", f"image          {{{', '.join(image)}}}"])
    return OK if enum == beta.cokernel_size else FAILURE


def _basis(args) -> lie.LieBasis:
    return lie.LieBasis.parse(args.coef, args.var, Registry())


def cmd_lie_bracket(args) -> int:
    reg = Registry()
    d1, d2 = (lie.Derivation.parse(t, args.var, reg) for t in (args.f, args.g))
    out = d1.bracket(d2)
    _emit(args, {"bracket": str(out), "coefficient": print_canonical(out.coef)}, [str(out)])
    return OK


def cmd_lie_closed(args) -> int:
    closed = lie.is_closed(_basis(args))
    _emit(args, {"closed": closed}, [f"closed: {'yes' if closed else 'no'}"])
    return OK


def cmd_lie_normal_form(args) -> int:
    basis = _basis(args)
    if len(basis) == 2:
        r = lie.normal_form_2dim(basis)
    elif len(basis) == 3:
        r = lie.normal_form_3dim(basis)
    else:
        raise UsageError("normal forms exist for two or three basis elements")
    out = print_canonical(r)
    _emit(args, {"R": out, "dimension": len(basis)}, [f"R = {out}"])
    return OK


def cmd_divdiff(args) -> int:
    if args.symbolic:
        report = divdiff.verify_gn_invariants(args.n, args.points)
    else:
        report = run_checks(f"divdiff-n{args.n}", [
            Check(f"n{args.n}-random-elements", f"{divdiff.ANCHOR}: B_u^(n) is fixed by G_n",
                  lambda: divdiff.spot_check(args.n, args.seed))])
    return _emit_report(args, report)


def cmd_wp_verify(args) -> int:
    return _emit_report(args, wp.run_suite(args.seed))


def cmd_wp_sub(args) -> int:
    F = args.field
    C = wp.WpCurve.make(*_values(args.curve, F, 2), F)
    P1, P2 = (wp.WpPoint(*_values(t, F, 2)) for t in (args.p1, args.p2))
    if not C.is_smooth():
        raise SymfieldsError(f"curve a={C.a}, b={C.b} is singular")
    for P in (P1, P2):
        if not wp.on_curve(P, C):
            raise SymfieldsError(f"point {P} is not on h^2 = 4g^3 + ag + b with a={C.a}, b={C.b}")
    R = wp.wp_sub(P1, P2, C)
    oracle = wp.chord_sub(P1, P2, C)
    agree = R == oracle
    data = {"field": str(F), "g": _fmt(F, R.g), "h": _fmt(F, R.h),
            "chord_g": _fmt(F, oracle.g), "chord_h": _fmt(F, oracle.h), "agrees_with_chord_law": agree}
    _emit(args, data, [f"P1 - P2 = ({data['g']}, {data['h']})",
                       f"chord law: ({data['chord_g']}, {data['chord_h']})"])
    return OK if agree else FAILURE


def cmd_alpha_verify(args) -> int:
    names = [s.strip() for s in args.vars.split(",") if s.strip()]
    return _emit_report(args, alpha.verify_lambda(args.p, args.n, args.lambda_, names, args.seed))


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    # global flags are accepted before or after the verb
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for randomized checks")
    common.add_argument("--field", type=_field, default=argparse.SUPPRESS, help="Q, Fp or Fp^k (default Q)")

    parser = argparse.ArgumentParser(prog="symfields", description=__doc__.splitlines()[0], parents=[common])
    verbs = parser.add_subparsers(dest="verb", required=True)

    def verb(sub, name, fn, **kw):
        p = sub.add_parser(name, parents=[common], **kw)
        p.set_defaults(fn=fn)
        return p

    p = verb(verbs, "verify-suite", cmd_verify_suite, help="run a verification suite")
    p.add_argument("--suite", default="all", help=", ".join(suite_names()))

    p = verb(verbs, "parse", cmd_parse, help="print the canonical form of an expression")
    p.add_argument("expr")

    p = verb(verbs, "eval", cmd_eval, help="evaluate an expression exactly")
    p.add_argument("expr")
    p.add_argument("assignment", help="var=value,...")

    ec = verbs.add_parser("ec", help="elliptic curves").add_subparsers(dest="ec_verb", required=True)
    p = verb(ec, "invariants", cmd_ec_invariants)
    p.add_argument("--p", type=int, help="characteristic (0 for Q); overrides --field")
    p.add_argument("--a", required=True, help="a1,a2,a3,a4,a6")
    p = verb(ec, "isomorphic", cmd_ec_isomorphic)
    p.add_argument("--w1", required=True)
    p.add_argument("--w2", required=True)
    p = verb(ec, "beta", cmd_ec_beta)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--a", required=True)

    lie_p = verbs.add_parser("lie", help="derivation Lie algebras").add_subparsers(dest="lie_verb", required=True)
    p = verb(lie_p, "bracket", cmd_lie_bracket, help="[f d/dX, g d/dX]")
    p.add_argument("f")
    p.add_argument("g")
    p.add_argument("--var", default="X")
    for name, fn in (("closed", cmd_lie_closed), ("normal-form", cmd_lie_normal_form)):
        p = verb(lie_p, name, fn)
        p.add_argument("coef", nargs="+", help="coefficients f_i of f_i d/dX")
        p.add_argument("--var", default="X")

    p = verb(verbs, "divdiff", cmd_divdiff, help="fixedness of divided differences under G_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--points", type=int, default=2, help="extra points besides u")
    p.add_argument("--symbolic", action="store_true", help="fully symbolic group element")

    wp_p = verbs.add_parser("wp", help="wp subtraction formulas").add_subparsers(dest="wp_verb", required=True)
    verb(wp_p, "verify", cmd_wp_verify)
    p = verb(wp_p, "sub", cmd_wp_sub, help="(g1, h1) - (g2, h2) on h^2 = 4g^3 + ag + b")
    p.add_argument("--curve", required=True, help="a,b")
    p.add_argument("--p1", required=True, help="g,h")
    p.add_argument("--p2", required=True, help="g,h")

    al = verbs.add_parser("alpha", help="alpha_{p^n} actions").add_subparsers(dest="alpha_verb", required=True)
    p = verb(al, "verify", cmd_alpha_verify)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--lambda", dest="lambda_", required=True, help="polynomial in X")
    p.add_argument("--vars", default="u0,u1")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors with code 2
        return int(exc.code or 0)
    for name, default in (("json", False), ("seed", 0), ("field", QQ)):
        if not hasattr(args, name):
            setattr(args, name, default)
    try:
        return args.fn(args)
    except (UsageError, ParseError, UnknownVariableError, IncompleteAssignmentError) as exc:
        print(f"symfields: error: {exc.args[0] if exc.args else exc}", file=sys.stderr)
        return USAGE
    except PoleError:
        print("pole at assignment", file=sys.stderr)
        return FAILURE
    except (SymfieldsError, ArithmeticError) as exc:
        print(f"symfields: {type(exc).__name__}: {exc}", file=sys.stderr)
        return FAILURE


if __name__ == "__main__":
    sys.exit(main())
