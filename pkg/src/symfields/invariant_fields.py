"""Generators of the invariant fields K_a, K_c, K_d, the xi-coordinate charts,
and the exact identity checks around them."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DegenerateArgumentsError, InternalConsistencyError, PreconditionError
from .kernel import DEFAULT_REGISTRY, QQ, Field, RationalFunction, Registry, VariableId, parse_expr
from .perm import VariableMap, apply_substitution, orbit, symmetric_group
from .report import Check, Outcome, Report, equal, run_checks, unequal

ANCHOR_PROP = "Prop. alg-sub-KPsi"
ANCHOR_THM = "Theorem invar-subf"


def _vid(registry: Registry, v) -> VariableId:
    if isinstance(v, VariableId):
        return v
    return registry.var(v)


def _var(registry, v, fld) -> RationalFunction:
    return RationalFunction.var(_vid(registry, v), fld, registry)


def cross_ratio(t, u, v, w, registry: Registry = DEFAULT_REGISTRY, fld: Field = QQ) -> RationalFunction:
    """((t-u)(v-w)) / ((v-u)(t-w))."""
    t, u, v, w = (_vid(registry, a) for a in (t, u, v, w))
    if u == v or t == w:
        raise DegenerateArgumentsError("cross-ratio denominator vanishes identically")
    T, U, V, W = (_var(registry, a, fld) for a in (t, u, v, w))
    return ((T - U) * (V - W)) / ((V - U) * (T - W))


def kc_generator(u, v, w, registry: Registry = DEFAULT_REGISTRY, fld: Field = QQ) -> RationalFunction:
    """(u-v)/(v-w), a generator of K_c."""
    u, v, w = (_vid(registry, a) for a in (u, v, w))
    if v == w:
        raise DegenerateArgumentsError("v = w makes the K_c generator undefined")
    U, V, W = (_var(registry, a, fld) for a in (u, v, w))
    return (U - V) / (V - W)


# -- invariant generators ---------------------------------------------------------

FAMILY_GROUPS = {
    "Kd": {"mobius"},
    "Kc": {"affine", "translation", "scaling"},
    "Ka-additive": {"translation"},
    "Ka-multiplicative": {"scaling"},
    "Kc-power": {"translation", "scaling"},
}


@dataclass(frozen=True)
class InvariantGenerator:
    family: str
    args: tuple[VariableId, ...]
    value: RationalFunction
    n: int = 1

    def __post_init__(self):
        if self.family not in FAMILY_GROUPS:
            raise ValueError(f"unknown family {self.family!r}")


def kd(t, u, v, w, registry: Registry = DEFAULT_REGISTRY, fld: Field = QQ) -> InvariantGenerator:
    args = tuple(_vid(registry, a) for a in (t, u, v, w))
    return InvariantGenerator("Kd", args, cross_ratio(*args, registry=registry, fld=fld))


def kc(u, v, w, registry: Registry = DEFAULT_REGISTRY, fld: Field = QQ) -> InvariantGenerator:
    args = tuple(_vid(registry, a) for a in (u, v, w))
    return InvariantGenerator("Kc", args, kc_generator(*args, registry=registry, fld=fld))


def ka_additive(u, v, registry: Registry = DEFAULT_REGISTRY, fld: Field = QQ) -> InvariantGenerator:
    args = tuple(_vid(registry, a) for a in (u, v))
    U, V = (_var(registry, a, fld) for a in args)
    return InvariantGenerator("Ka-additive", args, U - V)


def ka_multiplicative(u, v, registry: Registry = DEFAULT_REGISTRY, fld: Field = QQ) -> InvariantGenerator:
    args = tuple(_vid(registry, a) for a in (u, v))
    U, V = (_var(registry, a, fld) for a in args)
    return InvariantGenerator("Ka-multiplicative", args, U / V)


def kc_power(u, v, n: int, registry: Registry = DEFAULT_REGISTRY, fld: Field = QQ) -> InvariantGenerator:
    if n < 1:
        raise ValueError("n must be positive")
    args = tuple(_vid(registry, a) for a in (u, v))
    U, V = (_var(registry, a, fld) for a in args)
    return InvariantGenerator("Kc-power", args, (U - V) ** n, n)


def generic_action(group: str, registry: Registry, fld: Field = QQ):
    """Return ``phi(V) -> RationalFunction`` for the generic element of ``group``,
    with parameters as fresh symbols."""

    def sym(stem):
        return RationalFunction.var(registry.fresh(stem), fld, registry)

    if group == "translation":
        s = sym("s")
        return lambda V: V + s
    if group == "scaling":
        a = sym("a")
        return lambda V: a * V
    if group == "affine":
        a, b = sym("a"), sym("b")
        return lambda V: a * V + b
    if group == "mobius":
        a, b, c, d = sym("a"), sym("b"), sym("c"), sym("d")
        return lambda V: (a * V + b) / (c * V + d)
    raise ValueError(f"unknown group {group!r}")


def verify_group_invariance(gen: InvariantGenerator, group: str,
                            registry: Registry | None = None) -> bool:
    """Substitute the generic group element into every argument and compare
    canonical forms.  Parameters are formal, so this proves invariance as an
    identity of rational functions (a Moebius factor ad-bc cancels on its own
    in the canonical form)."""
    if group not in FAMILY_GROUPS[gen.family]:
        raise PreconditionError(f"group {group!r} does not match family {gen.family!r}")
    registry = registry or gen.value.registry
    phi = generic_action(group, registry, gen.value.field)
    images = {a: phi(RationalFunction.var(a, gen.value.field, registry)) for a in gen.args}
    return gen.value.substitute(images) == gen.value


# -- xi charts --------------------------------------------------------------------


@dataclass(frozen=True)
class XiChart:
    """Case c: xi_u = (u-y)/(x-y).  Case d: xi_u = ((u-y)(z-x))/((z-u)(x-y))."""

    case: str
    basepoints: tuple[VariableId, ...]
    fld: Field = QQ
    registry: Registry = field(default=DEFAULT_REGISTRY, compare=False)

    def __post_init__(self):
        need = {"c": 2, "d": 3}.get(self.case)
        if need is None:
            raise ValueError("case must be 'c' or 'd'")
        if len(self.basepoints) != need:
            raise ValueError(f"case {self.case} needs {need} basepoints")
        if len(set(self.basepoints)) != need:
            raise DegenerateArgumentsError("basepoints must be pairwise distinct")

    @classmethod
    def make(cls, case: str, basepoints, registry: Registry = DEFAULT_REGISTRY, fld: Field = QQ) -> XiChart:
        return cls(case, tuple(_vid(registry, b) for b in basepoints), fld, registry)

    def _bp(self):
        return [RationalFunction.var(b, self.fld, self.registry) for b in self.basepoints]

    def xi(self, u) -> RationalFunction:
        u = _vid(self.registry, u)
        U = RationalFunction.var(u, self.fld, self.registry)
        if self.case == "c":
            X, Y = self._bp()
            return (U - Y) / (X - Y)
        X, Y, Z = self._bp()
        if u == self.basepoints[2]:
            raise DegenerateArgumentsError("xi_z has a pole in case d")
        return ((U - Y) * (Z - X)) / ((Z - U) * (X - Y))

    def symbol(self, u) -> VariableId:
        """The formal symbol standing for xi_u."""
        u = _vid(self.registry, u)
        if u in self.basepoints:
            raise PreconditionError("xi symbols are only for non-basepoint variables")
        return self.registry.var(f"xi_{u.name}")

    def realize(self, expr: RationalFunction) -> RationalFunction:
        """Replace each formal symbol xi_v by its value in the chart."""
        images = {}
        for i in expr.variables():
            name = self.registry.name(i)
            if not name.startswith("xi_"):
                raise PreconditionError(f"{name} is not a xi symbol")
            images[i] = self.xi(name[3:])
        return expr.substitute(images)


def xi_apply(chart: XiChart, u) -> RationalFunction:
    return chart.xi(u)


def transposition_on_xi(chart: XiChart, kind, expr: RationalFunction) -> RationalFunction:
    """Apply a basepoint transposition to an expression in xi symbols.

    ``kind`` is ``"id"``, ``"xy"`` or ``("xu", u)``.  The result is written in
    xi symbols by the closed law (xu): xi_v -> xi_v/xi_u and (xy): xi_v -> 1 - xi_v,
    and is checked against the actual variable transposition.
    """
    if kind == "id":
        return expr
    reg = chart.registry
    x, y = chart.basepoints[0], chart.basepoints[1]
    names = [reg.name(i) for i in expr.variables()]
    if not all(n.startswith("xi_") for n in names):
        raise PreconditionError("expression must be built from xi symbols")
    symbols = [n[3:] for n in names]
    images = {}
    if kind == "xy":
        sigma = VariableMap.swap(x, y, reg)
        for name in symbols:
            s = RationalFunction.var(chart.symbol(name), chart.fld, reg)
            images[s.variables()[0]] = 1 - s
    elif isinstance(kind, tuple) and kind[0] == "xu":
        u = _vid(reg, kind[1])
        if u in chart.basepoints:
            raise PreconditionError("u must differ from the basepoints")
        sigma = VariableMap.swap(x, u, reg)
        xi_u = RationalFunction.var(chart.symbol(u), chart.fld, reg)
        for name in symbols:
            s = RationalFunction.var(chart.symbol(name), chart.fld, reg)
            # (xu) sends xi_u to xi_x / xi_u = 1/xi_u
            images[s.variables()[0]] = xi_u.inverse() if name == u.name else s / xi_u
    else:
        raise ValueError(f"unknown transposition kind {kind!r}")
    predicted = expr.substitute(images)
    actual = apply_substitution(chart.realize(expr), sigma)
    if chart.realize(predicted) != actual:
        raise InternalConsistencyError(f"closed-form law fails for {kind!r}: {predicted} vs {actual}")
    return predicted


# -- classical cross-ratio orbit ---------------------------------------------------


def six_cross_ratios(lam: RationalFunction) -> set[RationalFunction]:
    return {lam, 1 / lam, 1 - lam, 1 / (1 - lam), lam / (lam - 1), (lam - 1) / lam}


def cross_ratio_orbit(t, u, v, w, registry: Registry = DEFAULT_REGISTRY, fld: Field = QQ):
    lam = cross_ratio(t, u, v, w, registry, fld)
    return orbit(lam, symmetric_group([t, u, v, w], registry))


# -- identity suite ----------------------------------------------------------------


def _identity_checks(registry: Registry) -> list[Check]:
    def P(s):
        return parse_expr(s, registry)

    def d_chart():
        # basepoints (y, x, z): xi_u = ((x-u)(y-z))/((x-y)(u-z)), the form used in I1
        return XiChart.make("d", ["y", "x", "z"], registry)

    def i1():
        lhs = P("((x-u)*(y-z))/((x-y)*(u-z))") * P("((u-z)*(x-t))/((u-x)*(z-t))")
        return equal(lhs, P("((x-t)*(y-z))/((x-y)*(t-z))"))

    def i2():
        ch = d_chart()
        return equal(ch.xi("u") - ch.xi("v"), P("((v-u)*(y-z)*(x-z))/((x-y)*(u-z)*(v-z))"),
                     "chart with basepoints (y, x, z)")

    def i2_orientation():
        ch = XiChart.make("d", ["x", "y", "z"], registry)
        return equal(ch.xi("u") - ch.xi("v"), -P("((v-u)*(y-z)*(x-z))/((x-y)*(u-z)*(v-z))"),
                     "basepoints (x, y, z) give the negative")

    def i3():
        ch = d_chart()
        lhs = (ch.xi("u") - ch.xi("v")) / (ch.xi("u") - ch.xi("w"))
        return equal(lhs, P("((w-z)*(v-u))/((w-u)*(v-z))"))

    def i4():
        ch = d_chart()
        lhs = ch.xi("u").inverse() - ch.xi("v").inverse()
        first = equal(lhs, P("((x-y)*(x-z)*(u-v))/((x-u)*(x-v)*(y-z))"))
        second = unequal(P("((x-w)*(u-v))/((x-v)*(u-w))"), P("((w-u)*(v-z))/((w-z)*(v-u))"))
        return Outcome(first.ok and second.ok, first.lhs, first.rhs,
                       None if second.ok else f"unexpected equality: {second.lhs}")

    def i5():
        holds = equal(P("-(t-v)/(v-w)"), P("((u-v)/(v-w))*((t-v)/(v-u))"))
        fails = unequal(P("-(t+v-2*w)/(v+w-2*t)"), P("((u+v-2*w)/(v+w-2*u))*((t+v-2*u)/(v+u-2*t))"))
        return Outcome(holds.ok and fails.ok, holds.lhs, holds.rhs,
                       None if fails.ok else "involution unexpectedly multiplicative")

    def i6():
        f = P("(T-2)/(2*T-1)")
        T = registry.lookup("T")
        return equal(f.substitute({T: f}), P("T"))

    return [
        Check("I1", f"{ANCHOR_PROP}: multiplicativity of the xi-chart", i1),
        Check("I2", f"{ANCHOR_PROP}: difference xi_u - xi_v", i2),
        Check("I2-orientation", f"{ANCHOR_PROP}: basepoint order of the case-d chart", i2_orientation),
        Check("I3", f"{ANCHOR_PROP}: ratio of differences", i3),
        Check("I4", f"{ANCHOR_PROP}: inverse difference", i4),
        Check("I5", f"{ANCHOR_PROP}: this involution is not multiplicative", i5),
        Check("I6", f"{ANCHOR_PROP}: the involution (T-2)/(2T-1)", i6),
    ]


def verify_identity_suite(suite: str = "alg-sub-kpsi", registry: Registry | None = None) -> Report:
    if suite != "alg-sub-kpsi":
        raise ValueError(f"unknown identity suite {suite!r}")
    return run_checks(suite, _identity_checks(registry or Registry()))


def transposition_checks(registry: Registry, n_aux: int = 5) -> list[Check]:
    """Chart naturality for (x u) and (x y) over ``n_aux`` auxiliary variables."""
    aux = [f"v{i}" for i in range(1, n_aux + 1)]
    checks = []
    for case, bps in (("c", ["x", "y"]), ("d", ["x", "y", "z"])):
        chart = XiChart.make(case, bps, registry)
        syms = [RationalFunction.var(chart.symbol(a), QQ, registry) for a in aux]

        def single(chart=chart, syms=syms, case=case):
            ok = True
            for u in aux:
                for s in syms:
                    got = transposition_on_xi(chart, ("xu", u), s)
                    v = registry.name(s.variables()[0])[3:]
                    xu = RationalFunction.var(chart.symbol(u), QQ, registry)
                    expect = 1 / xu if v == u else s / xu
                    ok &= got == expect
            for s in syms:
                ok &= transposition_on_xi(chart, "xy", s) == 1 - s
            return Outcome(ok, detail=f"case {case}, {len(aux)} auxiliary variables")

        def compound(chart=chart, syms=syms):
            expr = syms[0] * syms[1] + syms[2] / (syms[3] - syms[4])
            for u in aux:
                transposition_on_xi(chart, ("xu", u), expr)
            transposition_on_xi(chart, "xy", expr)
            return transposition_on_xi(chart, "id", expr) == expr

        checks.append(Check(f"xi-laws-{case}", f"{ANCHOR_PROP}: transforms xi_v to xi_v/xi_u and xi_u to 1-xi_u",
                            single))
        checks.append(Check(f"xi-naturality-{case}", f"{ANCHOR_PROP}: transposition laws on compound expressions",
                            compound))
    return checks


def invariance_checks(registry: Registry) -> list[Check]:
    def orbit6():
        lam = cross_ratio("t", "u", "v", "w", registry)
        orb = cross_ratio_orbit("t", "u", "v", "w", registry)
        return Outcome(len(orb) == 6 and orb == six_cross_ratios(lam), str(len(orb)), "6")

    def mobius():
        return verify_group_invariance(kd("t", "u", "v", "w", registry), "mobius")

    def affine():
        return verify_group_invariance(kc("u", "v", "w", registry), "affine")

    def scaling_fails():
        return not verify_group_invariance(kc_power("u", "v", 1, registry), "scaling")

    def additive():
        return verify_group_invariance(ka_additive("u", "v", registry), "translation")

    def multiplicative():
        return verify_group_invariance(ka_multiplicative("u", "v", registry), "scaling")

    def power():
        return verify_group_invariance(kc_power("u", "v", 3, registry), "translation")

    return [
        Check("cross-ratio-orbit", f"{ANCHOR_PROP}: cross-ratio under S4", orbit6),
        Check("Kd-mobius", f"{ANCHOR_THM}: PGL2-invariance for d=3", mobius),
        Check("Kc-affine", f"{ANCHOR_THM}: Ga x Gm invariance for d=2", affine),
        Check("Ka-additive", f"{ANCHOR_THM}: translation invariance of u-v", additive),
        Check("Ka-multiplicative", f"{ANCHOR_THM}: scaling invariance of u/v", multiplicative),
        Check("Kc-power", f"{ANCHOR_PROP}: K_c((u-v)^n) generators are translation invariant", power),
        Check("scaling-moves-difference", f"{ANCHOR_THM}: u-v is not scaling invariant", scaling_fails),
    ]


def run_suite(registry: Registry | None = None) -> Report:
    reg = registry or Registry()
    checks = _identity_checks(reg) + transposition_checks(reg) + invariance_checks(reg)
    return run_checks("invariant-fields", checks)
