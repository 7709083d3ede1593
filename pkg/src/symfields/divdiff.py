"""Divided differences B_u^(s) and the unipotent groups G_n acting by
phi(A, B) -> phi(A + a, B + P(A)) with deg P < n."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import cached_property
from math import comb

from .kernel import QQ, Field, RationalFunction, Registry
from .perm import VariableMap, apply_substitution
from .report import Check, Outcome, Report, equal, run_checks

ANCHOR = "Remark unbounded_tr_deg"


@dataclass(frozen=True)
class DivDiffContext:
    """Nodes x_1..x_n plus further points; each point w has variables A_w and B_w.

    x_1 is always present as the reference point of A'_u = A_u - A_{x_1}, even
    when n = 0.
    """

    n: int
    points: tuple[str, ...]
    registry: Registry
    fld: Field = QQ

    @classmethod
    def make(cls, n: int, extra=("u",), registry: Registry | None = None, fld: Field = QQ) -> DivDiffContext:
        if n < 0:
            raise ValueError("n must be nonnegative")
        nodes = tuple(f"x{i}" for i in range(1, max(n, 1) + 1))
        extra = tuple(extra)
        if len(set(nodes + extra)) != len(nodes) + len(extra):
            raise ValueError("points must be distinct")
        return cls(n, nodes + extra, registry or Registry(), fld)

    @property
    def nodes(self) -> tuple[str, ...]:
        return self.points[: self.n]

    @property
    def extra(self) -> tuple[str, ...]:
        return self.points[max(self.n, 1):]

    def A(self, w: str) -> RationalFunction:
        return RationalFunction.var(self.registry.var(f"A_{w}"), self.fld, self.registry)

    def B(self, w: str) -> RationalFunction:
        return RationalFunction.var(self.registry.var(f"B_{w}"), self.fld, self.registry)

    @cached_property
    def _memo(self) -> dict:
        return {}

    def div_diff(self, s: int, w: str = "u") -> RationalFunction:
        """B_w^(s) = (B_w^(s-1) - B_{x_s}^(s-1)) / (A_w - A_{x_s})."""
        if not 0 <= s <= self.n:
            raise ValueError(f"s must lie in [0, {self.n}]")
        if w not in self.points:
            raise ValueError(f"unknown point {w!r}")
        if w in self.nodes[:s]:
            raise ValueError(f"B_{w}^({s}) needs {w} outside x_1..x_{s}")
        key = (s, w)
        hit = self._memo.get(key)
        if hit is None:
            if s == 0:
                hit = self.B(w)
            else:
                xs = self.nodes[s - 1]
                hit = (self.div_diff(s - 1, w) - self.div_diff(s - 1, xs)) / (self.A(w) - self.A(xs))
            self._memo[key] = hit
        return hit

    def a_prime(self, w: str) -> RationalFunction:
        return self.A(w) - self.A(self.points[0])


def div_diff(ctx: DivDiffContext, s: int, w: str = "u") -> RationalFunction:
    return ctx.div_diff(s, w)


@dataclass(frozen=True)
class GnElement:
    """phi(A, B) -> phi(A + a, B + P(A)), P = sum p[i] A^i."""

    a: RationalFunction
    p: tuple[RationalFunction, ...]

    @classmethod
    def symbolic(cls, n: int, registry: Registry, fld: Field = QQ, stem: str = "") -> GnElement:
        def sym(name):
            return RationalFunction.var(registry.fresh(name), fld, registry)

        return cls(sym(f"a{stem}"), tuple(sym(f"p{stem}{i}") for i in range(n)))

    @classmethod
    def concrete(cls, a, p, registry: Registry, fld: Field = QQ) -> GnElement:
        def c(v):
            return RationalFunction.constant(v, fld, registry)

        return cls(c(a), tuple(c(v) for v in p))

    @property
    def n(self) -> int:
        return len(self.p)

    def P(self, t: RationalFunction) -> RationalFunction:
        out = t * 0
        for c in reversed(self.p):
            out = out * t + c
        return out

    def compose(self, inner: GnElement) -> GnElement:
        """The element acting as ``self`` after ``inner``:
        a = a_self + a_inner and P(A) = P_self(A) + P_inner(A + a_self)."""
        if inner.n != self.n:
            raise ValueError("elements of different groups")
        n = self.n
        # coefficients of P_inner(A + a_self) by Taylor shift
        shifted = [self.a * 0 for _ in range(n)]
        for j, c in enumerate(inner.p):
            for i in range(j + 1):
                shifted[i] = shifted[i] + c * comb(j, i) * self.a ** (j - i)
        p = tuple(sp + q for sp, q in zip(self.p, shifted))
        return GnElement(self.a + inner.a, p)


def gn_apply(g: GnElement, f: RationalFunction, ctx: DivDiffContext) -> RationalFunction:
    """Substitute A_w -> A_w + a and B_w -> B_w + P(A_w) for every point of ``ctx``."""
    images = {}
    for w in ctx.points:
        A = ctx.A(w)
        images[A.variables()[0]] = A + g.a
        images[ctx.B(w).variables()[0]] = ctx.B(w) + g.P(A)
    used = set(f.variables())
    return f.substitute({k: v for k, v in images.items() if k in used})


def verify_gn_invariants(n: int, extra_points: int = 2, registry: Registry | None = None) -> Report:
    """A'_w and B_w^(n) are fixed by a fully symbolic element of G_n."""
    if extra_points < 1:
        raise ValueError("need at least one extra point")
    extra = ["u"] + [f"v{i}" for i in range(1, extra_points + 1)]
    ctx = DivDiffContext.make(n, extra, registry)
    g = GnElement.symbolic(n, ctx.registry)
    checks = []
    for w in extra:
        checks.append(Check(f"n{n}-A'_{w}", f"{ANCHOR}: A'_u is fixed by G_n",
                            lambda w=w: equal(gn_apply(g, ctx.a_prime(w), ctx), ctx.a_prime(w))))
        checks.append(Check(f"n{n}-B_{w}^({n})", f"{ANCHOR}: B_v^(n) is fixed by G_n",
                            lambda w=w: equal(gn_apply(g, ctx.div_diff(n, w), ctx), ctx.div_diff(n, w))))
    return run_checks(f"divdiff-n{n}", checks)


def node_symmetry(s: int, registry: Registry | None = None) -> bool:
    """B_u^(s) is symmetric in the nodes x_1..x_s."""
    ctx = DivDiffContext.make(s, ("u",), registry)
    f = ctx.div_diff(s, "u")
    reg = ctx.registry
    for perm in itertools.permutations(ctx.nodes):
        m = {}
        for src, dst in zip(ctx.nodes, perm):
            m[reg.var(f"A_{src}")] = reg.var(f"A_{dst}")
            m[reg.var(f"B_{src}")] = reg.var(f"B_{dst}")
        if apply_substitution(f, VariableMap(m, reg)) != f:
            return False
    return True


def composition_law(n: int, registry: Registry | None = None) -> Outcome:
    ctx = DivDiffContext.make(n, ("u", "v"), registry)
    reg = ctx.registry
    outer = GnElement.symbolic(n, reg, stem="o")
    inner = GnElement.symbolic(n, reg, stem="i")
    # a test function mixing A and B at two points
    f = ctx.B("u") * ctx.A("v") + ctx.B("v") ** 2 / (ctx.A("u") + 1)
    lhs = gn_apply(outer, gn_apply(inner, f, ctx), ctx)
    rhs = gn_apply(outer.compose(inner), f, ctx)
    return equal(lhs, rhs, f"n={n}")


def numeric_example() -> Outcome:
    ctx = DivDiffContext.make(2, ("u",))
    vals = {}
    for w, a, b in zip(("x1", "x2", "u"), (0, 1, 2), (5, 7, 11)):
        vals[f"A_{w}"] = a
        vals[f"B_{w}"] = b
    got = ctx.div_diff(2, "u").evaluate(vals)
    return Outcome(got == 1, str(got), "1")


def spot_check(n: int, seed: int, trials: int = 5) -> bool:
    """Fixedness of B_u^(n) under random concrete rational group elements."""
    rng = random.Random(seed)
    ctx = DivDiffContext.make(n, ("u",))
    f = ctx.div_diff(n, "u")
    for _ in range(trials):
        g = GnElement.concrete(rng.randint(-9, 9), [rng.randint(-9, 9) for _ in range(n)], ctx.registry)
        if gn_apply(g, f, ctx) != f:
            return False
    return True


def run_suite(seed: int = 0, max_n: int = 4, extra_points: int = 2) -> Report:
    report = Report("divdiff")
    report.extend(run_checks("divdiff", [
        Check("numeric-B2", f"{ANCHOR}: B_u^(s) recursion", numeric_example),
        Check("base-case", f"{ANCHOR}: B_u^(0) := B_u",
              lambda: (lambda c: c.div_diff(0) == c.B("u"))(DivDiffContext.make(1))),
        Check("spot-check", f"{ANCHOR}: fixed under random rational elements of G_2", lambda: spot_check(2, seed)),
    ]))
    for n in range(max_n + 1):
        report.extend(verify_gn_invariants(n, extra_points))
    checks = [Check(f"node-symmetry-s{s}", f"{ANCHOR}: divided differences are symmetric in the nodes",
                    lambda s=s: node_symmetry(s)) for s in range(1, 4)]
    checks += [Check(f"composition-n{n}", f"{ANCHOR}: G_n is a group of substitutions",
                     lambda n=n: composition_law(n)) for n in range(3)]
    checks.append(Check("dimension", f"{ANCHOR}: dim G_n = n+1",
                        lambda: all(len(GnElement.symbolic(n, Registry()).p) + 1 == n + 1 for n in range(5))))
    report.extend(run_checks("divdiff", checks))
    return report
