"""
R-polynomials, Kazhdan-Lusztig polynomials P, their inverses Q and the
Kazhdan-Lusztig basis, all by the defining recursions.

Every table is interval-lazy: asking for (x, y) fills in only the pairs
inside the Bruhat interval [x, y] of D_J.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .coxeter import CoxeterSystem, Element, format_element
from .errors import IdentityViolation, ZeroWeight
from .heckemod import ModuleVector, ParabolicModule, bar_gamma, bar_vector, get_module
from .laurent import ONE, ZERO, LaurentPoly

KINDS = ("R", "Rtilde", "P", "Q")


def _ctx(sys_or_ctx, J=None) -> ParabolicModule:
    if isinstance(sys_or_ctx, ParabolicModule):
        return sys_or_ctx
    return get_module(sys_or_ctx, J)


def vweight(ctx: ParabolicModule, w: Element) -> int:
    """2 L(w): the v-exponent of q_w."""
    memo = ctx.memo("vweight")
    r = memo.get(w)
    if r is None:
        r = memo.setdefault(w, 2 * ctx.sys.weight_of(w))
    return r


def _sign(x: Element, y: Element) -> int:
    return -1 if (x.length + y.length) % 2 else 1


def require_positive(ctx: ParabolicModule) -> None:
    if any(w <= 0 for w in ctx.sys.weights):
        raise ZeroWeight(f"KL polynomials need positive weights, got {ctx.sys.weights}")


# ---------------------------------------------------------------------------
# R and R-tilde


def r_poly(sys, J, x: Element, y: Element) -> LaurentPoly:
    """R_{x,y} = eps_x eps_y q_y [Gamma_x] bar(Gamma_y)."""
    ctx = _ctx(sys, J)
    ctx.check(x, y)
    memo = ctx.memo("R")
    key = (x, y)
    r = memo.get(key)
    if r is None:
        c = bar_gamma(ctx, y)[x]
        r = c.shift(vweight(ctx, y)) * _sign(x, y)
        r = memo.setdefault(key, r)
    return r


def r_tilde(sys, J, x: Element, y: Element) -> LaurentPoly:
    """R~_{x,y} = eps_x eps_y q_x^-1 q_y bar(R_{x,y})."""
    ctx = _ctx(sys, J)
    memo = ctx.memo("Rtilde")
    key = (x, y)
    r = memo.get(key)
    if r is None:
        r = r_poly(ctx, None, x, y).bar().shift(vweight(ctx, y) - vweight(ctx, x)) * _sign(x, y)
        r = memo.setdefault(key, r)
    return r


# ---------------------------------------------------------------------------
# P


def p_poly(sys, J, x: Element, y: Element) -> LaurentPoly:
    """The weighted KL polynomial P_{x,y}.

    Descending induction on x inside [x, y]: with
    F = sum_{x < t <= y} R_{x,t} P_{t,y}, the identity
    q_x^-1 q_y bar(P) = P + F and the degree bound force P = -L_half(F).
    Both the identity and the bound are re-checked on every entry.
    """
    ctx = _ctx(sys, J)
    ctx.check(x, y)
    require_positive(ctx)
    memo = ctx.memo("P")
    hit = memo.get((x, y))
    if hit is not None:
        return hit
    if x == y:
        return memo.setdefault((x, y), ONE)
    if not ctx.sys.bruhat_leq(x, y):
        return memo.setdefault((x, y), ZERO)
    vy = vweight(ctx, y)
    for t in reversed(ctx.interval(x, y)):
        if (t, y) in memo:
            continue
        if t == y:
            memo.setdefault((t, y), ONE)
            continue
        F = ZERO
        for u in ctx.interval(t, y):
            if u != t:
                F = F + r_poly(ctx, None, t, u) * memo[(u, y)]
        gap = vy - vweight(ctx, t)
        P = -F.vtrunc_lower(gap // 2)
        if P.bar().shift(gap) != P + F:
            raise IdentityViolation(
                f"P recursion identity fails at ({format_element(ctx.sys, t)}, {format_element(ctx.sys, y)})"
            )
        if P.vdeg() >= gap // 2:
            raise IdentityViolation(
                f"degree bound fails for P at ({format_element(ctx.sys, t)}, {format_element(ctx.sys, y)})"
            )
        memo.setdefault((t, y), P)
    return memo[(x, y)]


# ---------------------------------------------------------------------------
# Q


def q_poly(sys, J, x: Element, y: Element) -> LaurentPoly:
    """Inverse KL polynomial: sum_{x<=t<=y} eps_t eps_y Q_{x,t} P_{t,y} = delta_{x,y}.

    Forward induction on y inside [x, y]. The R~ identity
    q_x^-1 q_y bar(Q_{x,y}) = sum_t Q_{x,t} R~_{t,y} is checked on every entry;
    degree-bound failures are logged in the ``Q_bound`` memo instead of raised.
    """
    ctx = _ctx(sys, J)
    ctx.check(x, y)
    require_positive(ctx)
    memo = ctx.memo("Q")
    hit = memo.get((x, y))
    if hit is not None:
        return hit
    if x == y:
        return memo.setdefault((x, y), ONE)
    if not ctx.sys.bruhat_leq(x, y):
        return memo.setdefault((x, y), ZERO)
    vx = vweight(ctx, x)
    for t in ctx.interval(x, y):
        if (x, t) in memo:
            continue
        if t == x:
            memo.setdefault((x, t), ONE)
            continue
        Q = ZERO
        for u in ctx.interval(x, t):
            if u != t:
                Q = Q - memo[(x, u)] * p_poly(ctx, None, u, t) * _sign(u, t)
        gap = vweight(ctx, t) - vx
        rhs = ZERO
        for u in ctx.interval(x, t):
            qxu = Q if u == t else memo[(x, u)]
            rhs = rhs + qxu * r_tilde(ctx, None, u, t)
        if Q.bar().shift(gap) != rhs:
            raise IdentityViolation(
                f"Q/R~ identity fails at ({format_element(ctx.sys, x)}, {format_element(ctx.sys, t)})"
            )
        if not Q.is_zero() and (Q.vdeg() >= gap // 2 or Q.vmindeg() < 0):
            ctx.memo("Q_bound").setdefault((x, t), Q)
        memo.setdefault((x, t), Q)
    return memo[(x, y)]


# ---------------------------------------------------------------------------
# KL basis


def c_basis(sys, J, y: Element) -> ModuleVector:
    """C_y = sum_x eps_x eps_y q_x^-1 q_y^(1/2) bar(P_{x,y}) Gamma_x."""
    ctx = _ctx(sys, J)
    ctx.check(y)
    require_positive(ctx)
    coords = {}
    vy = vweight(ctx, y)
    for x in ctx.below(y):
        P = p_poly(ctx, None, x, y)
        if P:
            coords[x] = P.bar().shift(vy // 2 - vweight(ctx, x)) * _sign(x, y)
    return ModuleVector(ctx, coords)


def is_bar_invariant(v: ModuleVector) -> bool:
    return bar_vector(v) == v


# ---------------------------------------------------------------------------
# tables and identity checks


@dataclass
class PolyTable:
    kind: str
    ctx: ParabolicModule
    entries: dict[tuple[Element, Element], LaurentPoly] = field(default_factory=dict)

    def rows(self) -> list[tuple[Element, Element, LaurentPoly]]:
        """Nonzero entries ordered by y, then x, each by (length, datum)."""
        keyed = sorted(self.entries.items(), key=lambda kv: (kv[0][1].sort_key(), kv[0][0].sort_key()))
        return [(x, y, p) for (x, y), p in keyed if p]


_KIND_FUNCS = {"R": r_poly, "Rtilde": r_tilde, "P": p_poly, "Q": q_poly}


def entry(kind: str, sys, J, x: Element, y: Element) -> LaurentPoly:
    return _KIND_FUNCS[kind](sys, J, x, y)


def comparable_pairs(ctx: ParabolicModule, max_gap: int | None = None) -> list[tuple[Element, Element]]:
    """All x <= y in D_J, ordered by y then x; optionally with l(y) - l(x) <= max_gap."""
    out = []
    for y in ctx.dj:
        for x in ctx.below(y):
            if max_gap is None or y.length - x.length <= max_gap:
                out.append((x, y))
    return out


def poly_table(sys, J, kind: str, pairs: Iterable[tuple[Element, Element]] | None = None) -> PolyTable:
    if kind not in _KIND_FUNCS:
        raise ValueError(f"unknown table kind {kind!r}")
    ctx = _ctx(sys, J)
    table = PolyTable(kind, ctx)
    for x, y in pairs if pairs is not None else comparable_pairs(ctx):
        table.entries[(x, y)] = entry(kind, ctx, None, x, y)
    return table


@dataclass
class CheckResult:
    """Outcome of one identity suite."""

    name: str
    passed: bool = True
    checked: int = 0
    counterexample: str | None = None
    note: str | None = None

    def fail(self, message: str) -> None:
        if self.passed:
            self.passed = False
            self.counterexample = message

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} {self.name} ({self.checked} checks)"
        if self.counterexample:
            text += f": {self.counterexample}"
        if self.note:
            text += f" [{self.note}]"
        return text


def _pair_text(ctx: ParabolicModule, *ws: Element) -> str:
    return "(" + ", ".join(format_element(ctx.sys, w) for w in ws) + ")"


def verify_r_identities(sys, J=None) -> list[CheckResult]:
    """Check the R/R~ inversion identity and its strict-interval consequence on all pairs of D_J.

    * sum_{x<=t<=y} eps_t eps_y R_{x,t} R~_{t,y} = delta_{x,y}
    * sum_{x<t<=y} eps_x eps_t R~_{x,t} R_{t,y} = delta_{x,y} - R_{x,y}
    """
    ctx = _ctx(sys, J)
    inv = CheckResult("R*R~ inversion")
    strict = CheckResult("R~*R strict-interval identity")
    R = lambda a, b: r_poly(ctx, None, a, b)  # noqa: E731
    Rt = lambda a, b: r_tilde(ctx, None, a, b)  # noqa: E731
    for y in ctx.dj:
        for x in ctx.dj:
            delta = ONE if x == y else ZERO
            iv = ctx.interval(x, y)
            lhs = ZERO
            for t in iv:
                lhs = lhs + R(x, t) * Rt(t, y) * _sign(t, y)
            inv.checked += 1
            if lhs != delta:
                inv.fail(f"{_pair_text(ctx, x, y)} gives {lhs}")
            lhs = ZERO
            for t in iv:
                if t != x:
                    lhs = lhs + Rt(x, t) * R(t, y) * _sign(x, t)
            strict.checked += 1
            if lhs != delta - R(x, y):
                strict.fail(f"{_pair_text(ctx, x, y)} gives {lhs}")
    return [inv, strict]
