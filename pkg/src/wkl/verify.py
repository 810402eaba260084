"""
Identity suites run by ``wkl verify``.

Each suite returns a :class:`CheckResult` carrying the first counterexample.
Interval sums everywhere use the Bruhat order restricted to D_J; the support
suite confirms that nothing outside those intervals is ever nonzero.
"""
from __future__ import annotations

from functools import reduce
from math import gcd
from typing import Callable

from .chains import (
    coeff_p,
    coeff_q,
    degree_window,
    enum_multichains,
    p_via_chains,
    p_via_multichains,
    q_via_chains,
    q_via_multichains,
    reduced_multichains,
    script_r,
    script_r_tilde,
    script_r_tilde_star,
)
from .coxeter import format_element
from .errors import MathError
from .heckemod import ParabolicModule, act_ts, bar_gamma, bar_vector, q_s
from .klcore import (
    CheckResult,
    _sign,
    c_basis,
    comparable_pairs,
    p_poly,
    q_poly,
    r_poly,
    r_tilde,
    verify_r_identities,
    vweight,
)
from .laurent import ONE, ZERO

INTERVAL_ORDER_NOTE = "interval sums use Bruhat order restricted to D_J (support validated)"


def _t(ctx: ParabolicModule, *ws) -> str:
    return "(" + ", ".join(format_element(ctx.sys, w) for w in ws) + ")"


def _guard(name: str, fn: Callable[[CheckResult], None]) -> CheckResult:
    res = CheckResult(name)
    try:
        fn(res)
    except MathError as exc:
        res.fail(f"{type(exc).__name__}: {exc}")
    return res


def check_q_identity(ctx: ParabolicModule) -> CheckResult:
    """q_x^-1 q_y bar(Q_{x,y}) = sum_t Q_{x,t} R~_{t,y}."""

    def run(res):
        for x, y in comparable_pairs(ctx):
            rhs = ZERO
            for t in ctx.interval(x, y):
                rhs = rhs + q_poly(ctx, None, x, t) * r_tilde(ctx, None, t, y)
            lhs = q_poly(ctx, None, x, y).bar().shift(vweight(ctx, y) - vweight(ctx, x))
            res.checked += 1
            if lhs != rhs:
                res.fail(f"{_t(ctx, x, y)}: {lhs} != {rhs}")

    return _guard("Q/R~ identity", run)


def check_inversion(ctx: ParabolicModule) -> CheckResult:
    """(eps_t eps_y Q_{x,t}) is a two-sided inverse of (P_{t,y}) on every interval."""

    def run(res):
        for x, y in comparable_pairs(ctx):
            iv = ctx.interval(x, y)
            left = ZERO
            right = ZERO
            for t in iv:
                left = left + q_poly(ctx, None, x, t) * p_poly(ctx, None, t, y) * _sign(t, y)
                right = right + p_poly(ctx, None, x, t) * q_poly(ctx, None, t, y) * _sign(x, t)
            want = ONE if x == y else ZERO
            res.checked += 1
            if left != want or right != want:
                res.fail(f"{_t(ctx, x, y)}: {left} / {right}")

    return _guard("P/Q inversion", run)


def check_degrees(ctx: ParabolicModule) -> list[CheckResult]:
    """Support, lattice and degree windows for R, P and Q."""
    sup = CheckResult("R/P/Q vanish off Bruhat intervals")
    rdeg = CheckResult("R degree window and weight lattice")
    pdeg = CheckResult("P strict degree bound")
    qdeg = CheckResult("Q strict degree bound")
    g = reduce(gcd, ctx.sys.weights, 0) or 1
    try:
        for y in ctx.dj:
            for x in ctx.dj:
                leq = ctx.sys.bruhat_leq(x, y)
                R = r_poly(ctx, None, x, y)
                sup.checked += 1
                if not leq:
                    if R or p_poly(ctx, None, x, y) or q_poly(ctx, None, x, y):
                        sup.fail(f"{_t(ctx, x, y)} not comparable but nonzero")
                    continue
                if x == y and (R != ONE or p_poly(ctx, None, x, y) != ONE or q_poly(ctx, None, x, y) != ONE):
                    sup.fail(f"{_t(ctx, x, x)} diagonal is not 1")
                span = vweight(ctx, y) - vweight(ctx, x)
                rdeg.checked += 1
                if not R or R.vmindeg() < 0 or R.vdeg() > span or any(e % (2 * g) for e, _ in R.items()):
                    rdeg.fail(f"{_t(ctx, x, y)}: R = {R}")
                if x == y:
                    continue
                P = p_poly(ctx, None, x, y)
                pdeg.checked += 1
                if P and (P.vmindeg() < 0 or P.vdeg() >= span // 2):
                    pdeg.fail(f"{_t(ctx, x, y)}: P = {P}")
                Q = q_poly(ctx, None, x, y)
                qdeg.checked += 1
                if Q and (Q.vmindeg() < 0 or Q.vdeg() >= span // 2):
                    qdeg.fail(f"{_t(ctx, x, y)}: Q = {Q}")
    except MathError as exc:
        sup.fail(f"{type(exc).__name__}: {exc}")
    logged = ctx.memo("Q_bound")
    if logged:
        x, y = next(iter(logged))
        qdeg.fail(f"logged during inversion at {_t(ctx, x, y)}")
    sup.note = INTERVAL_ORDER_NOTE
    return [sup, rdeg, pdeg, qdeg]


def check_dual_path_p(ctx: ParabolicModule, max_gap: int | None = None) -> CheckResult:
    def run(res):
        for x, y in comparable_pairs(ctx, max_gap):
            P = p_poly(ctx, None, x, y)
            res.checked += 1
            if p_via_multichains(ctx, None, x, y) != P or (x != y and p_via_chains(ctx, None, x, y) != P):
                res.fail(f"{_t(ctx, x, y)}: recursion gives {P}")

    return _guard("P: chains = multichains = recursion", run)


def check_dual_path_q(ctx: ParabolicModule, max_gap: int | None = None) -> CheckResult:
    def run(res):
        for x, y in comparable_pairs(ctx, max_gap):
            Q = q_poly(ctx, None, x, y)
            res.checked += 1
            if q_via_multichains(ctx, None, x, y) != Q or (x != y and q_via_chains(ctx, None, x, y) != Q):
                res.fail(f"{_t(ctx, x, y)}: inversion gives {Q}")

    return _guard("Q: chains = multichains = inversion", run)


def check_coefficients(ctx: ParabolicModule, max_gap: int | None = None) -> CheckResult:
    def run(res):
        for x, y in comparable_pairs(ctx, max_gap):
            P = p_poly(ctx, None, x, y)
            Q = q_poly(ctx, None, x, y)
            for gamma in degree_window(ctx, None, x, y):
                res.checked += 1
                if coeff_p(ctx, None, x, y, gamma) != P.coeff(gamma):
                    res.fail(f"P{_t(ctx, x, y)} at q^{gamma}")
                if coeff_q(ctx, None, x, y, gamma) != Q.coeff(gamma):
                    res.fail(f"Q{_t(ctx, x, y)} at q^{gamma}")

    return _guard("coefficient formulas for P and Q", run)


def check_chain_laws(ctx: ParabolicModule, max_gap: int = 3) -> CheckResult:
    """Vanishing, strictness and lower degree bound of the chain polynomials.

    Over-enumerates weak multichains with one step more than can contribute.
    """

    def run(res):
        for x, y in comparable_pairs(ctx, max_gap):
            bound = y.length - x.length
            for phi in enum_multichains(ctx, None, x, y, max_steps=bound + 2):
                res.checked += 1
                v = script_r(ctx, None, phi)
                vs = script_r_tilde_star(ctx, None, phi)
                if phi.steps - 1 > bound and (v or vs):
                    res.fail(f"{phi.text(ctx.sys)} has too many steps but is nonzero")
                e = phi.entries
                if v:
                    if any(a == b for a, b in zip(e[1:], e[2:])):
                        res.fail(f"R_phi nonzero on non-strict tail {phi.text(ctx.sys)}")
                    if phi.steps >= 2:
                        tail = script_r(ctx, None, e[1:])
                        hi = vweight(ctx, y) - vweight(ctx, x) - (tail.vmindeg() if tail else 0)
                        if not (vweight(ctx, y) - vweight(ctx, e[1])) // 2 < v.vdeg() <= hi:
                            res.fail(f"R_phi degree outside its window on {phi.text(ctx.sys)}")
                if vs:
                    if any(a == b for a, b in zip(e[:-2], e[1:-1])):
                        res.fail(f"R~*_phi nonzero on non-strict head {phi.text(ctx.sys)}")
                    if phi.steps >= 2 and vs.vdeg() <= (vweight(ctx, e[-2]) - vweight(ctx, x)) // 2:
                        res.fail(f"R~*_phi degree too low on {phi.text(ctx.sys)}")
        for z in ctx.dj:
            for x in ctx.below(z):
                for k in (2, 3):
                    res.checked += 1
                    if script_r(ctx, None, (x,) + (z,) * k):
                        res.fail(f"R vanishing fails for ({format_element(ctx.sys, x)}, {format_element(ctx.sys, z)}^{k})")

    return _guard("chain vanishing / strictness / degree", run)


def check_chain_expansions(ctx: ParabolicModule) -> list[CheckResult]:
    l57 = CheckResult("P - R_{x,y} expansion over R_{x,t} bar(P_{t,y})")
    l58 = CheckResult("constant terms of chain polynomials")
    c56 = CheckResult("bar of single-step chain polynomial vs tilde variant")
    try:
        for x, y in comparable_pairs(ctx):
            vx, vy = vweight(ctx, x), vweight(ctx, y)
            c56.checked += 1
            lhs = script_r(ctx, None, (x, y)).bar()
            rhs = script_r_tilde(ctx, None, (x, y)).shift(vx - vy) * _sign(x, y)
            if lhs != rhs:
                c56.fail(_t(ctx, x, y))
            if x == y:
                continue
            l57.checked += 1
            rhs = ZERO
            for t in ctx.interval(x, y):
                if t != y:
                    rhs = rhs + script_r(ctx, None, (x, t)) * p_poly(ctx, None, t, y).bar().shift(vy - vweight(ctx, t))
            if p_poly(ctx, None, x, y) - script_r(ctx, None, (x, y)) != rhs:
                l57.fail(_t(ctx, x, y))
            total = 0
            for phi in reduced_multichains(ctx, None, x, y, "initial"):
                c0 = script_r(ctx, None, phi).vcoeff(0)
                want = r_poly(ctx, None, x, y).vcoeff(vy - vx) if phi.steps == 1 else 0
                total += c0
                l58.checked += 1
                if c0 != want:
                    l58.fail(f"{phi.text(ctx.sys)}: {c0} != {want}")
            if total != r_poly(ctx, None, x, y).vcoeff(vy - vx):
                l58.fail(f"sum over {_t(ctx, x, y)}")
    except MathError as exc:
        l57.fail(f"{type(exc).__name__}: {exc}")
    return [l57, l58, c56]


def check_module_laws(ctx: ParabolicModule) -> list[CheckResult]:
    sys = ctx.sys
    quad = CheckResult("quadratic relation")
    braid = CheckResult("braid relations")
    invol = CheckResult("bar involution on Gamma-basis")
    compat = CheckResult("bar(Gamma_y) independent of descent choice")
    support = CheckResult("bar(Gamma_y) supported below y")
    cinv = CheckResult("KL basis is bar-invariant")
    try:
        for y in ctx.dj:
            g = ctx.gamma(y)
            for s in sys.gens:
                quad.checked += 1
                once = act_ts(ctx, s, g)
                twice = act_ts(ctx, s, once)
                qs = q_s(sys, s)
                if twice != once.scale(qs - 1) + g.scale(qs):
                    quad.fail(f"s{s} on Gamma_{format_element(sys, y)}")
            for s in sys.gens:
                for t in sys.gens:
                    if s >= t:
                        continue
                    m = sys.matrix[s, t]
                    a, b = g, g
                    for i in range(m):
                        a = act_ts(ctx, (s, t)[i % 2], a)
                        b = act_ts(ctx, (t, s)[i % 2], b)
                    braid.checked += 1
                    if a != b:
                        braid.fail(f"(s{s}, s{t}) on Gamma_{format_element(sys, y)}")
            bg = bar_gamma(ctx, y)
            invol.checked += 1
            if bar_vector(bg) != g:
                invol.fail(format_element(sys, y))
            for s in sys.left_descents(y):
                compat.checked += 1
                if bar_gamma(ctx, y, via=s) != bg:
                    compat.fail(f"{format_element(sys, y)} via s{s}")
            support.checked += 1
            if any(not sys.bruhat_leq(x, y) for x in bg.support()):
                support.fail(format_element(sys, y))
            if all(w > 0 for w in sys.weights):
                cinv.checked += 1
                c = c_basis(ctx, None, y)
                if bar_vector(c) != c:
                    cinv.fail(format_element(sys, y))
    except MathError as exc:
        quad.fail(f"{type(exc).__name__}: {exc}")
    return [quad, braid, invol, compat, support, cinv]


def check_classical(ctx: ParabolicModule) -> CheckResult | None:
    """With J empty and equal weights, R and R~ coincide."""
    if ctx.J or len(set(ctx.sys.weights)) > 1:
        return None
    res = CheckResult("R = R~ (J empty, equal weights)")
    for x, y in comparable_pairs(ctx):
        res.checked += 1
        if r_poly(ctx, None, x, y) != r_tilde(ctx, None, x, y):
            res.fail(_t(ctx, x, y))
    return res


def observe_constant_terms(ctx: ParabolicModule) -> CheckResult:
    """Informational only: how many P_{x,y} (x <= y) have constant term != 1."""
    res = CheckResult("observation: constant term of P")
    odd = [(x, y) for x, y in comparable_pairs(ctx) if p_poly(ctx, None, x, y).vcoeff(0) != 1]
    res.checked = len(comparable_pairs(ctx))
    res.note = "all equal 1" if not odd else f"{len(odd)} pairs differ, e.g. {_t(ctx, *odd[0])}"
    return res


def run_suites(ctx: ParabolicModule, chain_gap: int | None = None, vanish_gap: int = 3) -> list[CheckResult]:
    """Every suite for one (system, J); positive weights are required for P/Q suites."""
    results: list[CheckResult] = []
    results += verify_r_identities(ctx)
    results += check_module_laws(ctx)
    if any(w <= 0 for w in ctx.sys.weights):
        return results
    results.append(check_q_identity(ctx))
    results.append(check_inversion(ctx))
    results += check_degrees(ctx)
    results.append(check_dual_path_p(ctx, chain_gap))
    results.append(check_dual_path_q(ctx, chain_gap))
    results.append(check_coefficients(ctx, chain_gap))
    results.append(check_chain_laws(ctx, vanish_gap))
    results += check_chain_expansions(ctx)
    classical = check_classical(ctx)
    if classical is not None:
        results.append(classical)
    results.append(observe_constant_terms(ctx))
    return results
