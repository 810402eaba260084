"""
Chain formulas for P and Q.

A multichain is a weakly increasing Bruhat sequence x = x_0 <= ... <= x_{r+1} = y
inside D_J. Four chain polynomials are built from it:

* ``script_r``: consumes the chain from the front,
  R_phi = R_{x,x_1} * U_{(L(y)-L(x_1))/2}(q_{x_1}^-1 q_y bar(R_{phi'})), with
  base case q_x^-1 q_y bar(R_{x,y}).
* ``script_r_star``: consumes from the back,
  R*_phi = U_{(L(x_r)-L(x))/2}(q_x^-1 q_{x_r} bar(R*_{phi'})) * R*_{x_r,y}.
* ``script_r_tilde`` / ``script_r_tilde_star``: the same recursions with the
  base case built from R~ instead of R.

Summing ``script_r`` over chains gives P; summing ``script_r_tilde_star``
gives Q. Only strict chains and one doubled endpoint survive (the doubled
initial entry for P, the doubled final entry for Q), which is what the fast
paths enumerate; ``exhaustive=True`` walks every weak multichain instead.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Callable, Iterator, Sequence

from .coxeter import Element, format_element
from .errors import NotComparable
from .heckemod import ParabolicModule
from .klcore import _ctx, r_poly, r_tilde, require_positive, vweight
from .laurent import ONE, ZERO, LaurentPoly, to_vexp


@dataclass(frozen=True)
class Multichain:
    entries: tuple[Element, ...]

    def __post_init__(self):
        if len(self.entries) < 2:
            raise ValueError("a multichain has at least an initial and a final entry")

    @property
    def strict(self) -> bool:
        return all(a != b for a, b in zip(self.entries, self.entries[1:]))

    @property
    def steps(self) -> int:
        return len(self.entries) - 1

    @property
    def initial(self) -> Element:
        return self.entries[0]

    @property
    def final(self) -> Element:
        return self.entries[-1]

    def text(self, sys) -> list[str]:
        return [format_element(sys, w) for w in self.entries]


# ---------------------------------------------------------------------------
# enumeration


def _require_leq(ctx: ParabolicModule, x: Element, y: Element) -> None:
    ctx.check(x, y)
    if not ctx.sys.bruhat_leq(x, y):
        raise NotComparable(f"{format_element(ctx.sys, x)} is not below {format_element(ctx.sys, y)}")


def enum_chains(sys, J, x: Element, y: Element, max_steps: int | None = None) -> Iterator[Multichain]:
    """Strict chains x < x_1 < ... < y through D_J, in lexicographic order.

    For x == y the only chain produced is (x, x).
    """
    ctx = _ctx(sys, J)
    _require_leq(ctx, x, y)
    if x == y:
        yield Multichain((x, x))
        return
    if max_steps is None:
        max_steps = y.length - x.length
    path = [x]

    def walk():
        c = path[-1]
        if c == y:
            yield Multichain(tuple(path))
            return
        if len(path) - 1 >= max_steps:
            return
        for t in ctx.interval(c, y):
            if t != c:
                path.append(t)
                yield from walk()
                path.pop()

    yield from walk()


def enum_multichains(sys, J, x: Element, y: Element, max_steps: int | None = None) -> Iterator[Multichain]:
    """Every weakly increasing chain from x to y with 1..max_steps steps.

    The default bound l(y) - l(x) + 1 already contains every chain whose
    polynomial can be nonzero.
    """
    ctx = _ctx(sys, J)
    _require_leq(ctx, x, y)
    if max_steps is None:
        max_steps = y.length - x.length + 1
    path = [x]

    def walk():
        c = path[-1]
        if len(path) > 1 and c == y:
            yield Multichain(tuple(path))
        if len(path) - 1 >= max_steps:
            return
        for t in ctx.interval(c, y):
            path.append(t)
            yield from walk()
            path.pop()

    yield from walk()


def _strict_list(ctx: ParabolicModule, x: Element, y: Element) -> list[Multichain]:
    memo = ctx.memo("strict_chains")
    r = memo.get((x, y))
    if r is None:
        r = memo.setdefault((x, y), list(enum_chains(ctx, None, x, y)))
    return r


def reduced_multichains(sys, J, x: Element, y: Element, doubled: str = "initial") -> list[Multichain]:
    """Strict chains plus the chains with one doubled endpoint."""
    ctx = _ctx(sys, J)
    _require_leq(ctx, x, y)
    if x == y:
        return [Multichain((x, x))]
    out = []
    for phi in _strict_list(ctx, x, y):
        out.append(phi)
        if doubled == "initial":
            out.append(Multichain((x,) + phi.entries))
        elif doubled == "final":
            out.append(Multichain(phi.entries + (y,)))
        else:
            raise ValueError(f"doubled must be 'initial' or 'final', not {doubled!r}")
    return out


# ---------------------------------------------------------------------------
# chain polynomials


def _base_r(ctx: ParabolicModule, a: Element, b: Element) -> LaurentPoly:
    return r_poly(ctx, None, a, b).bar().shift(vweight(ctx, b) - vweight(ctx, a))


def _base_rt(ctx: ParabolicModule, a: Element, b: Element) -> LaurentPoly:
    return r_tilde(ctx, None, a, b).bar().shift(vweight(ctx, b) - vweight(ctx, a))


Base = Callable[[ParabolicModule, Element, Element], LaurentPoly]


def _front(ctx: ParabolicModule, entries: tuple[Element, ...], base: Base, memo: dict) -> LaurentPoly:
    r = memo.get(entries)
    if r is not None:
        return r
    if len(entries) == 2:
        r = base(ctx, entries[0], entries[1])
    else:
        x, x1, y = entries[0], entries[1], entries[-1]
        head = base(ctx, x, x1)
        if head.is_zero():
            r = ZERO
        else:
            gap = vweight(ctx, y) - vweight(ctx, x1)
            tail = _front(ctx, entries[1:], base, memo).bar().shift(gap)
            r = head * tail.vtrunc_upper(gap // 2)
    return memo.setdefault(entries, r)


def _back(ctx: ParabolicModule, entries: tuple[Element, ...], base: Base, memo: dict) -> LaurentPoly:
    r = memo.get(entries)
    if r is not None:
        return r
    if len(entries) == 2:
        r = base(ctx, entries[0], entries[1])
    else:
        x, xr, y = entries[0], entries[-2], entries[-1]
        last = base(ctx, xr, y)
        if last.is_zero():
            r = ZERO
        else:
            gap = vweight(ctx, xr) - vweight(ctx, x)
            front = _back(ctx, entries[:-1], base, memo).bar().shift(gap)
            r = front.vtrunc_upper(gap // 2) * last
    return memo.setdefault(entries, r)


def _entries(phi: Multichain | Sequence[Element]) -> tuple[Element, ...]:
    return phi.entries if isinstance(phi, Multichain) else tuple(phi)


def script_r(sys, J, phi) -> LaurentPoly:
    ctx = _ctx(sys, J)
    return _front(ctx, _entries(phi), _base_r, ctx.memo("script_r"))


def script_r_tilde(sys, J, phi) -> LaurentPoly:
    ctx = _ctx(sys, J)
    return _front(ctx, _entries(phi), _base_rt, ctx.memo("script_r_tilde"))


def script_r_star(sys, J, phi) -> LaurentPoly:
    ctx = _ctx(sys, J)
    return _back(ctx, _entries(phi), _base_r, ctx.memo("script_r_star"))


def script_r_tilde_star(sys, J, phi) -> LaurentPoly:
    ctx = _ctx(sys, J)
    return _back(ctx, _entries(phi), _base_rt, ctx.memo("script_r_tilde_star"))


# ---------------------------------------------------------------------------
# P and Q from chains


def _sum(values) -> LaurentPoly:
    total = ZERO
    for v in values:
        total = total + v
    return total


def p_via_chains(sys, J, x: Element, y: Element) -> LaurentPoly:
    """P_{x,y} = L_{(L(y)-L(x))/2}(sum of R_phi over strict chains)."""
    ctx = _ctx(sys, J)
    _require_leq(ctx, x, y)
    require_positive(ctx)
    if x == y:
        return ONE
    half = (vweight(ctx, y) - vweight(ctx, x)) // 2
    return _sum(script_r(ctx, None, phi) for phi in _strict_list(ctx, x, y)).vtrunc_lower(half)


def p_via_multichains(sys, J, x: Element, y: Element, exhaustive: bool = False) -> LaurentPoly:
    """P_{x,y} = sum of R_phi over all multichains from x to y."""
    ctx = _ctx(sys, J)
    _require_leq(ctx, x, y)
    require_positive(ctx)
    chains = enum_multichains(ctx, None, x, y) if exhaustive else reduced_multichains(ctx, None, x, y, "initial")
    return _sum(script_r(ctx, None, phi) for phi in chains)


def q_via_chains(sys, J, x: Element, y: Element) -> LaurentPoly:
    """Q_{x,y} = L_{(L(y)-L(x))/2}(sum of R~*_phi over strict chains)."""
    ctx = _ctx(sys, J)
    _require_leq(ctx, x, y)
    require_positive(ctx)
    if x == y:
        return ONE
    half = (vweight(ctx, y) - vweight(ctx, x)) // 2
    return _sum(script_r_tilde_star(ctx, None, phi) for phi in _strict_list(ctx, x, y)).vtrunc_lower(half)


def q_via_multichains(sys, J, x: Element, y: Element, exhaustive: bool = False) -> LaurentPoly:
    ctx = _ctx(sys, J)
    _require_leq(ctx, x, y)
    require_positive(ctx)
    chains = enum_multichains(ctx, None, x, y) if exhaustive else reduced_multichains(ctx, None, x, y, "final")
    return _sum(script_r_tilde_star(ctx, None, phi) for phi in chains)


# ---------------------------------------------------------------------------
# coefficient formulas
#
# All exponents below are integer q-units; the lambda_i run over multiples of
# g = gcd of the weights, outside of which every R-coefficient vanishes.


def _qcoeff(poly: LaurentPoly, e: int) -> int:
    return poly.vcoeff(2 * e)


def _lattice_step(ctx: ParabolicModule) -> int:
    g = 0
    for w in ctx.sys.weights:
        g = gcd(g, w)
    return g or 1


def _gamma_int(gamma) -> int | None:
    v = to_vexp(gamma)
    return v // 2 if v % 2 == 0 else None


def _ceil_to(value: int, g: int) -> int:
    return -((-value) // g) * g


def _floor_to(value: int, g: int) -> int:
    return (value // g) * g


def _sequence_sum(r: int, lam0: int, gamma: int, cuts: Sequence[int], factor, g: int) -> int:
    """Sum over exponent sequences of the product of per-step coefficients.

    Chooses lambda_1 > ... > lambda_r > lambda_{r+1} = 0 on the lattice gZ with
    lambda_1 <= gamma and lambda_i > cuts[i] - lambda_i >= lambda_{i+1}; step i
    contributes ``factor(i, lambda_i, lambda_{i+1})`` for i = 0..r. Sequences
    are visited in descending lexicographic order.
    """
    total = 0

    def rec(i: int, lam_prev: int, hi: int, acc: int) -> None:
        nonlocal total
        if i == r + 1:
            if hi >= 0:
                total += acc * factor(r, lam_prev, 0)
            return
        lo = _ceil_to(cuts[i] // 2 + 1, g)
        for lam in range(_floor_to(hi, g), lo - 1, -g):
            c = factor(i - 1, lam_prev, lam)
            if c:
                rec(i + 1, lam, min(cuts[i] - lam, lam - 1), acc * c)

    rec(1, lam0, gamma, 1)
    return total


def coeff_script_r(sys, J, phi, gamma) -> int:
    """[q^gamma] R_phi evaluated term by term from R-coefficients."""
    ctx = _ctx(sys, J)
    g_int = _gamma_int(gamma)
    if g_int is None:
        return 0
    xs = _entries(phi)
    L = [vweight(ctx, w) // 2 for w in xs]
    r = len(xs) - 2
    Ly, Lx = L[-1], L[0]
    lam0 = Ly - Lx - g_int
    if r == 0:
        return _qcoeff(r_poly(ctx, None, xs[0], xs[1]), lam0)
    cuts = [None] + [Ly - L[i] for i in range(1, r + 1)]

    def factor(i, lam_i, lam_next):
        return _qcoeff(r_poly(ctx, None, xs[i], xs[i + 1]), L[i + 1] - Ly + lam_i + lam_next)

    return _sequence_sum(r, lam0, g_int, cuts, factor, _lattice_step(ctx))


def coeff_script_r_tilde_star(sys, J, phi, gamma) -> int:
    """[q^gamma] R~*_phi evaluated term by term from R~-coefficients."""
    ctx = _ctx(sys, J)
    g_int = _gamma_int(gamma)
    if g_int is None:
        return 0
    xs = _entries(phi)
    L = [vweight(ctx, w) // 2 for w in xs]
    r = len(xs) - 2
    Ly, Lx = L[-1], L[0]
    lam0 = Ly - Lx - g_int
    if r == 0:
        return _qcoeff(r_tilde(ctx, None, xs[0], xs[1]), lam0)
    cuts = [None] + [L[r + 1 - i] - Lx for i in range(1, r + 1)]

    def factor(i, lam_i, lam_next):
        return _qcoeff(r_tilde(ctx, None, xs[r - i], xs[r + 1 - i]), Lx - L[r - i] + lam_i + lam_next)

    return _sequence_sum(r, lam0, g_int, cuts, factor, _lattice_step(ctx))


def coeff_p(sys, J, x: Element, y: Element, gamma) -> int:
    """[q^gamma] P_{x,y} from R-coefficients alone.

    The single-step term is [q^(L(y)-L(x)-gamma)] R_{x,y}; every longer
    multichain adds a sum over admissible exponent sequences of products of
    R-coefficients, one factor per step of the chain.
    """
    ctx = _ctx(sys, J)
    _require_leq(ctx, x, y)
    total = 0
    for phi in reduced_multichains(ctx, None, x, y, "initial"):
        total += coeff_script_r(ctx, None, phi, gamma)
    return total


def coeff_q(sys, J, x: Element, y: Element, gamma) -> int:
    """[q^gamma] Q_{x,y}; the single-step term is [q^gamma](eps_x eps_y R_{x,y})."""
    ctx = _ctx(sys, J)
    _require_leq(ctx, x, y)
    total = 0
    for phi in reduced_multichains(ctx, None, x, y, "final"):
        total += coeff_script_r_tilde_star(ctx, None, phi, gamma)
    return total


def degree_window(sys, J, x: Element, y: Element) -> list:
    """Integer exponents 0 <= gamma < (L(y)-L(x))/2 (just {0} when x == y)."""
    ctx = _ctx(sys, J)
    span = vweight(ctx, y) // 2 - vweight(ctx, x) // 2
    if x == y:
        return [0]
    return [k for k in range(0, span) if 2 * k < span]


def chain_report(sys, J, x: Element, y: Element, kind: str = "P") -> dict:
    """Every contributing chain with its polynomial, plus the total."""
    ctx = _ctx(sys, J)
    if kind == "P":
        chains = reduced_multichains(ctx, None, x, y, "initial")
        f = script_r
    elif kind == "Q":
        chains = reduced_multichains(ctx, None, x, y, "final")
        f = script_r_tilde_star
    else:
        raise ValueError(f"kind must be P or Q, not {kind!r}")
    rows = []
    total = ZERO
    for phi in chains:
        val = f(ctx, None, phi)
        total = total + val
        rows.append({"entries": phi.text(ctx.sys), "scriptR": val.to_json()})
    return {
        "x": format_element(ctx.sys, x),
        "y": format_element(ctx.sys, y),
        "chains": rows,
        "sum": total.to_json(),
    }


__all__ = [
    "Multichain",
    "enum_chains",
    "enum_multichains",
    "reduced_multichains",
    "script_r",
    "script_r_tilde",
    "script_r_star",
    "script_r_tilde_star",
    "p_via_chains",
    "p_via_multichains",
    "q_via_chains",
    "q_via_multichains",
    "coeff_script_r",
    "coeff_script_r_tilde_star",
    "coeff_p",
    "coeff_q",
    "degree_window",
    "chain_report",
]
