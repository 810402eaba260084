"""
The weighted Hecke algebra in the T-basis and its parabolic module.

The module has basis ``Gamma_y`` for ``y`` in D_J and the action

    T_s Gamma_y = q_s Gamma_{sy} + (q_s - 1) Gamma_y   (s strong descent)
                = Gamma_{sy}                           (s strong ascent)
                = -Gamma_y                             (s weak descent)

with the ideal fixed to all of D_J, so weak ascents never happen.
"""
from __future__ import annotations

import functools
from typing import Iterable, Mapping

from .coxeter import CoxeterSystem, DescentClass, Element, format_element, format_gens, gen_subset
from .errors import NotInDJ, WAUnreachable
from .laurent import ONE, ZERO, LaurentPoly, qpow


def q_s(sys: CoxeterSystem, s: int) -> LaurentPoly:
    return qpow(2 * sys.weight(s))


def _accumulate(out: dict, key, poly: LaurentPoly) -> None:
    if poly.is_zero():
        return
    cur = out.get(key)
    new = poly if cur is None else cur + poly
    if new.is_zero():
        out.pop(key, None)
    else:
        out[key] = new


class _Combination:
    """Finitely supported map Element -> LaurentPoly with no zero entries."""

    __slots__ = ("coords",)

    def __init__(self, coords: Mapping[Element, LaurentPoly] | None = None):
        self.coords = {k: v for k, v in (coords or {}).items() if not v.is_zero()}

    def __getitem__(self, w: Element) -> LaurentPoly:
        return self.coords.get(w, ZERO)

    def support(self) -> set[Element]:
        return set(self.coords)

    def _new(self, coords):
        raise NotImplementedError

    def __add__(self, other):
        out = dict(self.coords)
        for k, v in other.coords.items():
            _accumulate(out, k, v)
        return self._new(out)

    def __neg__(self):
        return self._new({k: -v for k, v in self.coords.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: LaurentPoly | int):
        if isinstance(c, int):
            c = LaurentPoly.const(c)
        return self._new({k: c * v for k, v in self.coords.items()})

    def __eq__(self, other) -> bool:
        return type(self) is type(other) and self.coords == other.coords

    def is_zero(self) -> bool:
        return not self.coords


class HeckeElement(_Combination):
    """An element of the Hecke algebra in the T-basis."""

    __slots__ = ("sys",)

    def __init__(self, sys: CoxeterSystem, coords=None):
        super().__init__(coords)
        self.sys = sys

    def _new(self, coords):
        return HeckeElement(self.sys, coords)

    @classmethod
    def t(cls, sys: CoxeterSystem, w: Element, coeff: LaurentPoly = ONE) -> HeckeElement:
        return cls(sys, {w: coeff})

    def __repr__(self) -> str:
        items = sorted(self.coords.items(), key=lambda kv: kv[0].sort_key())
        body = " + ".join(f"({p})T[{format_element(self.sys, w)}]" for w, p in items)
        return f"HeckeElement({body or '0'})"


class ModuleVector(_Combination):
    """An element of the parabolic module in the Gamma-basis."""

    __slots__ = ("ctx",)

    def __init__(self, ctx: ParabolicModule, coords=None):
        super().__init__(coords)
        self.ctx = ctx

    def _new(self, coords):
        return ModuleVector(self.ctx, coords)

    def sorted_items(self) -> list[tuple[Element, LaurentPoly]]:
        return sorted(self.coords.items(), key=lambda kv: kv[0].sort_key())

    def to_json(self) -> dict:
        sys = self.ctx.sys
        return {
            "basis": "gamma",
            "terms": [
                {"elem": format_element(sys, w), "poly": p.to_json()} for w, p in self.sorted_items()
            ],
        }

    @classmethod
    def from_json(cls, ctx: ParabolicModule, doc: dict) -> ModuleVector:
        from .coxeter import parse_element

        if doc.get("basis") != "gamma":
            raise ValueError("expected a gamma-basis vector")
        coords: dict = {}
        for term in doc["terms"]:
            w = parse_element(ctx.sys, term["elem"])
            ctx.check(w)
            _accumulate(coords, w, LaurentPoly.from_json(term["poly"]))
        return cls(ctx, coords)

    def __repr__(self) -> str:
        body = " + ".join(f"({p})G[{format_element(self.ctx.sys, w)}]" for w, p in self.sorted_items())
        return f"ModuleVector({body or '0'})"


# ---------------------------------------------------------------------------
# Hecke algebra


def ts_times_tw(sys: CoxeterSystem, s: int, w: Element) -> HeckeElement:
    sw = sys.left_mul(s, w)
    if sw.length > w.length:
        return HeckeElement(sys, {sw: ONE})
    qs = q_s(sys, s)
    return HeckeElement(sys, {sw: qs, w: qs - 1})


def ts_times(sys: CoxeterSystem, s: int, h: HeckeElement) -> HeckeElement:
    out: dict = {}
    for w, a in h.coords.items():
        for u, b in ts_times_tw(sys, s, w).coords.items():
            _accumulate(out, u, a * b)
    return HeckeElement(sys, out)


def multiply(h1: HeckeElement, h2: HeckeElement) -> HeckeElement:
    sys = h1.sys
    out = HeckeElement(sys)
    for w, a in h1.coords.items():
        part = h2
        for s in reversed(sys.reduced_word(w)):
            part = ts_times(sys, s, part)
        out = out + part.scale(a)
    return out


def bar_ts(sys: CoxeterSystem, s: int) -> HeckeElement:
    inv = q_s(sys, s).bar()
    return HeckeElement(sys, {sys.left_mul(s, sys.identity): inv, sys.identity: inv - 1})


def bar_t(sys: CoxeterSystem, w: Element, word: Iterable[int] | None = None) -> HeckeElement:
    """bar(T_w) in the T-basis, multiplying bar(T_s) right to left along ``word``."""
    letters = tuple(sys.reduced_word(w) if word is None else word)
    h = HeckeElement.t(sys, sys.identity)
    for s in reversed(letters):
        inv = q_s(sys, s).bar()
        h = ts_times(sys, s, h).scale(inv) + h.scale(inv - 1)
    return h


def bar_hecke(h: HeckeElement) -> HeckeElement:
    """Semilinear bar of an arbitrary Hecke element."""
    out = HeckeElement(h.sys)
    for w, a in h.coords.items():
        out = out + bar_t(h.sys, w).scale(a.bar())
    return out


# ---------------------------------------------------------------------------
# the parabolic module


class ParabolicModule:
    """The module on D_J for a fixed (system, J), with its write-once caches.

    Caches are plain dicts filled through ``setdefault``: a racing duplicate
    computation produces an equal value and the first write wins.
    """

    def __init__(self, sys: CoxeterSystem, J):
        self.sys = sys
        self.J = gen_subset(sys, J)
        self.dj = sys.min_coset_reps(self.J)
        self._dj_set = frozenset(self.dj)
        self.cache: dict[str, dict] = {}

    def memo(self, name: str) -> dict:
        return self.cache.setdefault(name, {})

    def __repr__(self) -> str:
        return f"ParabolicModule({self.sys!r}, J={{{format_gens(self.J)}}})"

    def __contains__(self, w: Element) -> bool:
        return w in self._dj_set

    def check(self, *ws: Element) -> None:
        for w in ws:
            if w not in self._dj_set:
                raise NotInDJ(f"{format_element(self.sys, w)} is not in D_J for J={{{format_gens(self.J)}}}")

    def classify(self, y: Element, s: int) -> DescentClass:
        sy = self.sys.left_mul(s, y)
        if sy.length < y.length:
            return DescentClass.SD
        return DescentClass.SA if sy in self._dj_set else DescentClass.WD

    def gamma(self, y: Element, coeff: LaurentPoly = ONE) -> ModuleVector:
        self.check(y)
        return ModuleVector(self, {y: coeff})

    def interval(self, x: Element, y: Element) -> list[Element]:
        """{t in D_J : x <= t <= y}, sorted by (length, datum)."""
        key = (x, y)
        memo = self.memo("interval")
        r = memo.get(key)
        if r is None:
            leq = self.sys.bruhat_leq
            if not leq(x, y):
                r = []
            else:
                r = [t for t in self.dj if x.length <= t.length <= y.length and leq(x, t) and leq(t, y)]
            r = memo.setdefault(key, r)
        return r

    def below(self, y: Element) -> list[Element]:
        return self.interval(self.sys.identity, y)


@functools.lru_cache(maxsize=None)
def module(sys: CoxeterSystem, J: frozenset[int]) -> ParabolicModule:
    """Shared ParabolicModule per (system, J)."""
    return ParabolicModule(sys, J)


def get_module(sys: CoxeterSystem, J) -> ParabolicModule:
    return module(sys, gen_subset(sys, J))


def act_ts(ctx: ParabolicModule, s: int, v: ModuleVector) -> ModuleVector:
    sys = ctx.sys
    qs = q_s(sys, s)
    out: dict = {}
    for y, a in v.coords.items():
        cls = ctx.classify(y, s)
        if cls is DescentClass.SD:
            _accumulate(out, sys.left_mul(s, y), qs * a)
            _accumulate(out, y, (qs - 1) * a)
        elif cls is DescentClass.SA:
            _accumulate(out, sys.left_mul(s, y), a)
        elif cls is DescentClass.WD:
            _accumulate(out, y, -a)
        else:  # pragma: no cover - D_J has no weak ascents
            raise WAUnreachable(f"weak ascent at {format_element(sys, y)}")
    return ModuleVector(ctx, out)


def act_hecke(ctx: ParabolicModule, h: HeckeElement, v: ModuleVector) -> ModuleVector:
    out = ModuleVector(ctx)
    for w, a in h.coords.items():
        part = v
        for s in reversed(ctx.sys.reduced_word(w)):
            part = act_ts(ctx, s, part)
        out = out + part.scale(a)
    return out


def _act_bar_ts(ctx: ParabolicModule, s: int, v: ModuleVector) -> ModuleVector:
    inv = q_s(ctx.sys, s).bar()
    return act_ts(ctx, s, v).scale(inv) + v.scale(inv - 1)


def bar_gamma(ctx: ParabolicModule, y: Element, via: int | None = None) -> ModuleVector:
    """bar(Gamma_y) in the Gamma-basis.

    Uses Gamma_y = T_s Gamma_{sy} for a left descent s of y (the smallest one
    unless ``via`` picks another); results for the default choice are cached.
    """
    ctx.check(y)
    memo = ctx.memo("bar_gamma")
    if via is None:
        hit = memo.get(y)
        if hit is not None:
            return hit
    sys = ctx.sys
    if y.length == 0:
        res = ModuleVector(ctx, {y: ONE})
    else:
        s = min(sys.left_descents(y)) if via is None else via
        sy = sys.left_mul(s, y)
        if sy.length > y.length:
            raise ValueError(f"s{s} is not a left descent of {format_element(sys, y)}")
        res = _act_bar_ts(ctx, s, bar_gamma(ctx, sy))
    if via is None:
        res = memo.setdefault(y, res)
    return res


def bar_vector(v: ModuleVector) -> ModuleVector:
    """The semilinear involution applied to an arbitrary module vector."""
    out = ModuleVector(v.ctx)
    for y, a in v.coords.items():
        out = out + bar_gamma(v.ctx, y).scale(a.bar())
    return out
