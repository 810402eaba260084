"""
Sparse Laurent polynomials in v = q^(1/2) with integer coefficients.

Exponents are stored as integer powers of v, so q^g is the v-exponent 2g.
Everything that talks about "degree" or truncation thresholds in the public
API uses q-units (int or Fraction with denominator dividing 2); the ``v``
prefixed helpers use raw v-exponents.

>>> f = LaurentPoly.parse("q - 1")
>>> str(f * f)
'1 - 2*q + q^2'
>>> str(f.bar())
'-1 + q^-1'
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import ParseError

QExp = Union[int, Fraction]

NEG_INF = float("-inf")


def to_vexp(gamma: QExp | str) -> int:
    """Convert a q-unit exponent (``2``, ``Fraction(1, 2)``, ``"3/2"``) to a v-exponent."""
    if isinstance(gamma, str):
        try:
            gamma = Fraction(gamma.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad exponent {gamma!r}") from exc
    doubled = Fraction(gamma) * 2
    if doubled.denominator != 1:
        raise ParseError(f"exponent {gamma} is not a multiple of 1/2")
    return int(doubled)


def from_vexp(vexp: int) -> QExp:
    return vexp // 2 if vexp % 2 == 0 else Fraction(vexp, 2)


class LaurentPoly:
    """Immutable element of Z[v, v^-1]; the empty term map is zero."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[int, int] = {}
        for e, c in items:
            if c:
                clean[int(e)] = clean.get(int(e), 0) + int(c)
        self._terms = {e: clean[e] for e in sorted(clean) if clean[e]}
        self._hash = None

    # constructors

    @classmethod
    def mono(cls, vexp: int, coeff: int = 1) -> LaurentPoly:
        """The monomial ``coeff * v^vexp``."""
        return cls({vexp: coeff})

    @classmethod
    def q(cls, gamma: QExp = 1, coeff: int = 1) -> LaurentPoly:
        """The monomial ``coeff * q^gamma``."""
        return cls({to_vexp(gamma): coeff})

    @classmethod
    def const(cls, c: int) -> LaurentPoly:
        return cls({0: c})

    # inspection

    @property
    def terms(self) -> dict[int, int]:
        """Copy of the v-exponent -> coefficient map, increasing exponent."""
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def vdeg(self) -> float | int:
        return max(self._terms) if self._terms else NEG_INF

    def vmindeg(self) -> float | int:
        return min(self._terms) if self._terms else float("inf")

    def deg(self) -> QExp | float:
        """Largest q-exponent carrying a nonzero coefficient; ``-inf`` for zero."""
        if not self._terms:
            return NEG_INF
        return Fraction(max(self._terms), 2)

    def mindeg(self) -> QExp | float:
        if not self._terms:
            return float("inf")
        return Fraction(min(self._terms), 2)

    def vcoeff(self, vexp: int) -> int:
        return self._terms.get(vexp, 0)

    def coeff(self, gamma: QExp | str) -> int:
        """``[q^gamma] f``."""
        return self._terms.get(to_vexp(gamma), 0)

    # ring structure

    def __add__(self, other: LaurentPoly | int) -> LaurentPoly:
        other = _coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: LaurentPoly | int) -> LaurentPoly:
        return self + (-_coerce(other))

    def __rsub__(self, other: LaurentPoly | int) -> LaurentPoly:
        return _coerce(other) + (-self)

    def __mul__(self, other: LaurentPoly | int) -> LaurentPoly:
        other = _coerce(other)
        if not self._terms or not other._terms:
            return ZERO
        if len(other._terms) == 1:
            ((e2, c2),) = other._terms.items()
            return LaurentPoly({e + e2: c * c2 for e, c in self._terms.items()})
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def shift(self, vexp: int) -> LaurentPoly:
        """Multiply by ``v^vexp``."""
        if vexp == 0:
            return self
        return LaurentPoly({e + vexp: c for e, c in self._terms.items()})

    def bar(self) -> LaurentPoly:
        """The involution q^g -> q^-g."""
        return LaurentPoly({-e: c for e, c in self._terms.items()})

    # truncations (strict on both sides)

    def vtrunc_upper(self, vzeta: int) -> LaurentPoly:
        return LaurentPoly({e: c for e, c in self._terms.items() if e > vzeta})

    def vtrunc_lower(self, vzeta: int) -> LaurentPoly:
        return LaurentPoly({e: c for e, c in self._terms.items() if e < vzeta})

    def trunc_upper(self, zeta: QExp) -> LaurentPoly:
        """``U_zeta``: keep the terms with q-exponent strictly above ``zeta``."""
        return self.vtrunc_upper(to_vexp(zeta))

    def trunc_lower(self, zeta: QExp) -> LaurentPoly:
        """``L_zeta``: keep the terms with q-exponent strictly below ``zeta``."""
        return self.vtrunc_lower(to_vexp(zeta))

    # comparison / hashing

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    # serialization

    def to_json(self) -> list[list[int]]:
        return [[e, c] for e, c in self._terms.items()]

    @classmethod
    def from_json(cls, pairs: Iterable[Iterable[int]]) -> LaurentPoly:
        return cls((int(e), int(c)) for e, c in pairs)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for i, (e, c) in enumerate(self._terms.items()):
            mono = _mono_text(e)
            mag = abs(c)
            if mono == "1":
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if i == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> LaurentPoly:
        """Inverse of ``str``; also tolerates missing spaces."""
        s = text.replace(" ", "")
        if not s:
            raise ParseError("empty polynomial")
        if s == "0":
            return ZERO
        if s[0] not in "+-":
            s = "+" + s
        pos = 0
        out: dict[int, int] = {}
        while pos < len(s):
            m = _TERM_RE.match(s, pos)
            if not m or m.end() == pos:
                raise ParseError(f"cannot parse polynomial {text!r}")
            sign = -1 if m.group("sign") == "-" else 1
            num = m.group("num")
            if m.group("q") is None:
                if num is None:
                    raise ParseError(f"cannot parse polynomial {text!r}")
                vexp, c = 0, int(num)
            else:
                c = int(num) if num is not None else 1
                exp = m.group("exp") or m.group("pexp")
                vexp = to_vexp(exp) if exp is not None else 2
            out[vexp] = out.get(vexp, 0) + sign * c
            pos = m.end()
        return cls(out)


_TERM_RE = re.compile(
    r"(?P<sign>[+-])(?:(?P<num>\d+)(?:\*)?)?(?:(?P<q>q)(?:\^(?:\((?P<pexp>-?\d+(?:/\d+)?)\)|(?P<exp>-?\d+)))?)?"
)


def _mono_text(vexp: int) -> str:
    if vexp == 0:
        return "1"
    if vexp % 2:
        return f"q^({vexp}/2)"
    k = vexp // 2
    return "q" if k == 1 else f"q^{k}"


def _coerce(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly.const(x)
    raise TypeError(f"cannot combine LaurentPoly with {type(x).__name__}")


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)


def qpow(vexp: int) -> LaurentPoly:
    """``v^vexp`` as a polynomial; callers pass ``2*L(w)`` for ``q_w``."""
    return LaurentPoly.mono(vexp)
