"""
Finite Coxeter groups in concrete models.

Elements are stored by a canonical datum, so equality never depends on a word:

* ``A<n>``: one-line permutations of ``0..n`` (the group S_{n+1}).
* ``B<n>``: signed permutations in window notation. ``s1`` changes the sign
  of the first entry; ``s{i+1}`` swaps positions ``i`` and ``i+1``.
* ``D4``: even signed permutations. ``s1`` maps ``(a, b, ...)`` to
  ``(-b, -a, ...)``; ``s{i+1}`` swaps positions ``i`` and ``i+1``.
* ``I2(m)``: pairs ``(k, f)`` standing for ``rho^k sigma^f`` with
  ``sigma = s1`` and ``rho = s1 s2``.
* Products ``X x Y``: tuples of component data, generators numbered
  consecutively.

Generators are the integers ``1..rank`` and print as ``s1, s2, ...``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Iterable, Sequence

from .errors import (
    NegativeWeight,
    NotInDJ,
    ParseError,
    UnsupportedModel,
    WeightInconsistent,
)

MAX_ORDER = 100_000


@dataclass(frozen=True)
class Element:
    """A group element: canonical datum plus its length."""

    datum: tuple
    length: int = field(compare=False)

    def sort_key(self):
        return (self.length, self.datum)

    def __lt__(self, other: Element) -> bool:
        return self.sort_key() < other.sort_key()


class DescentClass(Enum):
    SD = "SD"
    SA = "SA"
    WD = "WD"
    WA = "WA"


# ---------------------------------------------------------------------------
# models


class _Model:
    rank: int
    name: str

    def identity(self) -> tuple:
        raise NotImplementedError

    def right(self, d: tuple, s: int) -> tuple:
        raise NotImplementedError

    def left(self, d: tuple, s: int) -> tuple:
        raise NotImplementedError

    def length(self, d: tuple) -> int:
        raise NotImplementedError


def _inversions(w: Sequence[int]) -> int:
    n = len(w)
    return sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])


class TypeA(_Model):
    def __init__(self, n: int):
        self.rank = n
        self.name = f"A{n}"

    def identity(self):
        return tuple(range(self.rank + 1))

    def right(self, d, s):
        w = list(d)
        w[s - 1], w[s] = w[s], w[s - 1]
        return tuple(w)

    def left(self, d, s):
        a, b = s - 1, s
        return tuple(b if v == a else a if v == b else v for v in d)

    def length(self, d):
        return _inversions(d)


class TypeB(_Model):
    def __init__(self, n: int):
        self.rank = n
        self.name = f"B{n}"

    def identity(self):
        return tuple(range(1, self.rank + 1))

    def right(self, d, s):
        w = list(d)
        if s == 1:
            w[0] = -w[0]
        else:
            w[s - 2], w[s - 1] = w[s - 1], w[s - 2]
        return tuple(w)

    def left(self, d, s):
        if s == 1:
            return tuple(-v if abs(v) == 1 else v for v in d)
        a, b = s - 1, s
        out = []
        for v in d:
            m = abs(v)
            sign = 1 if v > 0 else -1
            out.append(sign * (b if m == a else a if m == b else m))
        return tuple(out)

    def length(self, d):
        return _inversions(d) - sum(v for v in d if v < 0)


class TypeD(TypeB):
    def __init__(self, n: int):
        super().__init__(n)
        self.name = f"D{n}"

    def right(self, d, s):
        if s != 1:
            return super().right(d, s)
        w = list(d)
        w[0], w[1] = -w[1], -w[0]
        return tuple(w)

    def left(self, d, s):
        if s != 1:
            return super().left(d, s)
        swap = {1: -2, 2: -1, -1: 2, -2: 1}
        return tuple(swap.get(v, v) for v in d)

    def length(self, d):
        n = len(d)
        nsp = sum(1 for i in range(n) for j in range(i + 1, n) if d[i] + d[j] < 0)
        return _inversions(d) + nsp


class Dihedral(_Model):
    def __init__(self, m: int):
        self.rank = 2
        self.m = m
        self.name = f"I2({m})"
        self._gens = {1: (0, 1), 2: (m - 1, 1)}

    def _mul(self, a, b):
        k = (a[0] + (b[0] if a[1] == 0 else -b[0])) % self.m
        return (k, a[1] ^ b[1])

    def identity(self):
        return (0, 0)

    def right(self, d, s):
        return self._mul(d, self._gens[s])

    def left(self, d, s):
        return self._mul(self._gens[s], d)

    def length(self, d):
        k, f = d
        if f == 0:
            return 2 * min(k, self.m - k)
        return min(2 * k + 1, 2 * (self.m - k) - 1)


class Product(_Model):
    def __init__(self, factors: Sequence[_Model]):
        self.factors = list(factors)
        self.rank = sum(f.rank for f in self.factors)
        self.name = "x".join(f.name for f in self.factors)
        self._where = []
        for i, f in enumerate(self.factors):
            self._where.extend((i, j) for j in range(1, f.rank + 1))

    def identity(self):
        return tuple(f.identity() for f in self.factors)

    def _act(self, d, s, side):
        i, j = self._where[s - 1]
        out = list(d)
        out[i] = getattr(self.factors[i], side)(d[i], j)
        return tuple(out)

    def right(self, d, s):
        return self._act(d, s, "right")

    def left(self, d, s):
        return self._act(d, s, "left")

    def length(self, d):
        return sum(f.length(x) for f, x in zip(self.factors, d))


_FACTOR_RE = re.compile(r"^(?:([ABD])(\d+)|I2?\((\d+)\)|I(\d+))$")


def _parse_factor(text: str) -> _Model:
    m = _FACTOR_RE.match(text.strip())
    if not m:
        raise ParseError(f"unknown Coxeter type {text!r}")
    if m.group(1):
        kind, n = m.group(1), int(m.group(2))
        if kind == "A" and 1 <= n <= 6:
            return TypeA(n)
        if kind == "B" and 2 <= n <= 4:
            return TypeB(n)
        if kind == "D" and n == 4:
            return TypeD(n)
        raise UnsupportedModel(f"{kind}{n} is outside the supported range")
    mm = int(m.group(3) or m.group(4))
    if 2 <= mm <= 12:
        return Dihedral(mm)
    raise UnsupportedModel(f"I2({mm}) is outside the supported range")


def parse_model(descriptor: str) -> _Model:
    """``"A3"``, ``"B2"``, ``"D4"``, ``"I2(5)"`` or a product such as ``"A1xI2(5)"``."""
    parts = [p for p in descriptor.replace("×", "x").split("x")]
    if not descriptor.strip() or any(not p.strip() for p in parts):
        raise ParseError(f"unknown Coxeter type {descriptor!r}")
    factors = [_parse_factor(p) for p in parts]
    return factors[0] if len(factors) == 1 else Product(factors)


# ---------------------------------------------------------------------------
# the system


class CoxeterSystem:
    """A finite weighted Coxeter system (W, S, L) on a concrete model.

    Instances are hashable by (type, weights) and otherwise behave as
    immutable; the private caches are write-once.
    """

    def __init__(self, model: _Model, weights: Sequence[int]):
        self.model = model
        self.rank = model.rank
        self.weights = tuple(int(w) for w in weights)
        if len(self.weights) != self.rank:
            raise ParseError(f"{model.name} needs {self.rank} weights, got {len(self.weights)}")
        if any(w < 0 for w in self.weights):
            raise NegativeWeight(f"weights must be non-negative, got {self.weights}")
        self.gens = tuple(range(1, self.rank + 1))
        self.identity = Element(model.identity(), 0)
        self._lcache: dict = {}
        self._rcache: dict = {}
        self._bruhat: dict = {}
        self._words: dict = {}
        self._elements: list[Element] | None = None
        self._dj: dict = {}
        self.matrix = self._coxeter_matrix()
        for s, t in combinations(self.gens, 2):
            m = self.matrix[s, t]
            if m % 2 == 1 and self.weights[s - 1] != self.weights[t - 1]:
                raise WeightInconsistent(
                    f"m(s{s},s{t}) = {m} is odd but L(s{s}) != L(s{t})"
                )

    @property
    def name(self) -> str:
        return self.model.name

    def key(self) -> tuple:
        return (self.model.name, self.weights)

    def __eq__(self, other) -> bool:
        return isinstance(other, CoxeterSystem) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"CoxeterSystem({self.name!r}, weights={self.weights})"

    def _coxeter_matrix(self) -> dict[tuple[int, int], int]:
        mat = {}
        for s in self.gens:
            mat[s, s] = 1
        for s, t in combinations(self.gens, 2):
            d = self.model.identity()
            e = d
            k = 0
            while True:
                d = self.model.right(self.model.right(d, s), t)
                k += 1
                if d == e:
                    break
                if k > MAX_ORDER:
                    raise UnsupportedModel("infinite Coxeter group")
            mat[s, t] = mat[t, s] = k
        return mat

    # elementary operations

    def weight(self, s: int) -> int:
        return self.weights[s - 1]

    def right_mul(self, w: Element, s: int) -> Element:
        key = (w.datum, s)
        r = self._rcache.get(key)
        if r is None:
            d = self.model.right(w.datum, s)
            r = self._rcache.setdefault(key, Element(d, self.model.length(d)))
        return r

    def left_mul(self, s: int, w: Element) -> Element:
        key = (s, w.datum)
        r = self._lcache.get(key)
        if r is None:
            d = self.model.left(w.datum, s)
            r = self._lcache.setdefault(key, Element(d, self.model.length(d)))
        return r

    def element(self, datum: Iterable) -> Element:
        d = tuple(datum) if not isinstance(datum, tuple) else datum
        return Element(d, self.model.length(d))

    def from_word(self, word: Iterable[int]) -> Element:
        w = self.identity
        for s in word:
            if s not in self.gens:
                raise ParseError(f"s{s} is not a generator of {self.name}")
            w = self.right_mul(w, s)
        return w

    def reduced_word(self, w: Element) -> tuple[int, ...]:
        """The ShortLex-minimal reduced word (lexicographically least)."""
        word = self._words.get(w)
        if word is None:
            letters = []
            u = w
            while u.length:
                s = min(self.left_descents(u))
                letters.append(s)
                u = self.left_mul(s, u)
            word = self._words.setdefault(w, tuple(letters))
        return word

    def left_descents(self, w: Element) -> frozenset[int]:
        return frozenset(s for s in self.gens if self.left_mul(s, w).length < w.length)

    def right_descents(self, w: Element) -> frozenset[int]:
        return frozenset(s for s in self.gens if self.right_mul(w, s).length < w.length)

    def weight_of(self, w: Element) -> int:
        return sum(self.weight(s) for s in self.reduced_word(w))

    def inverse(self, w: Element) -> Element:
        return self.from_word(reversed(self.reduced_word(w)))

    def multiply(self, x: Element, y: Element) -> Element:
        w = x
        for s in self.reduced_word(y):
            w = self.right_mul(w, s)
        return w

    # enumeration

    def elements(self) -> list[Element]:
        """All of W, sorted by (length, datum)."""
        if self._elements is None:
            seen = {self.identity}
            frontier = [self.identity]
            while frontier:
                nxt = []
                for w in frontier:
                    for s in self.gens:
                        u = self.right_mul(w, s)
                        if u not in seen:
                            seen.add(u)
                            nxt.append(u)
                frontier = nxt
            self._elements = sorted(seen, key=Element.sort_key)
        return self._elements

    def longest_element(self) -> Element:
        return self.elements()[-1]

    # orders

    def bruhat_leq(self, x: Element, y: Element) -> bool:
        """Bruhat order via the subword criterion along the ShortLex word of y.

        Peeling the first letter s of the word: if s is a left descent of x
        the subword must use it, so compare sx with sy; otherwise compare x
        with sy.
        """
        if x.length > y.length:
            return False
        if x.length == y.length:
            return x == y
        if x.length == 0:
            return True
        key = (x, y)
        r = self._bruhat.get(key)
        if r is None:
            s = self.reduced_word(y)[0]
            sy = self.left_mul(s, y)
            sx = self.left_mul(s, x)
            if sx.length < x.length:
                r = self.bruhat_leq(sx, sy)
            else:
                r = self.bruhat_leq(x, sy)
            self._bruhat[key] = r
        return r

    def is_suffix(self, x: Element, y: Element) -> bool:
        """x <=_L y: y = z x with l(y) = l(z) + l(x)."""
        z = self.multiply(y, self.inverse(x))
        return y.length == z.length + x.length

    # parabolic data

    def in_dj(self, w: Element, J: frozenset[int]) -> bool:
        return all(self.right_mul(w, s).length > w.length for s in J)

    def min_coset_reps(self, J: Iterable[int]) -> list[Element]:
        J = gen_subset(self, J)
        reps = self._dj.get(J)
        if reps is None:
            reps = self._dj.setdefault(J, [w for w in self.elements() if self.in_dj(w, J)])
        return reps

    def classify(self, J: Iterable[int], y: Element, s: int) -> DescentClass:
        J = gen_subset(self, J)
        if not self.in_dj(y, J):
            raise NotInDJ(f"{format_element(self, y)} is not in D_J")
        sy = self.left_mul(s, y)
        if sy.length < y.length:
            return DescentClass.SD
        return DescentClass.SA if self.in_dj(sy, J) else DescentClass.WD

    def epsilon(self, w: Element) -> int:
        return -1 if w.length % 2 else 1

    def parabolic_order(self, J: Iterable[int]) -> int:
        """|W_J|, by closing J under multiplication."""
        J = gen_subset(self, J)
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for w in frontier:
                for s in J:
                    u = self.right_mul(w, s)
                    if u not in seen:
                        seen.add(u)
                        nxt.append(u)
            frontier = nxt
        return len(seen)


def new_system(descriptor: str, weights: Sequence[int] | None = None) -> CoxeterSystem:
    """Build a weighted system, e.g. ``new_system("B2", (1, 2))``.

    Omitted weights default to 1 on every generator.
    """
    model = parse_model(descriptor)
    if weights is None:
        weights = (1,) * model.rank
    return CoxeterSystem(model, weights)


def gen_subset(sys: CoxeterSystem, J: Iterable[int] | str | None) -> frozenset[int]:
    """Normalize J given as generator numbers or text like ``"s1,s3"`` / ``"13"``."""
    if J is None:
        return frozenset()
    if isinstance(J, frozenset) and all(s in sys.gens for s in J):
        return J
    if isinstance(J, str):
        J = [parse_gen(sys, tok) for tok in _split_gens(sys, J)]
    out = frozenset(parse_gen(sys, s) if isinstance(s, str) else int(s) for s in J)
    bad = [s for s in out if s not in sys.gens]
    if bad:
        raise ParseError(f"J contains non-generators {sorted(bad)}")
    return out


def _split_gens(sys: CoxeterSystem, text: str) -> list[str]:
    text = text.strip()
    if not text:
        return []
    if re.fullmatch(r"\d+", text) and sys.rank <= 9:
        return list(text)
    return [t for t in re.split(r"[\s,.]+", text) if t]


def parse_gen(sys: CoxeterSystem, tok: str) -> int:
    m = re.fullmatch(r"s?(\d+)", tok.strip())
    if not m:
        raise ParseError(f"bad generator {tok!r}")
    s = int(m.group(1))
    if s not in sys.gens:
        raise ParseError(f"s{s} is not a generator of {sys.name}")
    return s


def parse_element(sys: CoxeterSystem, text: str) -> Element:
    """Parse ``"e"``, ``"s1.s2.s1"`` or (rank <= 9) ``"121"``."""
    text = text.strip()
    if text in ("e", "1_W", ""):
        return sys.identity
    if re.fullmatch(r"\d+", text) and sys.rank <= 9:
        return sys.from_word(int(c) for c in text)
    toks = text.split(".")
    return sys.from_word(parse_gen(sys, t) for t in toks)


def format_element(sys: CoxeterSystem, w: Element) -> str:
    word = sys.reduced_word(w)
    return ".".join(f"s{s}" for s in word) if word else "e"


def format_gens(J: Iterable[int]) -> str:
    return ",".join(f"s{s}" for s in sorted(J))


def all_subsets(sys: CoxeterSystem) -> list[frozenset[int]]:
    return [frozenset(c) for k in range(sys.rank + 1) for c in combinations(sys.gens, k)]


# functional aliases matching the operation names used in the docs


def apply_gen(sys: CoxeterSystem, w: Element, s: int, side: str = "left") -> Element:
    if side == "left":
        return sys.left_mul(s, w)
    if side == "right":
        return sys.right_mul(w, s)
    raise ValueError(f"side must be 'left' or 'right', not {side!r}")


def left_descents(sys: CoxeterSystem, w: Element) -> frozenset[int]:
    return sys.left_descents(w)


def right_descents(sys: CoxeterSystem, w: Element) -> frozenset[int]:
    return sys.right_descents(w)


def bruhat_leq(sys: CoxeterSystem, x: Element, y: Element) -> bool:
    return sys.bruhat_leq(x, y)


def is_suffix(sys: CoxeterSystem, x: Element, y: Element) -> bool:
    return sys.is_suffix(x, y)


def min_coset_reps(sys: CoxeterSystem, J) -> list[Element]:
    return sys.min_coset_reps(J)


def classify(sys: CoxeterSystem, J, y: Element, s: int) -> DescentClass:
    return sys.classify(J, y, s)


def weight_of(sys: CoxeterSystem, w: Element) -> int:
    return sys.weight_of(w)


def epsilon(sys: CoxeterSystem, w: Element) -> int:
    return sys.epsilon(w)


def enumerate_group(sys: CoxeterSystem) -> list[Element]:
    return sys.elements()


def longest_element(sys: CoxeterSystem) -> Element:
    return sys.longest_element()
