"""Exact projective arithmetic: 2x2 integer matrices acting on rationals by
fractional linear transformations, half-open intervals, and partial maps."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce as _fold
from math import gcd
from typing import Optional, Union


class _Infinity:
    """The point at infinity. Compares above every rational."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("semicalc.inf")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True


INF = _Infinity()

ExtRational = Union[Fraction, _Infinity]


def to_ext(x) -> ExtRational:
    if x is INF:
        return INF
    if isinstance(x, str) and x.strip().lower() in ("inf", "infinity", "oo"):
        return INF
    return Fraction(x)


def format_ext(x: ExtRational) -> str:
    return "inf" if x is INF else str(x)


@dataclass(frozen=True)
class ProjMatrix:
    """Integer matrix [[a, b], [c, d]] up to positive scaling.

    Stored with gcd 1 and the first nonzero entry positive. The determinant
    must be positive so that the map is increasing away from its pole.
    """

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        a, b, c, d = self.a, self.b, self.c, self.d
        if a * d - b * c <= 0:
            raise ValueError(f"determinant must be positive: {(a, b, c, d)}")
        g = _fold(gcd, (a, b, c, d))
        sign = 1 if next(x for x in (a, b, c, d) if x) > 0 else -1
        g *= sign
        if g != 1:
            object.__setattr__(self, "a", a // g)
            object.__setattr__(self, "b", b // g)
            object.__setattr__(self, "c", c // g)
            object.__setattr__(self, "d", d // g)

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other: ProjMatrix) -> ProjMatrix:
        return ProjMatrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> ProjMatrix:
        return ProjMatrix(self.d, -self.b, -self.c, self.a)

    def __pow__(self, k: int) -> ProjMatrix:
        base = self if k >= 0 else self.inverse()
        result = IDENTITY
        for _ in range(abs(k)):
            result = result @ base
        return result

    def pole(self) -> ExtRational:
        """The point sent to infinity."""
        if self.c == 0:
            return INF
        return Fraction(-self.d, self.c)

    def __call__(self, x: ExtRational) -> ExtRational:
        if x is INF:
            return INF if self.c == 0 else Fraction(self.a, self.c)
        den = self.c * x + self.d
        if den == 0:
            return INF
        return (self.a * x + self.b) / den

    def __str__(self):
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


IDENTITY = ProjMatrix(1, 0, 0, 1)


@dataclass(frozen=True)
class Interval:
    """Half-open interval [lo, hi) with lo < hi; hi may be INF."""

    lo: Fraction
    hi: ExtRational

    def __post_init__(self):
        if self.lo is INF or not self.lo < self.hi:
            raise ValueError(f"empty or inverted interval [{self.lo}, {self.hi})")

    def contains(self, x: ExtRational) -> bool:
        return x is not INF and self.lo <= x < self.hi

    def issubset(self, other: Interval) -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def intersect(self, other: Interval) -> Optional[Interval]:
        lo = max(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        if lo < hi:
            return Interval(lo, hi)
        return None

    def __str__(self):
        return f"[{self.lo},{format_ext(self.hi)})"


UNIT = Interval(Fraction(0), Fraction(1))
HALF_LEFT = Interval(Fraction(0), Fraction(1, 2))
HALF_RIGHT = Interval(Fraction(1, 2), Fraction(1))
POSITIVE_RAY = Interval(Fraction(0), INF)


def image_of(matrix: ProjMatrix, domain: Interval) -> Interval:
    return Interval(matrix(domain.lo), matrix(domain.hi))


def preimage_of(matrix: ProjMatrix, target: Interval) -> Interval:
    return image_of(matrix.inverse(), target)


@dataclass(frozen=True)
class PartialLFT:
    """A fractional linear map restricted to an interval avoiding its pole."""

    matrix: ProjMatrix
    domain: Interval

    def __post_init__(self):
        pole = self.matrix.pole()
        lo, hi = self.domain.lo, self.domain.hi
        if pole is INF:
            return
        if hi is INF:
            ok = pole < lo
        else:
            ok = not (lo <= pole <= hi)
        if not ok:
            raise ValueError(f"pole {pole} meets the closure of {self.domain}")

    def __call__(self, x: ExtRational) -> ExtRational:
        if not self.domain.contains(x):
            raise ValueError(f"{x} is outside {self.domain}")
        return self.matrix(x)

    @property
    def image(self) -> Interval:
        return image_of(self.matrix, self.domain)


class _ZeroMap:
    """The empty partial map."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ZERO_MAP"


ZERO_MAP = _ZeroMap()

MaybeMap = Union[PartialLFT, _ZeroMap]


def apply_point(m: ProjMatrix, x: ExtRational) -> ExtRational:
    return m(x)


def image_interval(f: PartialLFT) -> Interval:
    return f.image


def compose_maps(g: MaybeMap, h: MaybeMap) -> MaybeMap:
    """g after h, defined on the part of h's domain that h sends into g's domain."""
    if g is ZERO_MAP or h is ZERO_MAP:
        return ZERO_MAP
    overlap = h.image.intersect(g.domain)
    if overlap is None:
        return ZERO_MAP
    return PartialLFT(g.matrix @ h.matrix, preimage_of(h.matrix, overlap))


def invert_map(f: MaybeMap) -> MaybeMap:
    if f is ZERO_MAP:
        return ZERO_MAP
    return PartialLFT(f.matrix.inverse(), f.image)


def c_matrix(n: int) -> ProjMatrix:
    if n < 2:
        raise ValueError(f"variant must be at least 2, got {n}")
    return ProjMatrix(n, 0, n - 1, 1)


def _exact_log(x: int, n: int) -> Optional[int]:
    k = 0
    while x > 1 and x % n == 0:
        x //= n
        k += 1
    return k if x == 1 else None


def detect_c_power(m: ProjMatrix, n: int) -> Optional[int]:
    """Return k with m == C_n**k, or None."""
    # C_n**k fixes 0 and 1, which forces b == 0 and a == c + d
    if m.b != 0 or m.a != m.c + m.d:
        return None
    if m.d == 1:
        return _exact_log(m.a, n)
    if m.a == 1:
        k = _exact_log(m.d, n)
        return None if k is None else -k
    return None


def make_generator(name: str, n: int = 2) -> PartialLFT:
    """Generator maps. Lowercase letters are inverses of uppercase ones."""
    if name == "A":
        return PartialLFT(ProjMatrix(1, 0, 1, 1), UNIT)
    if name == "B":
        return PartialLFT(ProjMatrix(0, 1, -1, 2), UNIT)
    if name == "C":
        return PartialLFT(c_matrix(n), UNIT)
    if name == "T":
        return PartialLFT(ProjMatrix(1, 1, 0, 1), POSITIVE_RAY)
    if name in ("a", "b", "c", "t"):
        return invert_map(make_generator(name.upper(), n))
    raise ValueError(f"unknown generator {name!r}")


_GENERATORS = {}


def generator(name: str, n: int) -> PartialLFT:
    key = (name, n)
    if key not in _GENERATORS:
        _GENERATORS[key] = make_generator(name, n)
    return _GENERATORS[key]


def word_matrix(word: str, n: int) -> ProjMatrix:
    """Matrix product of the letters of word, ignoring domains."""
    m = IDENTITY
    for ch in word:
        m = m @ generator(ch, n).matrix
    return m


def word_semantics(word: str, n: int) -> MaybeMap:
    """The partial map denoted by word. The rightmost letter acts first.

    "0" denotes the empty map and "" or "1" the identity on [0, 1).
    """
    if word in ("", "1"):
        return PartialLFT(IDENTITY, UNIT)
    if "0" in word:
        return ZERO_MAP
    f: MaybeMap = generator(word[-1], n)
    for ch in reversed(word[:-1]):
        f = compose_maps(generator(ch, n), f)
        if f is ZERO_MAP:
            break
    return f
