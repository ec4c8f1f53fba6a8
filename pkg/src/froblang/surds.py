"""Exact arithmetic for quadratic irrationals of the form (u + v*sqrt(d)) / w.

Floors, signs and field operations stay in integer arithmetic (Python ints
never overflow), so every Beatty-type sequence computed downstream is exact
at any index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Write ``n = s*s*f`` with ``f`` squarefree; returns ``(s, f)``."""
    if n < 1:
        raise ValueError("radicand must be positive")
    s, f = 1, 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                f *= p
        p += 1 if p == 2 else 2
    return s, f * n


def _floor_v_sqrt(v: int, d: int) -> int:
    """floor(v * sqrt(d)) for integers v and squarefree d >= 1."""
    if v == 0 or d == 1:
        return v
    s = math.isqrt(v * v * d)
    if v > 0:
        return s
    # v*sqrt(d) < 0 and is irrational (d squarefree > 1), so never an integer.
    return -s - 1


def _sign_with_root(a: int, b: int, d: int) -> int:
    """Sign of a + b*sqrt(d) for squarefree d >= 1."""
    if d == 1:
        t = a + b
        return (t > 0) - (t < 0)
    if b == 0:
        return (a > 0) - (a < 0)
    if a == 0:
        return 1 if b > 0 else -1
    if a > 0 and b > 0:
        return 1
    if a < 0 and b < 0:
        return -1
    # Mixed signs: compare a^2 with b^2*d. Equality would force d to be a
    # square, excluded by canonical form.
    if a > 0:
        return 1 if a * a > b * b * d else -1
    return 1 if b * b * d > a * a else -1


@dataclass(frozen=True)
class Surd:
    """Canonical quadratic irrational ``(u + v*sqrt(d)) / w``.

    Canonical form: ``w > 0``, ``d`` squarefree, ``gcd(u, v, w) = 1`` and
    ``d = 1`` exactly when the value is rational (``v = 0``).
    """

    u: int
    v: int = 0
    d: int = 1
    w: int = 1

    def __post_init__(self):
        u, v, d, w = self.u, self.v, self.d, self.w
        if w == 0:
            raise ValueError("zero denominator")
        if w < 0:
            u, v, w = -u, -v, -w
        if v == 0:
            d = 1
        else:
            s, f = squarefree_decompose(d)
            v, d = v * s, f
            if d == 1:
                u, v = u + v, 0
        g = math.gcd(math.gcd(abs(u), abs(v)), w)
        if g > 1:
            u, v, w = u // g, v // g, w // g
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "w", w)

    # -- constructors ------------------------------------------------------

    @classmethod
    def rational(cls, value) -> "Surd":
        frac = Fraction(value)
        return cls(frac.numerator, 0, 1, frac.denominator)

    @classmethod
    def sqrt(cls, n: int) -> "Surd":
        return cls(0, 1, n, 1)

    # -- structure ---------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.v == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is irrational")
        return Fraction(self.u, self.w)

    def conjugate(self) -> "Surd":
        return Surd(self.u, -self.v, self.d, self.w)

    # -- field operations ----------------------------------------------------

    @staticmethod
    def _coerce(value) -> "Surd":
        if isinstance(value, Surd):
            return value
        if isinstance(value, (int, Fraction)):
            return Surd.rational(value)
        raise TypeError(f"cannot mix Surd with {type(value).__name__}")

    def _common_radicand(self, other: "Surd") -> int:
        if self.v and other.v and self.d != other.d:
            raise ValueError(f"incompatible radicands {self.d} and {other.d}")
        return self.d if self.v else other.d

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        d = self._common_radicand(other)
        return Surd(
            self.u * other.w + other.u * self.w,
            self.v * other.w + other.v * self.w,
            d,
            self.w * other.w,
        )

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.u, -self.v, self.d, self.w)

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        d = self._common_radicand(other)
        return Surd(
            self.u * other.u + self.v * other.v * d,
            self.u * other.v + self.v * other.u,
            d,
            self.w * other.w,
        )

    __rmul__ = __mul__

    def inverse(self) -> "Surd":
        norm = self.u * self.u - self.v * self.v * self.d
        if norm == 0:
            raise ZeroDivisionError("surd is zero")
        return Surd(self.w * self.u, -self.w * self.v, self.d, norm)

    def __truediv__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    # -- order -------------------------------------------------------------

    def _cmp(self, other) -> int:
        diff = self - self._coerce(other)
        return _sign_with_root(diff.u, diff.v, diff.d)

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    # -- evaluation ----------------------------------------------------------

    def floor(self) -> int:
        # floor(t / w) = floor(floor(t) / w) for integer w >= 1.
        return (self.u + _floor_v_sqrt(self.v, self.d)) // self.w

    def ceil(self) -> int:
        return -((-self).floor())

    def __float__(self) -> float:
        return (self.u + self.v * math.sqrt(self.d)) / self.w

    def decimal(self, digits: int = 50) -> Decimal:
        with localcontext() as ctx:
            ctx.prec = digits + 10
            root = Decimal(self.d).sqrt()
            return (Decimal(self.u) + Decimal(self.v) * root) / Decimal(self.w)

    def decimal_str(self, digits: int = 30) -> str:
        with localcontext() as ctx:
            ctx.prec = digits
            return str(+self.decimal(digits + 10))

    # -- display -------------------------------------------------------------

    def to_text(self) -> str:
        """Canonical text form accepted back by :func:`parse_surd`."""
        return f"({self.u}{'+' if self.v >= 0 else '-'}{abs(self.v)}*sqrt({self.d}))/{self.w}"

    def __str__(self) -> str:
        if self.is_rational:
            return str(Fraction(self.u, self.w))
        return self.to_text()


PHI = Surd(1, 1, 5, 2)
PHI_SQUARED = Surd(3, 1, 5, 2)
# Slope of the Fibonacci rotation, 2 - PHI = (3 - sqrt(5)) / 2.
FIB_SLOPE = Surd(3, -1, 5, 2)


def floor_mul(alpha: Surd, n: int) -> int:
    """Exact ``floor(n * alpha)`` using integer arithmetic only."""
    return (n * alpha.u + _floor_v_sqrt(n * alpha.v, alpha.d)) // alpha.w


def floor_mul_range(alpha: Surd, n_max: int) -> list[int]:
    """``[floor(n * alpha) for n in 0..n_max]`` in linear time.

    Uses a 96-bit fixed-point multiple of ``alpha`` and certifies every entry:
    the accumulated value under-estimates ``n*alpha*2^96`` by less than ``n``
    ulps, so whenever the fractional part is at least ``n`` ulps below the next
    carry the shifted value is the exact floor; the rare uncertain entries fall
    back to :func:`floor_mul`.
    """
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    shift = 96
    one = 1 << shift
    scaled = Surd(alpha.u << shift, alpha.v << shift, alpha.d, alpha.w)
    p = scaled.floor()
    out = [0] * (n_max + 1)
    acc = 0
    for n in range(1, n_max + 1):
        acc += p
        if (acc & (one - 1)) <= one - 1 - n:
            out[n] = acc >> shift
        else:
            out[n] = floor_mul(alpha, n)
    return out


class SurdSyntaxError(ValueError):
    """Malformed surd literal, with the offending character position."""

    def __init__(self, text: str, pos: int, expected: str):
        super().__init__(f"cannot parse surd {text!r}: expected {expected} at position {pos}")
        self.text = text
        self.position = pos


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_spaces(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def expect(self, token: str):
        self.skip_spaces()
        if not self.text.startswith(token, self.pos):
            raise SurdSyntaxError(self.text, self.pos, repr(token))
        self.pos += len(token)

    def integer(self, signed: bool = True) -> int:
        self.skip_spaces()
        start = self.pos
        if signed and self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits:
            raise SurdSyntaxError(self.text, self.pos, "an integer")
        return int(self.text[start : self.pos])

    def peek(self, token: str) -> bool:
        self.skip_spaces()
        return self.text.startswith(token, self.pos)

    def at_end(self) -> bool:
        self.skip_spaces()
        return self.pos == len(self.text)


def parse_surd(text: str) -> Surd:
    """Parse ``"(u+v*sqrt(d))/w"``; plain ``"p"`` or ``"p/q"`` parse as rationals."""
    sc = _Scanner(text)
    if not sc.peek("("):
        u = sc.integer()
        w = 1
        if sc.peek("/"):
            sc.expect("/")
            w = sc.integer(signed=False)
        if not sc.at_end():
            raise SurdSyntaxError(text, sc.pos, "end of input")
        return Surd(u, 0, 1, w)
    sc.expect("(")
    u = sc.integer()
    sc.skip_spaces()
    if sc.pos >= len(text) or text[sc.pos] not in "+-":
        raise SurdSyntaxError(text, sc.pos, "'+' or '-'")
    sign = 1 if text[sc.pos] == "+" else -1
    sc.pos += 1
    v = sign * sc.integer(signed=False)
    sc.expect("*")
    sc.expect("sqrt")
    sc.expect("(")
    d = sc.integer(signed=False)
    sc.expect(")")
    sc.expect(")")
    w = 1
    if sc.peek("/"):
        sc.expect("/")
        w = sc.integer(signed=False)
    if not sc.at_end():
        raise SurdSyntaxError(text, sc.pos, "end of input")
    return Surd(u, v, d, w)
