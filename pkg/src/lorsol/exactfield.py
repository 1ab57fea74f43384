"""Exact arithmetic in the quadratic field Q(sqrt 2).

Elements are stored as ``(p + q*sqrt2) / d`` with integers ``p, q`` and
``d > 0`` and ``gcd(p, q, d) == 1``, so the representation is unique and
equality is componentwise.  Nothing here ever touches floating point
except :meth:`QuadScalar.__float__`.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational
from typing import Union

__all__ = [
    "QuadScalar",
    "ZERO",
    "ONE",
    "SQRT2",
    "as_quad",
    "parse_quad",
    "sign",
    "to_float",
    "arith",
]

_SQRT2_FLOAT = math.sqrt(2.0)

Scalarish = Union["QuadScalar", int, Fraction]


class QuadScalar:
    """The number a + b*sqrt(2) with rational a and b."""

    __slots__ = ("_p", "_q", "_d")

    def __init__(self, a: int | Fraction | str = 0, b: int | Fraction | str = 0) -> None:
        a = Fraction(a)
        b = Fraction(b)
        d = a.denominator * b.denominator // math.gcd(a.denominator, b.denominator)
        self._set(a.numerator * (d // a.denominator), b.numerator * (d // b.denominator), d)

    @classmethod
    def _raw(cls, p: int, q: int, d: int) -> QuadScalar:
        obj = object.__new__(cls)
        obj._set(p, q, d)
        return obj

    def _set(self, p: int, q: int, d: int) -> None:
        if d < 0:
            p, q, d = -p, -q, -d
        g = math.gcd(p, q, d)
        if g != 1:
            p //= g
            q //= g
            d //= g
        self._p = p
        self._q = q
        self._d = d

    # components ---------------------------------------------------------

    @property
    def a(self) -> Fraction:
        return Fraction(self._p, self._d)

    @property
    def b(self) -> Fraction:
        return Fraction(self._q, self._d)

    @property
    def a_num(self) -> int:
        return self.a.numerator

    @property
    def a_den(self) -> int:
        return self.a.denominator

    @property
    def b_num(self) -> int:
        return self.b.numerator

    @property
    def b_den(self) -> int:
        return self.b.denominator

    def is_rational(self) -> bool:
        return self._q == 0

    def conjugate(self) -> QuadScalar:
        """Galois conjugate a - b*sqrt(2)."""
        return QuadScalar._raw(self._p, -self._q, self._d)

    def norm(self) -> Fraction:
        """Field norm a^2 - 2 b^2 (a rational number)."""
        return Fraction(self._p * self._p - 2 * self._q * self._q, self._d * self._d)

    # arithmetic ---------------------------------------------------------

    def __add__(self, other: Scalarish) -> QuadScalar:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if self._d == o._d:
            return QuadScalar._raw(self._p + o._p, self._q + o._q, self._d)
        return QuadScalar._raw(
            self._p * o._d + o._p * self._d,
            self._q * o._d + o._q * self._d,
            self._d * o._d,
        )

    __radd__ = __add__

    def __neg__(self) -> QuadScalar:
        return QuadScalar._raw(-self._p, -self._q, self._d)

    def __pos__(self) -> QuadScalar:
        return self

    def __sub__(self, other: Scalarish) -> QuadScalar:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Scalarish) -> QuadScalar:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: Scalarish) -> QuadScalar:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if not (self._p or self._q) or not (o._p or o._q):
            return ZERO
        p1, q1, p2, q2 = self._p, self._q, o._p, o._q
        return QuadScalar._raw(p1 * p2 + 2 * q1 * q2, p1 * q2 + q1 * p2, self._d * o._d)

    __rmul__ = __mul__

    def inverse(self) -> QuadScalar:
        n = self._p * self._p - 2 * self._q * self._q
        if n == 0:
            # a^2 = 2 b^2 has no rational solution except a = b = 0
            raise ZeroDivisionError("division by zero in Q(sqrt2)")
        # d / (p + q r2) = d (p - q r2) / n
        return QuadScalar._raw(self._d * self._p, -self._d * self._q, n)

    def __truediv__(self, other: Scalarish) -> QuadScalar:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: Scalarish) -> QuadScalar:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> QuadScalar:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # comparison ---------------------------------------------------------

    def sign(self) -> int:
        p, q = self._p, self._q
        if p >= 0 and q >= 0:
            return 1 if (p or q) else 0
        if p <= 0 and q <= 0:
            return -1
        # opposite signs: compare p^2 with 2 q^2
        if p > 0:
            return 1 if p * p > 2 * q * q else -1
        return 1 if 2 * q * q > p * p else -1

    def __bool__(self) -> bool:
        return bool(self._p or self._q)

    def __eq__(self, other: object) -> bool:
        o = _coerce(other)
        if o is None:
            if isinstance(other, float):
                return self.is_rational() and Fraction(self._p, self._d) == other
            return NotImplemented
        return self._p == o._p and self._q == o._q and self._d == o._d

    def __hash__(self) -> int:
        if self._q == 0:
            return hash(Fraction(self._p, self._d))
        return hash((self._p, self._q, self._d))

    def _cmp(self, other: Scalarish) -> int:
        o = _coerce(other)
        if o is None:
            raise TypeError(f"cannot compare QuadScalar with {type(other).__name__}")
        return (self - o).sign()

    def __lt__(self, other: Scalarish) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other: Scalarish) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other: Scalarish) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other: Scalarish) -> bool:
        return self._cmp(other) >= 0

    def __abs__(self) -> QuadScalar:
        return -self if self.sign() < 0 else self

    # conversion ---------------------------------------------------------

    def __float__(self) -> float:
        # a and b are converted separately so huge numerators do not overflow
        return float(Fraction(self._p, self._d)) + float(Fraction(self._q, self._d)) * _SQRT2_FLOAT

    def to_json(self) -> dict:
        a, b = self.a, self.b
        return {"a": [a.numerator, a.denominator], "b": [b.numerator, b.denominator]}

    @classmethod
    def from_json(cls, obj) -> QuadScalar:
        return as_quad(obj)

    def __str__(self) -> str:
        a, b = self.a, self.b
        if b == 0:
            return str(a)
        bpart = "sqrt2" if b == 1 else "-sqrt2" if b == -1 else f"{b}*sqrt2"
        if a == 0:
            return bpart
        if bpart.startswith("-"):
            return f"{a}{bpart}"
        return f"{a}+{bpart}"

    def __repr__(self) -> str:
        return f"QuadScalar({self.a!s}, {self.b!s})"


def _coerce(x: object) -> QuadScalar | None:
    if isinstance(x, QuadScalar):
        return x
    if isinstance(x, int):
        return QuadScalar._raw(x, 0, 1)
    if isinstance(x, Rational):
        return QuadScalar._raw(x.numerator, 0, x.denominator)
    return None


ZERO = QuadScalar._raw(0, 0, 1)
ONE = QuadScalar._raw(1, 0, 1)
SQRT2 = QuadScalar._raw(0, 1, 1)


_TERM = re.compile(
    r"""\s*(?P<sign>[+-]?)\s*
        (?:
          (?P<coef>\d+(?:/\d+)?)?\s*\*?\s*(?P<root>r2|sqrt\(?2\)?|√2)
        | (?P<rat>\d+(?:/\d+)?)
        )\s*""",
    re.VERBOSE,
)


def parse_quad(text: str) -> QuadScalar:
    """Parse ``"1/2+1r2"``, ``"-3*sqrt2"``, ``"1+√2"`` and the like."""
    s = text.strip()
    if not s:
        raise ValueError("empty scalar string")
    a = Fraction(0)
    b = Fraction(0)
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (pos > 0 and not m.group("sign")):
            raise ValueError(f"cannot parse scalar {text!r}")
        sgn = -1 if m.group("sign") == "-" else 1
        if m.group("root"):
            b += sgn * Fraction(m.group("coef") or 1)
        else:
            a += sgn * Fraction(m.group("rat"))
        pos = m.end()
    return QuadScalar(a, b)


def as_quad(x) -> QuadScalar:
    """Coerce ints, Fractions, strings and the JSON object form to QuadScalar."""
    if isinstance(x, QuadScalar):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, (int, Fraction)):
        return QuadScalar(x)
    if isinstance(x, str):
        return parse_quad(x)
    if isinstance(x, dict):
        if set(x) - {"a", "b"}:
            raise ValueError(f"unknown scalar fields: {sorted(set(x) - {'a', 'b'})}")
        return QuadScalar(_json_fraction(x.get("a", [0, 1])), _json_fraction(x.get("b", [0, 1])))
    raise TypeError(f"cannot interpret {x!r} as an exact scalar")


def _json_fraction(pair) -> Fraction:
    if isinstance(pair, bool) or not isinstance(pair, (list, tuple)) or len(pair) != 2:
        raise ValueError(f"expected [num, den], got {pair!r}")
    num, den = pair
    if not isinstance(num, int) or not isinstance(den, int) or isinstance(num, bool):
        raise ValueError(f"expected integer pair, got {pair!r}")
    if den <= 0:
        raise ValueError("denominator must be positive")
    return Fraction(num, den)


def sign(x: Scalarish) -> int:
    return as_quad(x).sign()


def to_float(x: Scalarish) -> float:
    return float(as_quad(x))


def arith(x: Scalarish, y: Scalarish, op: str) -> QuadScalar:
    """Apply one of ``add``, ``sub``, ``mul``, ``div``."""
    x, y = as_quad(x), as_quad(y)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")
