"""Exact arithmetic in real quadratic fields Q(sqrt(D)).

Every element is stored in the canonical form ``(a + b*sqrt(D)) / c`` with
``D`` squarefree, ``c > 0`` and ``gcd(a, b, c) = 1``.  Rationals are the
``b == 0`` case of the same type, so equality and hashing of canonical
triples coincide with equality of values.  No floating point is involved in
any comparison.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Union

try:  # GMP-backed integers when available; the arithmetic is identical either way
    import gmpy2

    _Int = gmpy2.mpz
    _gcd = gmpy2.gcd
    _isqrt = gmpy2.isqrt
except ImportError:  # pragma: no cover - exercised only without gmpy2
    _Int = int
    _gcd = math.gcd
    _isqrt = math.isqrt

__all__ = [
    "FieldMismatchError",
    "IntPoly2",
    "QuadRat",
    "canonicalize",
    "parse_poly",
    "parse_surd",
    "sqrt_exact",
    "squarefree_part",
]


class FieldMismatchError(ValueError):
    """Raised when two irrational operands live in different quadratic fields."""


@lru_cache(maxsize=4096)
def squarefree_part(n: int) -> tuple[int, int]:
    """Return ``(s, k)`` with ``n == s*s*k`` and ``k`` squarefree (``n >= 1``)."""
    if n < 1:
        raise ValueError(f"invalid field: D must be positive, got {n}")
    s, k = 1, 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            k *= p
        p += 1 if p == 2 else 2
    return s, k * n


def _rational_parts(x) -> tuple[int, int]:
    if isinstance(x, int):
        return x, 1
    if isinstance(x, Rational):
        return x.numerator, x.denominator
    raise TypeError(f"cannot convert {type(x).__name__} to QuadRat")


class QuadRat:
    """An element ``(a + b*sqrt(D)) / c`` of a real quadratic field.

    Instances are immutable.  ``D`` is kept on rationals as a field tag, but
    rationals combine freely with elements of any field.
    """

    __slots__ = ("a", "b", "c", "D")

    a: int
    b: int
    c: int
    D: int

    def __init__(self, a: int = 0, b: int = 0, c: int = 1, D: int = 1):
        a, b, c, D = _canonical_tuple(int(a), int(b), int(c), int(D))
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "D", D)

    @classmethod
    def _raw(cls, a: int, b: int, c: int, D: int) -> QuadRat:
        # Caller guarantees D squarefree and c != 0; only gcd/sign are fixed up.
        if c < 0:
            a, b, c = -a, -b, -c
        # c first: when it is small the remaining gcds are cheap
        g = _gcd(c, a)
        if b and g != 1:
            g = _gcd(g, b)
        if g != 1:
            a //= g
            b //= g
            c //= g
        obj = object.__new__(cls)
        object.__setattr__(obj, "a", a)
        object.__setattr__(obj, "b", b)
        object.__setattr__(obj, "c", c)
        object.__setattr__(obj, "D", D)
        return obj

    @classmethod
    def rational(cls, value, D: int = 1) -> QuadRat:
        p, q = _rational_parts(value)
        return cls(p, 0, q, D)

    @classmethod
    def sqrt(cls, n: int) -> QuadRat:
        """Return ``sqrt(n)`` for a non-negative integer ``n``."""
        if n == 0:
            return cls(0)
        return cls(0, 1, 1, n)

    def __setattr__(self, name, value):
        raise AttributeError("QuadRat is immutable")

    def __reduce__(self):
        return (QuadRat, (self.a, self.b, self.c, self.D))

    # -- predicates -------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    @property
    def is_integer(self) -> bool:
        """True for rational integers."""
        return self.b == 0 and self.c == 1

    @property
    def is_sqrt_multiple(self) -> bool:
        """True for elements of ``sqrt(D) * Z`` (including 0)."""
        return self.a == 0 and self.c == 1

    def as_fraction(self) -> Fraction:
        if self.b:
            raise ValueError(f"{self} is irrational")
        return Fraction(int(self.a), int(self.c))

    # -- coercion ---------------------------------------------------------

    def _coerce(self, other) -> QuadRat | None:
        if isinstance(other, QuadRat):
            return other
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            p, q = _rational_parts(other)
            return QuadRat._raw(p, 0, q, self.D)
        if isinstance(other, bool):
            return QuadRat._raw(int(other), 0, 1, self.D)
        return None

    def _field(self, other: QuadRat) -> int:
        if self.b and other.b and self.D != other.D:
            raise FieldMismatchError(f"Q(sqrt({self.D})) and Q(sqrt({other.D})) differ")
        if self.b:
            return self.D
        if other.b:
            return other.D
        return self.D if self.D != 1 else other.D

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        D = self._field(y)
        if self.c == y.c:
            return QuadRat._raw(self.a + y.a, self.b + y.b, self.c, D)
        return QuadRat._raw(self.a * y.c + y.a * self.c, self.b * y.c + y.b * self.c, self.c * y.c, D)

    __radd__ = __add__

    def __neg__(self) -> QuadRat:
        return QuadRat._raw(-self.a, -self.b, self.c, self.D)

    def __pos__(self) -> QuadRat:
        return self

    def __sub__(self, other):
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        return self + (-y)

    def __rsub__(self, other):
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        return y + (-self)

    def __mul__(self, other):
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        D = self._field(y)
        return QuadRat._raw(
            self.a * y.a + self.b * y.b * D,
            self.a * y.b + self.b * y.a,
            self.c * y.c,
            D,
        )

    __rmul__ = __mul__

    def inverse(self) -> QuadRat:
        if self.a == 0 and self.b == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.b == 0:
            return QuadRat._raw(self.c, 0, self.a, self.D)
        norm = self.a * self.a - self.b * self.b * self.D
        return QuadRat._raw(self.c * self.a, -self.c * self.b, norm, self.D)

    def __truediv__(self, other):
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        return self * y.inverse()

    def __rtruediv__(self, other):
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        return y * self.inverse()

    def __pow__(self, n: int) -> QuadRat:
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = QuadRat._raw(1, 0, 1, self.D)
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __abs__(self) -> QuadRat:
        return -self if self.sign() < 0 else self

    # -- Galois structure -------------------------------------------------

    def conj(self) -> QuadRat:
        """Image under the non-trivial automorphism ``sqrt(D) -> -sqrt(D)``."""
        if self.b == 0:
            return self
        return QuadRat._raw(self.a, -self.b, self.c, self.D)

    conjugate = conj

    def trace(self) -> Fraction:
        return Fraction(int(2 * self.a), int(self.c))

    def norm(self) -> Fraction:
        return Fraction(int(self.a * self.a - self.b * self.b * self.D), int(self.c * self.c))

    def min_poly(self) -> IntPoly2:
        """Primitive integer minimal polynomial with positive leading coefficient."""
        if self.b == 0:
            return IntPoly2((self.c, -self.a))
        t, n = self.trace(), self.norm()
        lcm = t.denominator * n.denominator // math.gcd(t.denominator, n.denominator)
        coeffs = (lcm, -int(t * lcm), int(n * lcm))
        g = math.gcd(*coeffs)
        return IntPoly2(tuple(k // g for k in coeffs))

    # -- order ------------------------------------------------------------

    def sign(self) -> int:
        """Exact sign of the real value, using integer arithmetic only."""
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        sb = 1 if b > 0 else -1
        if a == 0:
            return sb
        sa = 1 if a > 0 else -1
        if sa == sb:
            return sa
        # opposite signs: the term with the larger square wins
        return sa if a * a > b * b * self.D else sb

    def _cmp(self, other) -> int:
        y = self._coerce(other)
        if y is None:
            raise TypeError(f"cannot compare QuadRat with {type(other).__name__}")
        if self.b == 0 and y.b == 0:
            lhs, rhs = self.a * y.c, y.a * self.c
            return (lhs > rhs) - (lhs < rhs)
        return (self - y).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        if self.b == 0 and y.b == 0:
            return self.a == y.a and self.c == y.c
        return self.a == y.a and self.b == y.b and self.c == y.c and self.D == y.D

    def __hash__(self):
        if self.b == 0:
            return hash(Fraction(int(self.a), int(self.c)))
        return hash((self.a, self.b, self.c, self.D))

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    def floor(self) -> int:
        """Greatest rational integer not exceeding the value."""
        if self.b == 0:
            return int(self.a // self.c)
        # b*sqrt(D) lies strictly inside (t, t + 1) because D is squarefree >= 2
        r = _isqrt(self.b * self.b * self.D)
        t = r if self.b > 0 else -r - 1
        return int((self.a + t) // self.c)

    def floor_scaled(self, bits: int) -> int:
        """``floor(self * 2**bits)``, exactly."""
        if self.b == 0:
            return int((self.a << bits) // self.c)
        r = _isqrt(self.b * self.b * self.D << (2 * bits))
        t = r if self.b > 0 else -r - 1
        return int(((self.a << bits) + t) // self.c)

    __floor__ = floor

    def ceil(self) -> int:
        return -((-self).floor())

    __ceil__ = ceil

    def __float__(self) -> float:
        return float(self.bounds(64)[0])

    def bounds(self, bits: int = 64) -> tuple[Fraction, Fraction]:
        """Rational ``(lo, hi)`` with ``lo <= self <= hi`` and width about ``2**-bits``."""
        if self.b == 0:
            v = Fraction(int(self.a), int(self.c))
            return v, v
        scale = 1 << bits
        r = _isqrt(self.b * self.b * self.D * scale * scale)
        if self.b > 0:
            lo, hi = r, r + 1
        else:
            lo, hi = -r - 1, -r
        base = self.a * scale
        return Fraction(int(base + lo), int(self.c * scale)), Fraction(int(base + hi), int(self.c * scale))

    def float_upper(self) -> float:
        """A binary64 value guaranteed to be >= the exact value."""
        hi = self.bounds(80)[1]
        f = float(hi)
        if Fraction(f) < hi:
            f = math.nextafter(f, math.inf)
        return f

    # -- text -------------------------------------------------------------

    def __str__(self) -> str:
        return format_surd(self)

    def __repr__(self) -> str:
        return f"QuadRat({self.a}, {self.b}, {self.c}, {self.D})"


def _canonical_tuple(a: int, b: int, c: int, D: int) -> tuple[int, int, int, int]:
    if c == 0:
        raise ZeroDivisionError("zero denominator")
    if D < 1:
        raise ValueError(f"invalid field: D must be positive, got {D}")
    if b != 0:
        s, D = squarefree_part(D)
        b *= s
        if D == 1:
            a, b = a + b, 0
    elif D > 1:
        D = squarefree_part(D)[1]
    if c < 0:
        a, b, c = -a, -b, -c
    g = math.gcd(a, b, c)
    if g > 1:
        a, b, c = a // g, b // g, c // g
    return _Int(a), _Int(b), _Int(c), D


def canonicalize(a: int, b: int, c: int, D: int) -> QuadRat:
    """Build the canonical element ``(a + b*sqrt(D)) / c``."""
    return QuadRat(a, b, c, D)


def _fraction_sqrt(f: Fraction) -> Fraction | None:
    if f < 0:
        return None
    n, d = f.numerator, f.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(int(rn), int(rd))
    return None


def sqrt_exact(y: QuadRat) -> QuadRat | None:
    """Return the non-negative square root of ``y`` inside its field, or None."""
    if y.sign() < 0:
        return None
    if not y:
        return y
    D = y.D
    r = Fraction(int(y.a), int(y.c))
    t = Fraction(int(y.b), int(y.c))
    if t == 0:
        s = _fraction_sqrt(r)
        if s is not None:
            return QuadRat.rational(s, D)
        if D > 1:
            m = _fraction_sqrt(r / D)
            if m is not None:
                return QuadRat.rational(m, D) * QuadRat.sqrt(D)
        return None
    # (u + v sqrt(D))^2 = r + t sqrt(D)  <=>  u^2 + D v^2 = r, 2uv = t
    n = _fraction_sqrt(r * r - D * t * t)
    if n is None:
        return None
    for u2 in ((r + n) / 2, (r - n) / 2):
        u = _fraction_sqrt(u2)
        if not u:
            continue
        v = t / (2 * u)
        root = QuadRat(u.numerator * v.denominator, v.numerator * u.denominator, u.denominator * v.denominator, D)
        if root * root == y:
            return abs(root)
    return None


@dataclass(frozen=True)
class IntPoly2:
    """A primitive integer polynomial of degree 1 or 2, coefficients highest first.

    ``IntPoly2((d, e, f))`` is ``d*X^2 + e*X + f``; ``IntPoly2((d, e))`` is
    ``d*X + e``.
    """

    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(k) for k in self.coeffs)
        while len(coeffs) > 1 and coeffs[0] == 0:
            coeffs = coeffs[1:]
        if len(coeffs) not in (2, 3):
            raise ValueError(f"degree must be 1 or 2, got coefficients {self.coeffs}")
        if coeffs[0] < 0:
            coeffs = tuple(-k for k in coeffs)
        g = math.gcd(*coeffs)
        if g > 1:
            coeffs = tuple(k // g for k in coeffs)
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[0]

    @property
    def d(self) -> int:
        return self.coeffs[0] if self.degree == 2 else 0

    @property
    def e(self) -> int:
        return self.coeffs[-2]

    @property
    def f(self) -> int:
        return self.coeffs[-1]

    @property
    def is_monic(self) -> bool:
        return self.coeffs[0] == 1

    @property
    def discriminant(self) -> int:
        if self.degree == 1:
            raise ValueError("discriminant of a linear polynomial")
        d, e, f = self.coeffs
        return e * e - 4 * d * f

    def __call__(self, x):
        acc = 0
        for k in self.coeffs:
            acc = acc * x + k
        return acc

    def roots(self) -> list[QuadRat]:
        """Real roots in ascending order (exact)."""
        if self.degree == 1:
            e, f = self.coeffs
            return [QuadRat(-f, 0, e)]
        d, e, f = self.coeffs
        disc = self.discriminant
        if disc < 0:
            return []
        if disc == 0:
            return [QuadRat(-e, 0, 2 * d)]
        return [QuadRat(-e, -1, 2 * d, disc), QuadRat(-e, 1, 2 * d, disc)]

    def __str__(self) -> str:
        parts = []
        deg = self.degree
        for i, k in enumerate(self.coeffs):
            p = deg - i
            if k == 0:
                continue
            sign = "-" if k < 0 else "+"
            mag = abs(k)
            if p == 0:
                body = str(mag)
            else:
                body = ("" if mag == 1 else f"{mag}*") + ("x" if p == 1 else f"x^{p}")
            parts.append((sign, body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += sign + body
        return out


def format_surd(x: QuadRat) -> str:
    """Render in the ``(a+b*sqrt(D))/c`` grammar accepted by :func:`parse_surd`."""
    a, b, c, D = x.a, x.b, x.c, x.D
    if b == 0:
        return str(a) if c == 1 else f"{a}/{c}"
    mag = abs(b)
    root = f"sqrt({D})" if mag == 1 else f"{mag}*sqrt({D})"
    if a == 0:
        num = ("-" if b < 0 else "") + root
    else:
        num = f"{a}{'-' if b < 0 else '+'}{root}"
    if c == 1:
        return num
    if a == 0 and mag == 1 and b > 0:
        return f"{num}/{c}"
    return f"({num})/{c}"


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\*\*|.))")


class _SurdParser:
    def __init__(self, text: str, names: dict[str, QuadRat] | None = None):
        self.tokens: list[tuple[str, str]] = []
        self.names = names or {}
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None or m.end() == pos:
                break
            num, ident, ch = m.groups()
            if num is not None:
                self.tokens.append(("num", num))
            elif ident is not None:
                if ident != "sqrt" and ident not in self.names:
                    raise ValueError(f"unknown name {ident!r} in {text!r}")
                self.tokens.append(("sqrt", ident) if ident == "sqrt" else ("name", ident))
            elif ch.strip():
                if ch == "**":
                    ch = "^"
                if ch not in "+-*/()^":
                    raise ValueError(f"unexpected character {ch!r} in {text!r}")
                self.tokens.append(("op", ch))
            pos = m.end()
        self.i = 0
        self.text = text

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self, value=None):
        tok = self.peek()
        if tok[0] is None or (value is not None and tok[1] != value):
            raise ValueError(f"malformed surd literal {self.text!r}")
        self.i += 1
        return tok

    def parse(self) -> QuadRat:
        if not self.tokens:
            raise ValueError("empty surd literal")
        value = self.expr()
        if self.i != len(self.tokens):
            raise ValueError(f"trailing input in surd literal {self.text!r}")
        return value

    def expr(self) -> QuadRat:
        value = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> QuadRat:
        value = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.unary()
            if op == "/" and not rhs:
                raise ValueError(f"division by zero in {self.text!r}")
            value = value * rhs if op == "*" else value / rhs
        return value

    def unary(self) -> QuadRat:
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> QuadRat:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise ValueError(f"exponent must be a non-negative integer in {self.text!r}")
            return base ** int(val)
        return base

    def atom(self) -> QuadRat:
        kind, val = self.peek()
        if kind == "num":
            self.take()
            return QuadRat(int(val))
        if kind == "name":
            self.take()
            return self.names[val]
        if kind == "sqrt":
            self.take()
            self.take("(")
            arg = self.expr()
            self.take(")")
            if not arg.is_integer or arg.a < 0:
                raise ValueError(f"sqrt argument must be a non-negative integer in {self.text!r}")
            return QuadRat.sqrt(arg.a)
        if (kind, val) == ("op", "("):
            self.take()
            value = self.expr()
            self.take(")")
            return value
        raise ValueError(f"malformed surd literal {self.text!r}")


def parse_surd(text: str, names: dict[str, QuadRat] | None = None) -> QuadRat:
    """Parse literals such as ``(164+65*sqrt(17))/251``, ``3+2*sqrt(2)`` or ``5/3``.

    ``names`` binds identifiers, e.g. ``{"b": beta}`` accepts ``2*b^3+b^2+1``.
    """
    return _SurdParser(text, names).parse()


_POLY_TERM = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*([xX](?:\s*(?:\^|\*\*)\s*(\d+))?)?")


def parse_poly(text: str) -> IntPoly2:
    """Parse a degree 1 or 2 integer polynomial such as ``x^2-x-4`` or ``X^2 + 4*X - 6``."""
    src = text.replace(" ", "")
    if not src:
        raise ValueError("empty polynomial")
    coeffs = {0: 0, 1: 0, 2: 0}
    pos = 0
    while pos < len(src):
        m = _POLY_TERM.match(src, pos)
        if m is None or m.end() == pos or (not m.group(2) and not m.group(3)):
            raise ValueError(f"malformed polynomial {text!r}")
        sign, digits, var, power = m.groups()
        k = int(digits) if digits else 1
        if sign == "-":
            k = -k
        p = 0 if not var else int(power) if power else 1
        if p not in coeffs:
            raise ValueError(f"degree {p} not supported in {text!r}")
        coeffs[p] += k
        pos = m.end()
        if pos < len(src) and src[pos] not in "+-":
            raise ValueError(f"malformed polynomial {text!r}")
    return IntPoly2((coeffs[2], coeffs[1], coeffs[0]))


Number = Union[QuadRat, int, Fraction]
