"""Greedy beta-expansions and beta-integers for quadratic (or integer) bases."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .quadratic import IntPoly2, QuadRat, parse_poly, parse_surd

__all__ = [
    "BetaClass",
    "BetaInt",
    "BetaSpec",
    "admissible_pair",
    "beta_ceil",
    "beta_floor",
    "beta_integers_in",
    "conjugate_ratio_bound",
    "conjugate_separation_check",
    "greedy_digits",
    "is_beta_integer",
    "make_beta",
    "ratio_case",
]

DEFAULT_FRAC_DEPTH = 64


class BetaClass(str, enum.Enum):
    RATIONAL_INTEGER = "RationalInteger"
    QUADRATIC_PISOT = "QuadraticPisot"
    QUADRATIC_PERRON_NON_PISOT = "QuadraticPerronNonPisot"
    SQRT_OF_INTEGER = "SqrtOfInteger"
    NON_PERRON_POSITIVE_CONJUGATE = "NonPerronPositiveConjugate"
    NON_PERRON_NEGATIVE_CONJUGATE = "NonPerronNegativeConjugate"

    @property
    def is_perron(self) -> bool:
        return self in (BetaClass.QUADRATIC_PISOT, BetaClass.QUADRATIC_PERRON_NON_PISOT)


@dataclass(eq=False)
class BetaSpec:
    """A base ``beta > 1`` together with its field data and classification."""

    beta: QuadRat
    poly: IntPoly2
    conj: QuadRat
    floor_beta: int
    klass: BetaClass
    _powers: list[QuadRat] = field(default_factory=list, repr=False)
    _inv_powers: list[QuadRat] = field(default_factory=list, repr=False)

    def __post_init__(self):
        one = QuadRat.rational(1, self.beta.D)
        self._powers = [one]
        self._inv_powers = [one]
        self._inv_beta = self.beta.inverse()

    @property
    def D(self) -> int:
        return self.beta.D

    @property
    def is_integer(self) -> bool:
        return self.beta.is_integer

    @property
    def max_digit(self) -> int:
        """Largest greedy digit: ``floor(beta)``, or ``beta - 1`` for integer bases."""
        return self.floor_beta - 1 if self.is_integer else self.floor_beta

    @property
    def is_pisot_unit(self) -> bool:
        return self.klass is BetaClass.QUADRATIC_PISOT and abs(self.poly.f) == 1

    def power(self, i: int) -> QuadRat:
        if i < 0:
            while len(self._inv_powers) <= -i:
                self._inv_powers.append(self._inv_powers[-1] * self._inv_beta)
            return self._inv_powers[-i]
        while len(self._powers) <= i:
            self._powers.append(self._powers[-1] * self.beta)
        return self._powers[i]

    def value_of(self, digits: Sequence[int]) -> QuadRat:
        """``sum(digits[k] * beta**(n-1-k))`` for most-significant-first digits."""
        acc = QuadRat.rational(0, self.D)
        n = len(digits)
        for k, d in enumerate(digits):
            if d:
                acc = acc + d * self.power(n - 1 - k)
        return acc

    def __eq__(self, other):
        return isinstance(other, BetaSpec) and self.beta == other.beta

    def __hash__(self):
        return hash(self.beta)

    def __str__(self) -> str:
        return str(self.beta)


def _classify(beta: QuadRat, conj: QuadRat) -> BetaClass:
    if beta.is_rational:
        return BetaClass.RATIONAL_INTEGER
    if abs(conj) < 1:
        return BetaClass.QUADRATIC_PISOT
    if abs(conj) < beta:
        return BetaClass.QUADRATIC_PERRON_NON_PISOT
    if conj == -beta:
        return BetaClass.SQRT_OF_INTEGER
    if conj > beta:
        return BetaClass.NON_PERRON_POSITIVE_CONJUGATE
    return BetaClass.NON_PERRON_NEGATIVE_CONJUGATE


def make_beta(poly: IntPoly2 | str | QuadRat | int, root: str = "larger") -> BetaSpec:
    """Build a :class:`BetaSpec` from a monic polynomial or from ``beta`` itself.

    For a quadratic polynomial the larger real root is used unless
    ``root="smaller"``; the chosen root must exceed 1.
    """
    if isinstance(poly, str):
        poly = parse_poly(poly) if ("x" in poly or "X" in poly) else parse_surd(poly)
    if isinstance(poly, int):
        poly = QuadRat(poly)
    if isinstance(poly, QuadRat):
        beta = poly
        poly = beta.min_poly()
        if not poly.is_monic:
            raise ValueError(f"{beta} is not an algebraic integer (minimal polynomial {poly})")
    else:
        if not poly.is_monic:
            raise ValueError(f"polynomial {poly} is not monic")
        roots = poly.roots()
        if poly.degree == 2 and len(roots) == 2 and roots[0].is_rational:
            raise ValueError(f"polynomial {poly} is reducible")
        if root not in ("larger", "smaller"):
            raise ValueError("root must be 'larger' or 'smaller'")
        candidates = [r for r in roots if r > 1]
        if not candidates:
            raise ValueError(f"polynomial {poly} has no real root > 1")
        beta = candidates[-1] if root == "larger" else candidates[0]
    if not beta > 1:
        raise ValueError(f"base must exceed 1, got {beta}")
    conj = beta.conj()
    return BetaSpec(beta=beta, poly=poly, conj=conj, floor_beta=beta.floor(), klass=_classify(beta, conj))


@dataclass(frozen=True)
class BetaInt:
    """A beta-integer: most-significant-first greedy digits and exact value."""

    digits: tuple[int, ...]
    value: QuadRat
    negative: bool = False

    def __str__(self) -> str:
        return ("-" if self.negative else "") + "".join(map(str, self.digits)) + "•"

    def as_polynomial(self, var: str = "b") -> str:
        """Render as a polynomial in the base, e.g. ``2*b^3+b^2+1``."""
        n = len(self.digits)
        terms = []
        for k, d in enumerate(self.digits):
            p = n - 1 - k
            if not d:
                continue
            if p == 0:
                terms.append(str(d))
            else:
                pw = var if p == 1 else f"{var}^{p}"
                terms.append(pw if d == 1 else f"{d}*{pw}")
        body = "+".join(terms) if terms else "0"
        if self.negative:
            return f"-({body})" if len(terms) > 1 else f"-{body}"
        return body


def _top_power(x: QuadRat, beta: BetaSpec) -> int:
    """Largest ``k`` with ``beta**k <= x`` (``x >= 1``)."""
    k = 0
    while beta.power(k + 1) <= x:
        k += 1
    return k


def greedy_digits(
    x: QuadRat, beta: BetaSpec, frac_depth: int = DEFAULT_FRAC_DEPTH
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Greedy expansion of ``x >= 0``: (integer-part digits, fractional digits).

    Integer-part digits are complete and most-significant first (``(0,)`` when
    ``x < 1``).  Fractional digits stop at ``frac_depth`` or when the
    remainder vanishes.
    """
    if x < 0:
        raise ValueError("greedy expansion needs a non-negative input")
    int_digits = []
    r = x
    if r >= 1:
        for i in range(_top_power(x, beta), -1, -1):
            d = (r * beta.power(-i)).floor()
            if d:
                r = r - d * beta.power(i)
            int_digits.append(d)
    else:
        int_digits.append(0)
    frac = []
    for _ in range(frac_depth):
        if not r:
            break
        r = r * beta.beta
        d = r.floor()
        if d:
            r = r - d
        frac.append(d)
    return tuple(int_digits), tuple(frac)


def _integer_part(x: QuadRat, beta: BetaSpec) -> tuple[tuple[int, ...], QuadRat, bool]:
    # greedy integer part of x >= 0: digits, their value, and whether x itself is a beta-integer
    if x < 1:
        zero = QuadRat.rational(0, beta.D)
        return (0,), zero, not x
    digits = []
    r = x
    for i in range(_top_power(x, beta), -1, -1):
        d = (r * beta.power(-i)).floor()
        if d:
            r = r - d * beta.power(i)
        digits.append(d)
    return tuple(digits), x - r, not r


def is_beta_integer(x: QuadRat, beta: BetaSpec) -> bool:
    return _integer_part(abs(x), beta)[2]


# coefficient size above which beta_floor brackets x by short dyadic rationals first
_FAST_BITS = 256
_BRACKET_BITS = 64


def beta_floor(x: QuadRat, beta: BetaSpec) -> BetaInt:
    """Largest beta-integer ``<= x``."""
    if x.b and x.c.bit_length() > _FAST_BITS:
        # floor_M is monotone, so equal floors at both ends of a bracket decide it
        k = x.floor_scaled(_BRACKET_BITS)
        lo = QuadRat(k, 0, 1 << _BRACKET_BITS, beta.D)
        hi = QuadRat(k + 1, 0, 1 << _BRACKET_BITS, beta.D)
        f_lo = _beta_floor_exact(lo, beta)
        if f_lo.value == _beta_floor_exact(hi, beta).value:
            return f_lo
    return _beta_floor_exact(x, beta)


def _beta_floor_exact(x: QuadRat, beta: BetaSpec) -> BetaInt:
    if x >= 0:
        digits, value, _ = _integer_part(x, beta)
        return BetaInt(digits, value)
    c = beta_ceil(-x, beta)
    return BetaInt(c.digits, -c.value, negative=bool(c.value))


def beta_ceil(x: QuadRat, beta: BetaSpec) -> BetaInt:
    """Smallest beta-integer ``>= x``."""
    if x <= 0:
        f = beta_floor(-x, beta)
        return BetaInt(f.digits, -f.value, negative=bool(f.value))
    digits, value, exact = _integer_part(x, beta)
    if exact:
        return BetaInt(digits, value)
    # consecutive beta-integers are at most 1 apart; widen defensively anyway
    width = 1
    while True:
        found = beta_integers_in(x, x + width, beta)
        if found:
            return found[0]
        width *= 2


def _nonneg_beta_integers(lo: QuadRat, hi: QuadRat, beta: BetaSpec) -> Iterator[BetaInt]:
    # DFS over most-significant-first digit strings; yields ascending values.
    if hi < 1:
        if lo <= 0 <= hi:
            yield BetaInt((0,), QuadRat.rational(0, beta.D))
        return
    top = _top_power(hi, beta)
    max_digit = beta.max_digit
    digits: list[int] = []

    def dfs(pos: int, prefix: QuadRat, slack: QuadRat) -> Iterator[BetaInt]:
        # slack: min over levels j > pos of beta^(j+1) - sum_{i=pos+1..j} x_i beta^i
        bp = beta.power(pos)
        cap = slack if slack < beta.power(pos + 1) else beta.power(pos + 1)
        for d in range(max_digit + 1):
            step = d * bp
            new_slack = cap - step
            if new_slack <= 0:
                break
            value = prefix + step
            if value > hi:
                break
            tail_cap = bp if bp < new_slack else new_slack
            if pos > 0 and value + tail_cap <= lo:
                continue
            digits.append(d)
            if pos == 0:
                if value >= lo:
                    yield _make_beta_int(tuple(digits), value, beta)
            else:
                yield from dfs(pos - 1, value, new_slack)
            digits.pop()

    yield from dfs(top, QuadRat.rational(0, beta.D), beta.power(top + 1))


def _make_beta_int(digits: tuple[int, ...], value: QuadRat, beta: BetaSpec) -> BetaInt:
    k = 0
    while k < len(digits) - 1 and digits[k] == 0:
        k += 1
    digits = digits[k:]
    check, _ = greedy_digits(value, beta, frac_depth=1)
    if check != digits:
        raise AssertionError(f"enumerated digits {digits} are not the greedy expansion {check} of {value}")
    return BetaInt(digits, value)


def beta_integers_in(lo: QuadRat, hi: QuadRat, beta: BetaSpec) -> list[BetaInt]:
    """All beta-integers ``t`` with ``lo <= t <= hi``, ascending."""
    lo = QuadRat.rational(lo, beta.D) if not isinstance(lo, QuadRat) else lo
    hi = QuadRat.rational(hi, beta.D) if not isinstance(hi, QuadRat) else hi
    if lo > hi:
        raise ValueError("empty interval: lo > hi")
    out: list[BetaInt] = []
    if lo < 0:
        neg_lo = -hi if hi < 0 else QuadRat.rational(0, beta.D)
        # zero is emitted by the non-negative pass
        negs = [t for t in _nonneg_beta_integers(neg_lo, -lo, beta) if t.value]
        out.extend(BetaInt(t.digits, -t.value, negative=True) for t in reversed(negs))
    if hi >= 0:
        out.extend(_nonneg_beta_integers(lo if lo > 0 else QuadRat.rational(0, beta.D), hi, beta))
    return out


def ratio_case(beta: BetaSpec) -> str | None:
    """Which conjugate/value ratio inequality holds for ``beta``: ``"i"``
    (``|beta'| < beta``), ``"ii"`` (``beta' > beta``), ``"iii"``
    (``|beta'| = beta``), ``"iv"`` (``|beta'|/beta > 1 + 2 floor(beta)/(beta - 1)``)
    or None (integer base, or a negative conjugate too close to ``-beta``)."""
    if beta.is_integer:
        return None
    b, bc, fb = beta.beta, beta.conj, beta.floor_beta
    if abs(bc) == b:
        return "iii"
    if abs(bc) < b:
        return "i"
    if bc > b:
        return "ii"
    if abs(bc) / b > 1 + 2 * fb / (b - 1):
        return "iv"
    return None


def conjugate_ratio_bound(x: BetaInt | QuadRat, beta: BetaSpec) -> tuple[str, bool]:
    """Check the conjugate/value ratio inequality that applies to ``beta``.

    Returns ``(case, ok)`` with ``case`` as in :func:`ratio_case`.
    """
    v = x.value if isinstance(x, BetaInt) else x
    if v < 0:
        raise ValueError("conjugate ratio bound applies to non-negative beta-integers")
    if beta.is_integer:
        raise ValueError("integer base has no non-trivial conjugate")
    case = ratio_case(beta)
    if case is None:
        raise ValueError("no conjugate ratio case applies to this base")
    b, bc, fb = beta.beta, beta.conj, beta.floor_beta
    vc = v.conj()
    if case == "iii":
        return case, abs(vc) <= v
    if v.is_integer and 0 <= v.a <= fb:
        raise ValueError(f"{v} lies in {{0..floor(beta)}}, excluded for this case")
    if case == "i":
        bound = (fb + abs(bc)) / (fb + b)
        return case, abs(vc) <= bound * v and bound < 1
    if case == "ii":
        bound = (fb + bc) / (fb + b)
        return case, vc >= bound * v and bound > 1
    c = abs(bc) / b
    bound = (c * (b - 1) - fb) / (b - 1 + fb)
    return case, abs(vc) > bound * v and bound > 1


def conjugate_separation_check(values: Sequence[BetaInt | QuadRat], beta: BetaSpec) -> bool | None:
    """For ``beta' > beta`` with ``floor(beta') > floor(beta)``: distinct conjugates are >= 1 apart.

    Returns None when the hypothesis does not hold for ``beta``.
    """
    if not (beta.conj > beta and beta.conj.floor() > beta.floor_beta):
        return None
    conj = sorted({(t.value if isinstance(t, BetaInt) else t) for t in values})
    conj = sorted(v.conj() for v in conj)
    return all(b - a >= 1 for a, b in zip(conj, conj[1:]))


def admissible_pair(a: BetaInt | QuadRat, nxt: BetaInt | QuadRat, beta: BetaSpec) -> bool | None:
    """Consecutive-quotient rule: ``a == floor(beta)`` forces ``next >= beta``.

    Returns None when ``beta - floor(beta) <= 1/beta`` fails (rule not applicable).
    """
    if not beta.beta - beta.floor_beta <= beta.beta.inverse():
        return None
    av = a.value if isinstance(a, BetaInt) else a
    nv = nxt.value if isinstance(nxt, BetaInt) else nxt
    return not (av == beta.floor_beta and nv < beta.beta)
