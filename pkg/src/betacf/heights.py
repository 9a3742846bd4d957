"""Weil heights of rational and real-quadratic numbers.

Heights are handled through their squares.  For ``x`` of degree two with
minimal polynomial leading coefficient ``d``,

    H(x)^2 = d * max(1, |x|) * max(1, |x'|),

which is an element of the same field as ``x``; for a rational ``p/q`` the
height is ``max(|p|, |q|)``.  This is the Mahler-measure form of the height;
the place-by-place product is never evaluated.

Note on normalisation: the two absolute values ``|x|_+ = |x|^(1/2)`` and
``|x|_- = |x'|^(1/2)`` used for real quadratic fields are the archimedean
ones, even though they are sometimes described as non-archimedean.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .quadratic import QuadRat

__all__ = [
    "HeightSq",
    "galois_invariance_check",
    "irrational_pq_count_bound",
    "partial_quotient_bound",
    "weil_height_squared",
]

# upward slack applied to float evaluations of the appendix bound
_SLACK = 1.0 + 2.0**-40


@dataclass(frozen=True)
class HeightSq:
    """Exact ``H(x)**2`` plus a binary64 upper bound for it."""

    value: QuadRat
    float_upper: float

    @property
    def height_upper(self) -> float:
        """Upper bound on ``H(x)`` itself."""
        return math.nextafter(math.sqrt(self.float_upper), math.inf)

    def __le__(self, other: HeightSq) -> bool:
        return self.value <= other.value

    def __lt__(self, other: HeightSq) -> bool:
        return self.value < other.value


def _sup1(x: QuadRat) -> QuadRat:
    ax = abs(x)
    return ax if ax > 1 else QuadRat.rational(1, x.D)


def weil_height_squared(x: QuadRat) -> HeightSq:
    if x.is_rational:
        h = max(abs(x.a), x.c)
        value = QuadRat.rational(h * h, x.D)
    else:
        d = x.min_poly().leading
        value = d * _sup1(x) * _sup1(x.conj())
    return HeightSq(value, value.float_upper())


def galois_invariance_check(x: QuadRat) -> bool:
    return weil_height_squared(x).value == weil_height_squared(x.conj()).value


def partial_quotient_bound(xi: QuadRat) -> QuadRat:
    """``3 * H(xi)**2``: the largest partial quotient possible when ``|a'| <= a``."""
    if xi.is_rational:
        raise ValueError("partial quotient bound needs an irrational quadratic input")
    return 3 * weil_height_squared(xi).value


def _count_bound_from_hsq(hsq_upper: float) -> float:
    # 36 H^2 log H + 9 log(3) H^2  ==  H^2 * (18 log H^2 + 9 log 3)
    log_h2 = math.nextafter(math.log(hsq_upper), math.inf)
    inner = math.nextafter(18.0 * log_h2 + 9.0 * math.log(3.0), math.inf)
    return math.nextafter(hsq_upper * inner, math.inf) * _SLACK


def irrational_pq_count_bound(xi: QuadRat) -> float:
    """Outward-rounded upper bound on the number of irrational partial quotients."""
    if xi.is_rational:
        raise ValueError("count bound needs an irrational quadratic input")
    return _count_bound_from_hsq(weil_height_squared(xi).float_upper)
