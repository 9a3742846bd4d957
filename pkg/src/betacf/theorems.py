"""Executable checks of the structural results on quadratic continued fractions.

Nothing here assumes a theorem holds: each checker recomputes the relevant
quantities exactly and reports (or raises on) what it finds.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterator

from .beta import BetaClass, BetaSpec
from .cf import CFOutcome, Kind, convergents, eval_periodic, expand
from .heights import _count_bound_from_hsq, weil_height_squared
from .quadratic import QuadRat

__all__ = [
    "AppendixReport",
    "AutomatonState",
    "AutomatonTrace",
    "Homogeneity",
    "Interval",
    "MercatThreshold",
    "PeriodReport",
    "TheoremViolation",
    "aperiodic_witness",
    "appendix_bound_check",
    "automaton_trace",
    "check_superteorem",
    "mercat_threshold",
    "perron_period_bound_check",
    "positive_conjugate_period_check",
    "surd_search",
]

REPORT_SCHEMA_VERSION = 1


class TheoremViolation(AssertionError):
    """A computed object contradicts a proven statement (or its stated hypotheses were wrong)."""


class Homogeneity(str, enum.Enum):
    ALL_RATIONAL_INTEGERS = "AllRationalIntegers"
    ALL_SQRT_D_MULTIPLES = "AllSqrtDMultiples"
    MIXED = "Mixed"


def _in_z_or_sqrt_dz(x: QuadRat) -> bool:
    return x.is_integer or x.is_sqrt_multiple


def _homogeneity(quotients) -> Homogeneity:
    if all(a.is_integer for a in quotients):
        return Homogeneity.ALL_RATIONAL_INTEGERS
    if all(a.is_sqrt_multiple for a in quotients):
        return Homogeneity.ALL_SQRT_D_MULTIPLES
    return Homogeneity.MIXED


def _jsonable(v):
    if isinstance(v, QuadRat):
        return str(v)
    if isinstance(v, enum.Enum):
        return v.value
    if isinstance(v, (list, tuple)):
        return [_jsonable(t) for t in v]
    if isinstance(v, float) and not math.isfinite(v):
        return str(v)
    if hasattr(v, "bit_length") and not isinstance(v, (bool, int)):
        return int(v)
    return v


@dataclass
class PeriodReport:
    """Findings on one eventually periodic expansion.

    ``hypotheses_met`` records whether every period quotient satisfies
    ``a >= 1`` and ``|a'| <= a``; only then is ``homogeneity == Mixed`` a
    violation.  The count fields come from :func:`appendix_bound_check`.
    """

    homogeneity: Homogeneity
    pq_sum: QuadRat
    pq_sum_in_Z_or_sqrtD: bool
    hypotheses_met: bool
    bound_ok: bool | None = None
    irrational_pq_count: int | None = None
    bound_value: float | None = None
    conditional_flags: tuple[str, ...] = ()

    @property
    def violations(self) -> list[str]:
        out = []
        if self.hypotheses_met and self.homogeneity is Homogeneity.MIXED:
            out.append("period mixes rational integers and sqrt(D) multiples")
        if not self.pq_sum_in_Z_or_sqrtD:
            out.append(f"p_n + q_(n-1) = {self.pq_sum} is outside Z and sqrt(D)Z")
        if self.bound_ok is False:
            out.append(f"{self.irrational_pq_count} irrational quotients exceed the bound {self.bound_value}")
        return out

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "schema": REPORT_SCHEMA_VERSION,
            "homogeneity": _jsonable(self.homogeneity),
            "pq_sum": str(self.pq_sum),
            "pq_sum_in_Z_or_sqrtD": self.pq_sum_in_Z_or_sqrtD,
            "hypotheses_met": self.hypotheses_met,
            "r": self.irrational_pq_count,
            "bound": self.bound_value,
            "ok": self.ok,
            "conditional_flags": list(self.conditional_flags),
        }


def check_superteorem(outcome: CFOutcome) -> PeriodReport:
    """Homogeneity of the period and ``p_n + q_{n-1}`` membership over one period."""
    if not outcome.is_periodic:
        raise ValueError(f"periodicity checks need an eventually periodic outcome, got {outcome.kind.value}")
    period = outcome.period
    hyp = all(a >= 1 and abs(a.conj()) <= a for a in period)
    t = convergents(period)
    n = len(period) - 1
    pq_sum = t.p[n] + t.q_at(n - 1)
    report = PeriodReport(
        homogeneity=_homogeneity(period),
        pq_sum=pq_sum,
        pq_sum_in_Z_or_sqrtD=_in_z_or_sqrt_dz(pq_sum),
        hypotheses_met=hyp,
    )
    app = appendix_bound_check(outcome)
    report.bound_ok = app.count_ok
    report.irrational_pq_count = app.r
    report.bound_value = app.bound
    return report


def _periodic_tail(outcome: CFOutcome) -> QuadRat:
    return eval_periodic((), outcome.period, outcome.x.D)


def perron_period_bound_check(outcome: CFOutcome, beta: BetaSpec) -> bool:
    """Period quotients of a Perron base are rational integers in ``1..floor(beta)``
    and at most ``3 H(tail)^2`` for the purely periodic tail.

    Finite outcomes pass vacuously; capped ones fail (Perron bases never cap in theory).
    """
    if not beta.klass.is_perron:
        raise ValueError(f"base {beta} is {beta.klass.value}, not Perron")
    if outcome.is_finite:
        return True
    if outcome.is_capped:
        return False
    bound = 3 * weil_height_squared(_periodic_tail(outcome)).value
    return all(a.is_integer and 1 <= a <= beta.floor_beta and a <= bound for a in outcome.period)


def positive_conjugate_period_check(outcome: CFOutcome, beta: BetaSpec) -> bool:
    """For ``beta' > beta`` any period lies in ``{1, ..., floor(beta)}``."""
    if beta.klass is not BetaClass.NON_PERRON_POSITIVE_CONJUGATE:
        raise ValueError(f"base {beta} does not have a conjugate larger than itself")
    if not outcome.is_periodic:
        return True
    return all(a.is_integer and 1 <= a <= beta.floor_beta for a in outcome.period)


# --- Appendix bound and Diophantine minoration ---


@dataclass
class AppendixReport:
    """Irrational-quotient count against the appendix bound, plus the minoration spot checks.

    When ``a_0 < 1`` the statements are applied to ``xi_1 = 1/(x - a_0)``
    and its word ``a_1, a_2, ...``; ``shifted`` records this.
    ``minoration_failures`` lists indices where
    ``|q_n' x' - p_n'| / q_n > a_{n+1} / d^2`` failed (the inequality the
    norm argument proves), and ``stated_minoration_failures`` those where the
    variant with ``a_n`` on the right failed.  That variant is not implied by
    the argument and does fail, e.g. for ``beta = phi``, ``x = -30+15*sqrt(5)`` at ``n = 2``.
    """

    r: int
    bound: float
    hypotheses_met: bool
    shifted: bool = False
    minoration_checked: int = 0
    minoration_failures: list[int] = field(default_factory=list)
    stated_minoration_failures: list[int] = field(default_factory=list)

    @property
    def count_ok(self) -> bool:
        return self.r <= self.bound

    @property
    def minoration_ok(self) -> bool:
        return not self.minoration_failures

    @property
    def ok(self) -> bool:
        return self.count_ok and self.minoration_ok

    def to_json(self) -> dict:
        return {
            "schema": REPORT_SCHEMA_VERSION,
            "r": self.r,
            "bound": self.bound,
            "ok": self.ok,
            "hypotheses_met": self.hypotheses_met,
            "shifted": self.shifted,
            "minoration_checked": self.minoration_checked,
            "minoration_failures": self.minoration_failures,
            "stated_minoration_failures": self.stated_minoration_failures,
        }


def _unrolled(outcome: CFOutcome, extra_periods: int) -> tuple[QuadRat, ...]:
    if outcome.is_periodic:
        reps = max(2, extra_periods + 1, -(-4 // len(outcome.period)))
        return outcome.preperiod + outcome.period * reps
    return outcome.word


def appendix_bound_check(outcome: CFOutcome, x: QuadRat | None = None, extra_periods: int = 2) -> AppendixReport:
    """Count irrational partial quotients and compare with ``36H^2 log H + 9 log(3) H^2``.

    ``r`` counts quotients outside Q over the finite word, over
    preperiod + one period, or over a capped prefix.  The minoration is
    checked at every index where ``x q_n - p_n`` is nonzero and the
    complete quotient ``xi_{n+1}`` differs from ``a_{n+1}`` (periodic words are
    unrolled ``extra_periods`` times).
    """
    x = outcome.x if x is None else x
    word = outcome.word
    count_word = list(word)
    minor_word = list(_unrolled(outcome, extra_periods))
    shifted = False
    xi = x
    if word and not word[0] >= 1:
        shifted = True
        count_word = count_word[1:]
        minor_word = minor_word[1:]
        rest = x - word[0]
        xi = rest.inverse() if rest else None
    r = sum(1 for a in count_word if not a.is_rational)
    hsq = weil_height_squared(xi if xi is not None else x)
    bound = _count_bound_from_hsq(hsq.float_upper)
    hyp = all(a >= 1 and (a.is_rational or abs(a.conj()) < a) for a in count_word)
    report = AppendixReport(r=r, bound=bound, hypotheses_met=hyp, shifted=shifted)
    if xi is None or not minor_word:
        return report
    d = xi.min_poly().leading
    d2 = d * d
    xc = xi.conj()
    t = convergents(minor_word)
    # in a finite word the last-but-one index has xi_{n+1} == a_{n+1}, where the
    # approximation bound is an equality and the strict minoration is not claimed
    stop = len(minor_word) - (2 if outcome.is_finite else 1)
    for n in range(stop):
        p, q = t.p[n], t.q[n]
        if not (xi * q - p):
            continue
        lhs = abs(q.conj() * xc - p.conj()) / q
        report.minoration_checked += 1
        if not lhs * d2 > minor_word[n + 1]:
            report.minoration_failures.append(n)
        if not lhs * d2 > minor_word[n]:
            report.stated_minoration_failures.append(n)
    return report


# --- witness search ---


def surd_search(D: int, budget: int) -> Iterator[QuadRat]:
    """Irrational ``(P + B sqrt(D))/Q`` with ``gcd(P, B, Q) = 1``, by ``max(|P|, |B|, Q)`` ascending.

    Within one size the order is ``Q``, then ``B`` (negative before
    positive), then ``P`` ascending, so the sequence is deterministic.
    """
    for s in range(1, budget + 1):
        for Q in range(1, s + 1):
            for B in [*range(-s, 0), *range(1, s + 1)]:
                for P in range(-s, s + 1):
                    if max(abs(P), abs(B), Q) != s or math.gcd(math.gcd(P, B), Q) != 1:
                        continue
                    yield QuadRat(P, B, Q, D)


def aperiodic_witness(beta: BetaSpec, budget: int = 50) -> QuadRat:
    """First ``xi > beta`` with ``xi'`` in ``(-1, 0)`` for a base whose conjugate exceeds it."""
    if beta.klass is not BetaClass.NON_PERRON_POSITIVE_CONJUGATE:
        raise ValueError(f"base {beta} is {beta.klass.value}; a conjugate larger than the base is required")
    for xi in surd_search(beta.D, budget):
        c = xi.conj()
        if xi > beta.beta and -1 < c < 0:
            return xi
    raise LookupError(f"no witness with coefficients up to {budget}")


# --- the three-interval automaton for bases with very negative conjugate ---


class Interval(str, enum.Enum):
    NEG_ONE_ZERO = "(-1,0)"
    ZERO_HALF = "(0,1/2)"
    NEG_TWO_NEG_ONE = "(-2,-1)"


_HALF = QuadRat(1, 0, 2)


def _locate(v: QuadRat) -> Interval | None:
    if -1 < v < 0:
        return Interval.NEG_ONE_ZERO
    if 0 < v < _HALF:
        return Interval.ZERO_HALF
    if -2 < v < -1:
        return Interval.NEG_TWO_NEG_ONE
    return None


def _edge(state: Interval, a_conj: QuadRat) -> Interval | None:
    # edge labels of the transition graph on conjugates of complete quotients
    if a_conj <= -4:
        return Interval.ZERO_HALF
    if state is Interval.ZERO_HALF:
        if a_conj == 1:
            return Interval.NEG_TWO_NEG_ONE
        return Interval.NEG_ONE_ZERO if a_conj >= 2 else None
    return Interval.NEG_ONE_ZERO if a_conj >= 1 else None


@dataclass(frozen=True)
class AutomatonState:
    interval: Interval
    step: int


@dataclass
class AutomatonTrace:
    states: list[AutomatonState]
    kind: Kind
    transitions: dict[tuple[str, str], int]

    def __len__(self) -> int:
        return len(self.states)


def automaton_trace(x: QuadRat, beta: BetaSpec, cap: int = 2000) -> AutomatonTrace:
    """Follow ``xi_n'`` through ``(-1,0)``, ``(0,1/2)``, ``(-2,-1)`` along the expansion of ``x``.

    Requires ``beta`` a root of ``X^2 + bX - c`` with ``b >= 4``, ``x > 1`` and
    ``x'`` in ``(-1, 0)``.  Raises :class:`TheoremViolation` on a conjugate
    outside the three intervals, a transition that is not an edge, a quotient
    conjugate outside ``{1} | [2, oo) | (-oo, -4)``, or a finite expansion.
    """
    if beta.klass is not BetaClass.NON_PERRON_NEGATIVE_CONJUGATE:
        raise ValueError(f"base {beta} is {beta.klass.value}; a negative conjugate below -beta is required")
    b = beta.poly.e
    if b < 4:
        raise ValueError(f"the interval automaton is only established for b >= 4 (got b = {b})")
    if not x > 1:
        raise ValueError("the starting value must exceed 1 so that a_0 is a positive beta-integer")
    if _locate(x.conj()) is not Interval.NEG_ONE_ZERO:
        raise ValueError(f"conjugate of {x} is not in (-1, 0)")
    states: list[AutomatonState] = []
    transitions: dict[tuple[str, str], int] = {}
    expected: list[Interval | None] = [Interval.NEG_ONE_ZERO]

    def observe(n: int, xi: QuadRat, a: QuadRat) -> None:
        here = _locate(xi.conj())
        if here is None:
            raise TheoremViolation(f"step {n}: conjugate {float(xi.conj()):.6g} left the three intervals")
        if here is not expected[0]:
            raise TheoremViolation(f"step {n}: expected {expected[0]}, conjugate lies in {here.value}")
        ac = a.conj()
        if not (ac == 1 or ac >= 2 or ac < -4):
            raise TheoremViolation(f"step {n}: quotient {a} has conjugate {float(ac):.6g}")
        nxt = _edge(here, ac)
        if nxt is None:
            raise TheoremViolation(f"step {n}: no edge from {here.value} labelled a' = {float(ac):.6g}")
        if nxt is Interval.NEG_TWO_NEG_ONE and a != 1:
            raise TheoremViolation(f"step {n}: edge into (-2,-1) taken with a = {a}")
        states.append(AutomatonState(here, n))
        key = (here.value, nxt.value)
        transitions[key] = transitions.get(key, 0) + 1
        expected[0] = nxt

    out = expand(x, beta, cap=cap, keep_trace=False, observer=observe)
    if out.is_finite:
        raise TheoremViolation(f"expansion of {x} terminated after {len(out.word)} quotients")
    return AutomatonTrace(states, out.kind, transitions)


# --- field thresholds ---


@dataclass(frozen=True)
class MercatThreshold:
    """Bounds ``m_K`` beyond which no irrational base in ``Q(sqrt(d))`` has every expansion finite."""

    d: int
    unconditional: int
    from_period: int
    conditional: int = 3
    conditional_flag: str = "assumes every real quadratic field has a periodic expansion with quotients in {1, 2}"


def mercat_threshold(d: int | BetaSpec) -> MercatThreshold:
    """``2 floor(sqrt(d)) + 1``, the sharper ``c + 1`` from the period of ``floor(sqrt(d)) + sqrt(d)``,
    and the conjecture-conditional value 3."""
    if isinstance(d, BetaSpec):
        d = d.D
    if d < 2 or math.isqrt(d) ** 2 == d:
        raise ValueError(f"{d} does not define a real quadratic field")
    r = math.isqrt(d)
    out = expand(QuadRat(r, 1, 1, d), None)
    c = max(int(a.a) for a in out.period)
    return MercatThreshold(d=d, unconditional=2 * r + 1, from_period=c + 1)
