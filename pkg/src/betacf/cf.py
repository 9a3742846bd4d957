"""Continuants, convergents and the M-continued-fraction expansion loop.

The expansion iterates ``a_n = floor_M(xi_n)``, ``xi_{n+1} = 1/(xi_n - a_n)``
over exact quadratic numbers.  It stops when a complete quotient lies in
``M`` (finite expansion), when a complete quotient repeats (eventually
periodic; the map is deterministic so the first repeat closes a genuine
cycle), or after ``cap`` steps.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .beta import BetaSpec, beta_floor
from .quadratic import QuadRat, parse_surd, sqrt_exact

__all__ = [
    "CFOutcome",
    "ConvergentTable",
    "ExpansionTrace",
    "Kind",
    "approximation_check",
    "continuant",
    "convergents",
    "eval_finite",
    "eval_periodic",
    "expand",
    "format_word",
    "parse_word",
    "regular_cf_expand",
    "same_infinite_word",
]

DEFAULT_CAP = 10_000


class Kind(str, enum.Enum):
    FINITE = "Finite"
    EVENTUALLY_PERIODIC = "EventuallyPeriodic"
    CAPPED = "Capped"


def _q(x) -> QuadRat:
    return x if isinstance(x, QuadRat) else QuadRat.rational(x)


def continuant(ts: Sequence) -> QuadRat:
    """``K_n(t_1, ..., t_n)`` with ``K_{-1} = 0`` and ``K_0 = 1``."""
    prev, cur = QuadRat(0), QuadRat(1)
    for t in ts:
        prev, cur = cur, t * cur + prev
    return cur


@dataclass(frozen=True)
class ConvergentTable:
    """Convergent numerators/denominators ``p_0..p_n``, ``q_0..q_n``.

    Index ``-1`` and ``-2`` seeds are available through :meth:`p_at` and
    :meth:`q_at`.
    """

    quotients: tuple[QuadRat, ...]
    p: tuple[QuadRat, ...]
    q: tuple[QuadRat, ...]

    def p_at(self, n: int) -> QuadRat:
        if n == -1:
            return QuadRat(1)
        if n == -2:
            return QuadRat(0)
        return self.p[n]

    def q_at(self, n: int) -> QuadRat:
        if n == -1:
            return QuadRat(0)
        if n == -2:
            return QuadRat(1)
        return self.q[n]

    def __len__(self) -> int:
        return len(self.p)

    def determinant_ok(self) -> bool:
        """``p_{n-1} q_n - p_n q_{n-1} == (-1)^n`` for every available ``n >= -1``."""
        for n in range(-1, len(self.p)):
            lhs = self.p_at(n - 1) * self.q_at(n) - self.p_at(n) * self.q_at(n - 1)
            if lhs != (-1) ** (n % 2):
                return False
        return True

    def recurrence_ok(self) -> bool:
        for n, a in enumerate(self.quotients):
            if self.p[n] != a * self.p_at(n - 1) + self.p_at(n - 2):
                return False
            if self.q[n] != a * self.q_at(n - 1) + self.q_at(n - 2):
                return False
        return True


def convergents(word: Sequence) -> ConvergentTable:
    ps: list[QuadRat] = []
    qs: list[QuadRat] = []
    p2, p1 = QuadRat(0), QuadRat(1)
    q2, q1 = QuadRat(1), QuadRat(0)
    quotients = tuple(_q(a) for a in word)
    for a in quotients:
        p2, p1 = p1, a * p1 + p2
        q2, q1 = q1, a * q1 + q2
        ps.append(p1)
        qs.append(q1)
    return ConvergentTable(quotients, tuple(ps), tuple(qs))


def eval_finite(word: Sequence) -> QuadRat:
    """``[a_0, ..., a_n]`` evaluated exactly."""
    if not word:
        raise ValueError("cannot evaluate an empty continued fraction")
    table = convergents(word)
    return table.p[-1] / table.q[-1]


def _check_positive(word: Sequence, start: int) -> None:
    for i, a in enumerate(word):
        if i >= start and not _q(a) > 0:
            raise ValueError(f"partial quotient {a} at index {i} must be positive")


def eval_periodic(preperiod: Sequence, period: Sequence, D: int | None = None) -> QuadRat:
    """Value of ``[preperiod, (period)*]`` as an element of ``Q(sqrt(D))``.

    ``D`` defaults to the quotients' field; pass it when every quotient is
    rational but the value is not, as in ``[(3, 4)] = (3+2*sqrt(3))/2``.
    Raises ``ValueError`` when the purely periodic tail is not in the field
    (its fixed-point quadratic has no root there).
    """
    if not period:
        raise ValueError("period must be non-empty")
    _check_positive(period, 0)
    _check_positive(preperiod, 1)
    t = convergents(period)
    n = len(period) - 1
    pn, pn1, qn, qn1 = t.p[n], t.p_at(n - 1), t.q[n], t.q_at(n - 1)
    # xi = (xi p_n + p_{n-1}) / (xi q_n + q_{n-1})  <=>  q_n xi^2 + (q_{n-1} - p_n) xi - p_{n-1} = 0
    B = qn1 - pn
    disc = B * B + 4 * qn * pn1
    if D is not None and disc.D != D:
        if not disc.is_rational:
            raise ValueError(f"periodic word lies in Q(sqrt({disc.D})), not Q(sqrt({D}))")
        disc = QuadRat.rational(disc.as_fraction(), D)
    s = sqrt_exact(disc)
    if s is None:
        raise ValueError(f"periodic tail {list(map(str, period))} is not in the quotients' field")
    lower = _q(period[0])
    tail = None
    for root in ((-B + s) / (2 * qn), (-B - s) / (2 * qn)):
        if root > lower and (root * pn + pn1) / (root * qn + qn1) == root:
            tail = root
            break
    if tail is None:
        raise ValueError("no admissible fixed point for the periodic tail")
    if not preperiod:
        return tail
    pre = convergents(preperiod)
    k = len(preperiod) - 1
    return (tail * pre.p[k] + pre.p_at(k - 1)) / (tail * pre.q[k] + pre.q_at(k - 1))


@dataclass
class ExpansionTrace:
    """Per-step record of an expansion.

    ``complete_quotients[n]`` is ``xi_n``; ``residuals[n]`` is
    ``A_n = xi*q_n - p_n`` with ``xi`` the expanded number.
    """

    complete_quotients: list[QuadRat] = field(default_factory=list)
    conjugates: list[QuadRat] = field(default_factory=list)
    residuals: list[QuadRat] = field(default_factory=list)


@dataclass
class CFOutcome:
    kind: Kind
    x: QuadRat
    preperiod: tuple[QuadRat, ...] = ()
    period: tuple[QuadRat, ...] = ()
    trace: ExpansionTrace = field(default_factory=ExpansionTrace)
    table: ConvergentTable | None = None
    beta: BetaSpec | None = None

    @property
    def word(self) -> tuple[QuadRat, ...]:
        """All emitted partial quotients (the finite word, or preperiod + period, or the capped prefix)."""
        return self.preperiod + self.period

    @property
    def is_finite(self) -> bool:
        return self.kind is Kind.FINITE

    @property
    def is_periodic(self) -> bool:
        return self.kind is Kind.EVENTUALLY_PERIODIC

    @property
    def is_capped(self) -> bool:
        return self.kind is Kind.CAPPED

    def value(self) -> QuadRat:
        if self.is_finite:
            return eval_finite(self.preperiod)
        if self.is_periodic:
            return eval_periodic(self.preperiod, self.period, self.x.D)
        raise ValueError("a capped expansion has no exact value")

    def __str__(self) -> str:
        return f"{self.kind.value} {format_word(self.preperiod, self.period if self.is_periodic else None, self.beta)}"


def _replay(x: QuadRat, floor: Callable[[QuadRat], QuadRat], steps: int) -> QuadRat:
    xi = x
    for _ in range(steps):
        xi = (xi - floor(xi)).inverse()
    return xi


Observer = Callable[[int, QuadRat, QuadRat], None]


def _expand_with(
    x: QuadRat,
    floor: Callable[[QuadRat], QuadRat],
    cap: int,
    keep_trace: bool,
    observer: Observer | None = None,
) -> CFOutcome:
    if cap < 1:
        raise ValueError("cap must be at least 1")
    xi = x
    # fingerprints only; a hit is confirmed by replaying the expansion
    seen: dict[int, list[int]] = {}
    quotients: list[QuadRat] = []
    trace = ExpansionTrace()
    p2, p1 = QuadRat(0), QuadRat(1)
    q2, q1 = QuadRat(1), QuadRat(0)
    ps: list[QuadRat] = []
    qs: list[QuadRat] = []
    kind = Kind.CAPPED
    for n in range(cap):
        seen.setdefault(hash(xi), []).append(n)
        a = floor(xi)
        quotients.append(a)
        if observer is not None:
            observer(n, xi, a)
        if keep_trace:
            p2, p1 = p1, a * p1 + p2
            q2, q1 = q1, a * q1 + q2
            ps.append(p1)
            qs.append(q1)
            trace.complete_quotients.append(xi)
            trace.conjugates.append(xi.conj())
            trace.residuals.append(x * q1 - p1)
        rest = xi - a
        if not rest:
            kind = Kind.FINITE
            break
        xi = rest.inverse()
        for k in seen.get(hash(xi), ()):
            hit = trace.complete_quotients[k] if keep_trace else _replay(x, floor, k)
            if hit == xi:
                table = ConvergentTable(tuple(quotients), tuple(ps), tuple(qs)) if keep_trace else None
                return CFOutcome(Kind.EVENTUALLY_PERIODIC, x, tuple(quotients[:k]), tuple(quotients[k:]), trace, table)
    table = ConvergentTable(tuple(quotients), tuple(ps), tuple(qs)) if keep_trace else None
    return CFOutcome(kind, x, tuple(quotients), (), trace, table)


def expand(
    x: QuadRat,
    beta: BetaSpec | None = None,
    cap: int = DEFAULT_CAP,
    keep_trace: bool = True,
    observer: Observer | None = None,
) -> CFOutcome:
    """Expand ``x`` with partial quotients in the beta-integers (``M = Z`` when ``beta`` is None).

    A number already in ``M`` yields the one-quotient word ``[x]``.  With
    ``keep_trace=False`` no convergents or complete quotients are stored;
    ``observer(n, xi_n, a_n)`` is still called at every step.
    """
    x = x if isinstance(x, QuadRat) else QuadRat.rational(x)
    if beta is None or beta.is_integer:
        out = _expand_with(x, lambda v: QuadRat.rational(v.floor(), v.D), cap, keep_trace, observer)
    else:
        out = _expand_with(x, lambda v: beta_floor(v, beta).value, cap, keep_trace, observer)
    out.beta = beta
    return out


def regular_cf_expand(x: QuadRat, cap: int = DEFAULT_CAP) -> CFOutcome:
    """Classical continued fraction (``M = Z``); finite for rationals, periodic otherwise."""
    return expand(x, None, cap)


def approximation_check(table: ConvergentTable, x: QuadRat) -> bool:
    """Check the convergent error bounds against ``x`` at every available index.

    Upper: ``|x - p_i/q_i| <= 1/(q_i q_{i+1}) <= 1/(a_{i+1} q_i^2)``.
    Lower (when every ``a_i >= 1`` for ``i >= 1``): ``|x - p_i/q_i| >= 1/(q_i q_{i+2})``.
    """
    a, p, q = table.quotients, table.p, table.q
    lower_applies = all(v >= 1 for v in a[1:])
    n = len(p)
    for i in range(n):
        err = abs(x - p[i] / q[i])
        if i + 1 < n:
            mid = 1 / (q[i] * q[i + 1])
            if not (err <= mid <= 1 / (a[i + 1] * q[i] * q[i])):
                return False
        if lower_applies and i + 2 < n and not err >= 1 / (q[i] * q[i + 2]):
            return False
    return True


def format_quotient(a: QuadRat, beta: BetaSpec | None = None, style: str = "surd") -> str:
    if style == "beta" and beta is not None and not a.is_integer:
        return beta_floor(a, beta).as_polynomial("b")
    return str(a)


def format_word(
    preperiod: Sequence[QuadRat],
    period: Sequence[QuadRat] | None = None,
    beta: BetaSpec | None = None,
    style: str = "surd",
) -> str:
    """Render as ``[a0; a1, ..., (p1, ..., pk)]``."""
    parts = [format_quotient(a, beta, style) for a in preperiod]
    if period:
        parts.append("(" + ", ".join(format_quotient(a, beta, style) for a in period) + ")")
    if not parts:
        return "[]"
    if len(parts) == 1:
        return f"[{parts[0]}]"
    return f"[{parts[0]}; {', '.join(parts[1:])}]"


def _split_top(text: str, sep: str) -> list[str]:
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ValueError(f"unbalanced parentheses in {text!r}")
        elif ch == sep and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    if depth:
        raise ValueError(f"unbalanced parentheses in {text!r}")
    parts.append(text[start:])
    return [p.strip() for p in parts]


def _wrapped(text: str) -> bool:
    # True when the outer parentheses enclose the whole text
    if not (text.startswith("(") and text.endswith(")")):
        return False
    depth = 0
    for i, ch in enumerate(text):
        depth += ch == "("
        depth -= ch == ")"
        if depth == 0 and i < len(text) - 1:
            return False
    return True


def parse_word(text: str, names: dict[str, QuadRat] | None = None) -> tuple[tuple[QuadRat, ...], tuple[QuadRat, ...]]:
    """Parse ``[a0; a1, ..., (p1, ..., pk)]`` into ``(preperiod, period)``.

    The square brackets and the semicolon are optional.  A last entry wholly
    enclosed in parentheses is the period; ``period`` is empty for a finite
    word.  Quotients are surd literals, or expressions in names such as
    ``b`` when ``names`` binds them.
    """
    body = text.strip()
    if body.startswith("[") and body.endswith("]"):
        body = body[1:-1]
    body = body.replace(";", ",")
    items = [t for t in _split_top(body, ",") if t]
    if not items:
        raise ValueError("empty continued fraction word")
    period: tuple[QuadRat, ...] = ()
    if _wrapped(items[-1]):
        inner = [t for t in _split_top(items[-1][1:-1], ",") if t]
        period = tuple(parse_surd(t, names) for t in inner)
        items = items[:-1]
    return tuple(parse_surd(t, names) for t in items), period


def same_infinite_word(pre1: Sequence, per1: Sequence, pre2: Sequence, per2: Sequence) -> bool:
    """Whether two eventually periodic words are the same sequence
    (periods may differ by rotation or repetition)."""
    if not per1 or not per2:
        raise ValueError("periods must be non-empty")
    n = max(len(pre1), len(pre2)) + math.lcm(len(per1), len(per2))

    def term(pre, per, i):
        return pre[i] if i < len(pre) else per[(i - len(pre)) % len(per)]

    return all(term(pre1, per1, i) == term(pre2, per2, i) for i in range(n))
