"""Reproduction runs: published fixtures, finiteness sampling and periodic-expansion search."""
from __future__ import annotations

import json
import math
import random
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Callable, Iterator

from .beta import BetaSpec, make_beta
from .cf import CFOutcome, Kind, eval_finite, eval_periodic, expand, regular_cf_expand, same_infinite_word
from .fixtures import FINITE, PERIODIC, REGULAR, TABLE1, TABLE2_PERIODIC_ROWS, PaperFixture, all_fixtures
from .quadratic import QuadRat, parse_surd
from .theorems import appendix_bound_check, check_superteorem

__all__ = [
    "FixtureResult",
    "PaperReport",
    "SampleStats",
    "SearchResult",
    "SweepConfig",
    "cff_sample",
    "field_elements",
    "run_fixture",
    "search_periodic",
    "verify_paper",
]

REPORT_VERSION = 1


@dataclass
class SweepConfig:
    cap: int = 10_000
    search_numerator_bound: int = 50
    search_denominator_bound: int = 50
    sample_count: int = 200
    seed: int = 0
    conjecture_mode: bool = False

    def __post_init__(self):
        if self.cap < 1:
            raise ValueError("cap must be at least 1")
        if self.search_numerator_bound < 0 or self.search_denominator_bound < 0:
            raise ValueError("search bounds must be non-negative")
        if self.sample_count < 0:
            raise ValueError("sample_count must be non-negative")

    @classmethod
    def from_text(cls, text: str) -> SweepConfig:
        """Parse ``key = value`` lines; ``#`` starts a comment."""
        types = {f.name: f.type for f in fields(cls)}
        values: dict[str, object] = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, val = (s.strip() for s in line.partition("="))
            if not sep or key not in types:
                raise ValueError(f"line {lineno}: expected one of {sorted(types)} as key = value")
            if types[key] in ("bool", bool):
                if val.lower() not in ("true", "false", "1", "0", "yes", "no"):
                    raise ValueError(f"line {lineno}: {key} needs a boolean")
                values[key] = val.lower() in ("true", "1", "yes")
            else:
                values[key] = int(val)
        return cls(**values)

    @classmethod
    def from_file(cls, path: str | Path) -> SweepConfig:
        return cls.from_text(Path(path).read_text())


# --- sampling ---


@dataclass
class SampleStats:
    finite: int = 0
    periodic: int = 0
    capped: int = 0
    samples: list[tuple[QuadRat, Kind]] = field(default_factory=list, repr=False)

    @property
    def total(self) -> int:
        return self.finite + self.periodic + self.capped

    def to_json(self) -> dict:
        return {"finite": self.finite, "periodic": self.periodic, "capped": self.capped}


def cff_sample(
    beta: BetaSpec,
    n: int,
    numerator_bound: int = 50,
    denominator_bound: int = 50,
    seed: int = 0,
    cap: int = 10_000,
    on_outcome: Callable[[CFOutcome], None] | None = None,
) -> SampleStats:
    """Expand ``n`` seeded uniform samples ``(a + b sqrt(D))/c``, ``|a|, |b| <= numerator_bound``,
    ``1 <= c <= denominator_bound``, and count the outcome kinds."""
    rng = random.Random(seed)
    stats = SampleStats()
    for _ in range(n):
        a = rng.randint(-numerator_bound, numerator_bound)
        b = rng.randint(-numerator_bound, numerator_bound)
        c = rng.randint(1, max(1, denominator_bound))
        x = QuadRat(a, b, c, beta.D)
        out = expand(x, beta, cap=cap)
        if on_outcome is not None:
            on_outcome(out)
        stats.samples.append((x, out.kind))
        if out.is_finite:
            stats.finite += 1
        elif out.is_periodic:
            stats.periodic += 1
        else:
            stats.capped += 1
    return stats


# --- periodic search ---


def field_elements(D: int, numerator_bound: int, denominator_bound: int) -> Iterator[QuadRat]:
    """``(P + B sqrt(D))/Q`` in lowest terms by ``max(|P|, |B|, Q)`` ascending, then ``Q``, ``B``, ``P``.

    ``B = 0`` (rationals) is included.  Each value appears once.
    """
    top = max(numerator_bound, denominator_bound)
    seen: set[QuadRat] = set()
    for s in range(1, top + 1):
        for Q in range(1, min(s, denominator_bound) + 1):
            nb = min(s, numerator_bound)
            for B in range(-nb, nb + 1):
                for P in range(-nb, nb + 1):
                    if max(abs(P), abs(B), Q) != s or math.gcd(math.gcd(P, B), Q) != 1:
                        continue
                    x = QuadRat(P, B, Q, D)
                    if x not in seen:
                        seen.add(x)
                        yield x


@dataclass
class SearchResult:
    x: QuadRat
    outcome: CFOutcome
    tried: int


class _Abandon(Exception):
    pass


def _size(x: QuadRat) -> int:
    return max(int(abs(x.a)).bit_length(), int(abs(x.b)).bit_length(), int(x.c).bit_length())


def search_periodic(
    beta: BetaSpec,
    numerator_bound: int = 200,
    denominator_bound: int | None = None,
    cap: int = 10_000,
    growth_bits: int = 256,
) -> SearchResult | None:
    """First element (in :func:`field_elements` order) whose beta-expansion is eventually periodic.

    A candidate is dropped once a complete quotient has a coefficient more
    than ``growth_bits`` bits longer than the candidate's own: periodic
    expansions revisit finitely many complete quotients, so their sizes stay
    bounded.  A returned witness is always exact (its word evaluates back to ``x``).
    """
    denominator_bound = numerator_bound if denominator_bound is None else denominator_bound
    tried = 0
    for x in field_elements(beta.D, numerator_bound, denominator_bound):
        tried += 1
        limit = _size(x) + growth_bits

        def watch(n: int, xi: QuadRat, a: QuadRat) -> None:
            if _size(xi) > limit:
                raise _Abandon

        try:
            out = expand(x, beta, cap=cap, keep_trace=False, observer=watch)
        except _Abandon:
            continue
        if out.is_periodic and out.value() == x:
            return SearchResult(x, out, tried)
    return None


# --- paper verification ---


@dataclass
class FixtureResult:
    id: str
    source: str
    passed: bool
    detail: str = ""
    hard: bool = True

    @property
    def status(self) -> str:
        if self.passed:
            return "PASS"
        return "FAIL" if self.hard else "WARN"


@dataclass
class PaperReport:
    results: list[FixtureResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results if r.hard)

    def failures(self) -> list[FixtureResult]:
        return [r for r in self.results if not r.passed]

    def to_text(self) -> str:
        width = max((len(r.id) for r in self.results), default=10)
        lines = [f"{r.status:4}  {r.id:<{width}}  {r.detail}" for r in self.results]
        hard = [r for r in self.results if r.hard]
        lines.append(
            f"{sum(r.passed for r in hard)}/{len(hard)} hard fixtures passed; "
            f"{sum(not r.passed for r in self.results if not r.hard)} soft warnings"
        )
        return "\n".join(lines)

    def to_json(self) -> str:
        return json.dumps(
            {"version": REPORT_VERSION, "passed": self.passed, "results": [asdict(r) for r in self.results]},
            indent=2,
            sort_keys=True,
        )


def _beta_for(fx: PaperFixture) -> BetaSpec:
    return make_beta(fx.beta_poly, root=fx.root)


def _fmt(word) -> str:
    return "[" + ", ".join(map(str, word)) + "]"


def run_fixture(fx: PaperFixture, cap: int = 10_000) -> FixtureResult:
    beta = _beta_for(fx)
    names = {"b": beta.beta}
    x = parse_surd(fx.x, names)
    problems = []
    if fx.kind == FINITE:
        word = tuple(parse_surd(t, names) for t in fx.word)
        if eval_finite(word) != x:
            problems.append(f"word evaluates to {eval_finite(word)}, not {x}")
        out = expand(x, beta, cap=cap)
        if not out.is_finite or out.word != word:
            problems.append(f"expansion is {out}")
    elif fx.kind == PERIODIC:
        pre = tuple(parse_surd(t, names) for t in fx.preperiod)
        per = tuple(parse_surd(t, names) for t in fx.period)
        value = eval_periodic(pre, per, beta.D)
        if value != x:
            problems.append(f"word evaluates to {value}, printed value is {x}")
        if fx.reexpand:
            out = expand(x, beta, cap=cap)
            if not (out.is_periodic and same_infinite_word(out.preperiod, out.period, pre, per)):
                problems.append(f"expansion of {x} is {out}")
    elif fx.kind == REGULAR:
        per = tuple(parse_surd(t, names) for t in fx.period)
        out = regular_cf_expand(x, cap=cap)
        if not (out.is_periodic and same_infinite_word(out.preperiod, out.period, (), per)):
            problems.append(f"classical expansion is {out}")
    else:
        raise ValueError(f"unknown fixture kind {fx.kind!r}")
    detail = "; ".join(problems) if problems else f"{fx.kind} ok ({fx.source})"
    return FixtureResult(fx.id, fx.source, not problems, detail)


def _table1_results(config: SweepConfig) -> list[FixtureResult]:
    out = []
    for i, row in enumerate(TABLE1, 1):
        beta = make_beta(row.poly)
        digits = len(row.approx.split(".")[1])
        approx_ok = f"{float(beta.beta):.{digits + 2}f}"[: len(row.approx)] == row.approx
        unit_ok = beta.is_pisot_unit == row.pisot_unit and beta.klass.is_perron and beta.beta < 3
        ok = approx_ok and unit_ok
        detail = f"beta = {beta.beta} ~ {float(beta.beta):.9f}, {beta.klass.value}, Pisot unit {beta.is_pisot_unit}"
        out.append(FixtureResult(f"table1-row{i}-data", "Perron table", ok, detail))
        if row.cff:
            violations = []

            def check(o: CFOutcome) -> None:
                if not o.is_finite:
                    violations.append(o)

            stats = cff_sample(
                beta,
                config.sample_count,
                config.search_numerator_bound,
                config.search_denominator_bound,
                config.seed,
                config.cap,
                check,
            )
            detail = f"{stats.finite}/{stats.total} finite (seed {config.seed})"
            if violations:
                detail += f"; first non-finite: {violations[0].x} -> {violations[0]}"
            out.append(FixtureResult(f"table1-row{i}-cff-sample", "four-Perron-numbers theorem", not violations, detail))
    return out


def _table2_results(budget: int, cap: int) -> list[FixtureResult]:
    out = []
    for b, c in TABLE2_PERIODIC_ROWS:
        beta = make_beta(f"x^2+{b}x-{c}")
        hit = search_periodic(beta, budget, cap=cap)
        if hit is None:
            out.append(FixtureResult(f"table2-b{b}-c{c}", "non-Perron negative conjugate table", False, f"no periodic element with coefficients <= {budget}", hard=False))
        else:
            report = check_superteorem(hit.outcome)
            detail = f"{hit.x} -> {hit.outcome} (candidate {hit.tried}); p_n+q_(n-1) = {report.pq_sum}"
            out.append(FixtureResult(f"table2-b{b}-c{c}", "non-Perron negative conjugate table", report.pq_sum_in_Z_or_sqrtD, detail, hard=False))
    return out


def verify_paper(config: SweepConfig | None = None, search_budget: int | None = None) -> PaperReport:
    """Run every published fixture, the Perron-table sampling rows and (when
    ``search_budget`` is given) the soft periodic search over the non-Perron table rows.

    Deterministic: fixed seed, fixed order.
    """
    config = config or SweepConfig()
    results = [run_fixture(fx, config.cap) for fx in all_fixtures()]
    for r in results:
        if r.passed:
            continue
        fx = next(f for f in all_fixtures() if f.id == r.id)
        if fx.kind == PERIODIC:
            pre = tuple(parse_surd(t, {"b": _beta_for(fx).beta}) for t in fx.preperiod)
            per = tuple(parse_surd(t, {"b": _beta_for(fx).beta}) for t in fx.period)
            r.detail += f" [the word's exact value is {eval_periodic(pre, per, _beta_for(fx).D)}]"
    results += _table1_results(config)
    fin = next(fx for fx in all_fixtures() if fx.id == "perron17-finite")
    beta = _beta_for(fin)
    app = appendix_bound_check(expand(parse_surd(fin.x), beta, cap=config.cap))
    results.append(
        FixtureResult(
            "perron17-appendix-bound",
            "count of irrational partial quotients",
            app.ok,
            f"r = {app.r} <= {app.bound:.6g}; minoration checked at {app.minoration_checked} indices",
        )
    )
    if config.conjecture_mode:
        for r in results:
            if r.id.startswith("sqrt"):
                r.detail += " [that only D <= 8 needs checking assumes the {1,2}-period conjecture]"
    if search_budget:
        results += _table2_results(search_budget, config.cap)
    return PaperReport(results)
