"""Published examples, recorded exactly as printed.

Quotient strings may use ``b`` for the base.  Values are kept verbatim even
where the printed closed form disagrees with the word it accompanies; the
checks in :mod:`betacf.experiments` report such rows as failures.
"""
from __future__ import annotations

from dataclasses import dataclass

__all__ = ["PaperFixture", "all_fixtures", "TABLE1", "TABLE2_PERIODIC_ROWS", "TABLE2_OPEN_ROWS"]

FINITE = "finite-expansion"
PERIODIC = "periodic-word"
REGULAR = "regular-periodic"


@dataclass(frozen=True)
class PaperFixture:
    """One published claim.

    ``kind`` is ``finite-expansion`` (``x`` expands to ``word``),
    ``periodic-word`` (``[preperiod, (period)*]`` evaluates to ``x`` and, when
    ``reexpand``, the beta-expansion of ``x`` is that word) or
    ``regular-periodic`` (the classical expansion of ``x`` is ``period`` repeated).
    """

    id: str
    beta_poly: str
    kind: str
    x: str
    source: str
    word: tuple[str, ...] = ()
    preperiod: tuple[str, ...] = ()
    period: tuple[str, ...] = ()
    root: str = "larger"
    reexpand: bool = True


_PERRON17 = "x^2-x-4"

PERRON17_FIXTURES = [
    PaperFixture(
        "perron17-finite",
        _PERRON17,
        FINITE,
        "(164+65*sqrt(17))/251",
        "remark on (1+sqrt(17))/2 after the four-Perron-numbers theorem",
        word=("1", "1", "b", "2*b^3+b^2+1", "b^3+b+1", "2", "b+1"),
    ),
    PaperFixture(
        "perron17-regular",
        _PERRON17,
        REGULAR,
        "(164+65*sqrt(17))/251",
        "remark on (1+sqrt(17))/2 after the four-Perron-numbers theorem",
        period=("1", "1", "2", "1", "1", "2", "2", "2", "2"),
    ),
]

SQRT_FIXTURES = [
    PaperFixture("sqrt2", "x^2-2", PERIODIC, "3+2*sqrt(2)", "square-root bases list", period=("4*sqrt(2)",)),
    PaperFixture("sqrt3", "x^2-3", PERIODIC, "(3+2*sqrt(3))/2", "square-root bases list", period=("3", "4")),
    PaperFixture(
        "sqrt5", "x^2-5", PERIODIC, "16*(9+sqrt(5))", "square-root bases list", period=("32*sqrt(5)", "2*sqrt(5)")
    ),
    PaperFixture(
        "sqrt6", "x^2-6", PERIODIC, "2*(5+2*sqrt(6))", "square-root bases list", period=("8*sqrt(6)", "2*sqrt(6)")
    ),
    PaperFixture("sqrt7", "x^2-7", PERIODIC, "(3+sqrt(7))/2", "square-root bases list", period=("sqrt(7)", "2*sqrt(7)")),
    PaperFixture("sqrt8", "x^2-8", PERIODIC, "3+sqrt(8)", "square-root bases list", period=("2*sqrt(8)",)),
]

TABLE1_FIXTURES = [
    PaperFixture("table1-row5", "x^2-3x+1", PERIODIC, "(1+sqrt(5))/2", "Perron table counterexamples", period=("1",)),
    PaperFixture(
        "table1-row6",
        "x^2-2x-2",
        PERIODIC,
        "(11055+10864*sqrt(3))/18471",
        "Perron table counterexamples",
        period=tuple("1 1 1 1 1 1 1 2 1 1 2 1 2 1 1 1 2 2".split()),
    ),
    PaperFixture(
        "table1-row7",
        "x^2-x-5",
        PERIODIC,
        "(117+44*sqrt(21))/202",
        "Perron table counterexamples",
        period=tuple("1 1 1 2 1 2 1 2 2 2 1 1 2 2".split()),
    ),
]


def _pisot_family_fixtures() -> list[PaperFixture]:
    src = "Pisot-unit families remark"
    out = []
    for m in range(3, 9):
        poly = f"x^2-{m}x-1"
        if m == 3:
            out.append(PaperFixture("pisot-minus-m3", poly, PERIODIC, "(11+5*sqrt(13))/17", src, period=("1", "1", "2", "2", "2")))
        elif m % 2 == 0:
            period = (str((m - 2) // 2), "1", "1")
            closed = f"({m - 2}+sqrt({m * m + 4}))/4"
            out.append(PaperFixture(f"pisot-minus-m{m}", poly, PERIODIC, closed, src, period=period))
            out.append(PaperFixture(f"pisot-minus-m{m}-beta", poly, PERIODIC, "(b-1)/2", src, period=period))
        else:
            # printed as (m^2-3m-m+m sqrt(m^2+4))/(4m+6)
            closed = f"({m * m - 3 * m - m}+{m}*sqrt({m * m + 4}))/{4 * m + 6}"
            period = (str((m - 3) // 2), str((m + 1) // 2), "3", "1")
            out.append(PaperFixture(f"pisot-minus-m{m}", poly, PERIODIC, closed, src, period=period))
    for m in range(3, 9):
        closed = f"({m - 2}+sqrt({m * m - 4}))/{2 * (m - 2)}"
        out.append(PaperFixture(f"pisot-plus-m{m}", f"x^2-{m}x+1", PERIODIC, closed, src, period=("1", str(m - 2))))
    return out


PISOT_FAMILY_FIXTURES = _pisot_family_fixtures()


def all_fixtures() -> list[PaperFixture]:
    return PERRON17_FIXTURES + SQRT_FIXTURES + TABLE1_FIXTURES + PISOT_FAMILY_FIXTURES


@dataclass(frozen=True)
class Table1Row:
    poly: str
    approx: str
    pisot_unit: bool
    cff: bool


# quadratic Perron numbers below 3: minimal polynomial, printed value, Pisot unit, every expansion finite
TABLE1 = [
    Table1Row("x^2-x-1", "1.618033988", True, True),
    Table1Row("x^2-x-3", "2.302775637", False, True),
    Table1Row("x^2-2x-1", "2.414213562", True, True),
    Table1Row("x^2-x-4", "2.561552812", False, True),
    Table1Row("x^2-3x+1", "2.618033988", True, False),
    Table1Row("x^2-2x-2", "2.732050807", False, False),
    Table1Row("x^2-x-5", "2.791287847", False, False),
]

# (b, c) for X^2 + bX - c
TABLE2_PERIODIC_ROWS = [(1, 5), (1, 7), (1, 8), (1, 9), (1, 10), (1, 11), (2, 12), (2, 13), (2, 14), (3, 17)]
TABLE2_OPEN_ROWS = (
    [(1, 3), (1, 4)]
    + [(2, c) for c in range(4, 12) if c != 8]
    + [(3, c) for c in range(5, 17) if c != 10]
)
