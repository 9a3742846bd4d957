import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from betacf import (
    QuadRat,
    galois_invariance_check,
    irrational_pq_count_bound,
    parse_surd,
    partial_quotient_bound,
    weil_height_squared,
)
from conftest import same_field, surds

phi = QuadRat(1, 1, 2, 5)


def _mp_height_sq(x: QuadRat):
    # independent oracle: Mahler measure of the primitive minimal polynomial at 60 digits
    with mpmath.workdps(60):
        if x.is_rational:
            f = x.as_fraction()
            return mpmath.mpf(max(abs(f.numerator), f.denominator)) ** 2
        r = mpmath.sqrt(x.D)
        v = (x.a + x.b * r) / x.c
        w = (x.a - x.b * r) / x.c
        d = x.min_poly().leading
        return d * max(1, abs(v)) * max(1, abs(w))


def test_examples():
    assert weil_height_squared(QuadRat(1)).value == 1
    assert weil_height_squared(phi).value == phi
    assert weil_height_squared(QuadRat(2, 0, 3)).value == 9
    assert partial_quotient_bound(phi) == 3 * phi


def test_phi_count_bound_against_high_precision():
    with mpmath.workdps(50):
        h2 = (1 + mpmath.sqrt(5)) / 2
        exact = 36 * h2 * mpmath.log(mpmath.sqrt(h2)) + 9 * mpmath.log(3) * h2
    b = irrational_pq_count_bound(phi)
    assert b >= exact
    assert b - exact < 1e-9
    assert abs(b - 30.0) < 1.0


def test_rational_inputs_rejected():
    with pytest.raises(ValueError):
        partial_quotient_bound(QuadRat(3))
    with pytest.raises(ValueError):
        irrational_pq_count_bound(QuadRat(3))


@given(surds())
def test_height_matches_oracle(x):
    h = weil_height_squared(x)
    oracle = _mp_height_sq(x)
    with mpmath.workdps(60):
        assert abs(mpmath.mpf(float(h.value)) - oracle) <= oracle * 1e-12
    assert h.float_upper >= float(h.value)
    assert h.value >= 1


@given(surds(allow_rational=False))
def test_count_bound_outward_rounded(x):
    b = irrational_pq_count_bound(x)
    with mpmath.workdps(60):
        h2 = _mp_height_sq(x)
        exact = h2 * (18 * mpmath.log(h2) + 9 * mpmath.log(3))
    assert b >= exact
    assert b >= 9 * math.log(3)


@given(st.fractions().filter(lambda f: abs(f.numerator) < 10**9 and f.denominator < 10**9))
def test_rational_height(f):
    h = weil_height_squared(QuadRat(f.numerator, 0, f.denominator))
    assert h.value == max(abs(f.numerator), f.denominator) ** 2


@given(surds())
def test_galois_invariance(x):
    assert galois_invariance_check(x)


@given(surds(coeff=st.integers(-200, 200)), st.sampled_from([-2, -1, 0, 1, 2]))
def test_power_law(x, n):
    if not x:
        return
    lhs = weil_height_squared(x**n).value
    rhs = weil_height_squared(x).value ** abs(n)
    assert lhs == rhs


@given(same_field(2, coeff=st.integers(-500, 500)))
def test_submultiplicative(xs):
    x, y = xs
    hx, hy = weil_height_squared(x), weil_height_squared(y)
    if x.is_rational and y.is_rational:
        assert weil_height_squared(x * y).value <= hx.value * hy.value
        assert weil_height_squared(x + y).value <= 4 * hx.value * hy.value
        return
    slack = 1 + 2**-40
    assert weil_height_squared(x * y).float_upper <= hx.float_upper * hy.float_upper * slack
    assert weil_height_squared(x + y).float_upper <= 4 * hx.float_upper * hy.float_upper * slack


@given(surds(coeff=st.integers(-50, 50)))
def test_height_one_only_for_trivial(x):
    if weil_height_squared(x).value == 1:
        assert x in (QuadRat(0), QuadRat(1), QuadRat(-1))


@given(surds(allow_rational=False), surds(allow_rational=False))
def test_count_bound_monotone(x, y):
    hx, hy = weil_height_squared(x), weil_height_squared(y)
    if hx.float_upper < hy.float_upper:
        assert irrational_pq_count_bound(x) <= irrational_pq_count_bound(y)


def test_perron17_partial_quotient_bound_exact():
    xi = parse_surd("(164+65*sqrt(17))/251")
    b = partial_quotient_bound(xi)
    assert b == 3 * 251 * max(QuadRat(1), abs(xi)) * max(QuadRat(1), abs(xi.conj()))
