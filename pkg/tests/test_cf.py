import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from betacf import (
    Kind,
    QuadRat,
    approximation_check,
    continuant,
    convergents,
    eval_finite,
    eval_periodic,
    expand,
    format_word,
    make_beta,
    parse_surd,
    parse_word,
    regular_cf_expand,
)
from betacf.cf import same_infinite_word
from conftest import surds

PHI = make_beta("x^2-x-1")
P17 = make_beta("x^2-x-4")


def _euler_continuant(ts):
    # Euler's rule: sum over ways of deleting disjoint adjacent pairs
    n = len(ts)
    total = QuadRat(0)

    def rec(i, prod):
        nonlocal total
        if i >= n:
            total = total + prod
            return
        rec(i + 1, prod * ts[i])
        if i + 1 < n:
            rec(i + 2, prod)

    rec(0, QuadRat(1))
    return total


def _random_word(rng, n, D=5):
    out = []
    for i in range(n):
        a = QuadRat(rng.randint(1, 30), rng.randint(-3, 3), rng.randint(1, 3), D)
        while not a > 0:
            a = a + 1
        out.append(a)
    return out


def test_determinant_identity_1000_words():
    rng = random.Random(1)
    for _ in range(1000):
        word = _random_word(rng, rng.randint(1, 12), rng.choice([2, 5, 13]))
        t = convergents(word)
        assert t.determinant_ok()
        assert t.recurrence_ok()


def test_continuant_symmetry_and_splitting():
    rng = random.Random(2)
    for _ in range(300):
        n = rng.randint(0, 10)
        ts = _random_word(rng, n)
        assert continuant(ts) == _euler_continuant(ts)
        assert continuant(ts) == continuant(ts[::-1])
        for k in range(1, n):
            left, right = ts[:k], ts[k:]
            split = continuant(left) * continuant(right) + continuant(left[:-1]) * continuant(right[1:])
            assert continuant(ts) == split


def test_convergents_are_continuants():
    rng = random.Random(3)
    word = _random_word(rng, 9)
    t = convergents(word)
    for n in range(len(word)):
        assert t.p[n] == continuant(word[: n + 1])
        assert t.q[n] == continuant(word[1 : n + 1])


def test_perron17_finite_word():
    x = parse_surd("(164+65*sqrt(17))/251")
    out = expand(x, P17)
    b = P17.beta
    assert out.kind is Kind.FINITE
    assert out.word == (QuadRat(1), QuadRat(1), b, 2 * b**3 + b**2 + 1, b**3 + b + 1, QuadRat(2), b + 1)
    assert out.value() == x
    assert approximation_check(out.table, x)
    assert out.table.determinant_ok()
    for n, r in enumerate(out.trace.residuals):
        assert r == x * out.table.q[n] - out.table.p[n]


def test_regular_cf_of_phi():
    phi = PHI.beta
    out = regular_cf_expand(phi)
    assert out.kind is Kind.EVENTUALLY_PERIODIC
    assert out.preperiod == () and out.period == (QuadRat(1),)
    word = [1] * 11
    assert approximation_check(convergents(word), phi)


def test_element_of_m_gives_single_quotient():
    out = expand(QuadRat(7), None)
    assert out.is_finite and out.word == (QuadRat(7),)
    out = expand(PHI.beta**3, PHI)
    assert out.is_finite and out.word == (PHI.beta**3,)


def test_cap_and_validation():
    out = expand(QuadRat(2, 1, 1, 5), make_beta("x^2-5x+5", root="smaller"), cap=5)
    assert out.kind is Kind.CAPPED and len(out.word) == 5
    with pytest.raises(ValueError):
        expand(QuadRat.sqrt(2), None, cap=0)
    with pytest.raises(ValueError):
        out.__class__(Kind.CAPPED, QuadRat(1)).value()


def test_keep_trace_false_same_result():
    for x in [parse_surd("(1+sqrt(21))/3"), parse_surd("(117+44*sqrt(21))/202")]:
        beta = make_beta("x^2-x-5")
        a = expand(x, beta)
        b = expand(x, beta, keep_trace=False)
        assert (a.kind, a.preperiod, a.period) == (b.kind, b.preperiod, b.period)
        assert b.table is None


def test_observer_sees_every_step():
    seen = []
    out = expand(parse_surd("(164+65*sqrt(17))/251"), P17, observer=lambda n, xi, a: seen.append((n, a)))
    assert [a for _, a in seen] == list(out.word)


def test_eval_periodic_examples():
    assert eval_periodic([], [3, 4], 3) == parse_surd("(3+2*sqrt(3))/2")
    assert eval_periodic([], [1], 5) == PHI.beta
    assert eval_periodic([2], [1, 1, 1, 4], 7) == QuadRat.sqrt(7)
    assert eval_periodic([1], [2], 2) == QuadRat.sqrt(2)
    with pytest.raises(ValueError):
        eval_periodic([], [3, 4], 5)
    with pytest.raises(ValueError):
        eval_periodic([], [])
    with pytest.raises(ValueError):
        eval_periodic([1, 0], [1])


def test_parse_and_format_word():
    b = P17.beta
    pre, per = parse_word("[1; 1, b, 2*b^3+b^2+1, (2, b+1)]", {"b": b})
    assert pre == (QuadRat(1), QuadRat(1), b, 2 * b**3 + b**2 + 1)
    assert per == (QuadRat(2), b + 1)
    text = format_word(pre, per)
    assert parse_word(text) == (pre, per)
    assert parse_word("[(1)]") == ((), (QuadRat(1),))
    assert parse_word("[5]") == ((QuadRat(5),), ())
    with pytest.raises(ValueError):
        parse_word("[1; (2]")


def test_same_infinite_word():
    one, two = QuadRat(1), QuadRat(2)
    assert same_infinite_word((), (one, two), (one,), (two, one))
    assert same_infinite_word((), (one,), (one,), (one, one))
    assert not same_infinite_word((), (one, two), (), (two, one))


@settings(max_examples=100)
@given(surds(coeff=st.integers(-300, 300), den=st.integers(1, 40), allow_rational=False))
def test_galois_criterion(x):
    out = regular_cf_expand(x)
    assert out.is_periodic
    reduced = x > 1 and -1 < x.conj() < 0
    assert (out.preperiod == ()) == reduced


@given(surds(coeff=st.integers(-300, 300), den=st.integers(1, 40)))
def test_round_trip_regular(x):
    out = regular_cf_expand(x)
    assert out.value() == x
    assert all(a >= 1 for a in out.word[1:])
    assert out.table.determinant_ok()


@pytest.mark.parametrize("poly", ["x^2-x-1", "x^2-2x-1", "x^2-x-3", "x^2-x-4", "x^2-2", "x^2-x-5"])
@settings(max_examples=40)
@given(x=st.tuples(st.integers(-200, 200), st.integers(-200, 200), st.integers(1, 60)))
def test_round_trip_beta(poly, x):
    beta = make_beta(poly)
    v = QuadRat(x[0], x[1], x[2], beta.D)
    out = expand(v, beta, cap=3000)
    if out.is_capped:
        return
    assert out.value() == v
    assert out.table.determinant_ok()
    assert approximation_check(out.table, v)
    # complete quotients past the first exceed 1
    assert all(xi > 1 for xi in out.trace.complete_quotients[1:])
    if out.is_periodic:
        again = expand(out.value(), beta)
        assert same_infinite_word(again.preperiod, again.period, out.preperiod, out.period)
