import pytest
from hypothesis import given, strategies as st

from betacf import (
    BetaClass,
    QuadRat,
    admissible_pair,
    beta_ceil,
    beta_floor,
    beta_integers_in,
    conjugate_ratio_bound,
    greedy_digits,
    is_beta_integer,
    make_beta,
    parse_surd,
)
from betacf.beta import ratio_case

TEST_BASES = [
    "x^2-x-1",
    "x^2-2x-1",
    "x^2-x-3",
    "x^2-x-4",
    "x^2-3x+1",
    "x^2-2x-2",
    "x^2-x-5",
    "x^2-2",
    "x^2-3",
    "x^2+2x-9",
    "x^2+x-5",
    "x^2+4x-6",
]


def _base(poly, root="larger"):
    return make_beta(poly, root=root)


def test_classification_table():
    cases = {
        "x^2-x-1": BetaClass.QUADRATIC_PISOT,
        "x^2-x-4": BetaClass.QUADRATIC_PERRON_NON_PISOT,
        "x^2-2": BetaClass.SQRT_OF_INTEGER,
        "x^2+x-5": BetaClass.NON_PERRON_NEGATIVE_CONJUGATE,
    }
    for poly, klass in cases.items():
        assert make_beta(poly).klass is klass
    assert make_beta("x^2-5x+5", root="smaller").klass is BetaClass.NON_PERRON_POSITIVE_CONJUGATE
    assert make_beta(3).klass is BetaClass.RATIONAL_INTEGER


@pytest.mark.parametrize("poly", TEST_BASES)
def test_beta_spec_invariants(poly):
    b = make_beta(poly)
    assert b.beta > 1
    assert b.conj == b.beta.conj()
    assert b.floor_beta == b.beta.floor() >= 1
    assert b.poly(b.beta) == 0
    c = b.conj
    assert (abs(c) < b.beta) == b.klass.is_perron
    if b.klass is BetaClass.QUADRATIC_PISOT:
        assert abs(c) < 1


def test_phi_integers_up_to_five():
    phi = make_beta("x^2-x-1")
    got = [str(t) for t in beta_integers_in(QuadRat(0), QuadRat(5), phi)]
    assert got == ["0•", "1•", "10•", "100•", "101•", "1000•"]


def _bruteforce_nonneg(beta, hi, max_len=8):
    # oracle: all digit strings up to max_len positions, keep the greedy ones
    out = set()
    m = beta.floor_beta
    powers = [beta.beta**i for i in range(max_len)]

    def rec(pos, digits, value):
        if pos < 0:
            if value <= hi:
                gd, frac = greedy_digits(value, beta, frac_depth=1)
                k = 0
                while k < len(digits) - 1 and digits[k] == 0:
                    k += 1
                if tuple(digits[k:]) == gd and not any(frac):
                    out.add(value)
            return
        for d in range(m + 1):
            v = value + d * powers[pos]
            if v > hi:
                break
            rec(pos - 1, digits + [d], v)

    rec(max_len - 1, [], QuadRat(0, 0, 1, beta.D))
    return sorted(out)


@pytest.mark.parametrize("poly", ["x^2-x-1", "x^2-2x-1", "x^2-x-4", "x^2-3x+1"])
def test_enumeration_matches_bruteforce(poly):
    beta = make_beta(poly)
    hi = QuadRat(12)
    enumerated = [t.value for t in beta_integers_in(QuadRat(0), hi, beta)]
    assert enumerated == _bruteforce_nonneg(beta, hi)


@pytest.mark.parametrize("poly", TEST_BASES)
def test_gaps_and_fixpoint_and_order(poly):
    beta = make_beta(poly)
    ts = beta_integers_in(QuadRat(0), QuadRat(50), beta)
    vals = [t.value for t in ts]
    gaps = [b - a for a, b in zip(vals, vals[1:])]
    assert all(0 < g <= 1 for g in gaps), poly
    for t in ts:
        digits, frac = greedy_digits(t.value, beta, frac_depth=1)
        assert digits == t.digits and not any(frac)
    keys = [(len(t.digits), t.digits) for t in ts]
    assert keys == sorted(keys)


@pytest.mark.parametrize("poly", ["x^2-x-1", "x^2-2x-1", "x^2-x-3", "x^2-x-4", "x^2-5x+5"])
def test_rational_beta_integers_are_small(poly):
    beta = make_beta(poly)
    rats = [t.value for t in beta_integers_in(QuadRat(0), QuadRat(50), beta) if t.value.is_rational]
    assert rats == [QuadRat(k) for k in range(beta.floor_beta + 1)]


def test_nine_is_beta_integer_for_negative_conjugate_base():
    beta = make_beta("x^2+2x-9")
    assert is_beta_integer(QuadRat(9), beta)
    assert beta.beta**2 + 2 * beta.beta == 9


def test_negative_beta_integers_mirror():
    beta = make_beta("x^2-x-1")
    ts = beta_integers_in(QuadRat(-5), QuadRat(5), beta)
    neg = [t.value for t in ts if t.value < 0]
    pos = [t.value for t in ts if t.value > 0]
    assert sorted(-v for v in neg) == pos


@pytest.mark.parametrize("poly", ["x^2-x-1", "x^2-x-4", "x^2+x-5", "x^2-2"])
@given(x=st.tuples(st.integers(-400, 400), st.integers(-400, 400), st.integers(1, 40)))
def test_floor_contract(poly, x):
    beta = make_beta(poly)
    v = QuadRat(x[0], x[1], x[2], beta.D)
    f = beta_floor(v, beta)
    assert f.value <= v
    between = beta_integers_in(f.value, v, beta)
    assert [t.value for t in between] == [f.value]
    c = beta_ceil(v, beta)
    assert c.value >= v
    assert [t.value for t in beta_integers_in(v, c.value, beta)] == [c.value]


def test_beta_floor_large_coefficients_fast_path():
    beta = make_beta("x^2-x-4")
    big = QuadRat(3**200 + 7, 5**170, 2**300 + 1, 17)
    from betacf.beta import _beta_floor_exact

    assert beta_floor(big, beta).value == _beta_floor_exact(big, beta).value


def test_admissible_pairs():
    phi = make_beta("x^2-x-1")
    assert admissible_pair(QuadRat(1), QuadRat(1), phi) is False
    s = make_beta("x^2-2x-1")
    assert admissible_pair(QuadRat(2), QuadRat(2), s) is False
    assert admissible_pair(QuadRat(1), QuadRat(1), make_beta("x^2-x-4")) is None


@pytest.mark.parametrize("poly,case", [("x^2-x-4", "i"), ("x^2-2", "iii"), ("x^2+7x-29", "iv")])
def test_conjugate_ratio(poly, case):
    beta = make_beta(poly)
    assert ratio_case(beta) == case
    for t in beta_integers_in(QuadRat(0), QuadRat(40), beta):
        if t.value.is_integer and t.value <= beta.floor_beta:
            continue
        got_case, ok = conjugate_ratio_bound(t, beta)
        assert got_case == case and ok


def test_positive_conjugate_ratio():
    beta = make_beta("x^2-5x+5", root="smaller")
    assert ratio_case(beta) == "ii"
    for t in beta_integers_in(QuadRat(2), QuadRat(40), beta):
        assert conjugate_ratio_bound(t, beta)[1]


def test_greedy_digits_of_non_integer():
    phi = make_beta("x^2-x-1")
    digits, frac = greedy_digits(QuadRat(3), phi)
    assert digits == (1, 0, 0) and frac[:2] == (0, 1)
    assert not is_beta_integer(QuadRat(3), phi)
    assert is_beta_integer(parse_surd("(3+sqrt(5))/2"), phi)
