from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from mtg.exactnum import (
    CoincidenceError,
    ExactReal,
    NotPrimeError,
    approximate,
    compare,
    enclosure,
    is_prime,
    make,
    min_positive_gap,
    next_prime_at_least,
    nth_prime,
    sign,
)

R2, R3, R5 = ExactReal.sqrt(2), ExactReal.sqrt(3), ExactReal.sqrt(5)
PRIMES = (2, 3, 5, 7, 11, 13)


def oracle_interval(x: ExactReal):
    """50-digit interval evaluation with mpmath, independent of the library."""
    with mpmath.workdps(50):
        iv = mpmath.iv
        iv.dps = 50
        total = iv.mpf(x.unit.numerator) / x.unit.denominator
        for p, c in x.roots:
            total += iv.mpf(c.numerator) / c.denominator * iv.sqrt(iv.mpf(p))
        return total


def contains(lo: Fraction, hi: Fraction, x: ExactReal) -> bool:
    """Whether [lo, hi] can contain x given the oracle's enclosure."""
    v = oracle_interval(x)
    with mpmath.workdps(50):
        lo_iv = mpmath.iv.mpf(lo.numerator) / lo.denominator
        hi_iv = mpmath.iv.mpf(hi.numerator) / hi.denominator
        return lo_iv.a <= v.b and hi_iv.b >= v.a


def oracle_sign(x: ExactReal):
    v = oracle_interval(x)
    if v.a > 0:
        return 1
    if v.b < 0:
        return -1
    return None


fractions = st.fractions(min_value=-20, max_value=20, max_denominator=50)
exact_reals = st.builds(
    lambda unit, cs: make(dict(zip(PRIMES, cs)), unit),
    fractions,
    st.lists(fractions, min_size=0, max_size=len(PRIMES)),
)


def test_construction_examples():
    half = ExactReal(Fraction(1, 2))
    assert half.is_rational and half.unit == Fraction(1, 2)
    assert make({2: 1}) == R2
    x = make({2: 1, 3: -1})
    assert (x + (-x)).is_zero


def test_non_prime_basis_rejected():
    with pytest.raises(NotPrimeError):
        ExactReal(0, {4: 1})


def test_primes():
    assert [nth_prime(i) for i in range(1, 7)] == [2, 3, 5, 7, 11, 13]
    assert next_prime_at_least(8) == 11
    assert next_prime_at_least(13) == 13
    assert not is_prime(1) and is_prime(97)


def test_sign_examples():
    assert sign(make({2: 0}, 0)) == 0
    assert sign(R2 - Fraction(7, 5)) == 1
    assert sign(R2 + R3 - R5 - Fraction(1, 2)) == 1


def test_compare_examples():
    assert compare(R2, R3) == -1
    assert compare(Fraction(1, 2) + R2, R2 + Fraction(1, 2)) == 0
    # 2*sqrt2 = 2.8284... < sqrt3 + sqrt5/2 = 2.8500...
    assert compare(R2 * 2, R3 + R5 / 2) == -1
    assert oracle_sign(R2 * 2 - R3 - R5 / 2) == -1


def test_approximate_examples():
    lo, hi = approximate(R2, 3)
    assert contains(lo, hi, R2) and hi - lo <= Fraction(1, 1000)
    assert abs(float(lo) - 1.41421356) < 1e-3
    assert approximate(ExactReal(Fraction(5, 3)), 7) == (Fraction(5, 3), Fraction(5, 3))
    lo, hi = approximate(R2 + R3, 2)
    assert contains(lo, hi, R2 + R3) and hi - lo <= Fraction(1, 100)
    assert abs(float(lo) - 3.1462) < 1e-2


def test_min_positive_gap_examples():
    lb = min_positive_gap([R3], [R2])
    assert 0 < lb and oracle_sign(R3 - R2 - lb) == 1
    with pytest.raises(CoincidenceError):
        min_positive_gap([ExactReal(1)], [ExactReal(1)])
    mid = (R2 + R3) / 2
    lb = min_positive_gap([mid], [R2, R3])
    assert 0 < lb and sign((R3 - R2) / 2 - lb) >= 0


def test_irrational_product_rejected():
    with pytest.raises(TypeError):
        R2 * R3


def test_json_round_trip():
    x = make({2: Fraction(-3, 7), 11: 5}, Fraction(1, 9))
    assert ExactReal.from_json(x.to_json()) == x
    with pytest.raises(ValueError):
        ExactReal.from_json({"unit": "0.5", "roots": {}})


@settings(max_examples=300, deadline=None)
@given(exact_reals)
def test_sign_matches_oracle(x):
    s = sign(x)
    assert (s == 0) == all(c == 0 for c in (x.unit,) + x.coeffs)
    assert sign(-x) == -s
    expected = oracle_sign(x)
    if expected is not None:
        assert s == expected


@settings(max_examples=200, deadline=None)
@given(exact_reals, exact_reals, exact_reals)
def test_compare_total_order(x, y, z):
    assert compare(x, y) == -compare(y, x)
    if compare(x, y) <= 0 and compare(y, z) <= 0:
        assert compare(x, z) <= 0


@settings(max_examples=200, deadline=None)
@given(exact_reals, st.integers(1, 30))
def test_approximate_nested_and_contains(x, d):
    lo, hi = approximate(x, d)
    lo2, hi2 = approximate(x, d + 5)
    assert hi - lo <= Fraction(1, 10 ** d)
    assert lo <= lo2 <= hi2 <= hi
    mid = (lo2 + hi2) / 2
    assert lo <= mid <= hi
    assert contains(lo, hi, x)


@settings(max_examples=100, deadline=None)
@given(exact_reals, st.integers(8, 400))
def test_enclosure_contains_value(x, bits):
    lo, hi = enclosure(x, bits)
    assert lo <= hi
    assert contains(lo, hi, x)
