import math
import random
import sys

import pytest
from hypothesis import given, settings, strategies as st

from agmpi.fixedpoint import kernels

big = st.integers(min_value=0, max_value=1 << 20000)


@given(big, big)
@settings(max_examples=60, deadline=None)
def test_karatsuba_matches_builtin(x, y):
    assert kernels.karatsuba_mul(x, y) == x * y


@pytest.mark.parametrize("threshold", [1, 2, 8, 32])
def test_karatsuba_threshold_does_not_change_result(threshold):
    r = random.Random(threshold)
    x, y = r.getrandbits(50_000), r.getrandbits(31_000)
    assert kernels.karatsuba_mul(x, y, threshold) == x * y


def test_karatsuba_rejects_negative():
    with pytest.raises(ValueError):
        kernels.karatsuba_mul(-1, 3)


@given(st.integers(min_value=0, max_value=1 << 30000))
@settings(max_examples=80, deadline=None)
def test_isqrt_newton_is_exact_floor(n):
    assert kernels.isqrt_newton(n) == math.isqrt(n)


@pytest.mark.parametrize("k", [100, 101, 1000, 4099, 20000])
def test_isqrt_perfect_squares_and_neighbours(k):
    r = (1 << k) + 12345
    for n in (r * r - 1, r * r, r * r + 1, (r + 1) ** 2 - 1):
        assert kernels.isqrt_newton(n) == math.isqrt(n)


def test_isqrt_negative():
    with pytest.raises(ValueError):
        kernels.isqrt_newton(-4)


@given(st.integers(min_value=0, max_value=1 << 40000), st.integers(min_value=1, max_value=1 << 20000))
@settings(max_examples=80, deadline=None)
def test_divmod_newton_matches_builtin(a, b):
    assert kernels.divmod_newton(a, b) == divmod(a, b)


def test_divmod_newton_large_quotient_path():
    r = random.Random(7)
    b = r.getrandbits(9000) | (1 << 8999)
    for _ in range(5):
        a = r.getrandbits(30000)
        assert kernels.divmod_newton(a, b) == divmod(a, b)


def test_divmod_by_zero():
    with pytest.raises(ZeroDivisionError):
        kernels.divmod_newton(5, 0)


@pytest.mark.parametrize("prec", [10, 53, 200, 5000])
def test_reciprocal_within_few_ulps(prec):
    m = 0xDEADBEEF_CAFEBABE_12345 * 3**200
    n = m.bit_length()
    exact = (1 << (prec + n)) // m
    assert abs(kernels.reciprocal(m, prec) - exact) <= 4


def test_decimal_digits_roundtrip_large():
    r = random.Random(3)
    n = r.getrandbits(40_000)
    s = kernels.to_decimal_digits(n)
    old = sys.get_int_max_str_digits()
    sys.set_int_max_str_digits(0)
    try:
        assert s == str(n)
    finally:
        sys.set_int_max_str_digits(old)
    assert kernels.from_decimal_digits(s) == n


@pytest.mark.parametrize("n,width,expected", [(0, 0, "0"), (0, 3, "000"), (42, 5, "00042"), (12345, 0, "12345")])
def test_decimal_digits_padding(n, width, expected):
    assert kernels.to_decimal_digits(n, width) == expected


def test_decimal_digits_overflow_width():
    with pytest.raises(ValueError):
        kernels.to_decimal_digits(12345, 3)
