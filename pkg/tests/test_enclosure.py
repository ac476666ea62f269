import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from monictd.enclosure import (RealEnclosure, escalate, inverse_root_enclosure, iroot,
                               log_abs, sqrt_enclosure, to_decimal)

from strategies import rationals


def test_rejects_empty():
    with pytest.raises(ValueError):
        RealEnclosure(Fraction(1), Fraction(0))


@settings(max_examples=200)
@given(st.integers(1, 10 ** 30), st.integers(1, 10 ** 30))
def test_log_contains_float_log(p, q):
    enc = log_abs(Fraction(p, q), 128)
    ref = math.log(p) - math.log(q)
    assert enc.width < Fraction(1, 2 ** 100)
    assert abs(float(enc.mid) - ref) < 1e-9 * max(1.0, abs(ref))


def test_log_exact_cases():
    assert log_abs(1).is_exact and log_abs(1).lo == 0
    with pytest.raises(ValueError):
        log_abs(0)
    # log 2 lies between these classical rational bounds
    enc = log_abs(2)
    assert Fraction(6931471805, 10 ** 10) < enc.lo and enc.hi < Fraction(6931471806, 10 ** 10)


def test_sqrt_exact_on_squares():
    assert sqrt_enclosure(Fraction(1, 100)).is_exact
    assert sqrt_enclosure(Fraction(9, 4)).lo == Fraction(3, 2)
    with pytest.raises(ValueError):
        sqrt_enclosure(-1)


@given(rationals(0, 50, max_den=10 ** 6))
def test_sqrt_brackets(v):
    enc = sqrt_enclosure(v, 64)
    assert enc.lo * enc.lo <= v <= enc.hi * enc.hi


@given(st.integers(0, 10 ** 40), st.integers(1, 9))
def test_iroot(n, k):
    r = iroot(n, k)
    assert r ** k <= n < (r + 1) ** k


@given(st.integers(2, 10 ** 6), st.integers(1, 9))
def test_inverse_root(a, d):
    enc = inverse_root_enclosure(a, d, 64)
    assert enc.lo ** d * a <= 1 <= enc.hi ** d * a


@settings(max_examples=100)
@given(rationals(-5, 5), rationals(0, 1), rationals(-5, 5), rationals(0, 1), rationals(-3, 3))
def test_arithmetic_contains(a, wa, b, wb, t):
    A, B = RealEnclosure(a, a + wa), RealEnclosure(b, b + wb)
    x, y = a + wa / 2, b + wb / 3
    assert (A + B).contains(x + y)
    assert (A - B).contains(x - y)
    assert (A * B).contains(x * y)
    assert A.scale(t).contains(x * t)


def test_comparisons_and_json():
    a, b = RealEnclosure(Fraction(0), Fraction(1)), RealEnclosure(Fraction(2), Fraction(3))
    assert a.certainly_lt(b) and b.certainly_gt(a) and not b.certainly_lt(a)
    assert RealEnclosure.from_json(a.to_json()) == a
    assert to_decimal(Fraction(1, 3), 5) == "0.33333"


def test_escalate():
    seen = []

    def check(bits):
        seen.append(bits)
        return True if bits >= 1024 else None

    assert escalate(check, 256, 16384) is True
    assert seen == [256, 512, 1024]
    assert escalate(lambda bits: None, 256, 1024) is None
