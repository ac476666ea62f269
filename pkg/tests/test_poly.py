import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from monictd.enclosure import sqrt_enclosure
from monictd.poly import (IntPolynomial, X, chebyshev_T, derivative, eval_rational, gcd,
                          moment, poly, resultant, resultant_subresultant, resultant_sylvester,
                          squarefree_part)
from monictd.realanalysis import RatInterval, supnorm

from strategies import polys, rationals


def test_canonical_zero():
    assert IntPolynomial((0, 0, 0)).coeffs == ()
    assert IntPolynomial(()).degree is None
    assert IntPolynomial((3, 0, 2, 0)).degree == 2


def test_json_round_trip():
    p = poly(1, 432, -456, 179, -31, 2)
    assert p.to_json() == ["2", "-31", "179", "-456", "432", "1"]
    assert IntPolynomial.from_json(p.to_json()) == p
    assert IntPolynomial.from_json('["2","-31","179","-456","432","1"]') == p


@pytest.mark.parametrize("p, x, expected", [
    (poly(2, -1), Fraction(1, 2), Fraction(0)),
    (poly(1, 432, -456, 179, -31, 2), Fraction(1, 4), Fraction(1, 1024)),
    (poly(1, -8, 1), Fraction(1, 8), Fraction(1, 64)),
])
def test_eval_rational(p, x, expected):
    assert eval_rational(p, x) == expected


def test_derivative():
    assert derivative(poly(1, -3, 1)) == poly(2, -3)
    assert derivative(IntPolynomial((5,))).is_zero
    p3 = X ** 7 * poly(1, -3, 1)
    assert eval_rational(derivative(p3), Fraction(1, 3)) == 0


@pytest.mark.parametrize("f, g, expected", [
    (X, poly(3, -1), -1),
    (X, X, 0),
])
def test_resultant_values(f, g, expected):
    assert resultant(f, g) == expected


def test_resultant_root_product():
    # Res(f, a x - c) = (-1)^deg f * a^deg f * f(c/a)
    f = poly(1, -3, 1)
    assert abs(resultant(f, poly(3, -1))) == 1
    f7 = poly(1, 8760, -13342, 8488, -2784, 514, -50, 2)
    v = eval_rational(f7, Fraction(1, 4))
    assert v == Fraction(6401, 16384)
    assert resultant(f7, poly(4, -1)) == (-1) ** 7 * 4 ** 7 * v


def test_resultant_rejects_zero():
    with pytest.raises(ValueError):
        resultant(IntPolynomial(()), X)


def _rational_gcd_degree(a, b):
    """Euclid over Q with plain lists, independent of the module's PRS."""
    def trim(c):
        while c and c[-1] == 0:
            c.pop()
        return c
    u = trim([Fraction(c) for c in a.coeffs])
    v = trim([Fraction(c) for c in b.coeffs])
    while v:
        r = u[:]
        while len(r) >= len(v) and r:
            k = len(r) - len(v)
            t = r[-1] / v[-1]
            for i, c in enumerate(v):
                r[i + k] -= t * c
            r = trim(r)
        u, v = v, r
    return len(u) - 1


@settings(max_examples=150, deadline=None)
@given(polys(8, 10), polys(8, 10))
def test_resultant_symmetry_and_gcd(p, q):
    r = resultant(p, q)
    assert r == (-1) ** (p.degree * q.degree) * resultant(q, p)
    if p.degree == 0 or q.degree == 0:
        return
    assert (r == 0) == (_rational_gcd_degree(p, q) > 0)


@settings(max_examples=60, deadline=None)
@given(polys(12, 6), polys(12, 6))
def test_subresultant_matches_sylvester(p, q):
    assert resultant_subresultant(p, q) == resultant_sylvester(p, q)


def test_gcd_and_squarefree():
    p = poly(1, -1) * poly(1, -1) * poly(2, -1)
    assert squarefree_part(p) == (poly(1, -1) * poly(2, -1)).primitive()
    assert gcd(p, poly(1, -1) * poly(1, 5)).primitive() == poly(1, -1)


def test_chebyshev():
    assert chebyshev_T(0) == IntPolynomial((1,))
    assert chebyshev_T(1) == X
    assert chebyshev_T(2) == poly(2, 0, -1)
    assert eval_rational(chebyshev_T(3), 1) == 1


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 20), rationals(-1, 1))
def test_chebyshev_bounded_on_unit_interval(n, x):
    assert abs(eval_rational(chebyshev_T(n), x)) <= 1


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 12), rationals(1, 3))
def test_chebyshev_growth_bound(n, x):
    # T_n(x) <= (x + sqrt(x^2 - 1))^n, the root enclosed from below
    root = sqrt_enclosure(x * x - 1, 128)
    assert eval_rational(chebyshev_T(n), x) <= (x + root.hi) ** n


@settings(max_examples=40, deadline=None)
@given(polys(8, 10), rationals(1, 2), st.booleans())
def test_chebyshev_inequality(q, t, negative):
    # |q(x)| <= |T_n(x)| * ||q||_[-1,1] for |x| > 1
    if q.degree == 0 or t == 1:
        return
    x = -t if negative else t
    norm = supnorm(q, RatInterval(-1, 1))
    assert abs(eval_rational(q, x)) <= abs(eval_rational(chebyshev_T(q.degree), x)) * norm.hi


def test_moment():
    assert moment(0, 1, 1) == Fraction(1, 2)
    assert moment(0, Fraction(3, 7), 0) == Fraction(3, 7)
    assert moment(0, Fraction(1, 4), 2) == Fraction(1, 192)
    with pytest.raises(ValueError):
        moment(1, 0, 2)


@settings(max_examples=100, deadline=None)
@given(polys(6, 20), polys(6, 20), rationals(-3, 3))
def test_eval_multiplicative(p, q, x):
    assert eval_rational(p * q, x) == eval_rational(p, x) * eval_rational(q, x)


@given(polys(6, 20), rationals(-3, 3))
def test_sign_at_matches_eval(p, x):
    v = eval_rational(p, x)
    assert p.sign_at(x) == (v > 0) - (v < 0)
