from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from monictd.lattice import (MonicGram, NotPositiveDefinite, PolyBasis, basis_gram,
                             factor_search, gram_schmidt, integral_lll, integer_roots,
                             is_lll_reduced, lll_reduce, monic_gram, split_integer_roots,
                             transform_gram)
from monictd.poly import X, bareiss_det, poly, resultant
from monictd.realanalysis import RatInterval

F = Fraction


def I(a, b):
    return RatInterval(F(a), F(b))


def test_monic_gram_examples():
    assert monic_gram(I(0, 1), 1).G == ((1, F(1, 2)), (F(1, 2), F(4, 3)))
    assert monic_gram(I(0, 1), 0).G == ((2,),)
    with pytest.raises(ValueError):
        monic_gram(I(F(1, 3), F(1, 3)), 2)


@given(st.integers(-20, 20), st.integers(1, 40), st.integers(0, 8))
def test_monic_gram_symmetric(a, w, k):
    G = monic_gram(I(F(a, 10), F(a + w, 10)), k).G
    assert all(G[i][j] == G[j][i] for i in range(k + 1) for j in range(k + 1))


def test_two_dim_example():
    G = [[4, 2], [2, 3]]
    # at delta = 3/4 the Lovasz test holds with equality, so nothing moves
    H = integral_lll(G, F(3, 4))
    assert H == [[1, 0], [0, 1]]
    assert is_lll_reduced(G, F(3, 4))
    # a larger delta forces the swap and the short vector of norm 3 comes first
    H = integral_lll(G, F(99, 100))
    R = transform_gram(H, G)
    assert R[0][0] == 3 and is_lll_reduced(R, F(99, 100))


def test_orthogonal_basis_unchanged():
    G = [[3, 0, 0], [0, 5, 0], [0, 0, 7]]
    H = integral_lll(G)
    assert all(abs(H[i][j]) == (i == j) for i in range(3) for j in range(3))


def test_not_positive_definite():
    with pytest.raises(NotPositiveDefinite):
        integral_lll([[1, 2], [2, 1]])
    with pytest.raises(NotPositiveDefinite):
        integral_lll([[0]])


def _full_rank(rows):
    return bareiss_det(rows) != 0


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n)),
    st.sampled_from([F(3, 4), F(99, 100), F(1, 2)]))
def test_lll_properties(B, delta):
    if not _full_rank(B):
        return
    n = len(B)
    G = [[sum(B[i][t] * B[j][t] for t in range(n)) for j in range(n)] for i in range(n)]
    H = integral_lll(G, delta)
    assert abs(bareiss_det(H)) == 1
    R = transform_gram(H, G)
    assert is_lll_reduced(R, delta)
    Bs, _ = gram_schmidt(R)
    det = 1
    for b in Bs:
        det *= b
    assert det == bareiss_det(G)


@pytest.mark.parametrize("k", [2, 5, 10])
@pytest.mark.parametrize("interval", [I(0, 1), I(0, F(1, 4)), I(F(-1, 2), F(1, 3))])
def test_lll_reduce_polynomial_basis(k, interval):
    gram = monic_gram(interval, k)
    basis = PolyBasis.power_basis(k)
    red = lll_reduce(basis, gram)
    assert abs(bareiss_det(red.transform)) == 1
    G0 = basis_gram(basis.vectors, gram)
    R = basis_gram(red.vectors, gram)
    assert R == transform_gram(red.transform, G0)
    assert is_lll_reduced(R)
    # |b_1|^2 <= 2^k det(G)^(1/(k+1)), raised to the power k+1
    assert R[0][0] ** (k + 1) <= 2 ** (k * (k + 1)) * bareiss_det(G0)


def test_rational_gram_matches_integer_scaling():
    gram = monic_gram(I(0, F(1, 3)), 3)
    G = basis_gram(PolyBasis.power_basis(3).vectors, gram)
    ratio = F(G[0][0]) / gram.G[0][0]
    assert all(F(G[i][j]) == ratio * gram.G[i][j] for i in range(4) for j in range(4))


def test_integer_roots_and_split():
    p = X * poly(1, -1) * poly(1, -3, 1)
    assert integer_roots(p) == [0, 1]
    pieces = split_integer_roots(p)
    assert sorted(f.coeffs for f in pieces) == sorted([(0, 1), (-1, 1), (1, -3, 1)])
    assert integer_roots(poly(2, -1)) == []


def test_factor_search_examples():
    res = factor_search(I(0, F(1, 4)), poly(4, -1), 20)
    assert X in res.factors
    res = factor_search(I(0, 1), poly(2, -1), 20)
    assert X in res.factors and poly(1, -1) in res.factors
    for f in res.factors:
        assert abs(resultant(f, poly(2, -1))) == 1
        assert f.lc == 1
    keys = [(f.degree, f.coeffs) for f in res.factors]
    assert keys == sorted(keys)


def test_factor_search_zero_rounds():
    res = factor_search(I(0, 1), poly(2, -1), 10, rounds_max=0)
    assert res.factors == [] and res.truncated


def test_factor_search_deterministic():
    a = factor_search(I(0, F(1, 3)), poly(3, -1), 12, rounds_max=2)
    b = factor_search(I(0, F(1, 3)), poly(3, -1), 12, rounds_max=2)
    assert a.factors == b.factors and a.to_json() == b.to_json()
