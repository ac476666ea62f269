"""LLL over polynomial lattices with the monic-biased inner product.

The inner product on Z_K[x] is <p, q> = int_I p q dx + p_K q_K, where p_K is
the coefficient of x**K in the ambient degree K.  The extra term makes vectors
with a nonzero top coefficient expensive, so short reduced vectors tend to be
of lower degree and, when they reach degree K, monic.

LLL runs on the Gram matrix alone, in exact integer arithmetic (the rational
Gram matrix is scaled by a common denominator, which does not change the
reduction).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .poly import IntPolynomial, ONE, X, bareiss_det, linear_factor, moment, resultant
from .realanalysis import RatInterval, isolate_roots

log = logging.getLogger(__name__)

DEFAULT_DELTA = Fraction(3, 4)


class NotPositiveDefinite(ValueError):
    pass


@dataclass(frozen=True)
class MonicGram:
    interval: RatInterval
    dim: int
    G: tuple[tuple[Fraction, ...], ...]

    @property
    def degree(self) -> int:
        return self.dim - 1


@dataclass
class PolyBasis:
    """Lattice basis as polynomials; ``transform`` rows give each vector in
    terms of the basis the lattice search started from."""

    vectors: list[IntPolynomial]
    transform: list[list[int]] = field(default_factory=list)

    def __post_init__(self):
        if not self.transform:
            n = len(self.vectors)
            self.transform = [[int(i == j) for j in range(n)] for i in range(n)]

    @classmethod
    def power_basis(cls, k: int) -> "PolyBasis":
        return cls([X ** i if i else ONE for i in range(k + 1)])

    @classmethod
    def shifted(cls, f: IntPolynomial, k: int) -> "PolyBasis":
        """(1, f, f x, ..., f x^k)."""
        return cls([ONE] + [f.shift(i) for i in range(k + 1)])


def monic_gram(interval: RatInterval, k: int) -> MonicGram:
    """Gram matrix of 1, x, ..., x^k under the monic-biased inner product."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if interval.a == interval.b:
        raise ValueError("degenerate interval: the integral part vanishes")
    mom = [moment(interval.a, interval.b, j) for j in range(2 * k + 1)]
    rows = []
    for i in range(k + 1):
        row = [mom[i + j] for j in range(k + 1)]
        if i == k:
            row[k] += 1
        rows.append(tuple(row))
    return MonicGram(interval, k + 1, tuple(rows))


def _integer_moments(gram: MonicGram) -> tuple[list[int], int]:
    """Moments m_0..m_{2K} and the corner weight, scaled to integers."""
    K = gram.degree
    mom = [moment(gram.interval.a, gram.interval.b, j) for j in range(2 * K + 1)]
    L = 1
    for m in mom:
        L = L * m.denominator // math.gcd(L, m.denominator)
    return [int(m * L) for m in mom], L


def basis_gram(vectors: Sequence[IntPolynomial], gram: MonicGram) -> list[list[int]]:
    """Integer Gram matrix (scaled by a positive constant) of polynomial vectors."""
    K = gram.degree
    im, corner = _integer_moments(gram)
    coeffs = []
    for v in vectors:
        if not v.is_zero and v.degree > K:
            raise ValueError(f"vector of degree {v.degree} exceeds ambient degree {K}")
        coeffs.append(list(v.coeffs) + [0] * (K + 1 - len(v.coeffs)))
    # w[i][a] = sum_b v_i[b] m[a + b]
    weights = [[sum(c[b] * im[a + b] for b in range(K + 1) if c[b]) for a in range(K + 1)]
               for c in coeffs]
    n = len(vectors)
    G = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            s = sum(x * y for x, y in zip(coeffs[i], weights[j]))
            s += corner * coeffs[i][K] * coeffs[j][K]
            G[i][j] = G[j][i] = s
    return G


def integral_lll(G: list[list[int]], delta: Fraction = DEFAULT_DELTA) -> list[list[int]]:
    """LLL on an integer Gram matrix; returns the unimodular row transform H.

    The reduced Gram matrix is H G H^T.  Integral variant with subdeterminants
    d_i and scaled Gram-Schmidt coefficients lambda_{k,j} = d_j mu_{k,j}, so
    every intermediate quantity is an integer.
    """
    delta = Fraction(delta)
    if not Fraction(1, 4) < delta < 1:
        raise ValueError("delta must lie in (1/4, 1)")
    n = len(G)
    if n == 0:
        return []
    # 1-based working copies
    g = [[0] * (n + 1)] + [[0] + list(map(int, row)) for row in G]
    H = [[0] * (n + 1)] + [[0] + [int(i == j) for j in range(n)] for i in range(n)]
    d = [0] * (n + 1)
    lam = [[0] * (n + 1) for _ in range(n + 1)]
    d[0] = 1
    d[1] = g[1][1]
    if d[1] <= 0:
        raise NotPositiveDefinite("Gram matrix is not positive definite")
    pn, pd = delta.numerator, delta.denominator

    def redi(k, l):
        if 2 * abs(lam[k][l]) <= d[l]:
            return
        r = (2 * lam[k][l] + d[l]) // (2 * d[l])
        H[k] = [a - r * b for a, b in zip(H[k], H[l])]
        g[k] = [a - r * b for a, b in zip(g[k], g[l])]
        for row in g:
            row[k] -= r * row[l]
        lam[k][l] -= r * d[l]
        for i in range(1, l):
            lam[k][i] -= r * lam[l][i]

    def swapi(k, kmax):
        H[k], H[k - 1] = H[k - 1], H[k]
        g[k], g[k - 1] = g[k - 1], g[k]
        for row in g:
            row[k], row[k - 1] = row[k - 1], row[k]
        for j in range(1, k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        lk = lam[k][k - 1]
        B = (d[k - 2] * d[k] + lk * lk) // d[k - 1]
        for i in range(k + 1, kmax + 1):
            t = lam[i][k]
            lam[i][k] = (d[k] * lam[i][k - 1] - lk * t) // d[k - 1]
            lam[i][k - 1] = (B * t + lk * lam[i][k]) // d[k]
        d[k - 1] = B

    k, kmax = 2, 1
    while k <= n:
        if k > kmax:
            kmax = k
            for j in range(1, k + 1):
                u = g[k][j]
                for i in range(1, j):
                    u = (d[i] * u - lam[k][i] * lam[j][i]) // d[i - 1]
                if j < k:
                    lam[k][j] = u
                else:
                    if u <= 0:
                        raise NotPositiveDefinite("Gram matrix is not positive definite")
                    d[k] = u
        while True:
            redi(k, k - 1)
            if pd * (d[k] * d[k - 2] + lam[k][k - 1] ** 2) < pn * d[k - 1] ** 2:
                swapi(k, kmax)
                k = max(2, k - 1)
            else:
                for l in range(k - 2, 0, -1):
                    redi(k, l)
                k += 1
                break
    return [row[1:] for row in H[1:]]


def gram_schmidt(G: Sequence[Sequence]) -> tuple[list[Fraction], list[list[Fraction]]]:
    """Exact squared norms B_i and coefficients mu_{i,j} from a Gram matrix."""
    n = len(G)
    B: list[Fraction] = []
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i):
            s = Fraction(G[i][j]) - sum(mu[j][t] * mu[i][t] * B[t] for t in range(j))
            mu[i][j] = s / B[j]
        B.append(Fraction(G[i][i]) - sum(mu[i][t] ** 2 * B[t] for t in range(i)))
    return B, mu


def is_lll_reduced(G: Sequence[Sequence], delta: Fraction = DEFAULT_DELTA) -> bool:
    """Independent check of size reduction and the Lovasz condition."""
    B, mu = gram_schmidt(G)
    n = len(G)
    for i in range(n):
        for j in range(i):
            if abs(mu[i][j]) > Fraction(1, 2):
                return False
    for k in range(1, n):
        if B[k] < (Fraction(delta) - mu[k][k - 1] ** 2) * B[k - 1]:
            return False
    return True


def transform_gram(H: Sequence[Sequence[int]], G: Sequence[Sequence]) -> list[list]:
    """H G H^T."""
    n = len(H)
    HG = [[sum(H[i][t] * G[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
    return [[sum(HG[i][t] * H[j][t] for t in range(n)) for j in range(n)] for i in range(n)]


def lll_reduce(basis: PolyBasis, gram: MonicGram, delta: Fraction = DEFAULT_DELTA) -> PolyBasis:
    """Reduce a polynomial basis with respect to the monic-biased inner product."""
    G = basis_gram(basis.vectors, gram)
    H = integral_lll(G, delta)
    n = len(basis.vectors)
    vectors = []
    for i in range(n):
        v = IntPolynomial(())
        for j in range(n):
            if H[i][j]:
                v = v + basis.vectors[j] * H[i][j]
        vectors.append(v)
    T = [[sum(H[i][t] * basis.transform[t][j] for t in range(n)) for j in range(n)]
         for i in range(n)]
    return PolyBasis(vectors, T)


# -- factor discovery -------------------------------------------------------

def integer_roots(p: IntPolynomial) -> list[int]:
    """Integer roots of a nonzero polynomial, found via real-root isolation."""
    if p.degree is None or p.degree < 1:
        return []
    bound = 1 + max(abs(c) for c in p.coeffs[:-1]) // abs(p.lc) + 1
    crit = isolate_roots(p, RatInterval(-bound, bound), width=Fraction(1, 2))
    roots = set()
    for l, r in crit.intervals:
        for z in range(math.floor(l), math.ceil(r) + 1):
            if l <= z <= r and p.sign_at(Fraction(z)) == 0:
                roots.add(z)
    return sorted(roots)


def split_integer_roots(p: IntPolynomial) -> list[IntPolynomial]:
    """Split off linear factors x - r for integer roots r; returns the pieces."""
    pieces = []
    for r in integer_roots(p):
        lin = linear_factor(Fraction(r))
        while True:
            try:
                p = p.exact_div(lin)
            except ValueError:
                break
        pieces.append(lin)
    if p.degree and p.degree >= 1:
        pieces.append(p)
    return pieces


def harvest(basis: PolyBasis) -> list[IntPolynomial]:
    """Monic primitive nonconstant vectors of a reduced basis, split at integer roots."""
    out = []
    for v in basis.vectors:
        if v.is_zero or v.degree < 1:
            continue
        p = v.primitive()
        if p.lc != 1:
            log.debug("discarding non-monic vector %s", p)
            continue
        out.extend(split_integer_roots(p))
    return out


def _order_key(f: IntPolynomial):
    return (f.degree, f.coeffs)


@dataclass
class SearchResult:
    factors: list[IntPolynomial]
    resultants: dict[tuple[int, ...], int]
    truncated: bool
    rounds: int

    def to_json(self) -> dict:
        return {"factors": [{"coeffs": f.to_json(), "abs_res": abs(self.resultants[f.coeffs])}
                            for f in self.factors],
                "truncated": self.truncated, "rounds": self.rounds}


def factor_search(interval: RatInterval, q: IntPolynomial, k_init: int = 20,
                  rounds_max: int = 5, k_step: Optional[int] = None,
                  delta: Fraction = DEFAULT_DELTA) -> SearchResult:
    """Recursive LLL search for candidate factors of an attaining polynomial.

    Round 1 reduces the power basis 1, x, ..., x^k_init.  Each later round
    takes every factor first found in the previous round, reduces
    (1, f, f x, ..., f x^k_step) and harvests again.  Candidates must pass
    |Res(f, q)| = 1.  Stops at a fixed point or after ``rounds_max`` rounds.
    """
    if k_init < 2:
        raise ValueError("k_init must be >= 2")
    k_step = k_init if k_step is None else k_step
    found: dict[tuple[int, ...], IntPolynomial] = {}
    res: dict[tuple[int, ...], int] = {}

    def absorb(cands):
        new = []
        for f in cands:
            if f.coeffs in found or f.coeffs in res:
                continue
            r = resultant(f, q)
            res[f.coeffs] = r
            if abs(r) == 1:
                found[f.coeffs] = f
                new.append(f)
        return sorted(new, key=_order_key)

    frontier: list[IntPolynomial] = []
    rounds = 0
    if rounds_max >= 1:
        gram = monic_gram(interval, k_init)
        reduced = lll_reduce(PolyBasis.power_basis(k_init), gram, delta)
        frontier = absorb(harvest(reduced))
        rounds = 1
        while frontier and rounds < rounds_max:
            nxt = []
            for f in frontier:
                basis = PolyBasis.shifted(f, k_step)
                gram = monic_gram(interval, f.degree + k_step)
                nxt.extend(harvest(lll_reduce(basis, gram, delta)))
            frontier = absorb(nxt)
            rounds += 1
    truncated = rounds_max < 1 or bool(frontier)
    factors = sorted(found.values(), key=_order_key)
    return SearchResult(factors, {f.coeffs: res[f.coeffs] for f in factors}, truncated, rounds)
