"""Obstruction polynomials and the resultant sieve.

An integer polynomial q = a_d x^d + ... + a_0 with a_d > 1, irreducible and
with all roots in I gives the lower bound t_M(I) >= a_d ** (-1/d).
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .enclosure import DEFAULT_PRECISION, RealEnclosure, inverse_root_enclosure, to_decimal
from .poly import IntPolynomial, rational_roots, resultant
from .realanalysis import RatInterval, sturm_count


@dataclass(frozen=True)
class Obstruction:
    q: IntPolynomial
    a_d: int
    d: int
    value: RealEnclosure

    def to_json(self) -> dict:
        return {"poly": self.q.to_json(), "a_d": self.a_d, "d": self.d,
                "value_decimal": to_decimal(self.value.mid, 30)}


def obstruction_value(q: IntPolynomial, precision: int = DEFAULT_PRECISION):
    """Return ``(a_d, d, enclosure of a_d**(-1/d))``."""
    if q.is_zero or q.degree < 1:
        raise ValueError("not an obstruction candidate: degree must be >= 1")
    if q.lc <= 1:
        raise ValueError(f"not an obstruction candidate: leading coefficient {q.lc} <= 1")
    return q.lc, q.degree, inverse_root_enclosure(q.lc, q.degree, precision)


def value_less(a: int, d: int, b: int, e: int) -> bool:
    """Exact test a**(-1/d) < b**(-1/e), i.e. b**d < a**e."""
    return b ** d < a ** e


def is_obstruction_for(q: IntPolynomial, interval: RatInterval) -> bool:
    """Lemma-1 hypotheses, with irreducibility approximated.

    A candidate is rejected if it has a nontrivial integer content or (in degree
    at least 2) a rational root; full factorisation is not attempted.
    """
    if q.is_zero or q.degree < 1 or q.lc <= 1:
        return False
    if q.content != 1:
        return False
    if q.degree >= 2 and rational_roots(q):
        return False
    return sturm_count(q, interval) == q.degree


def _candidates(d: int, a: int, h_max: int, interval: RatInterval) -> Iterable[IntPolynomial]:
    # Vieta: roots bounded by M force |a_k| <= a * C(d, k) * M**(d-k)
    m = max(abs(interval.a), abs(interval.b))
    ranges = []
    for k in range(d):
        bound = min(Fraction(h_max), a * math.comb(d, k) * m ** (d - k))
        c = math.floor(bound)
        ranges.append(range(-c, c + 1))
    for lower in itertools.product(*ranges):
        yield IntPolynomial(tuple(lower) + (a,))


def max_obstruction_search(interval: RatInterval, d_max: int, h_max: int,
                           precision: int = DEFAULT_PRECISION) -> Optional[Obstruction]:
    """Best obstruction with degree <= d_max and coefficients bounded by h_max.

    Pairs (a_d, d) are visited from the largest value a_d**(-1/d) downwards,
    smaller degree first on ties; within a pair the lexicographically smallest
    ascending coefficient vector wins.  The first success is therefore the
    argmax of a full enumeration.
    """
    if d_max < 1 or h_max < 2:
        raise ValueError("need d_max >= 1 and h_max >= 2")
    pairs = [(a, d) for d in range(1, d_max + 1) for a in range(2, h_max + 1)]
    # largest value first == smallest a**(1/d); compare a**e vs b**d exactly
    def cmp(p1, p2):
        (a, d), (b, e) = p1, p2
        lhs, rhs = a ** e, b ** d
        if lhs != rhs:
            return -1 if lhs < rhs else 1
        return d - e

    pairs.sort(key=functools.cmp_to_key(cmp))
    for a, d in pairs:
        for q in _candidates(d, a, h_max, interval):
            if is_obstruction_for(q, interval):
                _, _, enc = obstruction_value(q, precision)
                return Obstruction(q, a, d, enc)
    return None


def sieve_by_resultant(candidates: Iterable[IntPolynomial], q: IntPolynomial) -> list[IntPolynomial]:
    """Keep the candidates f with |Res(f, q)| = 1."""
    if q.is_zero:
        raise ValueError("sieve needs a nonzero q")
    return [f for f in candidates if abs(resultant(f, q)) == 1]
