"""Closed-form bounds for t_M on zero-endpoint intervals and Farey intervals.

Everything rational is computed exactly; square roots go through
:func:`sqrt_enclosure`.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional

from .enclosure import DEFAULT_PRECISION, RealEnclosure, sqrt_enclosure, to_decimal
from .poly import IntPolynomial, X, poly
from .realanalysis import WeightedProduct

# b_max(2) bracket from the literature, kept as opaque constants.
BMAX2_LOWER = Fraction("1.26")
BMAX2_UPPER = Fraction("1.328")


@dataclass(frozen=True)
class BmaxBounds:
    n: int
    lower: Fraction
    upper: Fraction
    upper_strict: bool = False

    def to_json(self) -> dict:
        return {"n": self.n, "lower": str(self.lower), "upper": str(self.upper)}


@dataclass(frozen=True)
class FareyPair:
    """Farey neighbours p/q < r/s with r*q - p*s = 1."""

    p: int
    q: int
    r: int
    s: int

    def __post_init__(self):
        if self.q <= 0 or self.s <= 0:
            raise ValueError("denominators must be positive")
        if self.r * self.q - self.p * self.s != 1:
            raise ValueError(f"{self.p}/{self.q}, {self.r}/{self.s} are not Farey neighbours")

    @property
    def left(self) -> Fraction:
        return Fraction(self.p, self.q)

    @property
    def right(self) -> Fraction:
        return Fraction(self.r, self.s)


def k_factor(b, delta, precision: int = DEFAULT_PRECISION) -> RealEnclosure:
    """Enclosure of 2 (delta/b) (1 + sqrt(1 + b/delta))."""
    b, delta = Fraction(b), Fraction(delta)
    if b <= 0 or delta <= 0:
        raise ValueError("k_factor needs b > 0 and delta > 0")
    root = sqrt_enclosure(1 + b / delta, precision)
    return (root + 1).scale(2 * delta / b)


def growth_factor(b, delta, n: int, precision: int = DEFAULT_PRECISION) -> RealEnclosure:
    """Enclosure of (1 + k_{b,delta})**n, the sup-norm growth from [0,b] to [0,b+delta]."""
    k = k_factor(b, delta, precision)
    return RealEnclosure((1 + k.lo) ** n, (1 + k.hi) ** n, precision)


def bmax_bounds(n: int) -> BmaxBounds:
    """Exact bracket 1/n + 1/(n^2 (n-1)) < b_max(n) <= 4n/(2n-1)^2."""
    if n < 2:
        raise ValueError("b_max(1) is not finite; need n >= 2")
    if n == 2:
        return BmaxBounds(2, BMAX2_LOWER, BMAX2_UPPER, upper_strict=True)
    lower = Fraction(1, n) + Fraction(1, n * n * (n - 1))
    upper = Fraction(4 * n, (2 * n - 1) ** 2)
    return BmaxBounds(n, lower, upper)


def pn_family(n: int) -> WeightedProduct:
    """x^(n^2-2) (x^2 - n x + 1)."""
    if n <= 2:
        raise ValueError("the P_n family needs n > 2")
    return WeightedProduct(((X, n * n - 2), (poly(1, -n, 1), 1)))


def delta_min(n: int) -> Fraction:
    if n <= 2:
        raise ValueError("delta_min needs n > 2")
    return Fraction(1, 4 * n ** 3 - 8 * n ** 2 + 5 * n - 1)


@dataclass
class InequalityReport:
    n_max: int
    seq_violations: list[int]
    ratfun_violations: list[int]
    monotone_violations: list[int]

    @property
    def ok(self) -> bool:
        return not (self.seq_violations or self.ratfun_violations or self.monotone_violations)

    def to_json(self) -> dict:
        return {"n_max": self.n_max, "ok": self.ok,
                "seqineq_violations": self.seq_violations,
                "ratfunineq_violations": self.ratfun_violations,
                "monotonicity_violations": self.monotone_violations}


def _seq_term(n: int) -> tuple[int, int]:
    """((n^2 - n)/(n^2 - n + 1))^(n^2) as an integer pair (num, den)."""
    e = n * n
    return (n * n - n) ** e, (n * n - n + 1) ** e


def bmax_inequalities(n_max: int, monotone_max: int = 50) -> InequalityReport:
    """Check the two inequality chains behind the lower bound, exactly.

    For 3 <= n <= n_max: ((n^2-n)/(n^2-n+1))^(n^2) >= (2/3)^4 and
    (2/3)^4 > (n^3-3n^2+2n-1)/(n^2-n+1)^2.  Also checks that the sequence is
    increasing for n up to ``monotone_max``.
    """
    if n_max < 3:
        raise ValueError("n_max must be >= 3")
    seq_bad, rat_bad, mono_bad = [], [], []
    for n in range(3, n_max + 1):
        num, den = _seq_term(n)
        if num * 81 < 16 * den:
            seq_bad.append(n)
        rnum = n ** 3 - 3 * n ** 2 + 2 * n - 1
        rden = (n * n - n + 1) ** 2
        if not 16 * rden > 81 * rnum:
            rat_bad.append(n)
    prev = _seq_term(1)
    for n in range(2, monotone_max + 1):
        cur = _seq_term(n)
        if cur[0] * prev[1] <= prev[0] * cur[1]:
            mono_bad.append(n)
        prev = cur
    return InequalityReport(n_max, seq_bad, rat_bad, mono_bad)


def extra_lower_n(b: Fraction) -> int:
    """The largest m with 1/m > b, so that 1/(m+1) <= b < 1/m."""
    return math.ceil(1 / Fraction(b)) - 1


def extra_lower_bound(b, precision: int = DEFAULT_PRECISION) -> RealEnclosure:
    """Lower bound max{1/(n+1), b / (2(1 + sqrt(1 - n b)) - n b)} for t_M([0, b])."""
    b = Fraction(b)
    if not 0 < b < 1:
        raise ValueError("extra_lower_bound needs 0 < b < 1")
    n = extra_lower_n(b)
    root = sqrt_enclosure(1 - n * b, precision)
    # denominator is increasing in the root, so the bound is decreasing in it
    den_lo = 2 * (1 + root.lo) - n * b
    den_hi = 2 * (1 + root.hi) - n * b
    branch = RealEnclosure(b / den_hi, b / den_lo, precision)
    floor = Fraction(1, n + 1)
    return RealEnclosure(max(floor, branch.lo), max(floor, branch.hi), precision)


def bstar_upper(n: int, k: int) -> Fraction:
    """k (4n^2 + 1) / (n (2n - 1)^2)."""
    if n <= 1:
        raise ValueError("need n > 1")
    if not 1 <= k < n:
        raise ValueError("need 1 <= k < n")
    return Fraction(k * (4 * n * n + 1), n * (2 * n - 1) ** 2)


def farey_scan(n_max: int, family_t_max: int = 1000) -> list[FareyPair]:
    """Search for Farey intervals [k/n, p/q] reaching past the b* upper bound.

    For each 2 <= n <= n_max and 1 <= k < n, the right neighbours p/q with
    q > n and p n - q k = 1 decrease in q (p/q = k/n + 1/(qn)); all of them
    with q <= 2n are enumerated, and the scan continues past 2n while p/q
    could still exceed the bound.  Every flagged case must
    satisfy 1 + qk = 2n and k = 1; the k = 1 family (1+t)/((1+t)n - 1) is
    checked against the bound separately.  Returns the flagged pairs.
    """
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    flagged: dict[tuple, FareyPair] = {}
    for n in range(2, n_max + 1):
        for k in range(1, n):
            if math.gcd(k, n) != 1:
                continue
            bound = bstar_upper(n, k)
            # 1 + qk < 2n + 1 bounds the interesting q; p/q also decreases in q
            q = n + 1
            while q <= 2 * n or Fraction(k, n) + Fraction(1, q * n) > bound:
                if (1 + q * k) % n == 0:
                    pair = FareyPair(k, n, (1 + q * k) // n, q)
                    if pair.right > bound:
                        # the continuity argument says this needs 1 + qk = 2n and k = 1
                        if not (1 + q * k == 2 * n and k == 1):
                            raise AssertionError(f"{pair} escapes the 1 + qk = 2n argument")
                        flagged[(pair.p, pair.q, pair.r, pair.s)] = pair
                q += 1
        b1 = bstar_upper(n, 1)
        for t in range(1, family_t_max + 1):
            if Fraction(1 + t, (1 + t) * n - 1) > b1:
                pair = FareyPair(1, n, 1 + t, (1 + t) * n - 1)
                flagged[(pair.p, pair.q, pair.r, pair.s)] = pair
    return sorted(flagged.values(), key=lambda f: (f.q, f.p, f.s))


# -- t_M profile -------------------------------------------------------------

def tm_bounds(x, plateaus: Optional[Mapping[int, Fraction]] = None,
              precision: int = DEFAULT_PRECISION):
    """Certified (lower, upper, tags) for t_M([0, x]).

    ``plateaus`` maps n to a b with t_M = 1/n on [1/n, b], typically from
    certified table entries.  Only monotonicity of t_M, the exact values
    t_M([0, 1/m]) = 1/m, t_M([0, 1]) = 1/2 and Lemma-6 style bounds are used.
    """
    x = Fraction(x)
    if x <= 0:
        raise ValueError("profile needs x > 0")
    plateaus = dict(plateaus or {})
    lower, ltag = Fraction(0), "none"
    # exact values at 1/m (m >= 2) and at 1, pushed right by monotonicity
    if x >= 1:
        lower, ltag = Fraction(1, 2), "monotone:t_M(1)=1/2"
    else:
        m = math.ceil(1 / x)
        lower, ltag = Fraction(1, m), f"obstruction:{m}x-1"
        lb = extra_lower_bound(x, precision)
        if lb.lo > lower:
            lower, ltag = lb.lo, "extra_lower"
    # upper: known value at some y >= x
    upper, utag = min(x, Fraction(1)), "trivial:x" if x <= 1 else "trivial:1"
    if x <= 1:
        m = math.floor(1 / x)
        if m >= 2 and Fraction(1, m) < upper:
            upper, utag = Fraction(1, m), f"monotone:t_M(1/{m})"
        elif m == 1 and Fraction(1, 2) < upper:
            upper, utag = Fraction(1, 2), "monotone:t_M(1)=1/2"
    for n, b in sorted(plateaus.items()):
        if x <= Fraction(b) and Fraction(1, n) < upper:
            upper, utag = Fraction(1, n), f"plateau:n={n}"
    if lower > upper:
        raise AssertionError(f"inconsistent bounds at x={x}: {lower} > {upper}")
    return lower, upper, f"{ltag};{utag}"


def tm_profile(x_lo, x_hi, steps: int,
               plateaus: Optional[Mapping[int, Fraction]] = None) -> list[tuple[Fraction, Fraction, Fraction, str]]:
    """Grid of (x, lower, upper, tags) rows for x_lo <= x <= x_hi."""
    x_lo, x_hi = Fraction(x_lo), Fraction(x_hi)
    if not 0 < x_lo < x_hi:
        raise ValueError("need 0 < x_lo < x_hi")
    if steps < 1:
        raise ValueError("steps must be >= 1")
    rows = []
    for i in range(steps + 1):
        x = x_lo + (x_hi - x_lo) * i / steps
        rows.append((x, *tm_bounds(x, plateaus)))
    return rows


def profile_csv(rows, digits: int = 20) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x_decimal", "lower_decimal", "upper_decimal", "provenance"])
    for x, lo, hi, tags in rows:
        w.writerow([to_decimal(x, digits), to_decimal(lo, digits), to_decimal(hi, digits), tags])
    return buf.getvalue()


# name used by the public operation list
theorem5_inequalities = bmax_inequalities
