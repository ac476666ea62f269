"""Certificates that a weighted product attains the obstruction 1/n on [0, b].

A product P = prod f_i^e_i of total degree D attains 1/n on I = [0, b] when
max_I |P|^(1/D) = 1/n.  Since nx - 1 is an obstruction for I, that is the
smallest possible value, so t_M(I) = 1/n follows.  The check has three parts:

1. every factor passes |Res(f_i, nx - 1)| = 1;
2. the log-sum sum e_i log|f_i| is at most D log(1/n) on I;
3. it equals D log(1/n) at x = 1/n (checked exactly).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .bounds import BMAX2_UPPER
from .enclosure import (DEFAULT_PRECISION, MAX_PRECISION, RealEnclosure, Undecided,
                        log_abs, to_decimal)
from .poly import IntPolynomial, X, eval_rational, poly, resultant
from .realanalysis import (DEFAULT_LOG_TOL, Candidate, RatInterval, WeightedProduct,
                           log_sum_at, log_supnorm_weighted_evidence)

SCHEMA_VERSION = 1

CERTIFIED, REFUTED, UNDECIDED = "certified", "refuted", "undecided"


@dataclass
class Certificate:
    interval: RatInterval
    n: int
    product: WeightedProduct
    verdict: str
    evidence: list[Candidate] = field(default_factory=list)
    resultants: list[int] = field(default_factory=list)
    precision_bits: int = DEFAULT_PRECISION
    tol: Fraction = DEFAULT_LOG_TOL
    target: Optional[RealEnclosure] = None
    witness: Optional[dict] = None
    right_endpoint_max: bool = False
    strict: bool = False

    @property
    def D(self) -> int:
        return self.product.total_degree

    def to_json(self) -> dict:
        return {
            "version": SCHEMA_VERSION,
            "interval": self.interval.to_json(),
            "n": self.n,
            "D": self.D,
            "product": self.product.to_json(),
            "verdict": self.verdict,
            "target_logsum": None if self.target is None else [str(self.target.lo), str(self.target.hi)],
            "evidence": [c.to_json() for c in self.evidence],
            "resultants": [{"coeffs": f.to_json(), "res": str(r)}
                           for (f, _), r in zip(self.product.factors, self.resultants)],
            "precision_bits": self.precision_bits,
            "tol": str(self.tol),
            "witness": self.witness,
            "right_endpoint_max": self.right_endpoint_max,
            "strict": self.strict,
        }


def _plateau_cap(n: int) -> Fraction:
    return BMAX2_UPPER if n == 2 else Fraction(1, n - 1)


def _check_domain(interval: RatInterval, n: int) -> None:
    if n < 2:
        raise ValueError("n must be >= 2")
    if interval.a != 0:
        raise ValueError("certification is for intervals [0, b]")
    b = interval.b
    if not Fraction(1, n) <= b < _plateau_cap(n):
        raise ValueError(f"b = {b} outside [1/{n}, {_plateau_cap(n)})")


def _power_exponent(v: Fraction, n: int) -> Optional[int]:
    """k with |v| = n**-k, else None."""
    v = abs(v)
    if v.numerator != 1:
        return None
    k, d = 0, v.denominator
    while d % n == 0:
        d //= n
        k += 1
    return k if d == 1 else None


def _compare(P: WeightedProduct, interval: RatInterval, n: int, tol: Fraction, precision: int):
    """One precision level: returns (verdict or None, candidates, target, witness)."""
    D = P.total_degree
    target = log_abs(Fraction(1, n), precision).scale(D)
    sup, cands = log_supnorm_weighted_evidence(P, interval, tol, precision)
    anchor = Fraction(1, n)
    worst = None
    decided = True
    for c in cands:
        if c.value is None or (c.lo == c.hi == anchor):
            continue
        if c.value.lo > target.hi + tol:
            witness = {"kind": "exceeds", "point": [str(c.lo), str(c.hi)],
                       "logsum": [str(c.value.lo), str(c.value.hi)],
                       "excess_decimal": to_decimal(c.value.lo - target.hi, 12)}
            return REFUTED, cands, target, witness
        if c.value.hi > target.lo + tol:
            decided = False
        if worst is None or c.value.hi > worst:
            worst = c.value.hi
    if not decided:
        return None, cands, target, None
    return CERTIFIED, cands, target, None


def verify_attaining(P: WeightedProduct, interval: RatInterval, n: int,
                     tol: Fraction = DEFAULT_LOG_TOL, precision: int = DEFAULT_PRECISION,
                     max_precision: int = MAX_PRECISION) -> Certificate:
    """Certify or refute that P attains 1/n on [0, b]."""
    _check_domain(interval, n)
    if not P.factors:
        raise ValueError("empty product")
    q = poly(n, -1)
    res = [resultant(f, q) for f, _ in P.factors]
    cert = Certificate(interval, n, P, UNDECIDED, resultants=res, precision_bits=precision, tol=tol)
    for (f, _), r in zip(P.factors, res):
        if abs(r) != 1:
            v = eval_rational(f, Fraction(1, n))
            cert.verdict = REFUTED
            cert.witness = {"kind": "resultant", "factor": f.to_json(), "res": str(r),
                            "value_at_1_over_n": str(v)}
            return cert
    # attainment: |f(1/n)| = n^-deg f exactly, so |P(1/n)| = n^-D
    total = 0
    for f, e in P.factors:
        k = _power_exponent(eval_rational(f, Fraction(1, n)), n)
        if k is None:
            raise AssertionError(f"{f} passed the sieve but f(1/{n}) is not a power of 1/{n}")
        total += e * k
    if total != P.total_degree:
        cert.verdict = REFUTED
        cert.witness = {"kind": "not_attained", "log_n_exponent": total, "D": P.total_degree}
        return cert
    bits = precision
    while True:
        try:
            verdict, cands, target, witness = _compare(P, interval, n, tol, bits)
        except Undecided:
            verdict, cands, target, witness = None, [], None, None
        if verdict is not None or bits >= max_precision:
            break
        bits = min(2 * bits, max_precision)
    cert.precision_bits = bits
    cert.evidence, cert.target, cert.witness = cands, target, witness
    cert.verdict = verdict or UNDECIDED
    if verdict == CERTIFIED:
        others = [c for c in cands if c.value is not None and not (c.lo == c.hi == Fraction(1, n))]
        cert.strict = all(c.value.hi < target.lo for c in others)
        right = [c for c in cands if c.kind == "endpoint" and c.lo == interval.b]
        cert.right_endpoint_max = (interval.b == Fraction(1, n)) or any(
            c.value is not None and c.value.hi >= target.lo for c in right)
    return cert


def check_certificate(data: dict, precision: Optional[int] = None) -> bool:
    """Re-check a certificate's JSON without trusting its verdict.

    Recomputes the resultants, re-evaluates every point candidate and checks
    that the recorded enclosures contain the fresh ones (or vice versa overlap),
    then re-derives the verdict from the recorded evidence.
    """
    if data.get("version") != SCHEMA_VERSION:
        raise ValueError("unknown certificate version")
    P = WeightedProduct.from_json(data["product"])
    n = int(data["n"])
    bits = precision or int(data["precision_bits"])
    q = poly(n, -1)
    for item, (f, _) in zip(data["resultants"], P.factors):
        if int(item["res"]) != resultant(f, q):
            return False
    verdict = data["verdict"]
    if verdict == REFUTED and data["witness"]["kind"] == "resultant":
        return abs(int(data["witness"]["res"])) != 1
    tol = Fraction(data["tol"])
    tlo, thi = (Fraction(v) for v in data["target_logsum"])
    anchor = Fraction(1, n)
    exceeded = False
    below = True
    for ev in data["evidence"]:
        if ev["logsum"] is None:
            continue
        lo, hi = (Fraction(v) for v in ev["logsum"])
        pts = [Fraction(p) for p in ev["point"]]
        if len(pts) == 1:
            fresh = log_sum_at(P, pts[0], bits)
            if fresh is None or fresh.hi < lo or fresh.lo > hi:
                return False
            if pts[0] == anchor:
                continue
        if lo > thi + tol:
            exceeded = True
        if hi > tlo + tol:
            below = False
    if verdict == CERTIFIED:
        return below and not exceeded
    if verdict == REFUTED:
        return exceeded
    return True


# -- the table of attaining products ------------------------------------------

def _wp(*pairs) -> WeightedProduct:
    return WeightedProduct(tuple((f, e) for f, e in pairs))


@dataclass(frozen=True)
class TableEntry:
    n: int
    b: Fraction
    product: WeightedProduct

    @property
    def interval(self) -> RatInterval:
        return RatInterval(Fraction(0), self.b)


def builtin_table() -> list[TableEntry]:
    """The six published products for n = 3..8 with their claimed b."""
    return [
        TableEntry(3, Fraction(93, 200), _wp(
            (X, 45944640),
            (poly(1, -11406261, 47054086, -88456310, 100247244, -76341256, 41208853,
                  -16202606, 4692047, -999261, 154318, -16766, 1211, -52, 1), 2450525),
            (poly(1, 14184, -34944, 36442, -20832, 7041, -1405, 153, -7), 877415),
            (poly(1, 4842, -10935, 10355, -5317, 1594, -278, 26, -1), 2571030),
            (poly(1, 7812, -18072, 17561, -9271, 2864, -516, 50, -2), 595980),
            (poly(1, -1233, 2406, -1913, 791, -179, 21, -1), 1210840),
            (poly(1, -3, 7, -11, 6, -1), 1052898))),
        TableEntry(4, Fraction(303, 1000), _wp(
            (X, 640),
            (poly(1, 432, -456, 179, -31, 2), 47),
            (poly(1, 8760, -13342, 8488, -2784, 514, -50, 2), 35))),
        TableEntry(5, Fraction(23, 100), _wp(
            (X, 1050990),
            (poly(1, 5544095, -9115714, 6623719, -2790988, 751349, -133974, 15818, -1192, 52, -1), 78796),
            (poly(1, 4950, -4605, 1698, -310, 28, -1), 21825))),
        TableEntry(6, Fraction(23, 125), _wp(
            (X, 5232473),
            (poly(1, 1260, -852, 215, -24, 1), 118824),
            (poly(1, -140190, 132517, -51966, 10819, -1261, 78, -2), 200917))),
        TableEntry(7, Fraction(37, 250), _wp(
            (X, 44),
            (poly(1, 3472, -1826, 358, -31, 1), 1))),
        TableEntry(8, Fraction(13, 100), _wp(
            (X, 12288),
            (poly(1, -8, 1), 246),
            (poly(1, -576, 208, -25, 1), 741))),
    ]


def table_entry(n: int) -> TableEntry:
    for entry in builtin_table():
        if entry.n == n:
            return entry
    raise ValueError(f"no table entry for n = {n} (have 3..8)")


@dataclass
class BmaxLower:
    n: int
    b: Optional[Fraction]
    b_extended: Optional[Fraction]
    certificate: Certificate

    def to_json(self) -> dict:
        return {"n": self.n,
                "b": None if self.b is None else str(self.b),
                "b_extended": None if self.b_extended is None else str(self.b_extended),
                "b_extended_decimal": None if self.b_extended is None else to_decimal(self.b_extended, 12),
                "certificate": self.certificate.to_json()}


def certify_bmax_lower(n: int, tol: Fraction = DEFAULT_LOG_TOL,
                       resolution: Optional[Fraction] = Fraction(1, 1000),
                       precision: int = DEFAULT_PRECISION) -> BmaxLower:
    """Certify the table entry for n and push b right while the certificate holds.

    With ``resolution`` None the binary search is skipped.
    """
    if not 3 <= n <= 8:
        raise ValueError("table entries exist for 3 <= n <= 8")
    entry = table_entry(n)
    cert = verify_attaining(entry.product, entry.interval, n, tol, precision)
    if cert.verdict != CERTIFIED:
        return BmaxLower(n, None, None, cert)
    lo, hi = entry.b, Fraction(1, n - 1)
    if resolution is not None:
        resolution = Fraction(resolution)
        while hi - lo > resolution:
            mid = (lo + hi) / 2
            probe = verify_attaining(entry.product, RatInterval(Fraction(0), mid), n, tol, precision,
                                     max_precision=precision)
            if probe.verdict == CERTIFIED:
                lo = mid
            else:
                hi = mid
    return BmaxLower(n, entry.b, lo if resolution is not None else None, cert)
