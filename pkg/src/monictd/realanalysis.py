"""Sturm-based root isolation and rigorous sup-norms on rational intervals.

The weighted sup-norm works in the log domain: for P = prod f_i**e_i the
log-sum L(x) = sum e_i log|f_i(x)| has derivative N(x) / prod f_i(x) with the
integer numerator N = sum e_i f_i' prod_{j != i} f_j.  Maxima of L on an
interval sit at endpoints or at real roots of N, so isolating those roots
exactly reduces the sup-norm to finitely many enclosure evaluations, no
matter how large the exponents are.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .enclosure import (DEFAULT_PRECISION, RealEnclosure, Undecided,
                        enclosure_max, log_abs)
from .poly import (IntPolynomial, derivative, eval_rational, gcd,
                   pseudo_remainder, squarefree_part)

DEFAULT_LOG_TOL = Fraction(1, 2 ** 64)


@dataclass(frozen=True)
class RatInterval:
    a: Fraction
    b: Fraction

    def __post_init__(self):
        a, b = Fraction(self.a), Fraction(self.b)
        if a > b:
            raise ValueError(f"interval endpoints out of order: [{a}, {b}]")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @classmethod
    def parse(cls, text: str) -> "RatInterval":
        """Parse ``"a,b"``; decimals are read as exact rationals."""
        parts = [s.strip() for s in text.split(",")]
        if len(parts) != 2:
            raise ValueError(f"expected 'a,b', got {text!r}")
        return cls(Fraction(parts[0]), Fraction(parts[1]))

    @property
    def length(self) -> Fraction:
        return self.b - self.a

    def require_tm_domain(self) -> "RatInterval":
        if self.length >= 4:
            raise ValueError("intervals of length >= 4 are outside the theory (t_M = 1)")
        return self

    def __contains__(self, x) -> bool:
        return self.a <= Fraction(x) <= self.b

    def to_json(self) -> list[str]:
        return [str(self.a), str(self.b)]


@dataclass(frozen=True)
class WeightedProduct:
    """P = prod f_i ** e_i kept in factored form."""

    factors: tuple[tuple[IntPolynomial, int], ...] = ()

    def __post_init__(self):
        fs = tuple((f, int(e)) for f, e in self.factors)
        seen = set()
        for f, e in fs:
            if f.is_zero or f.degree < 1:
                raise ValueError(f"factor {f} must be nonconstant")
            if e < 1:
                raise ValueError(f"exponent of {f} must be a positive integer")
            if f.coeffs in seen:
                raise ValueError(f"repeated factor {f}")
            seen.add(f.coeffs)
        object.__setattr__(self, "factors", fs)

    @property
    def total_degree(self) -> int:
        return sum(e * f.degree for f, e in self.factors)

    def __len__(self):
        return len(self.factors)

    def to_json(self) -> dict:
        return {"factors": [{"coeffs": f.to_json(), "exp": e} for f, e in self.factors]}

    @classmethod
    def from_json(cls, data) -> "WeightedProduct":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(tuple((IntPolynomial.from_json(item["coeffs"]), int(item["exp"]))
                         for item in data["factors"]))

    def __str__(self):
        return " * ".join(f"({f})^{e}" for f, e in self.factors) or "1"


@dataclass
class CriticalPointSet:
    """Isolating intervals for critical points, plus the domain endpoints.

    Each interval is either a point ``(r, r)`` (an exact rational root) or an
    interval ``(l, r)`` with ``l < r`` over which the polynomial changes sign
    exactly once.  Interiors are pairwise disjoint.
    """

    domain: RatInterval
    intervals: list[tuple[Fraction, Fraction]] = field(default_factory=list)

    @property
    def endpoints(self) -> tuple[Fraction, Fraction]:
        return (self.domain.a, self.domain.b)

    def midpoints(self) -> list[Fraction]:
        return [(l + r) / 2 for l, r in self.intervals]

    def __len__(self):
        return len(self.intervals)


# -- Sturm machinery ----------------------------------------------------------

def sturm_sequence(p: IntPolynomial) -> list[IntPolynomial]:
    """Sturm chain p, p', -rem, ... with positive rescalings only."""
    if p.is_zero:
        raise ValueError("Sturm sequence of the zero polynomial")
    seq = [p, derivative(p)]
    if seq[1].is_zero:
        return [p]
    while True:
        a, b = seq[-2], seq[-1]
        r = pseudo_remainder(a, b)
        if r.is_zero:
            break
        e = a.degree - b.degree + 1
        # prem = lc(b)^e * rem; we want -rem up to a positive factor
        if b.lc > 0 or e % 2 == 0:
            r = -r
        c = r.content
        r = IntPolynomial(tuple(v // c for v in r.coeffs))
        seq.append(r)
        if r.degree == 0:
            break
    return seq


def _variations(seq: Sequence[IntPolynomial], x: Fraction) -> int:
    signs = [s for s in (p.sign_at(x) for p in seq) if s]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def sturm_count(p: IntPolynomial, interval: RatInterval) -> int:
    """Number of distinct real roots of p in the closed interval."""
    if p.is_zero:
        raise ValueError("sturm_count of the zero polynomial")
    if p.degree == 0:
        return 0
    s = squarefree_part(p)
    seq = sturm_sequence(s)
    n = _variations(seq, interval.a) - _variations(seq, interval.b)
    return n + (1 if s.sign_at(interval.a) == 0 else 0)


def isolate_roots(p: IntPolynomial, interval: RatInterval,
                  width: Fraction = Fraction(1, 2 ** 20)) -> CriticalPointSet:
    """Isolating intervals of width <= ``width`` for the distinct real roots in I."""
    if p.is_zero:
        raise ValueError("isolate_roots of the zero polynomial")
    out = CriticalPointSet(interval)
    if p.degree == 0:
        return out
    s = squarefree_part(p)
    seq = sturm_sequence(s)
    width = Fraction(width)
    a, b = interval.a, interval.b
    if s.sign_at(a) == 0:
        out.intervals.append((a, a))
    if a == b:
        return out
    found = []
    # each stack item: (l, r, roots in (l, r], V(l), V(r))
    va, vb = _variations(seq, a), _variations(seq, b)
    stack = [(a, b, va - vb, va, vb)]
    while stack:
        l, r, n, vl, vr = stack.pop()
        if n == 0:
            continue
        if n == 1:
            if s.sign_at(r) == 0:
                found.append((r, r))
                continue
            if r - l <= width and s.sign_at(l) != 0:
                found.append(_collapse_rational(s, l, r))
                continue
        m = (l + r) / 2
        vm = _variations(seq, m)
        stack.append((m, r, vm - vr, vm, vr))
        stack.append((l, m, vl - vm, vl, vm))
    out.intervals.extend(sorted(found))
    return out


def simplest_rational(lo: Fraction, hi: Fraction) -> Fraction:
    """The rational of smallest denominator in the closed interval [lo, hi]."""
    lo, hi = Fraction(lo), Fraction(hi)
    if lo > hi:
        raise ValueError("empty interval")
    if lo <= 0 <= hi:
        return Fraction(0)
    if hi < 0:
        return -simplest_rational(-hi, -lo)
    fl = math.floor(lo)
    if fl == lo:
        return Fraction(fl)
    if fl + 1 <= hi:
        return Fraction(fl + 1)
    return fl + 1 / simplest_rational(1 / (hi - fl), 1 / (lo - fl))


def _collapse_rational(s: IntPolynomial, l: Fraction, r: Fraction):
    """Return (q, q) if the simplest rational in [l, r] is a root of s."""
    q = simplest_rational(l, r)
    if s.sign_at(q) == 0:
        return (q, q)
    return (l, r)


def refine_root(s: IntPolynomial, l: Fraction, r: Fraction) -> tuple[Fraction, Fraction]:
    """One bisection step on a sign-change interval of a squarefree s."""
    m = (l + r) / 2
    sm = s.sign_at(m)
    if sm == 0:
        return (m, m)
    if sm == s.sign_at(l):
        return (m, r)
    return (l, m)


# -- exact interval evaluation -------------------------------------------------

def _ihorner(coeffs: Sequence[int], lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    if not coeffs:
        return Fraction(0), Fraction(0)
    acc_lo = acc_hi = Fraction(coeffs[-1])
    for c in reversed(coeffs[:-1]):
        prods = (acc_lo * lo, acc_lo * hi, acc_hi * lo, acc_hi * hi)
        acc_lo, acc_hi = min(prods) + c, max(prods) + c
    return acc_lo, acc_hi


def _abs_sup(p: IntPolynomial, lo: Fraction, hi: Fraction) -> Fraction:
    a, b = _ihorner(p.coeffs, lo, hi)
    return max(abs(a), abs(b))


# -- plain sup-norm ------------------------------------------------------------

def supnorm(p: IntPolynomial, interval: RatInterval,
            rel_tol: Fraction = Fraction(1, 2 ** 80),
            max_steps: int = 2000) -> RealEnclosure:
    """Enclosure of max |p| over the interval."""
    if p.is_zero:
        raise ValueError("supnorm of the zero polynomial")
    a, b = interval.a, interval.b
    lo = max(abs(eval_rational(p, a)), abs(eval_rational(p, b)))
    hi = lo
    dp = derivative(p)
    if dp.is_zero or a == b:
        return RealEnclosure(lo, hi)
    crit = isolate_roots(dp, interval, width=interval.length / 64)
    s = squarefree_part(dp)
    pending = []
    for l, r in crit.intervals:
        if l == r:
            v = abs(eval_rational(p, l))
            lo, hi = max(lo, v), max(hi, v)
        else:
            pending.append((l, r))
    for l, r in pending:
        for _ in range(max_steps):
            if l == r:
                v = abs(eval_rational(p, l))
                lo, hi = max(lo, v), max(hi, v)
                break
            l, r = _collapse_rational(s, l, r)
            if l == r:
                continue
            edge = max(abs(eval_rational(p, l)), abs(eval_rational(p, r)))
            err = _abs_sup(dp, l, r) * (r - l) / 2
            if edge + err < lo or err <= rel_tol * max(lo, edge):
                lo, hi = max(lo, edge), max(hi, edge + err)
                break
            l, r = refine_root(s, l, r)
        else:
            raise Undecided("supnorm refinement did not converge")
    return RealEnclosure(lo, hi)


# -- weighted products ---------------------------------------------------------

def numerator_polynomial(P: WeightedProduct) -> IntPolynomial:
    """N = sum e_i f_i' prod_{j != i} f_j, the numerator of the log-derivative."""
    fs = [f for f, _ in P.factors]
    k = len(fs)
    prefix = [IntPolynomial((1,))]
    for f in fs:
        prefix.append(prefix[-1] * f)
    suffix = [IntPolynomial((1,))]
    for f in reversed(fs):
        suffix.append(suffix[-1] * f)
    suffix.reverse()
    n = IntPolynomial(())
    for i, (f, e) in enumerate(P.factors):
        n = n + derivative(f) * prefix[i] * suffix[i + 1] * e
    return n


def _critical_core(P: WeightedProduct) -> IntPolynomial:
    """Squarefree part of N with roots shared by some factor removed.

    At a shared root the log-sum is -infinity, so it is never a maximiser.
    """
    n = numerator_polynomial(P)
    if n.is_zero:
        raise ValueError("degenerate product: log-derivative numerator vanishes identically")
    if n.degree == 0:
        return n
    s = squarefree_part(n)
    for f, _ in P.factors:
        g = gcd(s, f)
        if g.degree and g.degree > 0:
            s = s.exact_div(g).primitive()
    return s


def critical_points_weighted(P: WeightedProduct, interval: RatInterval,
                             width: Fraction = Fraction(1, 2 ** 32)) -> CriticalPointSet:
    """Isolating intervals for the interior extrema of the log-sum on I."""
    s = _critical_core(P)
    if s.degree == 0:
        return CriticalPointSet(interval)
    return isolate_roots(s, interval, width)


def log_sum_at(P: WeightedProduct, x, precision: int = DEFAULT_PRECISION) -> Optional[RealEnclosure]:
    """Enclosure of sum e_i log|f_i(x)| at a rational x; None means -infinity."""
    x = Fraction(x)
    total = RealEnclosure.exact(0, precision)
    for f, e in P.factors:
        v = eval_rational(f, x)
        if v == 0:
            return None
        total = total + log_abs(v, precision).scale(e)
    return total


def _logderiv_sup(P: WeightedProduct, lo: Fraction, hi: Fraction) -> Optional[Fraction]:
    """Upper bound of |L'| on [lo, hi], or None if some factor may vanish there."""
    total = Fraction(0)
    for f, e in P.factors:
        flo, fhi = _ihorner(f.coeffs, lo, hi)
        if flo <= 0 <= fhi:
            return None
        dlo, dhi = _ihorner(derivative(f).coeffs, lo, hi)
        fmin = min(abs(flo), abs(fhi))
        total += e * max(abs(dlo), abs(dhi)) / fmin
    return total


@dataclass
class Candidate:
    """One maximiser candidate of the log-sum and its value enclosure.

    ``kind`` is ``"endpoint"``, ``"point"`` (an exact rational critical point)
    or ``"interval"`` (an isolating interval of an irrational critical point).
    ``value`` is None where the log-sum is -infinity.
    """

    kind: str
    lo: Fraction
    hi: Fraction
    value: Optional[RealEnclosure]

    def to_json(self) -> dict:
        point = [str(self.lo)] if self.lo == self.hi else [str(self.lo), str(self.hi)]
        return {"kind": self.kind, "point": point,
                "logsum": None if self.value is None else [str(self.value.lo), str(self.value.hi)]}


def log_supnorm_weighted_evidence(P: WeightedProduct, interval: RatInterval,
                                  tol: Fraction = DEFAULT_LOG_TOL,
                                  precision: int = DEFAULT_PRECISION,
                                  max_steps: Optional[int] = None):
    """Max of the log-sum over I, with one :class:`Candidate` per critical point.

    Raises :class:`Undecided` when an isolating interval cannot be separated
    from the roots of the factors within ``max_steps`` bisections.
    """
    if max_steps is None:
        max_steps = 2 * precision
    if not P.factors:
        zero = RealEnclosure.exact(0, precision)
        return zero, [Candidate("endpoint", interval.a, interval.a, zero)]
    cands: list[Candidate] = []
    for x in sorted({interval.a, interval.b}):
        cands.append(Candidate("endpoint", x, x, log_sum_at(P, x, precision)))
    s = _critical_core(P)
    pending = []
    if s.degree > 0 and interval.a < interval.b:
        crit = isolate_roots(s, interval, width=interval.length / 64)
        for l, r in crit.intervals:
            if l == r:
                if l not in (interval.a, interval.b):
                    cands.append(Candidate("point", l, l, log_sum_at(P, l, precision)))
            else:
                pending.append((l, r))

    def best_lo():
        vals = [c.value.lo for c in cands if c.value is not None]
        return max(vals) if vals else None

    for l, r in pending:
        for _ in range(max_steps):
            l, r = _collapse_rational(s, l, r)
            if l == r:
                cands.append(Candidate("point", l, l, log_sum_at(P, l, precision)))
                break
            bound = _logderiv_sup(P, l, r)
            if bound is not None:
                vl, vr = log_sum_at(P, l, precision), log_sum_at(P, r, precision)
                err = bound * (r - l) / 2
                enc = RealEnclosure(max(vl.lo, vr.lo), max(vl.hi, vr.hi) + err, precision)
                floor = best_lo()
                if err <= tol or (floor is not None and enc.hi < floor):
                    cands.append(Candidate("interval", l, r, enc))
                    break
            l, r = refine_root(s, l, r)
        else:
            raise Undecided(f"could not separate critical point in [{l}, {r}] "
                            f"from factor roots at {precision} bits")
    finite = [c.value for c in cands if c.value is not None]
    if not finite:
        raise ValueError("norm is -infinity / degenerate: every candidate hits a factor root")
    return enclosure_max(finite), cands


def log_supnorm_weighted(P: WeightedProduct, interval: RatInterval,
                         tol: Fraction = DEFAULT_LOG_TOL,
                         precision: int = DEFAULT_PRECISION) -> RealEnclosure:
    """Enclosure of max over I of sum e_i log|f_i(x)|."""
    return log_supnorm_weighted_evidence(P, interval, tol, precision)[0]
