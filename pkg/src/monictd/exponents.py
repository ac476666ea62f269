"""Exponent optimisation: LP over sample points plus a Remez-style exchange.

Given candidate factors f_1..f_N and an obstruction q, find exponents
alpha_i >= 0 with sum 1 that minimise

    m = max_x sum_i (alpha_i / deg f_i) log|f_i(x)|,

subject to the conditions that force P = prod f_i^(alpha_i/deg f_i) to meet
the obstruction value at every root of q.  The LP is solved in floating
point by HiGHS; the returned exponents are exact rationals and the value m is
re-evaluated with enclosures.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import linprog

from .enclosure import DEFAULT_PRECISION, RealEnclosure, enclosure_max, log_abs
from .poly import IntPolynomial, derivative, eval_rational, resultant
from .realanalysis import (CriticalPointSet, RatInterval, WeightedProduct, _ihorner,
                           critical_points_weighted, isolate_roots, refine_root,
                           sturm_count)

log = logging.getLogger(__name__)

G_EPSILON = Fraction(1, 10 ** 6)
G_RADIUS = Fraction(1, 10 ** 9)
LP_PRECISION = 128
EQ_RESIDUAL_TOL = 1e-7


class LPInfeasible(RuntimeError):
    def __init__(self, message: str, round_index: Optional[int] = None):
        super().__init__(message if round_index is None else f"round {round_index}: {message}")
        self.round_index = round_index


def g_function(q: IntPolynomial, x, epsilon=G_EPSILON, radius=G_RADIUS) -> Fraction:
    """0 within ``radius`` of a real root of q, else ``epsilon``."""
    epsilon, radius, x = Fraction(epsilon), Fraction(radius), Fraction(x)
    if epsilon <= 0 or radius < 0:
        raise ValueError("g needs epsilon > 0 and radius >= 0")
    if radius == 0:
        return Fraction(0) if q.sign_at(x) == 0 else epsilon
    return Fraction(0) if sturm_count(q, RatInterval(x - radius, x + radius)) else epsilon


# -- roots of q -----------------------------------------------------------------

@dataclass(frozen=True)
class RootBox:
    """A real root of q: exact when lo == hi, else an isolating interval."""

    lo: Fraction
    hi: Fraction

    @property
    def exact(self) -> bool:
        return self.lo == self.hi


def _cauchy_interval(q: IntPolynomial) -> RatInterval:
    bound = 1 + Fraction(max(abs(c) for c in q.coeffs[:-1]), abs(q.lc))
    return RatInterval(-bound, bound)


def roots_of(q: IntPolynomial, precision: int = LP_PRECISION,
             interval: Optional[RatInterval] = None) -> list[RootBox]:
    """All real roots of q refined to width 2**-precision; q must have distinct real roots."""
    if q.is_zero or q.degree < 1:
        raise ValueError("q must be nonconstant")
    dom = interval or _cauchy_interval(q)
    crit = isolate_roots(q, dom, width=Fraction(1, 2 ** 8))
    if len(crit) != q.degree:
        raise ValueError(f"q must have {q.degree} distinct real roots in {dom.to_json()}, "
                         f"found {len(crit)}")
    from .poly import squarefree_part
    s = squarefree_part(q)
    target = Fraction(1, 2 ** precision)
    boxes = []
    for l, r in crit.intervals:
        while r - l > target:
            l, r = refine_root(s, l, r)
        boxes.append(RootBox(l, r))
    return boxes


def _value_box(f: IntPolynomial, box: RootBox) -> tuple[Fraction, Fraction]:
    if box.exact:
        v = eval_rational(f, box.lo)
        return v, v
    return _ihorner(f.coeffs, box.lo, box.hi)


def _log_abs_box(f: IntPolynomial, box: RootBox, precision: int) -> RealEnclosure:
    lo, hi = _value_box(f, box)
    if lo <= 0 <= hi:
        raise ValueError(f"factor {f} vanishes (or cannot be separated from 0) at a root of q")
    a, b = sorted((abs(lo), abs(hi)))
    return RealEnclosure(log_abs(a, precision).lo, log_abs(b, precision).hi, precision)


def _logderiv_box(f: IntPolynomial, box: RootBox) -> tuple[Fraction, Fraction]:
    """Enclosure of f'/f at a root box."""
    flo, fhi = _value_box(f, box)
    dlo, dhi = _value_box(derivative(f), box)
    if flo <= 0 <= fhi:
        raise ValueError(f"factor {f} vanishes at a root of q")
    quots = [d / v for d in (dlo, dhi) for v in (flo, fhi)]
    return min(quots), max(quots)


# -- log lattice ----------------------------------------------------------------------

@dataclass
class LogLatticeDecomposition:
    """f-hat_i^(s) = (1/deg f_i) log|f_i(beta_s)| written over basis values b_j.

    ``coords[s][j][i]`` is the coordinate of f-hat_i^(s) on b_j.  b_1 is
    -(1/d) log a_d; every further b_j is a value that was not matched to b_1.
    """

    q: IntPolynomial
    roots: list[RootBox]
    basis: list[RealEnclosure]
    coords: list[list[list[Fraction]]]
    fhat: list[list[RealEnclosure]]
    resultants: list[int]

    def reproduce(self, s: int, i: int) -> RealEnclosure:
        acc = RealEnclosure.exact(0, self.basis[0].precision)
        for j, b in enumerate(self.basis):
            c = self.coords[s][j][i]
            if c:
                acc = acc + b.scale(c)
        return acc


def _power_of(value: int, base: int) -> Optional[int]:
    """k with base**k == value, for value >= 1, or None."""
    if value < 1:
        return None
    if base < 2:
        return 0 if value == 1 else None
    k = 0
    while value % base == 0:
        value //= base
        k += 1
    return k if value == 1 else None


def log_lattice_decompose(factors: Sequence[IntPolynomial], q: IntPolynomial,
                          precision: int = LP_PRECISION,
                          interval: Optional[RatInterval] = None) -> LogLatticeDecomposition:
    """Express each f-hat over b_1 via the exact resultant test, else a fresh basis value."""
    a_d, d = abs(q.lc), q.degree
    roots = roots_of(q, precision, interval)
    b1 = log_abs(a_d, precision).scale(Fraction(-1, d))
    basis = [b1]
    fhat = [[_log_abs_box(f, box, precision).scale(Fraction(1, f.degree)) for f in factors]
            for box in roots]
    res = [resultant(f, q) for f in factors]
    # column layout: coords[s][j][i]
    cols: list[list[dict[int, Fraction]]] = [[{} for _ in factors] for _ in roots]
    for i, f in enumerate(factors):
        r = _power_of(abs(res[i]), a_d)
        c = None
        if r is not None:
            # sum_s log|f(beta_s)| = (r - deg f) log a_d, spread evenly over the roots
            c = Fraction(f.degree - r, f.degree)
            for s in range(d):
                if c == 0:
                    ok = fhat[s][i].contains(0)
                else:
                    target = b1.scale(c)
                    ok = not (fhat[s][i].certainly_lt(target) or fhat[s][i].certainly_gt(target))
                if not ok:
                    c = None
                    break
        if c is not None:
            for s in range(d):
                cols[s][i][0] = c
        else:
            log.info("factor %s gets fresh log-lattice basis values", f)
            for s in range(d):
                basis.append(fhat[s][i])
                cols[s][i][len(basis) - 1] = Fraction(1)
    coords = [[[cols[s][i].get(j, Fraction(0)) for i in range(len(factors))]
               for j in range(len(basis))] for s in range(d)]
    return LogLatticeDecomposition(q, roots, basis, coords, fhat, res)


# -- LP --------------------------------------------------------------------------

@dataclass
class LPProblem:
    """min m subject to

    (i)   sum_i (alpha_i/deg f_i) log|f_i(x)| - m <= -g(x)   for x in points
    (ii)  sum_i alpha_i = 1
    (iii) sum_i (alpha_i/deg f_i) f_i'(beta)/f_i(beta) = 0   for interior roots beta of q
    (h)   sum_i c_{j,i} alpha_i = [j = 1]                     for each root and basis value
    (iv)  alpha_i >= 0
    """

    factors: list[IntPolynomial]
    interval: RatInterval
    points: list[Fraction]
    dropped: list[Fraction]
    ineq: list[list[RealEnclosure]]
    ineq_rhs: list[Fraction]
    eq: list[list[RealEnclosure]]
    eq_rhs: list[Fraction]
    eq_labels: list[str]
    precision: int = LP_PRECISION

    @property
    def n(self) -> int:
        return len(self.factors)


def chebyshev_points(interval: RatInterval, count: int = 64) -> list[Fraction]:
    mid, half = (interval.a + interval.b) / 2, (interval.b - interval.a) / 2
    pts = []
    for k in range(count):
        c = Fraction(math.cos((2 * k + 1) * math.pi / (2 * count))).limit_denominator(2 ** 40)
        pts.append(mid + half * c)
    return pts


def default_points(interval: RatInterval, q: IntPolynomial, count: int = 64) -> list[Fraction]:
    """Chebyshev points plus both endpoints plus the (midpoints of the) roots of q in I."""
    pts = set(chebyshev_points(interval, count)) | {interval.a, interval.b}
    for l, r in isolate_roots(q, interval, width=Fraction(1, 2 ** 64)).intervals:
        pts.add((l + r) / 2)
    return sorted(pts)


def assemble_lp(factors: Sequence[IntPolynomial], points: Sequence, q: IntPolynomial,
                interval: RatInterval, g_epsilon=G_EPSILON, g_radius=G_RADIUS,
                precision: int = LP_PRECISION) -> LPProblem:
    factors = list(factors)
    if not factors:
        raise ValueError("need at least one factor")
    pts = sorted({Fraction(x) for x in points})
    if not pts:
        raise ValueError("sample set X is empty")
    n = len(factors)
    ineq, rhs, used, dropped = [], [], [], []
    for x in pts:
        vals = [eval_rational(f, x) for f in factors]
        if any(v == 0 for v in vals):
            log.warning("dropping sample point %s: a factor vanishes there", x)
            dropped.append(x)
            continue
        ineq.append([log_abs(v, precision).scale(Fraction(1, f.degree))
                     for v, f in zip(vals, factors)])
        rhs.append(-g_function(q, x, g_epsilon, g_radius))
        used.append(x)
    if not used:
        raise ValueError("every sample point hits a factor root")
    one = RealEnclosure.exact(1, precision)
    eq = [[one] * n]
    eq_rhs = [Fraction(1)]
    labels = ["sum"]
    dec = log_lattice_decompose(factors, q, precision)
    for s, box in enumerate(dec.roots):
        interior = interval.a < box.lo and box.hi < interval.b
        if interior:
            row = []
            for f in factors:
                lo, hi = _logderiv_box(f, box)
                row.append(RealEnclosure(lo / f.degree, hi / f.degree, precision))
            eq.append(row)
            eq_rhs.append(Fraction(0))
            labels.append(f"stationary[{s}]")
        for j in range(len(dec.basis)):
            cs = dec.coords[s][j]
            if not any(cs):
                continue
            eq.append([RealEnclosure.exact(c, precision) for c in cs])
            eq_rhs.append(Fraction(int(j == 0)))
            labels.append(f"lattice[{s},{j}]")
    return LPProblem(factors, interval, used, dropped, ineq, rhs, eq, eq_rhs, labels, precision)


@dataclass
class ExponentSolution:
    alpha: tuple[Fraction, ...]
    m: RealEnclosure
    history: list[tuple[int, float]] = field(default_factory=list)
    converged: bool = True
    residual: float = 0.0
    points: list[Fraction] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"alpha": [str(a) for a in self.alpha],
                "alpha_decimal": [float(a) for a in self.alpha],
                "m": self.m.to_json(), "converged": self.converged,
                "history": [{"round": k, "m": m} for k, m in self.history],
                "eq_residual": self.residual, "points": len(self.points)}


def _mid(e: RealEnclosure) -> float:
    return float(e.mid)


def _exact_m(lp: LPProblem, alpha: Sequence[Fraction]) -> RealEnclosure:
    """Smallest m feasible for (i) at the given alpha, as an enclosure."""
    vals = []
    for row, r in zip(lp.ineq, lp.ineq_rhs):
        acc = RealEnclosure.exact(-r, lp.precision)
        for a, c in zip(alpha, row):
            if a:
                acc = acc + c.scale(a)
        vals.append(acc)
    return enclosure_max(vals)


def solve_lp(lp: LPProblem) -> ExponentSolution:
    n = lp.n
    if not lp.points:
        raise ValueError("sample set X is empty")
    c = np.zeros(n + 1)
    c[-1] = 1.0
    A_ub = np.array([[_mid(e) for e in row] + [-1.0] for row in lp.ineq])
    b_ub = np.array([float(r) for r in lp.ineq_rhs])
    A_eq = np.array([[_mid(e) for e in row] + [0.0] for row in lp.eq])
    b_eq = np.array([float(r) for r in lp.eq_rhs])
    bounds = [(0, None)] * n + [(None, None)]
    res = linprog(c, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=b_eq, bounds=bounds, method="highs")
    if res.status == 2:
        raise LPInfeasible(f"LP infeasible (HiGHS phase 1): {res.message}; "
                           f"equality rows {lp.eq_labels}")
    if res.status != 0:
        raise RuntimeError(f"LP solver failed: {res.message}")
    raw = [max(Fraction(float(v)), Fraction(0)) for v in res.x[:n]]
    total = sum(raw)
    if total == 0:
        raise LPInfeasible("LP returned the zero exponent vector")
    alpha = tuple(a / total for a in raw)
    resid = 0.0
    for row, r in zip(lp.eq, lp.eq_rhs):
        v = sum(a * e.mid for a, e in zip(alpha, row)) - r
        resid = max(resid, abs(float(v)))
    if resid > EQ_RESIDUAL_TOL:
        log.warning("equality residual %.3g after renormalisation", resid)
    return ExponentSolution(alpha, _exact_m(lp, alpha), residual=resid, points=list(lp.points))


def weighted_product_from_alpha(factors: Sequence[IntPolynomial],
                                alpha: Sequence[Fraction]) -> WeightedProduct:
    """Integer exponents proportional to alpha_i / deg f_i (zero weights dropped)."""
    w = [Fraction(a) / f.degree for a, f in zip(alpha, factors)]
    den = 1
    for x in w:
        if x:
            den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in w]
    g = 0
    for e in ints:
        g = math.gcd(g, e)
    return WeightedProduct(tuple((f, e // g) for f, e in zip(factors, ints) if e))


def remez_iterate(interval: RatInterval, factors: Sequence[IntPolynomial], q: IntPolynomial,
                  eps=Fraction(1, 10 ** 9), points_init: Optional[Sequence] = None,
                  rounds_max: int = 50, g_epsilon=G_EPSILON, g_radius=G_RADIUS,
                  precision: int = LP_PRECISION) -> ExponentSolution:
    """Alternate LP solves with adding the extrema of the current product to X."""
    eps = Fraction(eps)
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    factors = list(factors)
    X = set(Fraction(x) for x in points_init) if points_init is not None else set(default_points(interval, q))
    history: list[tuple[int, float]] = []
    prev: Optional[Fraction] = None
    sol = None
    for k in range(1, rounds_max + 1):
        lp = assemble_lp(factors, X, q, interval, g_epsilon, g_radius, precision)
        try:
            sol = solve_lp(lp)
        except LPInfeasible as exc:
            raise LPInfeasible(str(exc), k) from exc
        mk = sol.m.mid
        history.append((k, float(mk)))
        if prev is not None and abs(mk - prev) < eps:
            sol.history, sol.converged = history, True
            return sol
        prev = mk
        P = weighted_product_from_alpha(factors, sol.alpha)
        crit = critical_points_weighted(P, interval, width=Fraction(1, 2 ** 40))
        X |= set(crit.midpoints())
    sol.history, sol.converged = history, False
    return sol


def rationalize_exponents(alpha: Sequence, degrees: Sequence[int], denom_limit: int,
                          drop_threshold: float = 1e-6) -> tuple[int, ...]:
    """Integer exponents e_i from best rational approximations of alpha.

    Each alpha_i is replaced by its best approximation with denominator at
    most ``denom_limit``, the vector is renormalised to sum 1, and the
    denominators of alpha_i / deg f_i are cleared (then divided by the gcd).
    A zero entry means the factor was dropped.
    """
    if denom_limit < 1:
        raise ValueError("denom_limit must be >= 1")
    if len(alpha) != len(degrees):
        raise ValueError("alpha and degrees differ in length")
    vals = []
    for a in alpha:
        a = a.mid if isinstance(a, RealEnclosure) else a
        vals.append(Fraction(a) if not isinstance(a, float) else Fraction(a))
    approx = [max(Fraction(0), v.limit_denominator(denom_limit)) for v in vals]
    for v, a in zip(vals, approx):
        if a == 0 and v > drop_threshold:
            log.warning("exponent %s rounded to 0; factor dropped", float(v))
    total = sum(approx)
    if total == 0:
        raise ValueError("every exponent rounded to zero")
    if denom_limit == 1 and len(alpha) > 1:
        raise ValueError("denom_limit = 1 snaps every alpha to 0 or 1; only valid for one factor")
    approx = [a / total for a in approx]
    w = [a / deg for a, deg in zip(approx, degrees)]
    den = 1
    for x in w:
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in w]
    g = 0
    for e in ints:
        g = math.gcd(g, e)
    return tuple(e // g for e in ints)
