"""Rigorous real enclosures with exact rational endpoints.

Every enclosure is a closed interval ``[lo, hi]`` of Python ``Fraction``s that
is guaranteed to contain the real number it stands for.  Sums and integer
multiples are carried out exactly on the endpoints; transcendental parts
(logarithms) are delegated to mpmath's low-level ``libmp`` routines with
directed rounding, which carry no global context and are safe to call from
any thread.  Square roots and integer roots use ``math.isqrt`` and an integer
Newton iteration, so perfect powers come out exact.
"""

from __future__ import annotations

import decimal
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from mpmath import libmp

DEFAULT_PRECISION = 256
MAX_PRECISION = 16384


class Undecided(Exception):
    """An enclosure comparison stayed ambiguous up to the precision cap."""


@dataclass(frozen=True)
class RealEnclosure:
    lo: Fraction
    hi: Fraction
    precision: int = DEFAULT_PRECISION

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty enclosure [{self.lo}, {self.hi}]")

    @classmethod
    def exact(cls, value, precision: int = DEFAULT_PRECISION) -> "RealEnclosure":
        v = Fraction(value)
        return cls(v, v, precision)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    def contains(self, value) -> bool:
        return self.lo <= Fraction(value) <= self.hi

    def __add__(self, other):
        if isinstance(other, RealEnclosure):
            return RealEnclosure(self.lo + other.lo, self.hi + other.hi,
                                 min(self.precision, other.precision))
        v = Fraction(other)
        return RealEnclosure(self.lo + v, self.hi + v, self.precision)

    __radd__ = __add__

    def __neg__(self):
        return RealEnclosure(-self.hi, -self.lo, self.precision)

    def __sub__(self, other):
        return self + (-other if isinstance(other, RealEnclosure) else -Fraction(other))

    def scale(self, factor) -> "RealEnclosure":
        """Multiply by an exact rational."""
        f = Fraction(factor)
        a, b = self.lo * f, self.hi * f
        return RealEnclosure(min(a, b), max(a, b), self.precision)

    def __mul__(self, other):
        if not isinstance(other, RealEnclosure):
            return self.scale(other)
        prods = [self.lo * other.lo, self.lo * other.hi,
                 self.hi * other.lo, self.hi * other.hi]
        return RealEnclosure(min(prods), max(prods),
                             min(self.precision, other.precision))

    __rmul__ = __mul__

    def certainly_lt(self, other) -> bool:
        return self.hi < _lo(other)

    def certainly_le(self, other) -> bool:
        return self.hi <= _lo(other)

    def certainly_gt(self, other) -> bool:
        return self.lo > _hi(other)

    def decimal(self, digits: int = 30) -> str:
        return to_decimal(self.mid, digits)

    def to_json(self) -> dict:
        return {"lo": str(self.lo), "hi": str(self.hi),
                "decimal": self.decimal(), "precision_bits": self.precision}

    @classmethod
    def from_json(cls, data: dict) -> "RealEnclosure":
        return cls(Fraction(data["lo"]), Fraction(data["hi"]),
                   int(data.get("precision_bits", DEFAULT_PRECISION)))


def _lo(x):
    return x.lo if isinstance(x, RealEnclosure) else Fraction(x)


def _hi(x):
    return x.hi if isinstance(x, RealEnclosure) else Fraction(x)


def hull(encs) -> RealEnclosure:
    encs = list(encs)
    return RealEnclosure(min(e.lo for e in encs), max(e.hi for e in encs),
                         min(e.precision for e in encs))


def enclosure_max(encs) -> RealEnclosure:
    """Enclosure of the maximum of the enclosed reals."""
    encs = list(encs)
    if not encs:
        raise ValueError("max of no enclosures")
    return RealEnclosure(max(e.lo for e in encs), max(e.hi for e in encs),
                         min(e.precision for e in encs))


def to_decimal(value: Fraction, digits: int = 30) -> str:
    value = Fraction(value)
    ctx = decimal.Context(prec=digits)
    return str(ctx.divide(decimal.Decimal(value.numerator),
                          decimal.Decimal(value.denominator)))


def _mpf_to_fraction(x) -> Fraction:
    sign, man, exp, _ = x
    if not man:
        return Fraction(0)
    v = Fraction(int(man)) * (Fraction(2) ** exp)
    return -v if sign else v


def _log_int(n: int, prec: int) -> tuple[Fraction, Fraction]:
    if n == 1:
        return Fraction(0), Fraction(0)
    x = libmp.from_int(n)
    return (_mpf_to_fraction(libmp.mpf_log(x, prec, "f")),
            _mpf_to_fraction(libmp.mpf_log(x, prec, "c")))


def log_abs(value, precision: int = DEFAULT_PRECISION) -> RealEnclosure:
    """Enclosure of ``log|value|`` for a nonzero rational."""
    v = abs(Fraction(value))
    if v == 0:
        raise ValueError("log of zero")
    nlo, nhi = _log_int(v.numerator, precision)
    dlo, dhi = _log_int(v.denominator, precision)
    return RealEnclosure(nlo - dhi, nhi - dlo, precision)


def sqrt_enclosure(value, precision: int = DEFAULT_PRECISION) -> RealEnclosure:
    """Enclosure of the square root of a nonnegative rational; exact on squares."""
    v = Fraction(value)
    if v < 0:
        raise ValueError("sqrt of negative number")
    p, q = v.numerator, v.denominator
    rp, rq = math.isqrt(p), math.isqrt(q)
    if rp * rp == p and rq * rq == q:
        return RealEnclosure.exact(Fraction(rp, rq), precision)
    # sqrt(p/q) = sqrt(p*q)/q, scaled by 2^precision
    scale = 1 << precision
    r = math.isqrt(p * q * scale * scale)
    lo = Fraction(r, q * scale)
    return RealEnclosure(lo, lo + Fraction(1, q * scale), precision)


def iroot(n: int, k: int) -> int:
    """Floor of the k-th root of a nonnegative integer."""
    if n < 0 or k < 1:
        raise ValueError("iroot needs n >= 0 and k >= 1")
    if n < 2 or k == 1:
        return n
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x ** k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def inverse_root_enclosure(a: int, d: int, precision: int = DEFAULT_PRECISION) -> RealEnclosure:
    """Enclosure of ``a**(-1/d)`` for integers a >= 1, d >= 1."""
    r = iroot(a, d)
    if r ** d == a:
        return RealEnclosure.exact(Fraction(1, r), precision)
    # a^(-1/d) = (2^(precision*d) / a)^(1/d) / 2^precision
    scale = 1 << (precision * d)
    lo_num = iroot(scale // a, d)
    return RealEnclosure(Fraction(lo_num, 1 << precision),
                         Fraction(lo_num + 1, 1 << precision), precision)


def escalate(check: Callable[[int], Optional[bool]],
             start: int = DEFAULT_PRECISION, cap: int = MAX_PRECISION) -> Optional[bool]:
    """Run ``check(bits)`` with doubling precision until it returns a bool.

    Returns None when the answer is still undecided at ``cap`` bits.
    """
    bits = start
    while True:
        result = check(bits)
        if result is not None:
            return result
        if bits >= cap:
            return None
        bits = min(2 * bits, cap)
