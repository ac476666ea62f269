"""Dense integer polynomials with exact arithmetic.

Coefficients are stored in ascending order: ``coeffs[k]`` multiplies ``x**k``.
The zero polynomial is the empty tuple and has degree ``None``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction]

# Below this degree the Sylvester determinant is used for resultants.
SYLVESTER_MAX_DEGREE = 8


@dataclass(frozen=True)
class IntPolynomial:
    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = [int(v) for v in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    # construction -----------------------------------------------------------

    @classmethod
    def x(cls) -> "IntPolynomial":
        return cls((0, 1))

    @classmethod
    def constant(cls, c: int) -> "IntPolynomial":
        return cls((c,))

    @classmethod
    def from_json(cls, data) -> "IntPolynomial":
        if isinstance(data, str):
            data = json.loads(data)
        if isinstance(data, dict):
            data = data["coeffs"]
        return cls(tuple(int(v) for v in data))

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    # basic properties ------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self):
        """Degree, or None for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def lc(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def content(self) -> int:
        return reduce(math.gcd, self.coeffs, 0)

    def primitive(self) -> "IntPolynomial":
        """Divide by the content, normalising the leading coefficient positive."""
        if self.is_zero:
            return self
        g = self.content
        if self.lc < 0:
            g = -g
        return IntPolynomial(tuple(c // g for c in self.coeffs))

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    # arithmetic ------------------------------------------------------------

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPolynomial(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "IntPolynomial":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "IntPolynomial":
        return _as_poly(other) - self

    def __mul__(self, other) -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial(tuple(c * other for c in self.coeffs))
        other = _as_poly(other)
        if self.is_zero or other.is_zero:
            return ZERO
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "IntPolynomial":
        if e < 0:
            raise ValueError("negative power")
        result, base = ONE, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def shift(self, k: int) -> "IntPolynomial":
        """Multiply by x**k."""
        if self.is_zero:
            return self
        return IntPolynomial((0,) * k + self.coeffs)

    def exact_div(self, other: "IntPolynomial") -> "IntPolynomial":
        """Quotient of an exact division over the integers."""
        q, r = divmod_rational(self, other)
        if any(c for c in r) or any(v.denominator != 1 for v in q):
            raise ValueError("division is not exact over the integers")
        return IntPolynomial(tuple(int(v) for v in q))

    # evaluation ------------------------------------------------------------

    def __call__(self, x: Number) -> Number:
        return eval_rational(self, x)

    def sign_at(self, x: Fraction) -> int:
        """Sign of p(x) using homogenised integer arithmetic."""
        x = Fraction(x)
        u, v = x.numerator, x.denominator
        acc = 0
        vp = 1
        for c in reversed(self.coeffs):
            acc = acc * u + c * vp
            vp *= v
        return (acc > 0) - (acc < 0)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = str(a)
            else:
                mon = "x" if k == 1 else f"x^{k}"
                body = mon if a == 1 else f"{a}*{mon}"
            terms.append((sign, body))
        s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            s += f" {sign} {body}"
        return s


ZERO = IntPolynomial(())
ONE = IntPolynomial((1,))
X = IntPolynomial((0, 1))


def _as_poly(p) -> IntPolynomial:
    if isinstance(p, IntPolynomial):
        return p
    if isinstance(p, int):
        return IntPolynomial((p,))
    raise TypeError(f"cannot use {type(p).__name__} as IntPolynomial")


def poly(*coeffs_descending: int) -> IntPolynomial:
    """Build from coefficients written highest degree first, as on paper."""
    return IntPolynomial(tuple(reversed(coeffs_descending)))


def eval_rational(p: IntPolynomial, x: Number) -> Fraction:
    """Exact Horner evaluation at a rational point."""
    x = Fraction(x)
    # homogenised Horner keeps everything in integers until one final division
    u, v = x.numerator, x.denominator
    acc = 0
    vp = 1
    for c in reversed(p.coeffs):
        acc = acc * u + c * vp
        vp *= v
    if not p.coeffs:
        return Fraction(0)
    return Fraction(acc, v ** (len(p.coeffs) - 1))


def derivative(p: IntPolynomial) -> IntPolynomial:
    return IntPolynomial(tuple(k * c for k, c in enumerate(p.coeffs))[1:])


def divmod_rational(a: IntPolynomial, b: IntPolynomial):
    """Polynomial long division over Q; returns (quotient, remainder) as
    ascending lists of Fractions."""
    if b.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(c) for c in a.coeffs]
    db = b.degree
    lc = b.lc
    if len(r) - 1 < db:
        return [], r
    q = [Fraction(0)] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db] / lc
        q[k] = c
        if c:
            for j, bc in enumerate(b.coeffs):
                r[k + j] -= c * bc
    r = r[:db]
    while r and r[-1] == 0:
        r.pop()
    return q, r


def pseudo_remainder(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """prem(a, b) = lc(b)**(deg a - deg b + 1) * a mod b, in Z[x]."""
    if b.is_zero:
        raise ZeroDivisionError("pseudo-remainder by zero polynomial")
    r = list(a.coeffs)
    db = b.degree
    if a.is_zero or a.degree < db:
        return a
    lc = b.lc
    # one elimination step per degree from deg a down to deg b
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db]
        r = [lc * v for v in r]
        if c:
            for j, bc in enumerate(b.coeffs):
                r[k + j] -= c * bc
        r.pop()
    return IntPolynomial(tuple(r))


def gcd(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Primitive gcd in Z[x] via the primitive PRS, positive leading coefficient."""
    if a.is_zero:
        return b.primitive()
    if b.is_zero:
        return a.primitive()
    ca, cb = a.content, b.content
    c = math.gcd(ca, cb)
    a, b = a.primitive(), b.primitive()
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero and b.degree > 0:
        r = pseudo_remainder(a, b)
        a, b = b, (r.primitive() if not r.is_zero else r)
    if b.is_zero:
        g = a.primitive()
    else:
        g = ONE
    return g * c if c != 1 else g


def squarefree_part(p: IntPolynomial) -> IntPolynomial:
    """p / gcd(p, p'), made primitive with positive leading coefficient."""
    if p.is_zero:
        raise ValueError("squarefree part of the zero polynomial")
    if p.degree == 0:
        return ONE
    g = gcd(p, derivative(p)).primitive()
    return p.primitive().exact_div(g).primitive() if g.degree else p.primitive()


def bareiss_det(m: Sequence[Sequence[int]]) -> int:
    """Fraction-free determinant of an integer matrix."""
    a = [list(row) for row in m]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]


def sylvester_matrix(f: IntPolynomial, g: IntPolynomial) -> list[list[int]]:
    m, n = f.degree, g.degree
    fd = list(reversed(f.coeffs))
    gd = list(reversed(g.coeffs))
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + fd + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gd + [0] * (size - n - 1 - i))
    return rows


def resultant_sylvester(f: IntPolynomial, g: IntPolynomial) -> int:
    _check_nonzero(f, g)
    if f.degree == 0 and g.degree == 0:
        return 1
    if f.degree == 0:
        return f.lc ** g.degree
    if g.degree == 0:
        return g.lc ** f.degree
    return bareiss_det(sylvester_matrix(f, g))


def resultant_subresultant(f: IntPolynomial, g: IntPolynomial) -> int:
    """Resultant by the subresultant PRS (Collins/Brown)."""
    _check_nonzero(f, g)
    a, b = f, g
    if a.degree == 0:
        return a.lc ** b.degree
    if b.degree == 0:
        return b.lc ** a.degree
    ca, cb = a.content, b.content
    a = IntPolynomial(tuple(c // ca for c in a.coeffs))
    b = IntPolynomial(tuple(c // cb for c in b.coeffs))
    t = ca ** b.degree * cb ** a.degree
    s = 1
    if a.degree < b.degree:
        a, b = b, a
        if a.degree % 2 and b.degree % 2:
            s = -s
    g_, h = Fraction(1), Fraction(1)
    while True:
        delta = a.degree - b.degree
        if a.degree % 2 and b.degree % 2:
            s = -s
        r = pseudo_remainder(a, b)
        a = b
        if r.is_zero:
            return 0
        div = g_ * h ** delta
        b = IntPolynomial(tuple(_exact_int(Fraction(c) / div) for c in r.coeffs))
        g_ = Fraction(a.lc)
        h = h ** (1 - delta) * g_ ** delta
        if b.degree == 0:
            da = a.degree
            h = h ** (1 - da) * Fraction(b.lc) ** da
            return s * t * _exact_int(h)


def _exact_int(v: Fraction) -> int:
    if v.denominator != 1:
        raise ArithmeticError(f"subresultant step produced non-integer {v}")
    return v.numerator


def _check_nonzero(f, g):
    if f.is_zero or g.is_zero:
        raise ValueError("resultant of the zero polynomial is undefined here")


def resultant(f: IntPolynomial, g: IntPolynomial) -> int:
    _check_nonzero(f, g)
    if max(f.degree, g.degree) <= SYLVESTER_MAX_DEGREE:
        return resultant_sylvester(f, g)
    return resultant_subresultant(f, g)


def chebyshev_T(n: int) -> IntPolynomial:
    if n < 0:
        raise ValueError("Chebyshev index must be nonnegative")
    prev, cur = ONE, X
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, X * cur * 2 - prev
    return cur


def moment(a: Number, b: Number, k: int) -> Fraction:
    """Exact integral of x**k over [a, b]."""
    a, b = Fraction(a), Fraction(b)
    if a > b:
        raise ValueError(f"moment needs a <= b, got [{a}, {b}]")
    if k < 0:
        raise ValueError("moment order must be nonnegative")
    return (b ** (k + 1) - a ** (k + 1)) / (k + 1)


def product(polys: Iterable[IntPolynomial]) -> IntPolynomial:
    return reduce(lambda u, v: u * v, polys, ONE)


def rational_roots(p: IntPolynomial) -> list[Fraction]:
    """All rational roots of p (rational root theorem), sorted, without
    multiplicity."""
    if p.is_zero:
        raise ValueError("zero polynomial")
    roots = set()
    c = list(p.coeffs)
    if c[0] == 0:
        roots.add(Fraction(0))
        k = next(i for i, v in enumerate(c) if v)
        c = c[k:]
    if len(c) == 1:
        return sorted(roots)
    a0, an = abs(c[0]), abs(c[-1])
    q = IntPolynomial(tuple(c))
    for num in _divisors(a0):
        for den in _divisors(an):
            if math.gcd(num, den) != 1:
                continue
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if q.sign_at(cand) == 0:
                    roots.add(cand)
    return sorted(roots)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def linear_factor(r: Fraction) -> IntPolynomial:
    """Primitive integer polynomial den*x - num vanishing at r."""
    r = Fraction(r)
    return IntPolynomial((-r.numerator, r.denominator))
