"""search -> optimize -> rationalize -> certify for an interval [0, b] and q = nx - 1."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .certify import CERTIFIED, Certificate, verify_attaining
from .exponents import ExponentSolution, remez_iterate, rationalize_exponents
from .lattice import SearchResult, factor_search
from .poly import IntPolynomial, poly
from .realanalysis import RatInterval, WeightedProduct

log = logging.getLogger(__name__)

DENOM_LIMITS = (10, 100, 1000, 10 ** 4, 10 ** 6)


@dataclass
class PipelineConfig:
    k_init: int = 20
    rounds_max: int = 3
    eps: Fraction = Fraction(1, 10 ** 9)
    remez_rounds: int = 50
    denom_limits: Sequence[int] = DENOM_LIMITS


@dataclass
class PipelineResult:
    factors: list[IntPolynomial]
    search: Optional[SearchResult]
    solution: ExponentSolution
    product: Optional[WeightedProduct]
    certificate: Optional[Certificate]
    attempts: list[dict] = field(default_factory=list)

    @property
    def certified(self) -> bool:
        return self.certificate is not None and self.certificate.verdict == CERTIFIED

    def to_json(self) -> dict:
        return {"factors": [f.to_json() for f in self.factors],
                "solution": self.solution.to_json(),
                "product": None if self.product is None else self.product.to_json(),
                "attempts": self.attempts,
                "certificate": None if self.certificate is None else self.certificate.to_json()}


def run_pipeline(n: int, b, seeds: Sequence[IntPolynomial] = (),
                 config: PipelineConfig = PipelineConfig(), search: bool = True) -> PipelineResult:
    b = Fraction(b)
    interval = RatInterval(Fraction(0), b)
    q = poly(n, -1)
    found = factor_search(interval, q, config.k_init, config.rounds_max) if search else None
    pool = {f.coeffs: f for f in seeds}
    if found is not None:
        for f in found.factors:
            pool.setdefault(f.coeffs, f)
    factors = sorted(pool.values(), key=lambda f: (f.degree, f.coeffs))
    if not factors:
        raise ValueError("no factors to optimise over")
    sol = remez_iterate(interval, factors, q, config.eps, rounds_max=config.remez_rounds)
    attempts = []
    product, cert = None, None
    degs = [f.degree for f in factors]
    for limit in config.denom_limits:
        try:
            exps = rationalize_exponents(sol.alpha, degs, limit)
        except ValueError as exc:
            attempts.append({"denom_limit": limit, "error": str(exc)})
            continue
        product = WeightedProduct(tuple((f, e) for f, e in zip(factors, exps) if e))
        cert = verify_attaining(product, interval, n)
        attempts.append({"denom_limit": limit, "exponents": list(exps), "verdict": cert.verdict})
        if cert.verdict == CERTIFIED:
            break
    return PipelineResult(factors, found, sol, product, cert, attempts)
