"""Acceptance criteria 1-12, each at its stated tolerance and time budget.

Run with ``pytest tests/test_acceptance.py -v``; the terminal summary prints
one PASS/FAIL line per criterion.
"""

import io
import json
import math
import random
import time
from fractions import Fraction

import pytest

from monictd.bounds import (bmax_bounds, delta_min, extra_lower_bound, farey_scan,
                            growth_factor, pn_family, bmax_inequalities)
from monictd.certify import CERTIFIED, table_entry
from monictd.cli import main
from monictd.enclosure import log_abs
from monictd.exponents import rationalize_exponents, remez_iterate
from monictd.lattice import factor_search
from monictd.pipeline import PipelineConfig, run_pipeline
from monictd.poly import IntPolynomial, X, derivative, eval_rational, poly, resultant
from monictd.realanalysis import RatInterval, log_supnorm_weighted, supnorm

F = Fraction


class Timer:
    def __init__(self, limit):
        self.limit = limit

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        if exc[0] is None:
            assert self.elapsed < self.limit, f"took {self.elapsed:.1f}s, budget {self.limit}s"


def test_criterion_01_exact_norms():
    with Timer(1):
        enc = supnorm(poly(-1, 1, 0), RatInterval(F(0), F(1)))
        assert enc.contains(F(1, 4)) and enc.width < F(1, 2 ** 64)
        for n in range(2, 11):
            enc = supnorm(X, RatInterval(F(0), F(1, n)))
            assert enc.lo == enc.hi == F(1, n)


def test_criterion_02_bmax_formulas():
    with Timer(10):
        for n in range(3, 10 ** 4 + 1):
            bb = bmax_bounds(n)
            assert bb.lower == F(1, n) + F(1, n * n * (n - 1))
            assert bb.upper == F(4 * n, (2 * n - 1) ** 2)
            assert F(1, n - 1) - delta_min(n) == F(4 * n, (2 * n - 1) ** 2)


def test_criterion_03_inequality_chains():
    with Timer(60):
        rep = bmax_inequalities(200)
        assert rep.seq_violations == [] and rep.ratfun_violations == []


def test_criterion_04_pn_family():
    with Timer(120):
        for n in range(3, 7):
            P = pn_family(n)
            full = poly(*([1] + [0] * (n * n - 2))) * poly(1, -n, 1)
            assert eval_rational(full, F(1, n)) == F(1, n ** (n * n))
            assert eval_rational(derivative(full), F(1, n)) == 0
            b = F(1, n) + F(1, n * n * (n - 1))
            enc = log_supnorm_weighted(P, RatInterval(F(0), b))
            target = log_abs(F(1, n)).scale(n * n)
            assert abs(enc.mid - target.mid) < F(1, 2 ** 50)
            assert enc.width < F(1, 2 ** 50)


def test_criterion_05_table_identities():
    with Timer(1):
        f5 = table_entry(4).product.factors[1][0]
        assert f5 == poly(1, 432, -456, 179, -31, 2)
        assert eval_rational(f5, F(1, 4)) == F(1, 4 ** 5)
        sextic = table_entry(5).product.factors[2][0]
        assert eval_rational(sextic, F(1, 5)) == F(1, 5 ** 6)
        quintic = table_entry(7).product.factors[1][0]
        assert eval_rational(quintic, F(1, 7)) == F(1, 7 ** 5)
        quad, quart = (f for f, _ in table_entry(8).product.factors[1:])
        assert eval_rational(quad, F(1, 8)) == F(1, 64)
        assert eval_rational(quart, F(1, 8)) == F(1, 8 ** 4)


def test_criterion_06_table_certification():
    with Timer(30 * 60):
        out = io.StringIO()
        code = main(["certify", "--all"], out=out)
        certs = {c["n"]: c for c in json.loads(out.getvalue())}
    assert set(certs) == {3, 4, 5, 6, 7, 8}
    for c in certs.values():
        assert c["verdict"] in ("certified", "refuted")
        assert c["precision_bits"] == 256
        if c["verdict"] == "refuted":
            assert c["witness"] is not None
    assert certs[7]["verdict"] == "certified" and certs[7]["interval"] == ["0", "37/250"]
    assert certs[8]["verdict"] == "certified" and certs[8]["interval"] == ["0", "13/100"]
    p4 = certs[4]
    res = {tuple(r["coeffs"]): abs(int(r["res"])) for r in p4["resultants"]}
    f7 = tuple(poly(1, 8760, -13342, 8488, -2784, 514, -50, 2).to_json())
    assert res[f7] == 6401
    assert p4["verdict"] == "refuted" and p4["witness"]["res"] in ("6401", "-6401")
    assert code == 1  # the refutation is reported through the exit code


def test_criterion_07_extra_lower_bound():
    with Timer(1):
        enc = extra_lower_bound(F(33, 100))
        assert enc.lo == enc.hi == F(3, 11)
        enc = extra_lower_bound(F(1, 4))
        assert enc.lo == enc.hi == F(1, 4)


def test_criterion_08_farey_scan():
    with Timer(60):
        assert farey_scan(21) == []


def _random_monic(rng):
    n = rng.randint(1, 10)
    return IntPolynomial(tuple(rng.randint(-10, 10) for _ in range(n)) + (1,))


def test_criterion_09_growth_bounds():
    rng = random.Random(20240601)
    violations = 0
    with Timer(300):
        for _ in range(100):
            p = _random_monic(rng)
            n = p.degree
            b = F(rng.randint(1, 1000), 1000)
            delta = F(rng.randint(1, 500), 1000)
            small = supnorm(p, RatInterval(F(0), b))
            big = supnorm(p, RatInterval(F(0), b + delta))
            if not big.lo <= growth_factor(b, delta, n).hi * small.hi:
                violations += 1
            d2 = delta if delta < b else b / 2
            less = supnorm(p, RatInterval(F(0), b - d2))
            if not less.hi * growth_factor(b - d2, d2, n).hi >= small.lo:
                violations += 1
    assert violations == 0


def test_criterion_10_lll_pipeline():
    with Timer(300):
        a = factor_search(RatInterval(F(0), F(1)), poly(2, -1), 20)
        b = factor_search(RatInterval(F(0), F(1, 4)), poly(4, -1), 20)
    assert X in a.factors and poly(1, -1) in a.factors
    assert X in b.factors
    for res, q in ((a, poly(2, -1)), (b, poly(4, -1))):
        assert all(abs(resultant(f, q)) == 1 for f in res.factors)


def test_criterion_11_lp_remez():
    with Timer(60):
        sol = remez_iterate(RatInterval(F(0), F(1)), [X, poly(1, -1)], poly(2, -1),
                            F(1, 10 ** 9), rounds_max=10)
        assert sol.converged and len(sol.history) <= 10
        assert abs(float(sol.m.mid) - math.log(0.5)) < 1e-9
        assert all(abs(float(a) - 0.5) < 1e-9 for a in sol.alpha)
        e = rationalize_exponents([F(4, 7), F(47, 224), F(7, 32)], [1, 5, 7], 10 ** 6)
        assert e == (640, 47, 35)


def test_criterion_12_end_to_end():
    res = run_pipeline(3, F(7, 18), seeds=[X, poly(1, -3, 1)], config=PipelineConfig())
    assert res.certified
    cert = res.certificate
    assert cert.interval == RatInterval(F(0), F(7, 18)) and cert.n == 3
    # per-degree value 1/3: the log-sum target is D log(1/3)
    assert cert.target.contains(cert.D * log_abs(F(1, 3)).mid) or cert.target.width < F(1, 2 ** 200)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
