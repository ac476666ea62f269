"""monictd command line.

Exit codes: 0 success or certified, 1 refuted or violation found, 2 usage
error, 3 undecided.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import bounds, certify, exponents, lattice, obstruction, realanalysis
from .enclosure import DEFAULT_PRECISION, MAX_PRECISION, Undecided, to_decimal
from .poly import IntPolynomial
from .realanalysis import DEFAULT_LOG_TOL, RatInterval, WeightedProduct

EXIT_OK, EXIT_REFUTED, EXIT_USAGE, EXIT_UNDECIDED = 0, 1, 2, 3


@dataclass
class GlobalConfig:
    precision_bits: int = DEFAULT_PRECISION
    max_precision_bits: int = MAX_PRECISION
    tol: Fraction = DEFAULT_LOG_TOL
    output_format: str = "json"
    threads: int = 1

    def __post_init__(self):
        if self.precision_bits > self.max_precision_bits:
            raise ValueError("precision_bits exceeds max_precision_bits")
        if self.precision_bits < 16:
            raise ValueError("precision_bits must be >= 16")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")


class UsageError(Exception):
    pass


def _emit(obj, cfg: GlobalConfig, out) -> None:
    if cfg.output_format == "text" and isinstance(obj, dict):
        for k, v in obj.items():
            out.write(f"{k}: {v if not isinstance(v, (dict, list)) else json.dumps(v)}\n")
    else:
        out.write(json.dumps(obj, indent=None if cfg.output_format == "json" else 2))
        out.write("\n")


def _interval(text: str) -> RatInterval:
    try:
        return RatInterval.parse(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad interval {text!r}: {exc}") from exc


def _poly(text: str) -> IntPolynomial:
    try:
        return IntPolynomial.from_json(text)
    except (ValueError, TypeError, KeyError) as exc:
        raise UsageError(f"bad polynomial {text!r}: {exc}") from exc


def _load_json(path: str):
    with open(path) as fh:
        return json.load(fh)


def _factor_list(data) -> list[IntPolynomial]:
    """Accept a list of coefficient arrays or a WeightedProduct-style dict."""
    if isinstance(data, dict):
        data = [item["coeffs"] for item in data["factors"]]
    return [IntPolynomial.from_json(item) for item in data]


# -- subcommands -----------------------------------------------------------------

def cmd_supnorm(args, cfg, out) -> int:
    I = _interval(args.interval)
    if args.product:
        P = WeightedProduct.from_json(_load_json(args.product))
        enc, cands = realanalysis.log_supnorm_weighted_evidence(P, I, cfg.tol, cfg.precision_bits)
        _emit({"interval": I.to_json(), "D": P.total_degree, "log_supnorm": enc.to_json(),
               "candidates": [c.to_json() for c in cands]}, cfg, out)
    elif args.poly:
        enc = realanalysis.supnorm(_poly(args.poly), I)
        _emit({"interval": I.to_json(), "supnorm": enc.to_json()}, cfg, out)
    else:
        raise UsageError("supnorm needs --poly or --product")
    return EXIT_OK


def cmd_obstruction(args, cfg, out) -> int:
    I = _interval(args.interval)
    if args.dmax < 1 or args.hmax < 2:
        raise UsageError("need --dmax >= 1 and --hmax >= 2")
    best = obstruction.max_obstruction_search(I, args.dmax, args.hmax, cfg.precision_bits)
    _emit(None if best is None else best.to_json(), cfg, out)
    return EXIT_OK


def cmd_bounds(args, cfg, out) -> int:
    code = EXIT_OK
    if args.n is not None:
        try:
            bb = bounds.bmax_bounds(args.n)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        _emit({"lower": str(bb.lower), "upper": str(bb.upper)}, cfg, out)
    if args.inequalities is not None:
        rep = bounds.bmax_inequalities(args.inequalities)
        _emit(rep.to_json(), cfg, out)
        if not rep.ok:
            code = EXIT_REFUTED
    if args.extra_lower is not None:
        b = Fraction(args.extra_lower)
        enc = bounds.extra_lower_bound(b, cfg.precision_bits)
        _emit({"b": str(b), "n": bounds.extra_lower_n(b), "lower": enc.to_json()}, cfg, out)
    if args.n is None and args.inequalities is None and args.extra_lower is None:
        raise UsageError("bounds needs --n, --inequalities or --extra-lower")
    return code


def _certified_plateaus(precision: int) -> dict[int, Fraction]:
    plateaus = {}
    for entry in certify.builtin_table():
        cert = certify.verify_attaining(entry.product, entry.interval, entry.n, precision=precision)
        if cert.verdict == certify.CERTIFIED:
            plateaus[entry.n] = entry.b
    return plateaus


def cmd_profile(args, cfg, out) -> int:
    lo, hi = Fraction(args.x_from), Fraction(args.x_to)
    plateaus = _certified_plateaus(cfg.precision_bits) if args.plateaus else {}
    try:
        rows = bounds.tm_profile(lo, hi, args.steps, plateaus)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    text = bounds.profile_csv(rows)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK


def cmd_search(args, cfg, out) -> int:
    I = _interval(args.interval)
    q = _poly(args.q)
    if not obstruction.is_obstruction_for(q, I):
        raise UsageError(f"{q} is not an obstruction polynomial for {I.to_json()}")
    res = lattice.factor_search(I, q, args.k, args.rounds)
    _emit(res.to_json(), cfg, out)
    return EXIT_OK


def cmd_optimize(args, cfg, out) -> int:
    I = _interval(args.interval)
    q = _poly(args.q)
    factors = _factor_list(_load_json(args.factors))
    sol = exponents.remez_iterate(I, factors, q, Fraction(args.eps), rounds_max=args.rounds,
                                  g_epsilon=Fraction(args.g_eps), g_radius=Fraction(args.g_radius))
    data = sol.to_json()
    data["factors"] = [f.to_json() for f in factors]
    if args.denom_limit:
        data["exponents"] = list(exponents.rationalize_exponents(
            sol.alpha, [f.degree for f in factors], args.denom_limit))
    _emit(data, cfg, out)
    return EXIT_OK


def _certify_entry(n: int, precision: int, tol: Fraction, max_precision: int) -> dict:
    entry = certify.table_entry(n)
    cert = certify.verify_attaining(entry.product, entry.interval, n, tol, precision, max_precision)
    return cert.to_json()


def _verdict_code(verdicts: Sequence[str]) -> int:
    if any(v == certify.REFUTED for v in verdicts):
        return EXIT_REFUTED
    if any(v == certify.UNDECIDED for v in verdicts):
        return EXIT_UNDECIDED
    return EXIT_OK


def cmd_certify(args, cfg, out) -> int:
    if args.all:
        ns = [e.n for e in certify.builtin_table()]
        job = (cfg.precision_bits, cfg.tol, cfg.max_precision_bits)
        if cfg.threads > 1:
            with ProcessPoolExecutor(cfg.threads) as pool:
                certs = list(pool.map(_certify_entry, ns, *[[x] * len(ns) for x in job]))
        else:
            certs = [_certify_entry(n, *job) for n in ns]
        _emit(certs, cfg, out)
        return _verdict_code([c["verdict"] for c in certs])
    if args.product:
        if args.interval is None or args.n is None:
            raise UsageError("--product needs --interval and --n")
        P = WeightedProduct.from_json(_load_json(args.product))
        I = _interval(args.interval)
        try:
            cert = certify.verify_attaining(P, I, args.n, cfg.tol, cfg.precision_bits,
                                            cfg.max_precision_bits)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        _emit(cert.to_json(), cfg, out)
        return _verdict_code([cert.verdict])
    if args.n is not None:
        if not 3 <= args.n <= 8:
            raise UsageError("table entries exist for 3 <= n <= 8")
        if args.extend is not None:
            res = certify.certify_bmax_lower(args.n, cfg.tol, Fraction(args.extend), cfg.precision_bits)
            _emit(res.to_json(), cfg, out)
            return _verdict_code([res.certificate.verdict])
        cert = _certify_entry(args.n, cfg.precision_bits, cfg.tol, cfg.max_precision_bits)
        _emit(cert, cfg, out)
        return _verdict_code([cert["verdict"]])
    raise UsageError("certify needs --n, --all or --product")


def cmd_farey(args, cfg, out) -> int:
    if args.nmax < 2:
        raise UsageError("--nmax must be >= 2")
    flagged = bounds.farey_scan(args.nmax)
    _emit([[f.p, f.q, f.r, f.s] for f in flagged], cfg, out)
    return EXIT_REFUTED if flagged else EXIT_OK


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="monictd",
                                description="Rigorous bounds for the monic integer transfinite diameter.")
    p.add_argument("--precision", type=int, default=None,
                   help="working precision in bits (env MONICTD_PRECISION, default 256)")
    p.add_argument("--max-precision", type=int, default=MAX_PRECISION)
    p.add_argument("--tol", default=None, help="log-domain tolerance (default 2^-64)")
    p.add_argument("--format", choices=["json", "csv", "text"], default="json")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", metavar="command")
    sub.required = True

    s = sub.add_parser("supnorm", help="sup-norm of a polynomial or weighted product")
    s.add_argument("--interval", required=True)
    s.add_argument("--poly", help='coefficients, ascending, e.g. \'["0","1","-1"]\'')
    s.add_argument("--product", help="WeightedProduct JSON file")
    s.set_defaults(func=cmd_supnorm)

    s = sub.add_parser("obstruction", help="best obstruction within a degree/height budget")
    s.add_argument("--interval", required=True)
    s.add_argument("--dmax", type=int, default=1)
    s.add_argument("--hmax", type=int, default=10)
    s.set_defaults(func=cmd_obstruction)

    s = sub.add_parser("bounds", help="closed-form b_max bounds and inequality checks")
    s.add_argument("--n", type=int)
    s.add_argument("--inequalities", type=int, metavar="NMAX")
    s.add_argument("--extra-lower", metavar="B")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("profile", help="certified bounds for t_M([0, x]) on a grid, as CSV")
    s.add_argument("--from", dest="x_from", required=True)
    s.add_argument("--to", dest="x_to", required=True)
    s.add_argument("--steps", type=int, default=100)
    s.add_argument("--out")
    s.add_argument("--no-plateaus", dest="plateaus", action="store_false",
                   help="ignore certified table plateaus")
    s.set_defaults(func=cmd_profile)

    s = sub.add_parser("search", help="LLL factor search")
    s.add_argument("--interval", required=True)
    s.add_argument("--q", required=True)
    s.add_argument("--k", type=int, default=20)
    s.add_argument("--rounds", type=int, default=5)
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("optimize", help="LP/Remez exponent optimisation")
    s.add_argument("--interval", required=True)
    s.add_argument("--q", required=True)
    s.add_argument("--factors", required=True, help="JSON file of factor coefficient arrays")
    s.add_argument("--eps", default="1e-9")
    s.add_argument("--rounds", type=int, default=50)
    s.add_argument("--g-eps", default="1e-6")
    s.add_argument("--g-radius", default="1e-9")
    s.add_argument("--denom-limit", type=int, default=0)
    s.set_defaults(func=cmd_optimize)

    s = sub.add_parser("certify", help="certify table entries or a given product")
    s.add_argument("--n", type=int)
    s.add_argument("--all", action="store_true")
    s.add_argument("--product")
    s.add_argument("--interval")
    s.add_argument("--extend", metavar="RESOLUTION",
                   help="also push b right by binary search to this resolution")
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("farey", help="scan Farey intervals against the b* bound")
    s.add_argument("--nmax", type=int, required=True)
    s.set_defaults(func=cmd_farey)
    return p


def config_from_args(args, environ=os.environ) -> GlobalConfig:
    prec = args.precision
    if prec is None:
        env = environ.get("MONICTD_PRECISION")
        prec = int(env) if env else DEFAULT_PRECISION
    tol = Fraction(args.tol) if args.tol is not None else DEFAULT_LOG_TOL
    return GlobalConfig(prec, args.max_precision, tol, args.format, args.threads)


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = config_from_args(args)
        return args.func(args, cfg, out)
    except (UsageError, ValueError) as exc:
        sys.stderr.write(f"monictd {args.command}: {exc}\n")
        return EXIT_USAGE
    except Undecided as exc:
        sys.stderr.write(f"monictd {args.command}: undecided: {exc}\n")
        return EXIT_UNDECIDED


if __name__ == "__main__":
    sys.exit(main())
