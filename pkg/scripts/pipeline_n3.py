"""Run search -> optimize -> rationalize -> certify for n = 3.

By default it targets b = 7/18 seeded with x and x^2 - 3x + 1; pass a larger
--b to see where the found factors stop being enough.
"""

import argparse
import json
import logging
import time
from fractions import Fraction

from monictd.pipeline import PipelineConfig, run_pipeline
from monictd.poly import X, poly


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--b", default="7/18")
    ap.add_argument("--k", type=int, default=20)
    ap.add_argument("--rounds", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    logging.basicConfig(level=logging.ERROR)
    t = time.perf_counter()
    res = run_pipeline(3, Fraction(args.b), seeds=[X, poly(1, -3, 1)],
                       config=PipelineConfig(k_init=args.k, rounds_max=args.rounds))
    print(f"{len(res.factors)} factors, LP history {res.solution.history}")
    for a in res.attempts:
        print("  ", {k: v for k, v in a.items() if k != "exponents"},
              "exponents" if "exponents" in a else "")
    print("product:", res.product)
    print("verdict:", None if res.certificate is None else res.certificate.verdict,
          f"({time.perf_counter() - t:.1f}s)")
    if args.json:
        print(json.dumps(res.to_json(), indent=1))


if __name__ == "__main__":
    main()
