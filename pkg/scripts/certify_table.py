"""Certify every table entry and push each certified b to the right.

    python scripts/certify_table.py --resolution 0.0001 --out certs.json
"""

import argparse
import json
import time
from fractions import Fraction

from monictd.certify import builtin_table, certify_bmax_lower
from monictd.enclosure import to_decimal


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--resolution", default="0.001")
    ap.add_argument("--out")
    args = ap.parse_args()
    results = []
    for entry in builtin_table():
        t = time.perf_counter()
        res = certify_bmax_lower(entry.n, resolution=Fraction(args.resolution))
        cert = res.certificate
        ext = "-" if res.b_extended is None else to_decimal(res.b_extended, 6)
        extra = ""
        if cert.witness and cert.witness.get("kind") == "resultant":
            extra = f"  |Res| = {abs(int(cert.witness['res']))}"
        print(f"n={entry.n}  b={to_decimal(entry.b, 4)}  {cert.verdict:9s}  b'={ext}"
              f"  ({time.perf_counter() - t:.1f}s){extra}")
        results.append(res.to_json())
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(results, fh, indent=1)


if __name__ == "__main__":
    main()
