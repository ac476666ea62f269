"""Write certified lower/upper bounds for t_M([0, x]) on a grid to CSV."""

import argparse
from fractions import Fraction

from monictd.bounds import profile_csv, tm_profile
from monictd.certify import CERTIFIED, builtin_table, verify_attaining


def certified_plateaus():
    out = {}
    for e in builtin_table():
        if verify_attaining(e.product, e.interval, e.n).verdict == CERTIFIED:
            out[e.n] = e.b
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--from", dest="lo", default="0.1")
    ap.add_argument("--to", dest="hi", default="0.6")
    ap.add_argument("--steps", type=int, default=500)
    ap.add_argument("--out", default="tm_profile.csv")
    args = ap.parse_args()
    plateaus = certified_plateaus()
    print("certified plateaus:", {n: str(b) for n, b in plateaus.items()})
    rows = tm_profile(Fraction(args.lo), Fraction(args.hi), args.steps, plateaus)
    with open(args.out, "w") as fh:
        fh.write(profile_csv(rows))
    exact = sum(1 for _, lo, hi, _ in rows if lo == hi)
    print(f"{len(rows)} rows, {exact} with lower == upper -> {args.out}")


if __name__ == "__main__":
    main()
