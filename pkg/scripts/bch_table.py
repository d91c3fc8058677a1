"""Discrepancy exponent of truncated BCH against the product flow, by order."""

import argparse
import json

from padicdiff.config import RunConfig
from padicdiff.demos import bch_table


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--precision", type=int, default=16)
    ap.add_argument("--u", default="0,0,9", help="monomial coefficients of u")
    ap.add_argument("--v", default="0,0,0,9", help="monomial coefficients of v")
    args = ap.parse_args()
    cfg = RunConfig(p=args.p, precision=args.precision)
    out = bch_table(cfg, args.u.split(","), args.v.split(","))
    print(f"u = {out['u']}, v = {out['v']}, p = {cfg.p}, N = {cfg.precision}")
    print("order  discrepancy exponent")
    for row in out["rows"]:
        print(f"{row['order']:>5}  {row['discrepancy']}")
    print(json.dumps(out, sort_keys=True))


if __name__ == "__main__":
    main()
