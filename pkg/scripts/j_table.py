"""Grid C(t) norms J(t, m) of the basis functions binom(x, m), with stability check."""

import argparse

from padicdiff.diffeo import _default_level
from padicdiff.mahler import basis_norm_J


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--max-m", type=int, default=11)
    ap.add_argument("--max-t", type=int, default=2)
    ap.add_argument("--level", type=int, default=4)
    args = ap.parse_args()
    print("t  m  exponent(L)  exponent(L-1)  stable")
    for t in range(args.max_t + 1):
        L = _default_level(t, args.level)
        for m in range(args.max_m + 1):
            a = basis_norm_J(t, m, args.p, L).to_json()
            b = basis_norm_J(t, m, args.p, L - 1).to_json() if L > 1 else a
            print(f"{t}  {m:>2}  {a!s:>11}  {b!s:>13}  {a == b}")


if __name__ == "__main__":
    main()
