"""Trace the logarithm iteration on random fields: per-step change and field norm."""

import argparse
import random

from padicdiff import flows as fl


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--precision", type=int, default=16)
    ap.add_argument("--degree", type=int, default=24)
    ap.add_argument("--count", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    for i in range(args.count):
        A = fl.random_field(rng, args.p, args.precision, args.degree)
        res = fl.log_iteration(fl.exp_field(A).g_q)
        vP = res.p_val.exponent
        print(f"field {i}: |P| = p^-{vP}, agreement with A = {A.agreement(res.field)}, "
              f"bounds hold = {res.bounds_hold()}")
        print("   j  change  required  |A(j)|  inner")
        for st in res.steps:
            print(f"  {st.j:>2}  {st.norm_change_exponent!s:>6}  {st.j + 1 + vP:>8}  "
                  f"{st.field_norm_exponent!s:>6}  {st.inner_iterations:>5}")


if __name__ == "__main__":
    main()
