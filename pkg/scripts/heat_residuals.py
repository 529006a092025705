#!/usr/bin/env python3
"""Tabulate the two sign-convention residuals of the heat equation linking
the aleph-derivative and the second lambda-derivative over a grid.

The minus-convention residual should vanish to working precision under the
e^{-aleph x^2} damping; the plus-convention one stays O(1)-scaled.

Example:
    python scripts/heat_residuals.py --alephs 0,1,5 --lambdas 0,5,10
"""

import argparse

import mpmath
from mpmath import mpf

from xizeros import AlephParam, PrecisionContext, heat_flow_residual


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--alephs", default="0,1")
    ap.add_argument("--lambdas", default="0,5")
    ap.add_argument("--digits", type=int, default=30)
    args = ap.parse_args()

    ctx = PrecisionContext(working_digits=args.digits + 20, target_digits=args.digits)
    print("aleph,lambda,res_minus,res_plus,ratio")
    for a in args.alephs.split(","):
        for lam in args.lambdas.split(","):
            res_minus, res_plus = heat_flow_residual(AlephParam(mpf(a)), mpf(lam), ctx)
            rm, rp = res_minus.value, res_plus.value
            ratio = rp / rm if rm > 0 else mpmath.inf
            print(f"{a},{lam},{mpmath.nstr(rm, 6)},{mpmath.nstr(rp, 6)},{mpmath.nstr(ratio, 6)}")


if __name__ == "__main__":
    main()
