#!/usr/bin/env python3
"""Scan real zeros of Xi_aleph over a range and print the table as CSV.

Example:
    python scripts/scan_zeros.py --aleph 0 --range 0:100 --digits 30
"""

import argparse

from mpmath import mpf

from xizeros import AlephParam, PrecisionContext, scan_real_zeros, zero_table_to_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--aleph", type=mpf, default=mpf(0))
    ap.add_argument("--range", dest="range_", default="0:60")
    ap.add_argument("--digits", type=int, default=30)
    args = ap.parse_args()

    lo, hi = (mpf(p) for p in args.range_.split(":"))
    ctx = PrecisionContext(working_digits=args.digits + 20, target_digits=args.digits)
    table = scan_real_zeros(AlephParam(args.aleph), lo, hi, ctx)
    print(zero_table_to_csv(table, ctx), end="")
    if table.flagged_intervals:
        print(f"# {len(table.flagged_intervals)} unresolved subintervals flagged")


if __name__ == "__main__":
    main()
