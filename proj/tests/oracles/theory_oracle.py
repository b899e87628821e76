#!/usr/bin/env python3
"""Regenerates tests/data/theory_oracle.csv with exact fractions.

Written against the formulas directly, without reading the C++ code:
  python3 tests/oracles/theory_oracle.py > tests/data/theory_oracle.csv
"""
from fractions import Fraction as F
import sys

HALF = F(1, 2)


def d_pl(a, b, n):
    return F(n, 2) * (a - b) + n * max(HALF - a, b - HALF)


def beta(a, b):
    # zero on and beyond 1/p + 3/q = 2 (upper triangle) and 3/p + 1/q = 2 (lower one)
    if a + b >= 1:
        return max(F(0), a + 3 * b - 2)
    return max(F(0), 2 - 3 * a - b)


def gamma(a, b):
    return HALF if (a, b) in {(F(1), F(1, 3)), (F(2, 3), F(0))} else F(0)


def admissibility(a, b, n):
    d = d_pl(a, b, n)
    if d < 1:
        return "StrictInterior"
    # p in (1,2], q in [2,inf)
    if d == 1 and HALF <= a < 1 and 0 < b <= HALF:
        return "BoundaryAdmissible"
    return "Inadmissible"


def fmt(x):
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def main():
    out = sys.stdout
    out.write("n,p_inv,q_inv,d_pl,beta,gamma,large_time_exponent,small_time_exponent,admissibility\n")
    for n in range(1, 7):
        for i in range(21):
            for j in range(i + 1):
                a, b = F(i, 20), F(j, 20)
                bt = beta(a, b)
                large = -F(n, 4) * (a - b - bt)
                small = 1 - F(n, 2) * (a - b)
                row = [str(n), fmt(a), fmt(b), fmt(d_pl(a, b, n)), fmt(bt), fmt(gamma(a, b)), fmt(large), fmt(small),
                       admissibility(a, b, n)]
                out.write(",".join(row) + "\n")


if __name__ == "__main__":
    main()
