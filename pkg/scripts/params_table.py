"""Tabulate derived instance sizes over a grid of targets.

Every cell is computed in exact rational arithmetic (the only
transcendental ingredient, log2 of the error target, enters through an
integer power comparison), so the r column is exact even when it has
tens of digits.  The float column next to it shows the same ceiling
evaluated in double precision; a * marks rows where naive floats land
on a different integer, which is why the exact path exists.

Usage: python3 scripts/params_table.py [--ell-max 3]
"""

from __future__ import annotations

import argparse
import math
from fractions import Fraction

from uggap.construction import derive_params


def float_m(epsilon: Fraction, delta: Fraction, ell: int) -> int:
    d = 2**ell + 1
    coef = 2 / (float(delta) * d)
    return math.ceil(
        1 / float(delta) + (coef + 1) * ell - coef * math.log2(float(epsilon))
    )


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--ell-max", type=int, default=3)
    args = parser.parse_args()

    targets = [
        (Fraction(1, 4), Fraction(1, 3)),
        (Fraction(1, 8), Fraction(1, 3)),
        (Fraction(1, 4), Fraction(1, 10)),
        (Fraction(1, 100), Fraction(1, 2)),
        (Fraction(1, 2**53), Fraction(1, 3)),
    ]
    header = f"{'epsilon':>12} {'delta':>8} {'ell':>4} {'d':>4} {'gamma':>10} {'m':>5}  r"
    print(header)
    print("-" * len(header))
    for epsilon, delta in targets:
        for ell in range(1, args.ell_max + 1):
            p = derive_params(epsilon, delta, ell)
            drift = "*" if float_m(epsilon, delta, ell) != p.m else " "
            r_text = str(p.r) if p.r < 10**15 else f"{p.r:.3e}".replace("+", "")
            print(
                f"{str(epsilon):>12} {str(delta):>8} {ell:>4} {p.d:>4} "
                f"{str(p.gamma):>10} {p.m:>4}{drift} {r_text}"
            )


if __name__ == "__main__":
    main()
