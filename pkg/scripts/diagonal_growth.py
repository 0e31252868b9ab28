#!/usr/bin/env python3
"""Race bounded-recursion encodings against the two-argument desk.

For a unary primitive term e the probe finds the first point of the
image of e that clears the diagonal value A(n, n), where A is the
standard two-argument fast-growing function.  Whatever primitive term
is chosen, the diagonal outruns it; the table shows the escape point
climbing as n grows, until the desk's own small-argument bound stops
the chase.
"""

import argparse
import sys

from powerlab.constructions import diag_h
from powerlab.recdsl import ackermann, parse_term

PROBES = (
    ("identity", "I"),
    ("double", "(C (R Z (C S (C S (P 3 3)))) Z I)"),
    ("square", "(C (R Z (C (R (P 1 1) (C S (P 2 3))) (P 2 3) (P 1 3))) I I)"),
)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=3, help="diagonal points 0..n (desk bound: 3)")
    ap.add_argument("--bound", type=int, default=200, help="search ceiling per probe")
    ap.add_argument("--fuel", type=int, default=10**6)
    args = ap.parse_args()
    names = [name for name, _ in PROBES]
    print(f"{'n':>3} {'A(n,n)':>8} " + " ".join(f"{n:>8}" for n in names))
    for n in range(args.max_n + 1):
        target = ackermann(n, n)
        cells = []
        for _, text in PROBES:
            try:
                cells.append(f"{diag_h(parse_term(text), n, args.bound, args.fuel):>8}")
            except ValueError:
                cells.append(f"{'-':>8}")
        print(f"{n:>3} {target:>8} " + " ".join(cells))
    print()
    print("each column shows the first image point beyond A(n,n); a dash")
    print("means the search ceiling was too low for that probe")
    return 0


if __name__ == "__main__":
    sys.exit(main())
