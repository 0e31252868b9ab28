#!/usr/bin/env python3
"""Track how the row rotation's cycle structure grows with the window.

The rotation moves every element one step around its own row, so a
window that ends exactly at a square splits into closed cycles whose
lengths are the odd numbers.  The longest cycle, and with it the least
k for which k-fold iteration restores the window, grows without bound:
the rotation is narrow on every finite window but not uniformly so.
"""

import argparse
import sys

from powerlab.constructions import TriPiEncoding, narrowness


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-row", type=int, default=40, help="sweep windows up to this row")
    ap.add_argument("--every", type=int, default=5, help="print every nth row")
    args = ap.parse_args()
    e = TriPiEncoding()
    print(f"{'window':>10} {'cycles':>7} {'longest':>8} {'bound':>6}")
    for m in range(1, args.max_row + 1):
        prefix = (m + 1) ** 2
        rep = narrowness(e, prefix)
        assert rep.is_permutation_on_prefix, prefix
        assert rep.bound_if_narrow == 2 * m + 1
        if m % args.every == 0 or m == args.max_row or m == 1:
            count = sum(c for _, c in rep.cycle_lengths_histogram)
            print(f"{prefix:>10} {count:>7} {rep.max_cycle_length:>8} {rep.bound_if_narrow:>6}")
    print()
    print("the bound equals the length of the last full row in the window,")
    print("so no single iteration count works for every window at once")
    return 0


if __name__ == "__main__":
    sys.exit(main())
