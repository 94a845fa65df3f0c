"""Rebuild the exceptional-bundle tables on F_0 and F_1 and pretty-print them.

Each row is an exceptional bundle V (up to twist, dual, and on F_0 the fiber
swap), the interval of polarization parameters m where V is mu_{H_m}-stable,
and the lower-rank exceptional bundles whose walls cut the two endpoints.
"""

import time

from hirzebruch import build_table
from hirzebruch.lattice import format_rational


def show(e, rmax):
    t0 = time.monotonic()
    table = build_table(e, rmax)
    took = time.monotonic() - t0
    print(f"\nF_{e}, exceptional bundles of rank <= {rmax}  ({took:.2f}s)")
    print(f"{'(r, c1)':>14}  {'I_V':>14}  {'lower wall by':>16}  {'upper wall by':>16}")
    for rec in table.records:
        iv = "(%s, %s)" % (format_rational(rec.lo), format_rational(rec.hi))
        w0 = "(%d,(%d,%d))" % rec.w0 if rec.w0 else "-"
        w1 = "(%d,(%d,%d))" % rec.w1 if rec.w1 else "-"
        print(f"{'(%d,(%d,%d))' % (rec.r, rec.a, rec.b):>14}  {iv:>14}  {w0:>16}  {w1:>16}")


if __name__ == "__main__":
    show(0, 19)
    show(1, 20)
