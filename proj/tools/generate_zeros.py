#!/usr/bin/env python3
"""Generate a table of Riemann zeta nontrivial zero ordinates.

Scans the Riemann-Siegel Z function on the critical line with a vectorized
main-sum evaluation, brackets sign changes, and refines each bracket by
bisection.  The zero count is cross-checked against the Riemann-von Mangoldt
formula, and (optionally) individual ordinates are compared against
mpmath.zetazero.

Output format: one ordinate per line in ascending order, '#' comment header.

Usage:
  python3 tools/generate_zeros.py --count 100000 --out data/zeta_zeros_100k.txt
  python3 tools/generate_zeros.py --count 1000 --check-mpmath --out /tmp/z.txt
"""

import argparse
import math
import sys

import numpy as np

TWO_PI = 2.0 * math.pi


def theta(t):
    """Riemann-Siegel theta, asymptotic expansion (t > 10)."""
    t = np.asarray(t, dtype=float)
    return (t / 2.0 * np.log(t / TWO_PI) - t / 2.0 - math.pi / 8.0
            + 1.0 / (48.0 * t) + 7.0 / (5760.0 * t ** 3))


def rs_remainder(t):
    """Leading Riemann-Siegel remainder term (C0)."""
    a = np.sqrt(t / TWO_PI)
    N = np.floor(a)
    p = a - N
    den = np.cos(TWO_PI * p)
    num = np.cos(TWO_PI * (p * p - p - 0.0625))
    # Removable singularities at p = 1/4, 3/4 where both factors vanish.
    c0 = np.where(np.abs(den) < 1e-4, 0.5, num / np.where(np.abs(den) < 1e-4, 1.0, den))
    return np.where(N % 2 == 0, -1.0, 1.0) * (t / TWO_PI) ** -0.25 * c0


def z_function(t):
    """Riemann-Siegel Z(t) for a vector of points t > 10."""
    t = np.asarray(t, dtype=float)
    th = theta(t)
    nmax = int(np.floor(np.sqrt(np.max(t) / TWO_PI)))
    nt = np.floor(np.sqrt(t / TWO_PI))
    total = np.zeros_like(t)
    for n in range(1, nmax + 1):
        term = np.cos(th - t * math.log(n)) / math.sqrt(n)
        if n > 1:
            term = np.where(nt >= n, term, 0.0)
        total += term
    return 2.0 * total + rs_remainder(t)


def scan_segment(lo, hi, step):
    """Return (grid, Z(grid)) for one segment with constant main-sum length."""
    npts = max(int(math.ceil((hi - lo) / step)) + 1, 2)
    grid = np.linspace(lo, hi, npts)
    return grid, z_function(grid)


def find_brackets(lo, hi, step):
    """Scan [lo, hi] and return (a, b) arrays bracketing sign changes of Z."""
    # Split at points where the main-sum length changes so each segment is
    # evaluated with a constant number of terms.
    bounds = [lo]
    n = int(math.floor(math.sqrt(lo / TWO_PI)))
    while True:
        n += 1
        tn = TWO_PI * n * n
        if tn >= hi:
            break
        bounds.append(tn)
    bounds.append(hi)

    lefts, rights = [], []
    prev_t = prev_z = None
    for i in range(len(bounds) - 1):
        grid, z = scan_segment(bounds[i], bounds[i + 1], step)
        if prev_t is not None and np.sign(z[0]) != np.sign(prev_z) and np.sign(prev_z) != 0:
            lefts.append(prev_t)
            rights.append(grid[0])
        flips = np.where(np.sign(z[:-1]) * np.sign(z[1:]) < 0)[0]
        lefts.extend(grid[flips])
        rights.extend(grid[flips + 1])
        prev_t, prev_z = grid[-1], z[-1]
    return np.array(lefts), np.array(rights)


def refine(lefts, rights, iters=40):
    """Vectorized bisection of Z sign changes."""
    a = lefts.copy()
    b = rights.copy()
    fa = z_function(a)
    for _ in range(iters):
        mid = 0.5 * (a + b)
        fm = z_function(mid)
        keep_left = np.sign(fa) * np.sign(fm) > 0
        a = np.where(keep_left, mid, a)
        fa = np.where(keep_left, fm, fa)
        b = np.where(keep_left, b, mid)
        if np.max(b - a) < 1e-10:
            break
    return 0.5 * (a + b)


def count_check(zeros):
    """Cross-check ranks against the Riemann-von Mangoldt counting formula.

    Between consecutive zeros, N(t) = theta(t)/pi + 1 + S(t) with |S(t)|
    small; a missed (or spurious) pair of zeros would shift the residual by
    +-2 persistently.  Returns the worst residual and its location.
    """
    mids = 0.5 * (zeros[:-1] + zeros[1:])
    ranks = np.arange(1, len(zeros), dtype=float)  # count of zeros <= mid
    resid = ranks - (theta(mids) / math.pi + 1.0)
    worst = int(np.argmax(np.abs(resid)))
    return float(resid[worst]), float(mids[worst])


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=100000)
    ap.add_argument("--out", required=True)
    ap.add_argument("--step", type=float, default=0.006,
                    help="scan step (must be below the smallest zero gap)")
    ap.add_argument("--t-start", type=float, default=12.0)
    ap.add_argument("--exact-low", type=int, default=300,
                    help="number of lowest ordinates to compute directly")
    ap.add_argument("--check-mpmath", action="store_true",
                    help="compare selected ordinates against mpmath.zetazero")
    args = ap.parse_args()

    # Upper bound for the scan: invert the counting formula, then pad.
    target = args.count + 2
    t_hi = 20.0
    while theta(t_hi) / math.pi + 1.0 < target:
        t_hi *= 1.5
    lo, hi = t_hi / 1.5, t_hi
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if theta(mid) / math.pi + 1.0 < target:
            lo = mid
        else:
            hi = mid
    t_hi = hi + 5.0

    print(f"scanning [{args.t_start}, {t_hi:.2f}] step {args.step}", flush=True)
    lefts, rights = find_brackets(args.t_start, t_hi, args.step)
    print(f"found {len(lefts)} sign changes", flush=True)
    zeros = refine(lefts, rights)
    zeros = np.sort(zeros)

    resid, where = count_check(zeros)
    print(f"counting-formula residual: {resid:+.3f} near t={where:.2f}", flush=True)
    if abs(resid) > 1.6:
        print("error: zero count inconsistent with the counting formula; "
              "rerun with a smaller --step", file=sys.stderr)
        return 1

    if len(zeros) < args.count:
        print(f"error: only {len(zeros)} zeros found", file=sys.stderr)
        return 1
    zeros = zeros[:args.count]

    # The C0-only Riemann-Siegel remainder is coarse at small t; replace the
    # lowest ordinates with directly computed ones.
    import mpmath as mp
    mp.mp.dps = 20
    nexact = min(args.exact_low, len(zeros))
    print(f"computing the first {nexact} ordinates directly", flush=True)
    for n in range(1, nexact + 1):
        exact = float(mp.zetazero(n).imag)
        if abs(exact - zeros[n - 1]) > 0.05:
            print(f"error: scan/direct mismatch at zero #{n}", file=sys.stderr)
            return 1
        zeros[n - 1] = exact

    if args.check_mpmath:
        idx = [1, 2, 3, 10, 100, 1000]
        idx += [n for n in (10000, len(zeros)) if n <= len(zeros)]
        for n in sorted(set(idx)):
            ref = float(mp.zetazero(n).imag)
            err = zeros[n - 1] - ref
            print(f"  zero #{n}: got {zeros[n-1]:.6f} ref {ref:.6f} err {err:+.2e}",
                  flush=True)
            if abs(err) > 2e-3:
                print("error: ordinate mismatch against mpmath", file=sys.stderr)
                return 1

    spacing = np.diff(zeros)
    print(f"min gap {spacing.min():.4f} at t={zeros[np.argmin(spacing)]:.2f}; "
          f"max gap {spacing.max():.4f}", flush=True)

    with open(args.out, "w") as f:
        f.write("# Riemann zeta nontrivial zero ordinates (ascending)\n")
        f.write(f"# count: {len(zeros)}\n")
        f.write("# generated by tools/generate_zeros.py (Riemann-Siegel scan)\n")
        for z in zeros:
            f.write(f"{z:.6f}\n")
    print(f"wrote {len(zeros)} ordinates to {args.out}", flush=True)
    return 0


if __name__ == "__main__":
    sys.exit(main())
