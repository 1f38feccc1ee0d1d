#!/usr/bin/env python3
"""Two sweeps that separate the proportional benchmark from the feasible range.

First: across 2x2 marginals, the rank-one product matrix is the
no-dependence point but usually not the fixed-marginal minimum of cell
concentration; the sweep reports where the gap is largest. Second: along
the equal-marginal family with one free cell, the marginals stay fixed
while both the cell concentration and the dependence index move, so no
function of the marginals can recover either.
"""

import numpy as np

import holdscan as hs


def product_gap_sweep(step: float = 0.05) -> None:
    print("== product benchmark vs fixed-marginal minimum (2x2) ==")
    print(f"{'a':>5} {'b':>5} {'M_prod':>9} {'M_min':>9} {'gap':>10}")
    worst = (0.0, None)
    grid = np.arange(step, 1.0, step)
    for a in grid:
        for b in grid:
            marg = hs.Marginals(np.array([a, 1 - a]), np.array([b, 1 - b]))
            product = float(np.sum(np.outer(marg.p, marg.s) ** 2))
            minimum = hs.min_micro(marg).objective
            gap = product - minimum
            if gap > worst[0]:
                worst = (gap, (round(float(a), 2), round(float(b), 2), product, minimum))
    gap, (a, b, product, minimum) = worst
    print(f"{a:>5} {b:>5} {product:>9.4f} {minimum:>9.4f} {gap:>10.6f}   <- largest gap")
    fam = hs.family_2x2(a, b)
    print(
        f"   feasible cell interval {fam.interval}, unconstrained vertex "
        f"{fam.x_star:.4f}, constrained minimizer {fam.x_min_constrained:.4f}"
    )


def equal_marginal_family_sweep() -> None:
    print()
    print("== equal-marginal family: constant marginals, moving indices ==")
    print(f"{'t':>5} {'M':>8} {'X':>8} {'rho':>8}")
    for t in np.arange(0.0, 0.501, 0.05):
        matrix, micro, dependence = hs.nonid_family(float(t))
        print(f"{t:>5.2f} {micro:>8.4f} {dependence:>8.4f} {hs.rho(matrix):>8.4f}")
    print("row and column marginals are (0.5, 0.5) at every t")


if __name__ == "__main__":
    product_gap_sweep()
    equal_marginal_family_sweep()
