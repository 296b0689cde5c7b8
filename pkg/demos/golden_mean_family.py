#!/usr/bin/env python3
"""The tunable golden-mean family: finite horizons and saturation.

The (R-k) golden mean has Markov order R and cryptic order k.  Its
pair-merger machine is a tree, so quantum overlaps stop growing at the
cryptic order and the cost curve is exactly flat beyond L = k.
"""

import numpy as np

import qcost

p = 0.7

# The worked (4-3) instance: seven states A..G, a stochastic self-loop on
# A, and a deterministic ring of four 0s then three 1s.
m43 = qcost.golden_mean(4, 3, p)
qp = qcost.build_qpmm(m43)
print("pair-states:", [qp.pair_label(u) for u in qp.pairs])
print("depth:", qp.depth, " cryptic order:", qcost.cryptic_order(qp))

np.set_printoptions(precision=6, suppress=True)
for L in (1, 2, 3, 4):
    print(f"\noverlaps at L={L}:")
    print(qcost.overlaps_iterative(qp, L).entries)
print("\nnote: L=4 equals L=3; the tree has depth k+1 = 4")

# Cost curves across the family, fixed self-loop probability.  Each curve
# decreases until its own cryptic order and is constant afterwards.
print("\ncq(L) for (R-k) golden means, p =", p)
family = [(1, 1), (2, 1), (2, 2), (3, 2), (3, 3), (4, 3), (5, 2)]
lmax = 6
header = "  R  k  " + "".join(f"     L={L}" for L in range(lmax + 1))
print(header)
for R, k in family:
    curve = qcost.cq_curve(qcost.golden_mean(R, k, p), lmax)
    row = "".join(f"  {v:.4f}" for _, v in curve.samples)
    print(f"  {R}  {k}{row}")

# Trading Markov order against cryptic order preserves the stationary
# distribution, so the curves of (R, k) and (R+1, k-1) agree for every
# length both machines are still accumulating overlaps.
a = qcost.cq_curve(qcost.golden_mean(4, 3, p), 4)
b = qcost.cq_curve(qcost.golden_mean(5, 2, p), 4)
print("\n(4-3) vs (5-2):")
for L in range(5):
    da, db = a.value_at(L), b.value_at(L)
    print(f"  L={L}: {da:.12f} vs {db:.12f}  (diff {abs(da-db):.2e})")
