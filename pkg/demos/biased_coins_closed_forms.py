#!/usr/bin/env python3
"""Biased coins: the smallest process with a nontrivial quantum advantage.

Two alternating coins A and B generate a binary process whose only state
pair merges on both symbols at once.  Every quantity has a closed form, so
this is the natural first check of the machinery.
"""

import math

import numpy as np

import qcost

p, q = 0.5, 0.25
m = qcost.biased_coins(p, q)

print("machine:")
print(qcost.to_dot(m))

# The stationary distribution weights coin A by p/(p+q).
print("pi =", m.pi, " (closed form:", [p / (p + q), q / (p + q)], ")")

# The pair-merger machine is a single pair-state with two parallel edges
# into the sink, so the combined transition matrix is strictly one jump.
qp = qcost.build_qpmm(m)
beta = math.sqrt(p * (1 - q)) + math.sqrt(q * (1 - p))
print("zeta =", qp.zeta.tolist(), " beta =", beta)
print("depth =", qp.depth, " cryptic order =", qcost.cryptic_order(qp))

# All overlap information is uncovered after a single symbol: the A-B
# overlap is 0 at length 0 and beta for every positive length.
for L in (0, 1, 2, 5):
    print(f"overlap(A,B; L={L}) =", qcost.overlaps_iterative(qp, L).entries[0, 1])

# Costs: the length-0 ensemble is classical, so the cost starts at the
# statistical complexity and drops to its optimum already at L = 1.
curve = qcost.cq_curve(m, 4)
x = p / (p + q)
h2 = -x * math.log2(x) - (1 - x) * math.log2(1 - x)
print("\n L   cq(L)")
for L, v in curve.samples:
    print(f"{L:>2}   {v:.12f}")
print("cq(inf) =", curve.cq_infinity)
print("c_mu    =", curve.c_mu, " (binary entropy:", h2, ")")

# Closed-form spectrum of the length-1 ensemble, against both entropy routes.
disc = math.sqrt(4 * p * q * beta**2 + (p - q) ** 2) / (2 * (p + q))
ov = qcost.overlaps_iterative(qp, 1)
rho = qcost.density_matrix(m.pi, ov)
gt = qcost.gram_matrices(m.pi, ov).G_tilde
print("\nexpected eigenvalues:", sorted([0.5 - disc, 0.5 + disc]))
print("density route:       ", np.sort(np.linalg.eigvalsh(rho)).tolist())
print("abridged-Gram route: ", np.sort(np.linalg.eigvals(gt).real).tolist())

# With p = q = 1/2 the two signal states coincide (beta = 1): a single
# qubit of classical memory compresses away entirely.
fair = qcost.biased_coins(0.5, 0.5)
print("\nfair coins: c_mu =", qcost.statistical_complexity(fair),
      " cq(1) =", qcost.cq(fair, 1))
