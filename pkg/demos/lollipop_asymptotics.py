#!/usr/bin/env python3
"""Lollipop processes: infinite cryptic order and the decay of the cost.

The lollipop pair-merger machine is a cycle with a stick, so the cost
curve never saturates: it approaches its optimum along an exponential
envelope of rate r1 (the spectral radius of the pair dynamic) modulated
by a pattern whose period Psi is the cycle length.  Everything below is
computable in closed form from the spectral decomposition.
"""

import numpy as np

import qcost

N, M, p, q = 6, 8, 0.5, 0.5
m = qcost.lollipop(N, M, p, q)
qp = qcost.build_qpmm(m)
data = qcost.decompose(qp.zeta)
dom = qcost.dominant_structure(data)

print(f"lollipop({N},{M}) with p=q=0.5")
print("nodes:", qp.size, " depth:", qp.depth)
print("eigenvalues: zero x", M, "plus the", N, "th roots of",
      (1 - p) * (1 - q))
print("r1 =", dom.r1, " (closed form:", ((1 - p) * (1 - q)) ** (1 / N), ")")
print("r2 =", dom.r2, "  Psi =", dom.psi, "  nu0 =", data.nu0)

# Deviation from the optimum on a log scale: the envelope decays like
# r1^L once the nilpotent (stick) contribution has died out at L = nu0.
model = qcost.asymptotic_model(m)
lmax = data.nu0 + 5 * dom.psi
curve = qcost.cq_curve(m, lmax)
print("\n  L    cq(L)-cq(inf)   deviation / r1^L   first-order prediction")
for L, v in curve.samples:
    dev = v - curve.cq_infinity
    scaled = dev / dom.r1 ** L
    pred = ""
    if L >= data.nu0:
        pred = f"{qcost.delta_entropy_first_order(model, L):+.3e}"
    print(f"{L:>4}   {dev:+.3e}      {scaled:+.4f}           {pred}")
print("\nthe scaled column repeats with period Psi =", dom.psi,
      "once L is past nu0; its envelope is why the curve looks like a")
print("decaying staircase on a semilog plot")

# Period-to-period ratios approach r1^Psi.
print("\nratio of deviations one period apart vs r1^Psi =", dom.r1 ** dom.psi)
for L, ratio, err in qcost.decay_ratio_check(curve, dom)[-8:]:
    print(f"  L={L:>2}: {ratio:.6f}  (|diff| {err:.1e})")

# The exact Gram deviation factorizes through length-independent matrices,
# one per nonzero eigenvalue; a single period scales it by exactly r1^Psi
# here because every nonzero eigenvalue sits on the dominant circle.
dg = qcost.delta_gram(model, data.nu0 + 2)
dg_next = qcost.delta_gram(model, data.nu0 + 2 + dom.psi)
print("\n|dG(L+Psi) - r1^Psi dG(L)| =",
      np.abs(dg_next - dom.r1 ** dom.psi * dg).max())
