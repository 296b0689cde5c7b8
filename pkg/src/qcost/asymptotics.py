"""First-order structure of the approach to optimal compression.

For an infinite-cryptic process the cost curve approaches its limit along a
decaying pattern: writing ``dG(L) = G(L) - G(inf)`` for the Gram-matrix
deviation,

    dG(L) = - sum_{xi != 0} xi^(L+1) / (1 - xi) * C_xi,       L >= nu0,

with length-independent matrices ``C_xi`` built from the spectral projectors
of ``zeta``.  Treating ``dG`` as a perturbation of the symmetric ``G(inf)``
gives first-order eigenvalue shifts and, through them, the first-order
entropy deviation.  The deviation decays as ``r1^L`` modulated by a pattern
of period ``psi``, so consecutive same-phase deviations shrink by ``r1^psi``
per period.

Everything here uses the symmetric Gram route, whose left and right
eigenvectors are transposes of each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .costs import CqCurve, gram_matrices, overlaps_asymptotic
from .errors import DegenerateSpectrumError, QcostError, SaturatedError
from .machines import EpsilonMachine
from .qpmm import Qpmm, build_qpmm
from .spectral import (DominantStructure, SpectralData, decompose,
                       dominant_structure)

IMAG_TOL = 1e-10
GAP_TOL = 1e-8        # eigenvalues closer than this count as degenerate
ZERO_FLOOR = 1e-12    # eigenvalues below this are treated as exact zeros
LOG2E = 1.0 / math.log(2.0)


@dataclass(frozen=True)
class AsymptoticModel:
    """Everything needed to predict the cost deviation at any length."""

    machine: EpsilonMachine
    qpmm: Qpmm
    spectral: SpectralData
    c_xi: tuple              # pairs (xi, C_xi) for each distinct nonzero xi
    gram_eigenvalues: np.ndarray   # of G(inf), ascending
    gram_eigenvectors: np.ndarray  # orthonormal columns
    dominant: Optional[DominantStructure]
    nu0: int
    cq_infinity: float


def asymptotic_model(machine: EpsilonMachine) -> AsymptoticModel:
    """Assemble the perturbation data for ``machine``.

    Finite-horizon machines (all eigenvalues zero) get an empty ``c_xi``
    and ``dominant=None``: their deviations vanish identically for
    ``L >= nu0``.
    """
    qp = build_qpmm(machine)
    data = decompose(qp.zeta)
    pi = machine.pi
    root = np.sqrt(pi)
    sink = np.zeros(qp.size, dtype=complex)
    sink[qp.sink_index] = 1.0
    n = machine.state_count
    c_xi = []
    for xi in data.distinct_nonzero:
        t = data.projectors[xi] @ sink
        C = np.zeros((n, n), dtype=complex)
        for k, (i, j) in enumerate(qp.pairs):
            C[i, j] = C[j, i] = root[i] * root[j] * t[k]
        C += np.diag(pi * t[qp.sink_index])
        c_xi.append((xi, C))
    ov_inf = overlaps_asymptotic(qp)
    G_inf = gram_matrices(pi, ov_inf).G
    lam, vecs = np.linalg.eigh(G_inf)
    dom = None
    if data.distinct_nonzero:
        dom = dominant_structure(data)
    cq_inf = float(-(lam[lam > ZERO_FLOOR]
                     * np.log2(lam[lam > ZERO_FLOOR])).sum())
    return AsymptoticModel(machine=machine, qpmm=qp, spectral=data,
                           c_xi=tuple(c_xi), gram_eigenvalues=lam,
                           gram_eigenvectors=vecs, dominant=dom,
                           nu0=data.nu0, cq_infinity=cq_inf)


def _coefficients(model: AsymptoticModel, L: int) -> list:
    if L < model.nu0:
        raise ValueError(f"the deviation formula needs L >= nu0 = {model.nu0}, "
                         f"got L = {L}")
    return [(-(xi ** (L + 1)) / (1.0 - xi), C) for xi, C in model.c_xi]


def delta_gram(model: AsymptoticModel, L: int) -> np.ndarray:
    """Exact Gram-matrix deviation ``G(L) - G(inf)`` for ``L >= nu0``."""
    n = model.machine.state_count
    out = np.zeros((n, n), dtype=complex)
    for coeff, C in _coefficients(model, L):
        out += coeff * C
    worst = float(np.abs(out.imag).max())
    if worst > IMAG_TOL:
        raise QcostError(f"imaginary residue {worst:.3e} exceeds {IMAG_TOL}")
    return out.real


def _cluster_spans(lam: np.ndarray) -> list:
    """Contiguous index ranges of eigenvalues within the degeneracy gap."""
    spans = []
    start = 0
    for k in range(1, lam.size + 1):
        if k == lam.size or lam[k] - lam[k - 1] > GAP_TOL:
            spans.append((start, k))
            start = k
    return spans


def delta_lambda_first_order(model: AsymptoticModel, L: int) -> np.ndarray:
    """First-order shifts of the Gram eigenvalues at length ``L``.

    Requires the eigenvalues of ``G(inf)`` to be nondegenerate wherever the
    perturbation couples them; clusters the perturbation does not touch
    (shift below 1e-12) are allowed and get zero shift.
    """
    lam = model.gram_eigenvalues
    V = model.gram_eigenvectors
    coeffs = _coefficients(model, L)
    n = lam.size
    dG = np.zeros((n, n), dtype=complex)
    for coeff, C in coeffs:
        dG += coeff * C
    block = V.T @ dG @ V
    worst = float(np.abs(block.imag).max()) if n else 0.0
    if worst > IMAG_TOL:
        raise QcostError(f"imaginary residue {worst:.3e} exceeds {IMAG_TOL}")
    block = block.real
    shifts = np.diag(block).copy()
    for a, b in _cluster_spans(lam):
        if b - a == 1:
            continue
        sub = block[a:b, a:b]
        if np.abs(sub).max() > ZERO_FLOOR:
            raise DegenerateSpectrumError(
                f"eigenvalues {lam[a:b]} are degenerate (gap < {GAP_TOL}) and "
                f"coupled by the perturbation; nondegenerate first-order "
                f"theory does not apply")
        shifts[a:b] = 0.0
    return shifts


def delta_entropy_first_order(model: AsymptoticModel, L: int) -> float:
    """First-order prediction of ``cq(L) - cq(inf)`` in qubits.

    Terms with a vanishing limit eigenvalue are singular in the logarithm;
    they are dropped only when their first-order shift also vanishes, and
    raise otherwise.  The trace-preserving shifts make the constant term of
    the entropy differential cancel; both forms are evaluated and checked
    against each other before returning.
    """
    lam = model.gram_eigenvalues
    shifts = delta_lambda_first_order(model, L)
    with_const = 0.0
    without_const = 0.0
    for lam_k, d in zip(lam, shifts):
        if lam_k <= ZERO_FLOOR:
            if abs(d) > ZERO_FLOOR:
                raise QcostError(
                    f"zero limit eigenvalue receives first-order shift "
                    f"{d:.3e}: the entropy differential is singular there")
            continue
        with_const += -(math.log2(lam_k) + LOG2E) * d
        without_const += -math.log2(lam_k) * d
    if abs(with_const - without_const) > 1e-10:
        raise QcostError(
            f"entropy differential forms disagree by "
            f"{abs(with_const - without_const):.3e}; trace preservation of "
            f"the shifts is violated")
    return without_const


def decay_ratio_check(curve: CqCurve, dominant: DominantStructure) -> list:
    """Empirical period-to-period decay ratios of the cost deviation.

    Returns tuples ``(L, ratio, |ratio - r1**psi|)`` with
    ``ratio = (cq(L+psi) - cq(inf)) / (cq(L) - cq(inf))``, skipping lengths
    whose deviation sits below the double-precision floor of 1e-13.

    Raises
    ------
    SaturatedError
        When the curve has saturated exactly (finite cryptic order); use
        the saturation equality checks instead.
    """
    dev = curve.values() - curve.cq_infinity
    psi = dominant.psi
    target = dominant.r1 ** psi
    usable = np.abs(dev) > 1e-13
    if not usable.any():
        raise SaturatedError(
            "cost curve equals its limit everywhere: finite-horizon process; "
            "use the finite cryptic-order saturation check")
    out = []
    for L in range(len(dev) - psi):
        if usable[L] and usable[L + psi]:
            ratio = dev[L + psi] / dev[L]
            out.append((L, float(ratio), float(abs(ratio - target))))
    if not out:
        raise SaturatedError(
            "no deviation pairs above the noise floor: the curve saturates "
            "at finite length (use the finite cryptic-order saturation check)")
    return out
