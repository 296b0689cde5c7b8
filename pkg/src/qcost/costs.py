"""Signal-state overlaps, Gram matrices, and the quantum cost curve.

The quantum communication cost of a process at codeword length ``L`` is the
von Neumann entropy of the ensemble of length-``L`` signal states weighted
by the stationary distribution.  The entropy needs only the stationary
weights and the pairwise overlaps, and the overlaps accumulate along QPMM
paths into SINK:

    overlap(i, j; L) = sum_{n=0}^{L} [zeta^n](pair(i,j), SINK)

Three routes compute the same overlaps: direct accumulation of the sum
(iterative), a closed form from the spectral decomposition, and for the
``L -> infinity`` limit a single linear solve against ``I - zeta`` (the
resolvent form of the geometric series, valid because ``zeta`` is
substochastic).  The entropy itself is read off any of three spectrum-equal
matrices: the density matrix, the Gram matrix, or the abridged Gram matrix,
the last being linear in the overlaps and the default route.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import QcostError
from .machines import EpsilonMachine, is_counifilar, statistical_complexity
from .qpmm import Qpmm, build_qpmm, cryptic_order
from .spectral import SpectralData

IMAG_TOL = 1e-10
LOG2E = 1.0 / math.log(2.0)


@dataclass(frozen=True)
class OverlapMatrix:
    """Symmetric unit-diagonal matrix of signal-state overlaps at length L."""

    L: float  # codeword length; math.inf for the asymptotic matrix
    entries: np.ndarray

    def __post_init__(self):
        self.entries.setflags(write=False)


@dataclass(frozen=True)
class GramMatrices:
    """Gram matrix, abridged Gram matrix and the stationary diagonal."""

    G: np.ndarray
    G_tilde: np.ndarray
    D_pi: np.ndarray


@dataclass(frozen=True)
class CqCurve:
    """Sampled cost curve with its limit; the asymptotic value is kept as an
    explicit field rather than a sentinel sample."""

    samples: tuple[tuple[int, float], ...]
    cq_infinity: float
    c_mu: float
    machine: EpsilonMachine

    def values(self) -> np.ndarray:
        return np.array([v for _, v in self.samples])

    def value_at(self, L: int) -> float:
        return self.samples[L][1]


def _overlaps_from_sink_vector(qpmm: Qpmm, vec: np.ndarray, L) -> OverlapMatrix:
    n = qpmm.machine.state_count
    out = np.eye(n)
    for k, (i, j) in enumerate(qpmm.pairs):
        out[i, j] = out[j, i] = vec[k]
    return OverlapMatrix(L=L, entries=out)


def _sink_indicator(qpmm: Qpmm) -> np.ndarray:
    e = np.zeros(qpmm.size)
    e[qpmm.sink_index] = 1.0
    return e


def overlaps_iterative(qpmm: Qpmm, L: int) -> OverlapMatrix:
    """Overlap matrix at length ``L`` by accumulating the power sum.

    Applies ``zeta`` repeatedly to the SINK indicator instead of forming
    matrix powers.  For acyclic QPMMs the sum is truncated at the cryptic
    order, past which no path reaches SINK.
    """
    if L < 0:
        raise ValueError("codeword length must be nonnegative")
    k = cryptic_order(qpmm)
    steps = L if k is math.inf else min(L, int(k))
    y = _sink_indicator(qpmm)
    acc = y.copy()
    for _ in range(steps):
        y = qpmm.zeta @ y
        acc += y
    return _overlaps_from_sink_vector(qpmm, acc, L)


def overlaps_spectral(data: SpectralData, qpmm: Qpmm, L: int) -> OverlapMatrix:
    """Overlap matrix at length ``L`` from the spectral decomposition.

    Each nonzero eigenvalue contributes a finite geometric sum through its
    projector; the zero eigenspace contributes the nilpotent remainder for
    at most ``nu0`` steps.  The conjugate-pair imaginary parts must cancel
    below 1e-10 and are discarded after that check.
    """
    if L < 0:
        raise ValueError("codeword length must be nonnegative")
    e = _sink_indicator(qpmm).astype(complex)
    acc = np.zeros(qpmm.size, dtype=complex)
    for lam in data.distinct_nonzero:
        coeff = (1.0 - lam ** (L + 1)) / (1.0 - lam)
        acc += coeff * (data.projectors[lam] @ e)
    y = data.zero_projector @ e
    acc += y
    for _ in range(min(L, data.nu0 - 1)):
        y = qpmm.zeta @ y
        acc += y
    worst = float(np.abs(acc.imag).max()) if acc.size else 0.0
    if worst > IMAG_TOL:
        raise QcostError(f"imaginary residue {worst:.3e} exceeds {IMAG_TOL}")
    return _overlaps_from_sink_vector(qpmm, acc.real, L)


def overlaps_asymptotic(qpmm: Qpmm) -> OverlapMatrix:
    """Asymptotic overlap matrix via the resolvent linear solve.

    ``(I - zeta) y = sink`` sums the whole geometric series at once; no
    spectral decomposition is needed and substochasticity guarantees the
    solve succeeds.
    """
    A = np.eye(qpmm.size) - qpmm.zeta
    try:
        y = np.linalg.solve(A, _sink_indicator(qpmm))
    except np.linalg.LinAlgError as exc:
        raise QcostError("resolvent solve failed: the substochasticity "
                         "invariant was violated upstream") from exc
    return _overlaps_from_sink_vector(qpmm, y, math.inf)


def _entries(overlaps) -> np.ndarray:
    if isinstance(overlaps, OverlapMatrix):
        return overlaps.entries
    return np.asarray(overlaps, dtype=float)


def gram_matrices(pi: np.ndarray, overlaps) -> GramMatrices:
    """Gram matrix ``sqrt(pi_i pi_j) o_ij`` and abridged form ``pi_i o_ij``."""
    ov = _entries(overlaps)
    pi = np.asarray(pi, dtype=float)
    if ov.shape != (pi.size, pi.size):
        raise ValueError(f"overlap matrix shape {ov.shape} does not match "
                         f"distribution of length {pi.size}")
    root = np.sqrt(pi)
    G = root[:, None] * ov * root[None, :]
    G_tilde = pi[:, None] * ov
    return GramMatrices(G=G, G_tilde=G_tilde, D_pi=np.diag(pi))


def _triangular_factor(ov: np.ndarray) -> np.ndarray:
    """Lower-triangular A with ``A A^T = ov``, zero columns on rank
    deficiency.  Rejects matrices indefinite beyond -1e-10."""
    n = ov.shape[0]
    A = np.zeros_like(ov)
    for j in range(n):
        d = ov[j, j] - (A[j, :j] ** 2).sum()
        if d < -1e-10:
            raise QcostError(f"overlap matrix indefinite: pivot {j} is {d:.3e}")
        A[j, j] = math.sqrt(d) if d > 1e-12 else 0.0
        if A[j, j] > 0.0:
            for i in range(j + 1, n):
                A[i, j] = (ov[i, j] - A[i, :j] @ A[j, :j]) / A[j, j]
    return A


def density_matrix(pi: np.ndarray, overlaps) -> np.ndarray:
    """Fixed-size density matrix ``A^T D_pi A`` of the signal ensemble.

    ``A`` is the triangular factor expressing each signal state over an
    orthonormal basis, so the result shares the Gram matrix spectrum while
    staying positive semidefinite by construction.
    """
    ov = _entries(overlaps)
    pi = np.asarray(pi, dtype=float)
    A = _triangular_factor(ov)
    return A.T @ np.diag(pi) @ A


def von_neumann_entropy(matrix: np.ndarray) -> float:
    """Entropy ``-sum(lam * log2(lam))`` of a trace-one matrix, in qubits.

    Accepts any matrix with a real spectrum summing to one (density, Gram,
    or abridged Gram).  Eigenvalues within 1e-12 of zero are clipped; more
    negative ones, or a trace off by more than 1e-9, raise.
    """
    M = np.asarray(matrix, dtype=float)
    if np.allclose(M, M.T, atol=1e-12):
        lam = np.linalg.eigvalsh(M)
    else:
        lam_c = np.linalg.eigvals(M)
        if np.abs(lam_c.imag).max() > 1e-9:
            raise QcostError("matrix spectrum is not real")
        lam = lam_c.real
    if lam.min() < -1e-12:
        raise QcostError(f"negative eigenvalue {lam.min():.3e} below -1e-12")
    if abs(lam.sum() - 1.0) > 1e-9:
        raise QcostError(f"spectrum sums to {lam.sum():.12f}, expected 1")
    lam = np.where(np.abs(lam) <= 1e-12, 0.0, lam)
    pos = lam[lam > 0]
    return float(-(pos * np.log2(pos)).sum() + 0.0)


def cq(machine: EpsilonMachine, L: Union[int, float]) -> float:
    """Quantum communication cost at codeword length ``L`` (math.inf for
    the optimum), in qubits, computed through the abridged Gram matrix."""
    if is_counifilar(machine):
        return statistical_complexity(machine)
    qp = build_qpmm(machine)
    if L is math.inf:
        ov = overlaps_asymptotic(qp)
    else:
        ov = overlaps_iterative(qp, int(L))
    grams = gram_matrices(machine.pi, ov)
    return von_neumann_entropy(grams.G_tilde)


def cq_curve(machine: EpsilonMachine, L_max: int) -> CqCurve:
    """Cost samples for ``L = 0 .. L_max`` plus the asymptotic value.

    A single QPMM build is shared across all lengths and the overlap
    accumulation vector is carried from one length to the next.
    """
    if L_max < 0:
        raise ValueError("L_max must be nonnegative")
    qp = build_qpmm(machine)
    pi = machine.pi
    k = cryptic_order(qp)
    y = _sink_indicator(qp)
    acc = y.copy()
    samples = []
    for L in range(L_max + 1):
        if L > 0 and (k is math.inf or L <= k):
            y = qp.zeta @ y
            acc += y
        ov = _overlaps_from_sink_vector(qp, acc, L)
        samples.append((L, von_neumann_entropy(gram_matrices(pi, ov).G_tilde)))
    ov_inf = overlaps_asymptotic(qp)
    cq_inf = von_neumann_entropy(gram_matrices(pi, ov_inf).G_tilde)
    return CqCurve(samples=tuple(samples), cq_infinity=cq_inf,
                   c_mu=statistical_complexity(machine), machine=machine)
