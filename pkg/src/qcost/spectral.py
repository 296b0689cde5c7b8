"""Spectral decomposition of the pair-merger transition matrix.

``zeta`` is substochastic and generally non-normal: right and left
eigenvectors differ, and the zero eigenvalue coming from the SINK column is
typically defective.  The decomposition splits ``zeta`` into a diagonalizable
part carried by spectral projectors of the nonzero eigenvalues and a
nilpotent remainder on the zero eigenspace (its index ``nu0`` is the length
of the finite-horizon overlap component).  Nonzero eigenvalues are assumed
diagonalizable; a defective nonzero eigenvalue raises, since that case is
out of scope here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import DefectiveSpectrumError, SaturatedError

PHASE_TOL = 1e-8


@dataclass(frozen=True)
class SpectralData:
    """Eigenvalues, spectral projectors and the nilpotent remainder."""

    eigenvalues: np.ndarray                 # with algebraic multiplicity
    distinct_nonzero: tuple                 # one representative per cluster
    projectors: Mapping[complex, np.ndarray]  # keyed by distinct_nonzero + 0j
    nu0: int
    nilpotent_part: np.ndarray              # zeta @ zero_projector
    diagonalizable_nonzero: bool

    @property
    def zero_projector(self) -> np.ndarray:
        return self.projectors[0j]

    @property
    def dim(self) -> int:
        return self.nilpotent_part.shape[0]


@dataclass(frozen=True)
class DominantStructure:
    """Slowest-decaying part of the spectrum.

    ``r1`` is the spectral radius, ``lambda_r1`` the eigenvalues attaining
    it, ``r2`` the next distinct magnitude (0 when only zeros remain), and
    ``psi`` the smallest power aligning all dominant phases: the period of
    the asymptotic decay pattern.
    """

    r1: float
    r2: float
    lambda_r1: tuple
    psi: int


def _cluster(values, tol):
    """Group complex values by proximity; returns list of index lists."""
    groups = []
    reps = []
    for k, v in enumerate(values):
        for g, r in enumerate(reps):
            if abs(v - r) <= tol:
                groups[g].append(k)
                break
        else:
            groups.append([k])
            reps.append(v)
    return groups


def decompose(zeta) -> SpectralData:
    """Spectral decomposition of ``zeta`` (an array or a built QPMM).

    Eigenvalues of magnitude below ``1e-9 * (1 + spectral radius)`` collapse
    to exactly zero.  Projectors of nonzero eigenvalues come from matched
    right and left eigenvectors normalized biorthogonally; the zero
    projector is the complement ``I - sum_lambda zeta_lambda``, and ``nu0``
    is the smallest power annihilating the nilpotent remainder.
    """
    Z = np.asarray(getattr(zeta, "zeta", zeta), dtype=float)
    dim = Z.shape[0]
    w, V = np.linalg.eig(Z)
    wl, U = np.linalg.eig(Z.T)
    radius = float(np.max(np.abs(w))) if dim else 0.0
    zero_tol = 1e-9 * (1.0 + radius)
    w = np.where(np.abs(w) < zero_tol, 0.0, w)
    wl = np.where(np.abs(wl) < zero_tol, 0.0, wl)

    nonzero_idx = [k for k in range(dim) if w[k] != 0]
    cluster_tol = 1e-8 * (1.0 + radius)
    projectors = {}
    distinct = []
    left_used = set()
    for group in _cluster([w[k] for k in nonzero_idx], cluster_tol):
        idx = [nonzero_idx[k] for k in group]
        lam = complex(np.mean([w[k] for k in idx]))
        g = len(idx)
        right = V[:, idx]
        # match left eigenvectors by nearest eigenvalue of the transpose
        lidx = []
        for _ in range(g):
            cand = [k for k in range(dim)
                    if k not in left_used and abs(wl[k] - lam) <= cluster_tol]
            if not cand:
                raise DefectiveSpectrumError(
                    f"no left eigenvector matches eigenvalue {lam}")
            k = min(cand, key=lambda k: abs(wl[k] - lam))
            left_used.add(k)
            lidx.append(k)
        left = U[:, lidx].T  # rows are left eigenvectors
        overlap = left @ right  # g x g biorthogonality matrix
        sv = np.linalg.svd(overlap, compute_uv=False)
        if sv[-1] < 1e-10 * max(1.0, sv[0]):
            raise DefectiveSpectrumError(
                f"eigenvalue {lam} is defective (geometric multiplicity below "
                f"algebraic); beyond the almost-diagonalizable case")
        proj = right @ np.linalg.solve(overlap, left)
        projectors[lam] = proj
        distinct.append(lam)

    zero_proj = np.eye(dim, dtype=complex)
    for lam in distinct:
        zero_proj = zero_proj - projectors[lam]
    projectors[0j] = zero_proj

    nilpotent = Z @ zero_proj
    nu0 = 0
    power = np.eye(dim, dtype=complex)
    norm_scale = max(1.0, float(np.abs(nilpotent).max()) if dim else 0.0)
    for m in range(1, dim + 2):
        power = power @ nilpotent
        nu0 = m
        if np.abs(power).max() < 1e-9 * norm_scale:
            break
    else:
        raise DefectiveSpectrumError("nilpotent remainder does not vanish")

    return SpectralData(
        eigenvalues=w,
        distinct_nonzero=tuple(distinct),
        projectors=projectors,
        nu0=nu0,
        nilpotent_part=nilpotent,
        diagonalizable_nonzero=True,
    )


def dominant_structure(data: SpectralData) -> DominantStructure:
    """Spectral radius, runner-up magnitude and decay period.

    Raises
    ------
    SaturatedError
        When every eigenvalue is zero: the process has a finite overlap
        horizon and no asymptotic decay; use the saturation results instead.
    """
    if not data.distinct_nonzero:
        raise SaturatedError(
            "all eigenvalues vanish: finite-horizon process; no dominant "
            "decay structure (use the finite cryptic-order saturation)")
    mags = np.abs(np.array(data.distinct_nonzero))
    r1 = float(mags.max())
    mag_tol = 1e-8 * (1.0 + r1)
    lead = tuple(x for x in data.distinct_nonzero if abs(abs(x) - r1) <= mag_tol)
    rest = [abs(x) for x in data.distinct_nonzero if abs(abs(x) - r1) > mag_tol]
    r2 = float(max(rest)) if rest else 0.0
    phases = np.array([x / abs(x) for x in lead])
    bound = max(1, data.dim - 1)  # cycle lengths cannot exceed the pair count
    psi = None
    for n in range(1, bound + 1):
        if np.max(np.abs(phases ** n - 1.0)) < PHASE_TOL:
            psi = n
            break
    if psi is None:
        raise SaturatedError(
            f"no period up to {bound} aligns the dominant phases")
    return DominantStructure(r1=r1, r2=r2, lambda_r1=lead, psi=psi)
