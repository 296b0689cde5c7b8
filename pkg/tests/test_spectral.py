import math

import numpy as np
import pytest

import qcost
from qcost import DefectiveSpectrumError, SaturatedError


def match_multisets(found, expected, tol):
    """Greedy complex multiset matching; returns worst pairing distance."""
    rem = list(found)
    worst = 0.0
    assert len(rem) == len(expected)
    for e in expected:
        dists = [abs(e - x) for x in rem]
        k = int(np.argmin(dists))
        worst = max(worst, dists[k])
        rem.pop(k)
    assert worst < tol, f"worst eigenvalue mismatch {worst:.3e}"
    return worst


def lollipop_expected_eigs(N, M, p, q):
    r = ((1 - p) * (1 - q)) ** (1.0 / N)
    return ([0.0] * M
            + [r * np.exp(2j * np.pi * n / N) for n in range(N)])


def test_lollipop_74_spectrum_closed_form(lp74):
    data = qcost.decompose(qcost.build_qpmm(lp74).zeta)
    match_multisets(data.eigenvalues, lollipop_expected_eigs(7, 4, 0.5, 0.5), 1e-10)
    assert data.nu0 == 4


def test_biased_coins_nilpotent_with_index_two(bc):
    data = qcost.decompose(qcost.build_qpmm(bc).zeta)
    assert np.all(data.eigenvalues == 0.0)
    assert data.nu0 == 2
    assert np.allclose(data.zero_projector, np.eye(2), atol=1e-12)


def test_golden_mean_43_zero_spectrum(gm43):
    data = qcost.decompose(qcost.build_qpmm(gm43).zeta)
    assert np.all(data.eigenvalues == 0.0)
    assert data.nu0 == 4


def test_decompose_accepts_qpmm_object(lp32):
    qp = qcost.build_qpmm(lp32)
    a = qcost.decompose(qp)
    b = qcost.decompose(qp.zeta)
    assert np.allclose(a.eigenvalues, b.eigenvalues)


@pytest.mark.parametrize("fixture", ["gm43", "gm22", "bc", "lp32", "lp74"])
def test_projector_algebra(fixture, request):
    qp = qcost.build_qpmm(request.getfixturevalue(fixture))
    data = qcost.decompose(qp.zeta)
    dim = qp.size
    projs = [data.projectors[lam] for lam in data.distinct_nonzero]
    projs.append(data.zero_projector)
    total = sum(projs)
    assert np.abs(total - np.eye(dim)).max() < 1e-9
    for i, P in enumerate(projs):
        for j, Q in enumerate(projs):
            want = P if i == j else np.zeros_like(P)
            assert np.abs(P @ Q - want).max() < 1e-9
    # reconstruction: diagonalizable part plus nilpotent remainder
    rebuilt = data.nilpotent_part.astype(complex)
    for lam in data.distinct_nonzero:
        rebuilt = rebuilt + lam * data.projectors[lam]
    assert np.abs(rebuilt - qp.zeta).max() < 1e-9
    nil_power = np.linalg.matrix_power(data.nilpotent_part, data.nu0)
    assert np.abs(nil_power).max() < 1e-9
    assert data.eigenvalues.size == dim


@pytest.mark.parametrize("builder", [
    lambda: qcost.biased_coins(0.5, 0.25),
    lambda: qcost.golden_mean(1, 1, 0.7),
    lambda: qcost.golden_mean(2, 1, 0.4),
    lambda: qcost.lollipop(2, 1, 0.5, 0.5),
])
def test_eigenvalues_match_characteristic_polynomial_roots(builder):
    qp = qcost.build_qpmm(builder())
    assert qp.size <= 4
    data = qcost.decompose(qp.zeta)
    roots = np.roots(np.poly(qp.zeta))
    roots = np.concatenate([roots, np.zeros(qp.size - roots.size)])
    match_multisets(data.eigenvalues, roots, 1e-8)


@pytest.mark.parametrize("N", [2, 3, 5, 8])
@pytest.mark.parametrize("M", [1, 2])
@pytest.mark.parametrize("p,q", [(0.1, 0.9), (0.5, 0.5), (0.9, 0.1)])
def test_lollipop_spectrum_grid(N, M, p, q):
    data = qcost.decompose(qcost.build_qpmm(qcost.lollipop(N, M, p, q)).zeta)
    match_multisets(data.eigenvalues, lollipop_expected_eigs(N, M, p, q), 1e-10)
    assert data.nu0 == M


def test_smallest_lollipop_against_direct_eigensolve():
    qp = qcost.build_qpmm(qcost.lollipop(2, 1, 0.5, 0.5))
    data = qcost.decompose(qp.zeta)
    match_multisets(data.eigenvalues, np.linalg.eigvals(qp.zeta), 1e-10)


def test_lollipop_74_closed_form_eigenvectors(lp74):
    """In the head-cycle basis (branch pair first, then around the cycle,
    then the stick, SINK last) the (7-4) transition matrix at p=q=1/2 has
    right eigenvectors [1/(2w), 1, s*w, .., s*w^5, 0, 0, 0, 0] and left
    eigenvectors [2s*w^6, s*w^5, w^4, .., w, 1, s*w^5, .., s*w^2] with
    s = sqrt(2), for every nonzero eigenvalue w."""
    qp = qcost.build_qpmm(lp74)
    labels = lp74.labels
    idx = {s: i for i, s in enumerate(labels)}

    def pair(a, b):
        i, j = idx[a], idx[b]
        return (i, j) if i < j else (j, i)

    display = [pair("C6", "C0"), pair("C0", "C1"), pair("C1", "C2"),
               pair("C2", "C3"), pair("C3", "C4"), pair("C4", "C5"),
               pair("C5", "C6"), pair("U1", "V1"), pair("U2", "V2"),
               pair("U3", "V3")]
    perm = [qp.pair_index(*pr) for pr in display] + [qp.sink_index]
    Z = qp.zeta[np.ix_(perm, perm)]
    s = math.sqrt(2.0)
    a = 0.25 ** (1.0 / 7.0)
    for n in range(7):
        w = a * np.exp(2j * np.pi * n / 7)
        right = np.array([1 / (2 * w), 1, s * w, s * w ** 2, s * w ** 3,
                          s * w ** 4, s * w ** 5, 0, 0, 0, 0])
        left = np.array([2 * s * w ** 6, s * w ** 5, w ** 4, w ** 3, w ** 2,
                         w, 1, s * w ** 5, s * w ** 4, s * w ** 3, s * w ** 2])
        assert np.abs(Z @ right - w * right).max() < 1e-12
        assert np.abs(left @ Z - w * left).max() < 1e-12
    # zero eigenvalue: the kernel pairs the second head node with the stick
    # head, and SINK carries the left kernel
    zero_right = np.zeros(11)
    zero_right[1] = 1.0
    zero_right[7] = -1.0
    assert np.abs(Z @ zero_right).max() < 1e-15
    assert np.abs(Z[10]).max() == 0.0


@pytest.mark.parametrize("N,M", [(7, 4), (6, 8), (3, 2), (2, 5)])
def test_dominant_structure_lollipop(N, M):
    p = q = 0.5
    data = qcost.decompose(qcost.build_qpmm(qcost.lollipop(N, M, p, q)).zeta)
    dom = qcost.dominant_structure(data)
    assert dom.r1 == pytest.approx(((1 - p) * (1 - q)) ** (1.0 / N), abs=1e-12)
    assert dom.psi == N
    assert dom.r2 == 0.0
    assert len(dom.lambda_r1) == N


def test_dominant_structure_rejects_all_zero_spectrum(bc):
    data = qcost.decompose(qcost.build_qpmm(bc).zeta)
    with pytest.raises(SaturatedError, match="finite-horizon"):
        qcost.dominant_structure(data)


def test_defective_nonzero_eigenvalue_raises():
    # Jordan block at 0.5 plus a sink row
    Z = np.array([[0.5, 1.0, 0.0],
                  [0.0, 0.5, 1.0],
                  [0.0, 0.0, 0.0]])
    with pytest.raises(DefectiveSpectrumError):
        qcost.decompose(Z)


def test_trivial_sink_only_decomposition(iid_coin):
    data = qcost.decompose(qcost.build_qpmm(iid_coin).zeta)
    assert data.eigenvalues.size == 1
    assert data.nu0 == 1
    assert np.allclose(data.zero_projector, np.eye(1))


def test_dominant_structure_with_second_magnitude():
    # one 2-cycle at radius 0.8, one self-loop at 0.3, one sink row
    Z = np.zeros((4, 4))
    Z[0, 1] = Z[1, 0] = 0.8
    Z[2, 2] = 0.3
    Z[0, 3] = 0.1
    Z[2, 3] = 0.1
    data = qcost.decompose(Z)
    dom = qcost.dominant_structure(data)
    assert dom.r1 == pytest.approx(0.8, abs=1e-12)
    assert dom.r2 == pytest.approx(0.3, abs=1e-12)
    assert dom.psi == 2
    assert sorted(x.real for x in dom.lambda_r1) == pytest.approx([-0.8, 0.8])


def test_degenerate_diagonalizable_eigenvalue_projector():
    # two decoupled self-loops with equal weight: repeated eigenvalue with
    # full geometric multiplicity must not be rejected as defective
    Z = np.diag([0.5, 0.5, 0.0])
    data = qcost.decompose(Z)
    assert data.distinct_nonzero == (0.5 + 0j,)
    P = data.projectors[0.5 + 0j]
    assert np.allclose(P, np.diag([1.0, 1.0, 0.0]), atol=1e-12)
    assert np.allclose(P @ P, P, atol=1e-12)
