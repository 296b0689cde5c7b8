import math

import numpy as np
import pytest

import qcost
from qcost import QcostError
from qcost.costs import _triangular_factor


P = 0.7
SP = math.sqrt(P)


def gm43_expected_overlaps(L):
    """Frozen overlap fixtures for the (4-3) golden mean at length L."""
    A, B, C, D, E, F, G = range(7)
    out = np.eye(7)

    def put(i, j, v):
        out[i, j] = out[j, i] = v

    if L >= 1:
        put(A, G, SP)
    if L >= 2:
        put(A, F, P)
        put(F, G, SP)
    if L >= 3:
        put(A, E, SP ** 3)
        put(E, F, SP)
        put(E, G, P)
    return out


@pytest.mark.parametrize("L", [0, 1, 2, 3, 4, 7])
def test_golden_mean_43_overlap_fixtures(gm43, L):
    qp = qcost.build_qpmm(gm43)
    got = qcost.overlaps_iterative(qp, L).entries
    assert np.abs(got - gm43_expected_overlaps(L)).max() < 1e-12


def test_overlap_saturation_at_cryptic_order(gm43):
    qp = qcost.build_qpmm(gm43)
    at_k = qcost.overlaps_iterative(qp, 3).entries
    assert np.array_equal(qcost.overlaps_iterative(qp, 4).entries, at_k)
    assert np.array_equal(qcost.overlaps_iterative(qp, 12).entries, at_k)


def test_overlaps_start_at_identity(zoo_fixtures):
    for m in zoo_fixtures.values():
        qp = qcost.build_qpmm(m)
        assert np.array_equal(qcost.overlaps_iterative(qp, 0).entries,
                              np.eye(m.state_count))


def test_overlap_monotonicity_up_to_cryptic_order():
    for m in (qcost.golden_mean(4, 3, 0.7), qcost.golden_mean(2, 2, 0.5),
              qcost.biased_coins(0.5, 0.25)):
        qp = qcost.build_qpmm(m)
        k = qcost.cryptic_order(qp)
        prev = qcost.overlaps_iterative(qp, 0).entries
        for L in range(1, k + 1):
            cur = qcost.overlaps_iterative(qp, L).entries
            assert np.all(cur - prev > -1e-15)
            assert np.abs(cur - prev).max() > 1e-12  # a strict increase per step
            prev = cur


def test_spectral_route_matches_iterative(zoo_fixtures):
    machines = dict(zoo_fixtures)
    machines["lollipop(2,3,0.4,0.7)"] = qcost.lollipop(2, 3, 0.4, 0.7)
    for name, m in machines.items():
        qp = qcost.build_qpmm(m)
        data = qcost.decompose(qp.zeta)
        for L in range(13):
            a = qcost.overlaps_iterative(qp, L).entries
            b = qcost.overlaps_spectral(data, qp, L).entries
            assert np.abs(a - b).max() < 1e-9, (name, L)


def test_asymptotic_route(gm43, bc, lp74):
    qp = qcost.build_qpmm(gm43)
    inf_ov = qcost.overlaps_asymptotic(qp).entries
    assert np.abs(inf_ov - qcost.overlaps_iterative(qp, 3).entries).max() < 1e-12

    qp = qcost.build_qpmm(bc)
    beta = math.sqrt(0.5 * 0.75) + math.sqrt(0.25 * 0.5)
    assert qcost.overlaps_asymptotic(qp).entries[0, 1] == pytest.approx(beta, abs=1e-12)

    qp = qcost.build_qpmm(lp74)
    far = qcost.overlaps_iterative(qp, 200).entries
    assert np.abs(qcost.overlaps_asymptotic(qp).entries - far).max() < 1e-9


def test_biased_coins_overlap_is_beta_for_positive_lengths(bc):
    qp = qcost.build_qpmm(bc)
    beta = math.sqrt(0.5 * 0.75) + math.sqrt(0.25 * 0.5)
    for L in (1, 2, 5):
        assert qcost.overlaps_iterative(qp, L).entries[0, 1] == pytest.approx(beta, abs=1e-15)


def test_biased_coins_abridged_gram_display(bc):
    p, q = 0.5, 0.25
    beta = math.sqrt(p * (1 - q)) + math.sqrt(q * (1 - p))
    qp = qcost.build_qpmm(bc)
    grams = qcost.gram_matrices(bc.pi, qcost.overlaps_iterative(qp, 1))
    expected = np.array([[p, p * beta], [q * beta, q]]) / (p + q)
    assert np.abs(grams.G_tilde - expected).max() < 1e-12


def test_gram_traces_and_l0(zoo_fixtures):
    for m in zoo_fixtures.values():
        qp = qcost.build_qpmm(m)
        ov0 = qcost.overlaps_iterative(qp, 0)
        grams = qcost.gram_matrices(m.pi, ov0)
        assert np.allclose(grams.G, np.diag(m.pi), atol=1e-12)
        assert np.allclose(grams.G_tilde, np.diag(m.pi), atol=1e-12)
        ov = qcost.overlaps_asymptotic(qp)
        grams = qcost.gram_matrices(m.pi, ov)
        assert np.trace(grams.G) == pytest.approx(1.0, abs=1e-12)
        assert np.trace(grams.G_tilde) == pytest.approx(1.0, abs=1e-12)


def test_gram_dimension_mismatch():
    with pytest.raises(ValueError):
        qcost.gram_matrices(np.array([0.5, 0.5]), np.eye(3))


def test_golden_mean_43_length_one_gram_spectrum(gm43):
    # eigenvalues {pi_B (x5), c+, c-} with c from the quadratic factor
    pi_a = gm43.pi[0]
    pi_b = gm43.pi[1]
    qp = qcost.build_qpmm(gm43)
    grams = qcost.gram_matrices(gm43.pi, qcost.overlaps_iterative(qp, 1))
    disc = math.sqrt((pi_a + pi_b) ** 2 - 4 * pi_a * pi_b * (1 - P))
    expected = sorted([pi_b] * 5 + [(pi_a + pi_b + disc) / 2,
                                    (pi_a + pi_b - disc) / 2])
    lam = np.sort(np.linalg.eigvals(grams.G_tilde).real)
    assert np.abs(lam - np.array(expected)).max() < 1e-12


@pytest.mark.parametrize("R,k", [(4, 3), (5, 2), (3, 3), (6, 1)])
def test_golden_mean_gram_spectrum_multiplicity_structure(R, k):
    # pi_1 stays an eigenvalue of the abridged Gram matrix with multiplicity
    # R + k - min(L, k) - 1: one state leaves the degenerate block per
    # accumulated overlap length until saturation
    p = 0.6
    m = qcost.golden_mean(R, k, p)
    pi1 = m.pi[1]
    qp = qcost.build_qpmm(m)
    for L in range(k + 2):
        grams = qcost.gram_matrices(m.pi, qcost.overlaps_iterative(qp, L))
        lam = np.linalg.eigvals(grams.G_tilde).real
        mult = int(np.sum(np.abs(lam - pi1) < 1e-10))
        assert mult == R + k - min(L, k) - 1, (R, k, L)


@pytest.mark.parametrize("p,q", [(0.5, 0.25), (0.2, 0.8), (0.6, 0.6)])
def test_biased_coins_density_matrix_eigenvalues(p, q):
    m = qcost.biased_coins(p, q)
    beta = math.sqrt(p * (1 - q)) + math.sqrt(q * (1 - p))
    qp = qcost.build_qpmm(m)
    for L in (1, 3):
        rho = qcost.density_matrix(m.pi, qcost.overlaps_iterative(qp, L))
        disc = math.sqrt(4 * p * q * beta ** 2 + (p - q) ** 2) / (2 * (p + q))
        expected = sorted([0.5 - disc, 0.5 + disc])
        assert np.abs(np.sort(np.linalg.eigvalsh(rho)) - expected).max() < 1e-12


def test_density_matrix_at_l0_is_stationary_diagonal(gm43):
    qp = qcost.build_qpmm(gm43)
    rho = qcost.density_matrix(gm43.pi, qcost.overlaps_iterative(qp, 0))
    assert np.allclose(rho, np.diag(gm43.pi), atol=1e-14)


def test_rank_deficient_overlaps_yield_pure_state():
    m = qcost.biased_coins(0.5, 0.5)
    qp = qcost.build_qpmm(m)
    rho = qcost.density_matrix(m.pi, qcost.overlaps_iterative(qp, 1))
    lam = np.sort(np.linalg.eigvalsh(rho))
    assert np.abs(lam - np.array([0.0, 1.0])).max() < 1e-12


def test_triangular_factor_rejects_indefinite():
    with pytest.raises(QcostError, match="indefinite"):
        _triangular_factor(np.array([[1.0, 2.0], [2.0, 1.0]]))


def test_spectrum_equality_of_three_routes(zoo_fixtures):
    for name, m in zoo_fixtures.items():
        qp = qcost.build_qpmm(m)
        for L in range(9):
            ov = qcost.overlaps_iterative(qp, L)
            grams = qcost.gram_matrices(m.pi, ov)
            rho = qcost.density_matrix(m.pi, ov)
            s_rho = np.sort(np.linalg.eigvalsh(rho))
            s_g = np.sort(np.linalg.eigvalsh(grams.G))
            s_gt = np.sort(np.linalg.eigvals(grams.G_tilde).real)
            assert np.abs(s_rho - s_g).max() < 1e-9, (name, L)
            assert np.abs(s_g - s_gt).max() < 1e-9, (name, L)


def test_entropy_of_stationary_diagonal_matches_binary_entropy():
    p, q = 0.5, 0.25
    m = qcost.biased_coins(p, q)
    x = p / (p + q)
    h2 = -x * math.log2(x) - (1 - x) * math.log2(1 - x)
    assert qcost.von_neumann_entropy(np.diag(m.pi)) == pytest.approx(h2, abs=1e-12)


def test_entropy_of_pure_state_is_zero():
    v = np.array([0.6, 0.8])
    assert qcost.von_neumann_entropy(np.outer(v, v)) == 0.0


def test_entropy_equal_for_gram_and_abridged_gram(lp74):
    qp = qcost.build_qpmm(lp74)
    grams = qcost.gram_matrices(lp74.pi, qcost.overlaps_iterative(qp, 6))
    a = qcost.von_neumann_entropy(grams.G)
    b = qcost.von_neumann_entropy(grams.G_tilde)
    assert a == pytest.approx(b, abs=1e-10)


def test_entropy_rejects_bad_input():
    with pytest.raises(QcostError, match="sums to"):
        qcost.von_neumann_entropy(np.diag([0.5, 0.4]))
    with pytest.raises(QcostError, match="negative"):
        qcost.von_neumann_entropy(np.diag([1.1, -0.1]))


def test_cq_counifilar_machines_cost_full_complexity(iid_coin, alternator):
    for m in (iid_coin, alternator):
        cmu = qcost.statistical_complexity(m)
        for L in (0, 1, 4):
            assert qcost.cq(m, L) == pytest.approx(cmu, abs=1e-12)
        assert qcost.cq(m, math.inf) == pytest.approx(cmu, abs=1e-12)


def test_cq_saturates_at_cryptic_order(gm43):
    ref = qcost.cq(gm43, 3)
    for L in (4, 5, 9):
        assert qcost.cq(gm43, L) == pytest.approx(ref, abs=1e-12)
    assert qcost.cq(gm43, math.inf) == pytest.approx(ref, abs=1e-12)


def test_cq_bounded_by_statistical_complexity(zoo_fixtures):
    for name, m in zoo_fixtures.items():
        cmu = qcost.statistical_complexity(m)
        curve = qcost.cq_curve(m, 8)
        assert curve.value_at(0) == pytest.approx(cmu, abs=1e-12)
        for L, v in curve.samples:
            assert v <= cmu + 1e-12, (name, L)
        assert curve.cq_infinity <= cmu + 1e-12


def test_cq_curve_matches_pointwise_cq(lp32):
    curve = qcost.cq_curve(lp32, 10)
    for L, v in curve.samples:
        assert v == pytest.approx(qcost.cq(lp32, L), abs=1e-12)
    assert curve.cq_infinity == pytest.approx(qcost.cq(lp32, math.inf), abs=1e-12)


def test_golden_mean_curves_agree_below_smaller_cryptic_order():
    p = 0.7
    a = qcost.cq_curve(qcost.golden_mean(4, 3, p), 4)
    b = qcost.cq_curve(qcost.golden_mean(5, 2, p), 4)
    for L in (0, 1, 2):
        assert a.value_at(L) == pytest.approx(b.value_at(L), abs=1e-12)
    assert abs(a.value_at(3) - b.value_at(3)) > 1e-6


def test_lollipop_curve_approaches_limit(lp74):
    # deviation magnitude shrinks; direction of approach is observational
    # and deliberately not asserted pointwise
    curve = qcost.cq_curve(lp74, 25)
    dev = np.abs(curve.values() - curve.cq_infinity)
    assert dev[25] < 0.05 * dev[0]
    assert dev[25] < dev[10] < dev[0]
