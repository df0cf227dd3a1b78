import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from dopplerspin.clifford_rep import (CliffordError, Signature, build_gamma_rep, build_spinor_metric,
                                      clifford_residual, dirac_rep, hermiticity_residual, multivector_action,
                                      spinor_metric_residual)

from conftest import EVEN_SIGNATURES

# explicit Dirac matrices, copied entry by entry
G0 = np.diag([1, 1, -1, -1]).astype(complex)
G1 = np.array([[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]], dtype=complex)
G2 = np.array([[0, 0, 0, -1j], [0, 0, 1j, 0], [0, 1j, 0, 0], [-1j, 0, 0, 0]], dtype=complex)
G3 = np.array([[0, 0, 1, 0], [0, 0, 0, -1], [-1, 0, 0, 0], [0, 1, 0, 0]], dtype=complex)


def anticommutator_oracle(gammas, signs):
    """Entry-wise max of {g_mu, g_nu} - 2 eta delta over all ordered pairs."""
    n = len(gammas)
    d = gammas[0].shape[0]
    worst = 0.0
    for mu in range(n):
        for nu in range(n):
            a = gammas[mu] @ gammas[nu] + gammas[nu] @ gammas[mu]
            t = 2 * signs[mu] * np.eye(d) if mu == nu else np.zeros((d, d))
            worst = max(worst, np.abs(a - t).max())
    return worst


@pytest.mark.parametrize("p,q", EVEN_SIGNATURES)
def test_anticommutation_and_hermiticity(p, q):
    rep = build_gamma_rep(Signature(p, q))
    assert rep.dim_spinor == 2 ** ((p + q) // 2)
    assert len(rep.gammas) == p + q
    assert anticommutator_oracle(rep.gammas, rep.metric_signs) <= 1e-12
    assert clifford_residual(rep) <= 1e-12
    for g, s in zip(rep.gammas, rep.metric_signs):
        np.testing.assert_array_equal(g.conj().T, s * g)
    assert hermiticity_residual(rep) == 0.0


@pytest.mark.parametrize("p,q", EVEN_SIGNATURES)
def test_spinor_metric(p, q):
    rep = build_gamma_rep(Signature(p, q))
    H = build_spinor_metric(rep).H
    herm, inter = spinor_metric_residual(rep, H)
    assert herm <= 1e-12 and inter <= 1e-12
    for g in rep.gammas:
        np.testing.assert_allclose(H @ g @ np.linalg.inv(H), g.conj().T, atol=1e-12)
    assert np.linalg.svd(H, compute_uv=False).min() > 0.5


def test_odd_dimension_rejected():
    with pytest.raises(CliffordError, match="even dimension only"):
        Signature(1, 2)
    with pytest.raises(CliffordError):
        Signature(-1, 3)


def test_metric_sign_order_must_match_signature():
    with pytest.raises(CliffordError):
        build_gamma_rep(Signature(2, 2), [1, 1, 1, -1])
    rep = build_gamma_rep(Signature(2, 2), [1, -1, 1, -1])
    assert rep.metric_signs == (1, -1, 1, -1)
    assert clifford_residual(rep) == 0.0


@pytest.mark.parametrize("p,q", [(1, 3), (2, 2), (3, 3), (4, 4)])
def test_deterministic(p, q):
    a = build_gamma_rep(Signature(p, q))
    b = build_gamma_rep(Signature(p, q))
    for x, y in zip(a.gammas, b.gammas):
        assert x.tobytes() == y.tobytes()
    assert build_spinor_metric(a).H.tobytes() == build_spinor_metric(b).H.tobytes()


def test_dirac_rep_matches_explicit_matrices():
    rep = dirac_rep()
    for g, ref in zip(rep.gammas, (G0, G1, G2, G3)):
        np.testing.assert_array_equal(g, ref)
    H = build_spinor_metric(rep).H
    np.testing.assert_array_equal(H, G0)


def intertwiner(rep_a, rep_b, rng):
    """Average X over the Clifford group: U = sum_I b_I X a_I^{-1}; nonzero by Schur."""
    n = rep_a.n
    d = rep_a.dim_spinor
    X = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    U = np.zeros((d, d), dtype=complex)
    for k in range(n + 1):
        for blade in itertools.combinations(range(n), k):
            A = multivector_action(rep_a, blade)
            B = multivector_action(rep_b, blade)
            U += B @ X @ np.linalg.inv(A)
    return U


def test_1_3_equivalent_to_dirac(rng):
    rep = build_gamma_rep(Signature(1, 3))
    U = intertwiner(rep, dirac_rep(), rng)
    assert np.linalg.svd(U, compute_uv=False).min() > 1e-6
    for a, b in zip(rep.gammas, dirac_rep().gammas):
        np.testing.assert_allclose(U @ a, b @ U, atol=1e-10)
    # both reps have Hermitian-pattern generators, so the intertwiner is unitary up to scale
    s = U.conj().T @ U
    np.testing.assert_allclose(s / s[0, 0], np.eye(4), atol=1e-10)


def test_euclidean_2d():
    rep = build_gamma_rep(Signature(2, 0))
    a, b = rep.gammas
    np.testing.assert_array_equal(a @ a, np.eye(2))
    np.testing.assert_array_equal(b @ b, np.eye(2))
    np.testing.assert_array_equal(a @ b, -b @ a)
    np.testing.assert_array_equal(a, a.conj().T)


def test_1_3_metric_is_gamma0_up_to_phase():
    rep = build_gamma_rep(Signature(1, 3))
    H = build_spinor_metric(rep).H
    c = np.trace(H @ rep.gammas[0]) / 4
    assert abs(abs(c) - 1) < 1e-12
    np.testing.assert_allclose(H, c * rep.gammas[0], atol=1e-12)


@pytest.mark.parametrize("p", [2, 4, 6])
def test_euclidean_metric_is_identity(p):
    H = build_spinor_metric(build_gamma_rep(Signature(p, 0))).H
    np.testing.assert_allclose(H, np.eye(H.shape[0]), atol=1e-12)


def blade_square_sign(signs, blade):
    """(g_i1 ... g_ik)^2 = (-1)^{k(k-1)/2} prod eta_i."""
    k = len(blade)
    return (-1) ** (k * (k - 1) // 2) * int(np.prod([signs[i] for i in blade]))


def test_multivector_examples():
    rep = build_gamma_rep(Signature(1, 3))
    np.testing.assert_array_equal(multivector_action(rep, [0]), rep.gammas[0])
    b01 = multivector_action(rep, [0, 1])
    np.testing.assert_array_equal(b01 @ b01, np.eye(4))
    vol = multivector_action(rep, [0, 1, 2, 3], 1j)
    # (i g0 g1 g2 g3)^2 = i^2 * (+1 reorder) * (1)(-1)^3 = +1
    np.testing.assert_array_equal(vol @ vol, np.eye(4))
    np.testing.assert_array_equal(multivector_action(rep, [], 2.5), 2.5 * np.eye(4))


def test_multivector_errors():
    rep = build_gamma_rep(Signature(1, 3))
    with pytest.raises(CliffordError):
        multivector_action(rep, [1, 1])
    with pytest.raises(CliffordError):
        multivector_action(rep, [2, 1])
    with pytest.raises(CliffordError):
        multivector_action(rep, [4])


@given(st.sampled_from(EVEN_SIGNATURES[:15]), st.data())
def test_blade_squares(sig, data):
    rep = build_gamma_rep(Signature(*sig))
    blade = sorted(data.draw(st.sets(st.integers(0, rep.n - 1))))
    m = multivector_action(rep, blade)
    np.testing.assert_array_equal(m @ m, blade_square_sign(rep.metric_signs, blade) * np.eye(rep.dim_spinor))
