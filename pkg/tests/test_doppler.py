import numpy as np
import pytest
from hypothesis import given, strategies as st

from dopplerspin.doppler import (MetricSpace, SplittingError, connecting_map, dsf, dsf_lorentzian,
                                 make_splitting, operator_norm_gs, polar_decompose, qboost, random_splitting,
                                 random_stabilizer, reference_splitting, splitting_from_perp)

from conftest import RANDOM_SIGNATURES

MINK = MetricSpace.diagonal([1, -1, -1, -1])
E = np.eye(4)


def boost(xi, n=4, i=0, j=1):
    B = np.eye(n)
    B[i, i] = B[j, j] = np.cosh(xi)
    B[i, j] = B[j, i] = np.sinh(xi)
    return B


def lorentz_pair(xi):
    v = boost(xi) @ E[0]
    return splitting_from_perp(MINK, E[0]), splitting_from_perp(MINK, v)


def test_rest_splitting():
    sp = make_splitting(MINK, E[:, 1:])
    np.testing.assert_allclose(sp.s, np.diag([1, -1, -1, -1]), atol=1e-15)
    np.testing.assert_allclose(sp.g_s, np.eye(4), atol=1e-15)


def test_boosted_splitting_symmetry():
    B = boost(0.9)
    sp = make_splitting(MINK, B @ E[:, 1:])
    expected = B @ np.diag([1, -1, -1, -1]) @ np.linalg.inv(B)
    np.testing.assert_allclose(sp.s, expected, atol=1e-12)
    res = sp.residuals()
    assert res["s_squared"] < 1e-12 and res["s_isometry"] < 1e-12
    assert res["s_on_V"] < 1e-12 and res["s_on_perp"] < 1e-12
    assert res["g_s_min_eig"] > 0


def test_splitting_rejects_positive_direction():
    with pytest.raises(SplittingError):
        make_splitting(MINK, E[:, [0, 1, 2]])


def test_splitting_rejects_nonmaximal_and_dependent():
    with pytest.raises(SplittingError, match="non-maximal"):
        make_splitting(MINK, E[:, [1, 2]])
    with pytest.raises(SplittingError):
        make_splitting(MINK, np.column_stack([E[1], E[1], E[2]]))


def test_metric_validation():
    with pytest.raises(SplittingError):
        MetricSpace(np.array([[1.0, 2.0], [0.0, -1.0]]))
    with pytest.raises(SplittingError):
        MetricSpace(np.diag([1.0, 0.0]))
    assert MetricSpace(np.diag([1.0, -1.0, 1.0, -1.0])).inertia == (2, 2)


def test_identical_splittings():
    sp = reference_splitting(MINK)
    Lam = connecting_map(MINK, sp, sp)
    np.testing.assert_allclose(Lam, np.eye(4), atol=1e-15)
    pol = polar_decompose(MINK, sp, sp, Lam)
    np.testing.assert_allclose(pol.L, np.eye(4), atol=1e-15)
    np.testing.assert_allclose(pol.O, Lam, atol=1e-15)
    assert dsf(MINK, sp, sp).dsf == pytest.approx(1.0, abs=1e-15)


def test_lorentz_ln2_gives_two():
    # g(v1, v2) = cosh(ln 2) = 1.25 and 1.25 + sqrt(1.25^2 - 1) = 2
    s1, s2 = lorentz_pair(np.log(2.0))
    assert dsf_lorentzian(1.25) == 2.0
    assert dsf(MINK, s1, s2).dsf == pytest.approx(2.0, abs=1e-13)


def test_lorentz_spectrum_and_boost_representative():
    xi = 0.8
    s1, s2 = lorentz_pair(xi)
    pol = dsf(MINK, s1, s2).polar
    np.testing.assert_allclose(np.sort(pol.spectrum_L), np.sort([np.exp(xi), np.exp(-xi), 1, 1]), atol=1e-13)
    # the canonical representative is the pure boost in the (e0, e1) plane
    np.testing.assert_allclose(pol.L, boost(xi), atol=1e-13)
    Lam = connecting_map(MINK, s1, s2)
    assert np.linalg.norm(Lam.T @ MINK.g @ Lam - MINK.g) <= 1e-10
    assert abs(np.linalg.det(Lam) - 1) <= 1e-10


def test_qboost():
    ms, s1, s2, Lam = qboost(2, 2, [0.3, 0.7])
    r = dsf(ms, s1, s2)
    np.testing.assert_allclose(r.polar.spectrum_L, np.exp([0.7, 0.3, -0.3, -0.7]), rtol=1e-13)
    np.testing.assert_allclose(r.polar.L, Lam, atol=1e-13)
    assert r.dsf == pytest.approx(np.exp(0.7), rel=1e-13)
    assert operator_norm_gs(s2, Lam) == pytest.approx(np.exp(0.7), rel=1e-13)


def test_dsf_lorentzian_values():
    assert dsf_lorentzian(1.0) == 1.0
    xi = np.random.default_rng(0).uniform(0, 5, 200)
    vals = np.array([dsf_lorentzian(np.cosh(x)) for x in xi])
    np.testing.assert_allclose(vals, np.exp(xi), rtol=1e-12)
    with pytest.raises(ValueError):
        dsf_lorentzian(0.99)


def test_polar_invariants_random(rng):
    for p, q in RANDOM_SIGNATURES:
        ms = MetricSpace.diagonal([1] * p + [-1] * q)
        for _ in range(20):
            a, b = random_splitting(ms, rng), random_splitting(ms, rng)
            pol = dsf(ms, a, b).polar
            assert max(pol.residuals.values()) <= 1e-8


@given(st.sampled_from(RANDOM_SIGNATURES), st.integers(0, 2 ** 32 - 1))
def test_symmetry_and_lambda_independence(sig, seed):
    rng = np.random.default_rng(seed)
    ms = MetricSpace.diagonal([1] * sig[0] + [-1] * sig[1])
    a, b = random_splitting(ms, rng), random_splitting(ms, rng)
    r = dsf(ms, a, b)
    assert r.dsf >= 1.0
    assert abs(r.dsf - dsf(ms, b, a).dsf) <= 1e-10
    O = random_stabilizer(b, rng)
    assert abs(operator_norm_gs(b, O @ r.polar.Lam) - r.dsf) <= 1e-10
    spec = r.polar.spectrum_L
    # pairing lambda <-> 1/lambda with multiplicity
    np.testing.assert_allclose(np.sort(spec), np.sort(1 / spec), rtol=1e-10)
    assert np.sum(spec > 1 + 1e-9) <= min(sig)


def test_dsf_is_one_iff_same_subspace(rng):
    ms = MetricSpace.diagonal([1, 1, -1, -1])
    a = random_splitting(ms, rng)
    # a different basis of the same subspace
    same = make_splitting(ms, a.basis_V @ np.array([[2.0, 1.0], [0.5, -3.0]]))
    assert dsf(ms, a, same).dsf == pytest.approx(1.0, abs=1e-10)
    b = random_splitting(ms, rng)
    assert dsf(ms, a, b).dsf > 1 + 1e-8


def test_lorentzian_cross_check(rng):
    for sig in [(1, 1), (1, 3)]:
        ms = MetricSpace.diagonal([1] + [-1] * sig[1])
        for _ in range(200):
            a, b = random_splitting(ms, rng), random_splitting(ms, rng)
            gab = ms.inner(a.basis_perp[:, 0], b.basis_perp[:, 0])
            assert abs(dsf(ms, a, b).dsf - dsf_lorentzian(abs(gab))) <= 1e-10


def test_coordinate_invariance(rng):
    # the same geometric pair written in a non-orthonormal basis x = P y
    ms = MetricSpace.diagonal([1, -1, 1, -1, -1, 1])
    a, b = random_splitting(ms, rng), random_splitting(ms, rng)
    P = rng.normal(size=(6, 6)) + 3 * np.eye(6)
    Pinv = np.linalg.inv(P)
    ms2 = MetricSpace(P.T @ ms.g @ P)
    a2 = make_splitting(ms2, Pinv @ a.basis_V)
    b2 = make_splitting(ms2, Pinv @ b.basis_V)
    assert dsf(ms2, a2, b2).dsf == pytest.approx(dsf(ms, a, b).dsf, rel=1e-9)


def test_random_splitting_generator_is_in_identity_component(rng):
    ms = MetricSpace.diagonal([1, 1, -1, -1])
    ref = reference_splitting(ms)
    sp = random_splitting(ms, rng)
    assert sp.basis_V.shape == (4, 2)
    # exp of an so(g) element: the pair is related by an element of SO(g)
    Lam = connecting_map(ms, ref, sp)
    assert abs(np.linalg.det(Lam) - 1) < 1e-9
    assert np.linalg.norm(Lam.T @ ms.g @ Lam - ms.g) < 1e-8


def test_euclidean_trivial():
    ms = MetricSpace.diagonal([1, 1])
    sp = reference_splitting(ms)
    assert sp.basis_V.shape == (2, 0)
    assert dsf(ms, sp, sp).dsf == 1.0
