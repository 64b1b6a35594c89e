import math

import numpy as np
import pytest
from scipy import stats
from scipy.integrate import quad

from grasslattice.ballmap import (
    chi2_cdf,
    radial_norm,
    radial_profile,
    theta2,
    theta2_inv,
    theta2_inv_radius,
    theta2_via_chi2,
)
from grasslattice.gaussmap import theta1
from grasslattice.grassmap import jacobian_det

from conftest import cn, random_ball

# sqrt(2 * integral_0^1 s exp(-s^2) ds), scipy quad; equals sqrt(1 - e^-1)
F1_AT_ONE = 0.7950600976206501
# integral_0^4 of the chi-squared(6) density, scipy quad
CHI2_6_AT_4 = 0.32332358381693654


def test_profile_d1_t1_against_integral_form():
    assert radial_profile(1.0, 1) == pytest.approx(F1_AT_ONE, abs=1e-14)
    direct = quad(lambda s: 2 * s * math.exp(-s * s), 0, 1)[0] ** 0.5
    assert radial_profile(1.0, 1) == pytest.approx(direct, abs=1e-14)


def test_profile_small_t_limits():
    assert radial_profile(0.0, 1) == 1.0
    assert radial_profile(1e-8, 1) == pytest.approx(1.0, abs=1e-12)
    assert radial_profile(1e-4, 3) == pytest.approx(6 ** (-1 / 6), rel=1e-8)
    assert radial_profile(0.0, 3) == pytest.approx(6 ** (-1 / 6), rel=1e-15)


@pytest.mark.parametrize("d", [1, 2, 5, 13])
def test_profile_matches_incomplete_gamma(d):
    # the bracket is the regularized lower incomplete gamma P(d, t^2)
    from scipy.special import gammainc

    t = np.linspace(0.01, 8, 400)
    ref = gammainc(d, t * t) ** (1 / (2 * d)) / t
    np.testing.assert_allclose(radial_profile(t, d), ref, rtol=1e-13)


def test_profile_large_t_is_reciprocal():
    # no hard cutoff: the tail term still matters for larger d at t^2 = 30
    t = math.sqrt(30.0)
    assert radial_profile(t, 1) == pytest.approx(1 / t, rel=1e-15)
    assert radial_profile(t, 8) < 1 / t
    assert radial_profile(40.0, 8) == pytest.approx(1 / 40.0, rel=1e-15)


@pytest.mark.parametrize("d", range(1, 9))
def test_radial_norm_strictly_increasing(d):
    s = np.linspace(0, 5, 10_000)
    g = radial_norm(s, d)
    assert g[0] == 0.0
    assert np.all(np.diff(g) > 0)
    assert np.all(g < 1)


def test_theta2_origin_and_scalar_case():
    np.testing.assert_array_equal(theta2(np.zeros(3, complex)), np.zeros(3))
    assert theta2(np.array([1.0 + 0j]))[0] == pytest.approx(F1_AT_ONE, abs=1e-14)


def test_theta2_preserves_direction(rng):
    z = cn(rng, (100, 4))
    w = theta2(z)
    assert np.all(np.linalg.norm(w, axis=1) < 1)
    uz = z / np.linalg.norm(z, axis=1, keepdims=True)
    uw = w / np.linalg.norm(w, axis=1, keepdims=True)
    assert np.max(np.abs(uz - uw)) < 1e-12


def test_chi2_cdf_values():
    assert chi2_cdf(0.0, 4) == 0.0
    assert chi2_cdf(2.0, 2) == pytest.approx(1 - math.exp(-1), abs=1e-15)
    assert abs(chi2_cdf(4.0, 6) - CHI2_6_AT_4) < 1e-10


def test_chi2_cdf_against_scipy_and_monotone():
    y = np.linspace(0, 60, 2000)
    for dof in (2, 4, 10, 26):
        got = chi2_cdf(y, dof)
        np.testing.assert_allclose(got, stats.chi2.cdf(y, dof), rtol=1e-12, atol=1e-15)
        assert np.all(np.diff(got) >= 0)


@pytest.mark.parametrize("dof", [3, 0, 2.5])
def test_chi2_cdf_rejects_bad_dof(dof):
    with pytest.raises(ValueError):
        chi2_cdf(1.0, dof)


@pytest.mark.parametrize("T", [2, 4, 6])
def test_chi2_construction_agrees(rng, T):
    z = cn(rng, (1000, T - 1))
    assert np.max(np.abs(theta2(z) - theta2_via_chi2(z))) < 1e-12


def test_chi2_construction_scalar_case():
    assert theta2_via_chi2(np.array([1.0 + 0j]))[0] == pytest.approx(F1_AT_ONE, abs=1e-14)
    with pytest.raises(ValueError):
        theta2_via_chi2(np.zeros(2, complex))


@pytest.mark.parametrize("T", [2, 4, 6])
def test_norm_mean_is_beta_mean(T):
    rng = np.random.default_rng(T)
    w = theta2_via_chi2(cn(rng, (100_000, T - 1)))
    r2 = np.sum(np.abs(w) ** 2, axis=1)
    # Beta(T-1, 1) mean (T-1)/T, variance (T-1)/(T^2 (T+1))
    se = math.sqrt((T - 1) / (T * T * (T + 1)) / len(r2))
    assert abs(r2.mean() - (T - 1) / T) < 4 * se


@pytest.mark.parametrize("T", [2, 4, 6])
def test_norm_law_ks_full_chain(T):
    rng = np.random.default_rng(100 + T)
    w = theta2(theta1(rng.uniform(size=(100_000, 2 * (T - 1)))))
    r2 = np.sum(np.abs(w) ** 2, axis=1)
    assert stats.kstest(r2, stats.beta(T - 1, 1).cdf).pvalue > 0.01


def test_theta2_inv_origin_and_scalar():
    np.testing.assert_array_equal(theta2_inv(np.zeros(2, complex)), np.zeros(2))
    assert theta2_inv(np.array([F1_AT_ONE + 0j]))[0] == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("T", [2, 4, 6])
def test_theta2_inv_roundtrip(rng, T):
    w = random_ball(rng, 10_000, T - 1)
    assert np.max(np.abs(theta2(theta2_inv(w)) - w)) < 1e-10


@pytest.mark.parametrize("d", [1, 3, 5])
def test_bisection_residual(rng, d):
    r = rng.uniform(0, 0.999999, size=10_000)
    s = theta2_inv_radius(r, d)
    assert np.max(np.abs(radial_norm(s, d) - r)) < 1e-12


def test_theta2_inv_rejects_outside_ball():
    with pytest.raises(ValueError):
        theta2_inv(np.array([0.6 + 0.8j]))


@pytest.mark.parametrize("d", [1, 2, 3])
def test_jacobian_is_gaussian_density(d):
    rng = np.random.default_rng(7 + d)
    for z in cn(rng, (50, d)):
        fd = jacobian_det(theta2, z, h=1e-5)
        exact = math.exp(-np.sum(np.abs(z) ** 2)) / math.gamma(d + 1)
        assert fd == pytest.approx(exact, rel=1e-5)
