import math

import numpy as np
import pytest
from scipy import stats

from grasslattice import grass_map, grass_map_inv
from grasslattice.grassmap import (
    big_theta,
    big_theta_inv,
    canonical_phase,
    change_of_variables_integrals,
    chordal_distance,
    jacobian_closed_form,
    jacobian_det,
    lift_subspace,
    opball_volume,
    sample_uniform_opball,
    theta3,
    theta3_inv,
    theta3_jacobian_volume,
)
from grasslattice.simkit.codebook import pairwise_chordal

from conftest import cn, random_ball


def _cmat(rng, rows, cols, scale=1.0):
    return cn(rng, (rows, cols)) * scale


class TestTheta3:
    def test_origin_maps_to_e1(self):
        np.testing.assert_array_equal(theta3(np.zeros(3, complex)), [1, 0, 0, 0])

    def test_three_four_five(self):
        np.testing.assert_allclose(theta3(np.array([0.6 + 0j])), [0.8, 0.6], atol=1e-15)

    def test_unit_norm_on_random_points(self, rng):
        x = theta3(random_ball(rng, 10_000, 3))
        assert np.max(np.abs(np.linalg.norm(x, axis=1) - 1)) < 1e-14
        assert np.all(x[:, 0].real > 0) and np.all(x[:, 0].imag == 0)

    def test_rejects_boundary(self):
        with pytest.raises(ValueError):
            theta3(np.array([1.0 + 0j]))

    def test_inverse(self, rng):
        np.testing.assert_array_equal(theta3_inv(np.array([1, 0, 0], complex)), [0, 0])
        assert theta3_inv(np.array([0.8, 0.6 + 0j]))[0] == pytest.approx(0.6)
        w = random_ball(rng, 10_000, 4)
        x = theta3(w)
        assert np.max(np.abs(theta3(theta3_inv(x)) - x)) < 1e-14

    @pytest.mark.parametrize("x0", [0.0, -0.5, 0.5j, 0.5 + 1e-9j])
    def test_inverse_rejects_noncanonical(self, x0):
        with pytest.raises(ValueError):
            theta3_inv(np.array([x0, 0.1], complex))

    def test_canonical_phase(self, rng):
        x = theta3(random_ball(rng, 50, 2))
        phase = np.exp(1j * rng.uniform(0, 2 * np.pi, size=(50, 1)))
        np.testing.assert_allclose(canonical_phase(x * phase), x, atol=1e-14)


class TestBigTheta:
    def test_zero_and_scalar(self):
        np.testing.assert_array_equal(big_theta(np.zeros((2, 1))), np.zeros((2, 1)))
        assert big_theta(np.array([[1.0]]))[0, 0] == pytest.approx(1 / math.sqrt(2))
        assert big_theta_inv(np.array([[1 / math.sqrt(2)]]))[0, 0] == pytest.approx(1.0)
        np.testing.assert_array_equal(big_theta_inv(np.zeros((3, 2))), np.zeros((3, 2)))

    @pytest.mark.parametrize("T,M", [(3, 1), (4, 2), (5, 2), (6, 3)])
    def test_roundtrip(self, rng, T, M):
        for _ in range(100):
            A = _cmat(rng, T - M, M, scale=2.0)
            W = big_theta(A)
            assert np.linalg.norm(W, 2) < 1
            np.testing.assert_allclose(big_theta_inv(W), A, atol=1e-10)

    def test_inverse_rejects_unit_opnorm(self):
        with pytest.raises(ValueError):
            big_theta_inv(np.array([[1.0], [0.0]]))

    def test_closed_form_values(self):
        assert jacobian_closed_form(np.zeros((1, 1)), 2) == 1.0
        assert jacobian_closed_form(np.array([[1.0]]), 2) == pytest.approx(0.25)

    @pytest.mark.parametrize("T,M", [(3, 1), (4, 2)])
    def test_closed_form_matches_finite_differences(self, T, M):
        rng = np.random.default_rng(10 * T + M)
        for _ in range(20):
            A = _cmat(rng, T - M, M)
            fd = jacobian_det(big_theta, A)
            assert jacobian_closed_form(A, T) == pytest.approx(fd, rel=1e-4)

    def test_jacobian_is_in_domain_variable(self):
        # the determinant evaluated at W = Theta(A) instead of A is wrong
        rng = np.random.default_rng(5)
        A = _cmat(rng, 2, 1)
        fd = jacobian_det(big_theta, A)
        assert jacobian_closed_form(big_theta(A), 3) != pytest.approx(fd, rel=1e-2)


class TestLift:
    def test_zero(self):
        X = lift_subspace(np.zeros((3, 2)))
        np.testing.assert_allclose(X, np.vstack([np.eye(2), np.zeros((3, 2))]), atol=1e-15)

    def test_m1_reduces_to_theta3(self, rng):
        w = random_ball(rng, 100, 3)
        X = lift_subspace(w[..., None])[..., 0]
        assert np.max(np.abs(X - theta3(w))) < 1e-14

    def test_stiefel(self, rng):
        W = sample_uniform_opball(5, 2, rng, size=100)
        X = lift_subspace(W)
        gram = np.conj(np.swapaxes(X, -1, -2)) @ X
        assert np.max(np.abs(gram - np.eye(2))) < 1e-10
        top = X[:, :2, :]
        # Hermitian positive square root of I - W^H W
        np.testing.assert_allclose(top, np.conj(np.swapaxes(top, -1, -2)), atol=1e-12)
        assert np.all(np.linalg.eigvalsh(top) > 0)
        np.testing.assert_allclose(top @ top, np.eye(2) - np.conj(np.swapaxes(W, -1, -2)) @ W, atol=1e-12)


class TestSampler:
    def test_inside_ball(self, rng):
        W = sample_uniform_opball(5, 2, rng, size=500)
        assert np.all(np.linalg.norm(W, ord=2, axis=(-2, -1)) < 1)

    @pytest.mark.parametrize("T", [2, 4])
    def test_m1_norm_law(self, T):
        rng = np.random.default_rng(40 + T)
        W = sample_uniform_opball(T, 1, rng, size=20_000)
        r2 = np.sum(np.abs(W[..., 0]) ** 2, axis=1)
        assert stats.kstest(r2, stats.beta(T - 1, 1).cdf).pvalue > 0.01

    def test_acceptance_rate_area_ratio(self):
        rng = np.random.default_rng(3)
        _, acc = sample_uniform_opball(2, 1, rng, size=200_000, return_acceptance=True)
        # disc of area pi inside the square [-1, 1]^2 of area 4
        assert acc == pytest.approx(math.pi / 4, abs=0.005)

    def test_single_sample_shape(self, rng):
        assert sample_uniform_opball(4, 2, rng).shape == (2, 2)

    def test_volume(self):
        assert opball_volume(2, 1) == pytest.approx(math.pi)
        assert opball_volume(3, 1) == pytest.approx(math.pi**2 / 2)


@pytest.mark.parametrize("T", [2, 3, 4])
def test_theta3_jacobian_constant(T):
    rng = np.random.default_rng(T)
    vols = np.array([theta3_jacobian_volume(w) for w in random_ball(rng, 50, T - 1, 0.95)])
    assert vols.std() / vols.mean() < 1e-4
    assert vols.mean() == pytest.approx(1.0, rel=1e-6)


def test_change_of_variables_identity():
    rng = np.random.default_rng(77)

    def f(A):
        return np.exp(-np.sum(np.abs(A) ** 2, axis=(-2, -1)))

    (left, lse), (right, rse) = change_of_variables_integrals(f, 3, 1, 200_000, rng)
    assert abs(left - right) < 3 * math.hypot(lse, rse)


class TestFullChain:
    @pytest.mark.parametrize("T", [2, 4, 6])
    def test_roundtrip(self, rng, T):
        p = rng.uniform(size=(10_000, 2 * (T - 1)))
        assert np.max(np.abs(grass_map_inv(grass_map(p)) - p)) < 1e-9

    @pytest.mark.parametrize("T", [2, 4, 6])
    def test_first_coordinate_law(self, T):
        rng = np.random.default_rng(200 + T)
        x = grass_map(rng.uniform(size=(100_000, 2 * (T - 1))))
        assert stats.kstest(np.abs(x[:, 0]) ** 2, stats.beta(1, T - 1).cdf).pvalue > 0.01

    def test_pairwise_distances_match_gaussian_sampler(self):
        rng = np.random.default_rng(31)
        T, n = 3, 2000
        x = grass_map(rng.uniform(size=(n, 2 * (T - 1))))
        g = cn(rng, (n, T))
        g /= np.linalg.norm(g, axis=1, keepdims=True)
        iu = np.triu_indices(n, 1)
        d1 = pairwise_chordal(x)[iu]
        d2 = pairwise_chordal(g)[iu]
        assert stats.ks_2samp(d1, d2).pvalue > 0.01


def test_chordal_distance_basics():
    e1 = np.array([1, 0], complex)
    e2 = np.array([0, 1], complex)
    assert chordal_distance(e1, e2) == 1.0
    assert chordal_distance(e1, 1j * e1) == 0.0
