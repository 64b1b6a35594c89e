import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_ball(rng, n, d, max_radius=1.0):
    """Uniform points in the complex unit ball of C^d (radius scaled by max_radius)."""
    g = rng.standard_normal((n, d)) + 1j * rng.standard_normal((n, d))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    r = rng.uniform(size=n) ** (1.0 / (2 * d)) * max_radius
    return g * r[:, None]


def cn(rng, shape):
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)
