"""Hypercube <-> complex Gaussian maps by componentwise inverse-transform sampling.

Each real coordinate u in (0, 1) is sent to F^{-1}(u), where F is the CDF of a
real Gaussian with variance 1/2, so a pair (a_k, b_k) of uniforms gives one
CN(0, 1) sample z_k = F^{-1}(a_k) + j F^{-1}(b_k).

Hypercube points are stored as real arrays of shape (..., 2(T-1)) laid out as
(a_1, ..., a_{T-1}, b_1, ..., b_{T-1}).
"""

import numpy as np
from scipy.special import erfc, erfcinv

__all__ = ["gauss_cdf", "gauss_icdf", "theta1", "theta1_inv"]

_INV_SQRT_PI = 1.0 / np.sqrt(np.pi)


def gauss_cdf(t):
    """CDF of N(0, 1/2): F(t) = erfc(-t) / 2.

    erfc keeps full relative accuracy in the lower tail, and the upper tail
    is 1 - tiny so absolute accuracy there is set by rounding of the result.
    """
    return 0.5 * erfc(-np.asarray(t, dtype=float))


def _tail_pdf(t):
    return _INV_SQRT_PI * np.exp(-t * t)


def gauss_icdf(u):
    """Inverse of :func:`gauss_cdf` on the open interval (0, 1).

    Raises
    ------
    ValueError
        If any entry is outside (0, 1) or not finite.
    """
    u = np.asarray(u, dtype=float)
    if not np.all((u > 0.0) & (u < 1.0)):
        raise ValueError("gauss_icdf is defined only on the open interval (0, 1)")
    # Work with the smaller tail mass q <= 1/2; 1 - u is exact for u >= 1/2.
    upper = u > 0.5
    q = np.where(upper, 1.0 - u, u)
    t = -erfcinv(2.0 * q)  # t <= 0, solves erfc(-t)/2 = q
    for _ in range(2):
        t = t - (0.5 * erfc(-t) - q) / _tail_pdf(t)
    t = np.where(upper, -t, t)
    return t if t.ndim else float(t)


def _split(p):
    p = np.asarray(p, dtype=float)
    n = p.shape[-1]
    if n % 2 or n == 0:
        raise ValueError(f"hypercube point needs an even, nonzero length, got {n}")
    return p[..., : n // 2], p[..., n // 2 :]


def theta1(p):
    """Map hypercube points (..., 2(T-1)) to complex Gaussian vectors (..., T-1)."""
    a, b = _split(p)
    return gauss_icdf(a) + 1j * gauss_icdf(b)


def theta1_inv(z):
    """Map complex vectors (..., T-1) back to hypercube points (..., 2(T-1))."""
    z = np.asarray(z, dtype=complex)
    return np.concatenate([gauss_cdf(z.real), gauss_cdf(z.imag)], axis=-1)
