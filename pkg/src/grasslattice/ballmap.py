"""Radial rescaling between complex Gaussian space and the unit ball.

A standard complex Gaussian z in C^d is pushed to a uniform point of the unit
ball by w = z * f_d(|z|), where

    f_d(t) = (1/t) * (1 - exp(-t^2) * sum_{k<d} t^(2k)/k!) ** (1/(2d)).

The bracketed term is the regularized lower incomplete gamma P(d, t^2), which
is also the CDF of a chi-squared variable with 2d degrees of freedom at 2t^2.
"""

import math

import numpy as np

__all__ = [
    "radial_profile",
    "radial_norm",
    "theta2",
    "theta2_via_chi2",
    "chi2_cdf",
    "theta2_inv",
    "theta2_inv_radius",
]

_SERIES_MAX_TERMS = 1000


def _series_sum(d, x):
    """S(x) = sum_{n>=0} x^n / ((d+1)(d+2)...(d+n)), all terms positive.

    P(d, x) = exp(-x) x^d / d! * S(x). Used for x < d + 1 where the ratio of
    successive terms is below one.
    """
    total = np.ones_like(x)
    term = np.ones_like(x)
    for n in range(1, _SERIES_MAX_TERMS):
        term = term * x / (d + n)
        total = total + term
        if np.all(term <= 1e-17 * total):
            break
    return total


def _upper_closed_form(d, x):
    """Q(d, x) = exp(-x) * sum_{k<d} x^k / k!, evaluated with log-space terms."""
    with np.errstate(divide="ignore"):
        logx = np.log(x)
    total = np.zeros_like(x)
    for k in range(d):
        total = total + np.exp(-x + k * logx - math.lgamma(k + 1))
    return total


def _lower_gamma_reg(d, x):
    """Regularized lower incomplete gamma P(d, x) for integer d >= 1, x >= 0."""
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    small = x < d + 1
    if np.any(small):
        xs = x[small]
        with np.errstate(divide="ignore"):
            lead = np.exp(-xs + d * np.log(xs) - math.lgamma(d + 1))
        out[small] = lead * _series_sum(d, xs)
    if np.any(~small):
        out[~small] = 1.0 - _upper_closed_form(d, x[~small])
    return out


def _check_dim(d):
    if int(d) != d or d < 1:
        raise ValueError(f"dimension d must be a positive integer, got {d}")
    return int(d)


def radial_profile(t, d):
    """Scalar profile f_d(t) with w = z f_d(|z|), for t >= 0.

    For t^2 < d + 1 the form (exp(-t^2) S(t^2) / d!)^(1/(2d)) is used; the
    factor t cancels analytically so t = 0 returns the limit (d!)^(-1/(2d))
    without a special case.
    """
    d = _check_dim(d)
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ValueError("radial_profile needs t >= 0")
    x = t * t
    out = np.empty_like(x)
    small = x < d + 1
    if np.any(small):
        xs = x[small]
        out[small] = (np.exp(-xs - math.lgamma(d + 1)) * _series_sum(d, xs)) ** (0.5 / d)
    if np.any(~small):
        out[~small] = (1.0 - _upper_closed_form(d, x[~small])) ** (0.5 / d) / t[~small]
    return out if out.ndim else float(out)


def radial_norm(s, d):
    """g(s) = s f_d(s) = P(d, s^2)^(1/(2d)): the ball radius reached from |z| = s."""
    d = _check_dim(d)
    s = np.asarray(s, dtype=float)
    out = _lower_gamma_reg(d, s * s) ** (0.5 / d)
    return out if out.ndim else float(out)


def theta2(z):
    """Gaussian vectors (..., d) to ball points (..., d); z = 0 maps to 0.

    |w| < 1 holds mathematically, but once P(d, |z|^2) rounds to 1.0 (|z|^2
    above roughly 37 + d) the computed norm is exactly 1.
    """
    z = np.asarray(z, dtype=complex)
    d = z.shape[-1]
    t = np.linalg.norm(z, axis=-1)
    return z * np.asarray(radial_profile(t, d))[..., None]


def chi2_cdf(y, dof):
    """CDF of a chi-squared variable with an even number of degrees of freedom.

    Closed form 1 - exp(-y/2) sum_{k < dof/2} (y/2)^k / k!. For small y the
    subtraction cancels, so the equivalent positive series is used there.
    """
    if int(dof) != dof or dof < 2 or dof % 2:
        raise ValueError(f"chi2_cdf supports even dof >= 2 only, got {dof}")
    y = np.asarray(y, dtype=float)
    if np.any(y < 0):
        raise ValueError("chi2_cdf needs y >= 0")
    out = _lower_gamma_reg(int(dof) // 2, 0.5 * y)
    return out if out.ndim else float(out)


def theta2_via_chi2(z):
    """Same map as :func:`theta2`, built as (z/|z|) * F_chi2(2|z|^2)^(1/(2d)).

    Raises ValueError for a zero vector, where the direction is undefined.
    """
    z = np.asarray(z, dtype=complex)
    d = z.shape[-1]
    t = np.linalg.norm(z, axis=-1)
    if np.any(t == 0):
        raise ValueError("theta2_via_chi2 is undefined at z = 0")
    scale = np.asarray(chi2_cdf(2.0 * t * t, 2 * d)) ** (0.5 / d)
    return z / t[..., None] * scale[..., None]


def theta2_inv_radius(r, d, tol=1e-13, max_iter=200):
    """Solve s f_d(s) = r for s >= 0 by bisection, elementwise over r in [0, 1).

    The upper bracket starts at 1 and doubles until g(s_hi) >= r; g is
    strictly increasing with range [0, 1) so this always terminates.
    """
    d = _check_dim(d)
    r = np.asarray(r, dtype=float)
    if np.any((r < 0) | (r >= 1)) or not np.all(np.isfinite(r)):
        raise ValueError("ball radius must lie in [0, 1)")
    lo = np.zeros_like(r)
    hi = np.ones_like(r)
    for _ in range(2000):
        short = radial_norm(hi, d) < r
        if not np.any(short):
            break
        hi = np.where(short, 2.0 * hi, hi)
    for _ in range(max_iter):
        if np.all(hi - lo <= tol):
            break
        mid = 0.5 * (lo + hi)
        below = radial_norm(mid, d) < r
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    s = 0.5 * (lo + hi)
    s = np.where(r == 0, 0.0, s)
    return s if s.ndim else float(s)


def theta2_inv(w):
    """Ball points (..., d) with |w| < 1 back to Gaussian vectors (..., d)."""
    w = np.asarray(w, dtype=complex)
    d = w.shape[-1]
    r = np.linalg.norm(w, axis=-1)
    if np.any(r >= 1):
        raise ValueError("theta2_inv needs |w| < 1")
    s = np.asarray(theta2_inv_radius(r, d))
    with np.errstate(invalid="ignore", divide="ignore"):
        unit = np.where(r[..., None] > 0, w / r[..., None], 0.0)
    return unit * s[..., None]
