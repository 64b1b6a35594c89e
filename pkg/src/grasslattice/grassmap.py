"""Unit ball -> Grassmannian lifts and their Jacobian bookkeeping.

For lines (M = 1) a ball point w in C^(T-1) is lifted to the unit vector
x = [sqrt(1 - |w|^2), w]. The general-M versions work with the operator-norm
ball of (T-M) x M matrices:

    Theta(A)     = A (I + A^H A)^(-1/2)
    Theta^-1(W)  = W (I - W^H W)^(-1/2)
    lift(W)      = [sqrt(I - W^H W); W]

The finite-difference helpers at the bottom are used to check the closed-form
Jacobians numerically; they treat complex arrays as real vectors by stacking
real and imaginary parts.
"""

import math

import numpy as np

__all__ = [
    "theta3",
    "theta3_inv",
    "big_theta",
    "big_theta_inv",
    "jacobian_closed_form",
    "lift_subspace",
    "sample_uniform_opball",
    "opball_volume",
    "canonical_phase",
    "chordal_distance",
    "numerical_jacobian",
    "jacobian_det",
    "theta3_jacobian_volume",
    "change_of_variables_integrals",
]

_EIG_FLOOR = 1e-14
_OPNORM_LIMIT = 1.0 - 1e-12


def theta3(w):
    """Lift ball points (..., T-1) to unit vectors (..., T) with real first entry."""
    w = np.asarray(w, dtype=complex)
    r2 = np.sum(np.abs(w) ** 2, axis=-1)
    if np.any(r2 >= 1):
        raise ValueError("theta3 needs |w| < 1")
    head = np.sqrt(1.0 - r2)[..., None].astype(complex)
    return np.concatenate([head, w], axis=-1)


def theta3_inv(x, atol=1e-12):
    """Drop the first coordinate of a canonical representative.

    The first entry must be real (imaginary part within `atol`) and positive.
    Use :func:`canonical_phase` first for arbitrary representatives.
    """
    x = np.asarray(x, dtype=complex)
    x0 = x[..., 0]
    if np.any(np.abs(x0.imag) > atol) or np.any(x0.real <= 0):
        raise ValueError("theta3_inv needs a representative with real positive first entry")
    return x[..., 1:].copy()


def canonical_phase(x):
    """Rotate each representative so its first entry is real and nonnegative."""
    x = np.asarray(x, dtype=complex)
    x0 = x[..., :1]
    mag = np.abs(x0)
    phase = np.where(mag > 0, np.conj(x0) / np.where(mag > 0, mag, 1.0), 1.0)
    return x * phase


def chordal_distance(x, y):
    """Chordal distance sqrt(1 - |x^H y|^2) between unit representatives of lines."""
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    ip = np.abs(np.sum(np.conj(x) * y, axis=-1)) ** 2
    return np.sqrt(np.clip(1.0 - ip, 0.0, None))


def _hermitian_power(G, power):
    vals, vecs = np.linalg.eigh(G)
    vals = np.maximum(vals, _EIG_FLOOR)
    return (vecs * vals[..., None, :] ** power) @ np.conj(np.swapaxes(vecs, -1, -2))


def _gram(A):
    return np.conj(np.swapaxes(A, -1, -2)) @ A


def _opnorm(W):
    return np.linalg.norm(W, ord=2, axis=(-2, -1))


def big_theta(A):
    """A (I + A^H A)^(-1/2), mapping C^((T-M) x M) into the open operator-norm ball."""
    A = np.asarray(A, dtype=complex)
    eye = np.eye(A.shape[-1])
    return A @ _hermitian_power(eye + _gram(A), -0.5)


def big_theta_inv(W):
    """W (I - W^H W)^(-1/2); rejects |W|_op >= 1 - 1e-12."""
    W = np.asarray(W, dtype=complex)
    if np.any(_opnorm(W) >= _OPNORM_LIMIT):
        raise ValueError("big_theta_inv needs operator norm below 1")
    eye = np.eye(W.shape[-1])
    return W @ _hermitian_power(eye - _gram(W), -0.5)


def jacobian_closed_form(A, T):
    """Real Jacobian of big_theta at A: det(I + A^H A)^(-T).

    The determinant is taken at the domain point A. Evaluating the same
    expression at W = big_theta(A) does not match finite differences.
    """
    A = np.asarray(A, dtype=complex)
    eye = np.eye(A.shape[-1])
    det = np.linalg.det(eye + _gram(A)).real
    return det ** (-float(T))


def lift_subspace(W):
    """Stiefel representative [sqrt(I - W^H W); W] of shape (..., T, M)."""
    W = np.asarray(W, dtype=complex)
    if np.any(_opnorm(W) >= _OPNORM_LIMIT):
        raise ValueError("lift_subspace needs operator norm below 1")
    eye = np.eye(W.shape[-1])
    top = _hermitian_power(eye - _gram(W), 0.5)
    return np.concatenate([top, W], axis=-2)


def sample_uniform_opball(T, M, rng, size=None, return_acceptance=False):
    """Uniform samples from {W in C^((T-M) x M) : |W|_op < 1} by rejection.

    Each complex entry is proposed uniformly on the square [-1, 1]^2, which
    contains the ball. Returns shape (T-M, M) when `size` is None, otherwise
    (size, T-M, M). With `return_acceptance`, also returns accepted/proposed.
    """
    if not 1 <= M < T:
        raise ValueError(f"need 1 <= M < T, got T={T}, M={M}")
    n = 1 if size is None else int(size)
    shape = (T - M, M)
    out = np.empty((n,) + shape, dtype=complex)
    filled = accepted = proposed = 0
    while filled < n:
        batch = max(1024, 2 * (n - filled))
        re = rng.uniform(-1.0, 1.0, size=(batch,) + shape)
        im = rng.uniform(-1.0, 1.0, size=(batch,) + shape)
        cand = re + 1j * im
        if M == 1:
            norms = np.linalg.norm(cand[..., 0], axis=-1)
        else:
            norms = _opnorm(cand)
        keep = cand[norms < 1.0]
        take = min(len(keep), n - filled)
        out[filled : filled + take] = keep[:take]
        filled += take
        accepted += len(keep)
        proposed += batch
    result = out[0] if size is None else out
    if return_acceptance:
        return result, accepted / proposed
    return result


def opball_volume(T, M):
    """Lebesgue volume of the operator-norm unit ball; closed form for M = 1 only."""
    if M != 1:
        raise NotImplementedError("closed-form volume available for M = 1 only")
    d = T - 1
    return math.pi**d / math.factorial(d)


def _to_real(z):
    z = np.asarray(z, dtype=complex).ravel()
    return np.concatenate([z.real, z.imag])


def _from_real(v, shape):
    n = v.size // 2
    return (v[:n] + 1j * v[n:]).reshape(shape)


def numerical_jacobian(func, z, h=1e-6):
    """Central-difference real Jacobian of a complex map at the complex point z.

    Returns a matrix with one column per real input coordinate
    (real parts first, then imaginary parts) and rows likewise for the output.
    """
    z = np.asarray(z, dtype=complex)
    v = _to_real(z)
    cols = []
    for i in range(v.size):
        e = np.zeros_like(v)
        e[i] = h
        fp = _to_real(func(_from_real(v + e, z.shape)))
        fm = _to_real(func(_from_real(v - e, z.shape)))
        cols.append((fp - fm) / (2 * h))
    return np.stack(cols, axis=1)


def jacobian_det(func, z, h=1e-6):
    """|det| of the real Jacobian of a dimension-preserving complex map."""
    return abs(np.linalg.det(numerical_jacobian(func, z, h)))


def theta3_jacobian_volume(w, h=1e-6):
    """Volume factor of theta3 at w, measured on the Grassmannian.

    Each directional derivative is projected onto the complex orthogonal
    complement of x = theta3(w) (the horizontal space of the line through x)
    and the volume of the resulting parallelepiped is sqrt(det(J^T J)).
    """
    w = np.asarray(w, dtype=complex)
    x = theta3(w)
    J = numerical_jacobian(theta3, w, h)
    T = x.size
    cx = J[:T] + 1j * J[T:]  # complex tangent columns
    cx = cx - np.outer(x, np.conj(x) @ cx)
    Jr = np.concatenate([cx.real, cx.imag], axis=0)
    return math.sqrt(abs(np.linalg.det(Jr.T @ Jr)))


def change_of_variables_integrals(f, T, M, n, rng):
    """Monte Carlo estimates of both sides of the Theta change of variables.

    left  = integral over C^((T-M) x M) of f(A) / det(I + A^H A)^T dA,
            by importance sampling A ~ CN(0, I) (density exp(-|A|^2) / pi^k).
    right = integral over the op-norm ball of f(Theta^-1(W)) dW,
            via uniform ball samples times the ball volume.

    Returns ((left, left_se), (right, right_se)).
    """
    k = (T - M) * M
    shape = (n, T - M, M)
    A = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / math.sqrt(2)
    dens = np.exp(-np.sum(np.abs(A) ** 2, axis=(-2, -1))) / math.pi**k
    lw = f(A) * jacobian_closed_form(A, T) / dens
    W = sample_uniform_opball(T, M, rng, size=n)
    vol = opball_volume(T, M)
    rw = f(big_theta_inv(W)) * vol
    return (
        (lw.mean(), lw.std(ddof=1) / math.sqrt(n)),
        (rw.mean(), rw.std(ddof=1) / math.sqrt(n)),
    )
