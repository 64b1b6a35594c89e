"""Rayleigh block-fading SIMO channel, ML detection and small helpers."""

from dataclasses import dataclass
import math

import numpy as np

__all__ = [
    "ChannelRealization",
    "draw_channel",
    "transmit",
    "ml_detect",
    "hopf_project",
    "ebn0_from_snr",
    "snr_from_ebn0",
    "db_to_linear",
]


def db_to_linear(db):
    return 10.0 ** (np.asarray(db, dtype=float) / 10.0)


def ebn0_from_snr(snr_db, R):
    """Eb/N0 in dB for an SNR in dB and a spectral efficiency R > 0 (b/s/Hz)."""
    if R <= 0:
        raise ValueError("spectral efficiency must be positive")
    return snr_db - 10.0 * math.log10(R)


def snr_from_ebn0(ebn0_db, R):
    if R <= 0:
        raise ValueError("spectral efficiency must be positive")
    return ebn0_db + 10.0 * math.log10(R)


def _cn(rng, shape):
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) * math.sqrt(0.5)


@dataclass
class ChannelRealization:
    """One draw of fading and noise for a batch of coherence blocks.

    h has shape (n, N) and noise (n, T, N), both i.i.d. CN(0, 1). rho is the
    linear SNR; math.inf means a noiseless channel.
    """

    h: np.ndarray
    noise: np.ndarray
    rho: float

    @property
    def noise_scale(self):
        return 0.0 if math.isinf(self.rho) else math.sqrt(1.0 / (self.noise.shape[-2] * self.rho))

    def apply(self, x):
        """Y = x h^T + sqrt(1/(T rho)) W for codewords x of shape (n, T)."""
        x = np.asarray(x, dtype=complex)
        Y = x[..., :, None] * self.h[..., None, :]
        scale = self.noise_scale
        if scale:
            Y = Y + scale * self.noise
        return Y


def draw_channel(n, T, N, rho, rng):
    if not rho > 0:
        raise ValueError("SNR must be positive")
    return ChannelRealization(h=_cn(rng, (n, N)), noise=_cn(rng, (n, T, N)), rho=rho)


def transmit(x, N, rho, rng):
    """Pass codewords (T,) or (n, T) through fresh fading and noise.

    Returns Y of shape (T, N) or (n, T, N). Fading is drawn before noise so
    the noise stream does not depend on whether rho is finite.
    """
    x = np.asarray(x, dtype=complex)
    single = x.ndim == 1
    xb = x[None] if single else x
    ch = draw_channel(xb.shape[0], xb.shape[1], N, rho, rng)
    Y = ch.apply(xb)
    return Y[0] if single else Y


def ml_detect(Y, codebook):
    """argmax_k |Y^H x_k|^2 over codebook rows; ties go to the lowest index.

    Y has shape (T, N) or (n, T, N); codebook has shape (K, T).
    """
    Y = np.asarray(Y, dtype=complex)
    C = np.asarray(codebook, dtype=complex)
    if C.ndim != 2 or len(C) == 0:
        raise ValueError("codebook must be a nonempty (K, T) array")
    # (..., K, N) projections x_k^H y_n
    proj = np.einsum("kt,...tn->...kn", np.conj(C), Y)
    metric = np.sum(np.abs(proj) ** 2, axis=-1)
    return np.argmax(metric, axis=-1)


def hopf_project(x):
    """Hopf map of unit vectors in C^2 to the real 2-sphere, shape (..., 3).

    (x1, x2) -> (Re 2 x1 conj(x2), Im 2 x1 conj(x2), |x2|^2 - |x1|^2).
    """
    x = np.asarray(x, dtype=complex)
    if x.shape[-1] != 2:
        raise ValueError("the Hopf map needs T = 2")
    x1, x2 = x[..., 0], x[..., 1]
    c = 2.0 * x1 * np.conj(x2)
    return np.stack([c.real, c.imag, np.abs(x2) ** 2 - np.abs(x1) ** 2], axis=-1)
