"""Bit-level Grass-Lattice encoder and decoder.

Each real coordinate of the hypercube carries B bits through a Gray-labeled
lattice of 2^B equispaced points on [alpha, 1 - alpha]. A bit word of length
2B(T-1) is split into 2(T-1) groups of B bits, in hypercube order
(a_1, ..., a_{T-1}, b_1, ..., b_{T-1}), most significant bit first.

All functions accept a leading batch axis: bit words of shape (..., n_bits),
codewords of shape (..., T) and received blocks of shape (..., T, N).
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .ballmap import theta2, theta2_inv_radius
from .gaussmap import gauss_cdf, theta1
from .grassmap import theta3

__all__ = [
    "CodecConfig",
    "lattice_points",
    "gray_encode",
    "gray_decode",
    "bits_to_indices",
    "indices_to_bits",
    "hypercube_point",
    "encode",
    "denoise",
    "decode",
    "decode_soft",
    "all_words",
    "constellation",
]

_DEGENERATE_V0 = 1e-12
_RADIUS_CAP = 1.0 - 1e-9


@dataclass(frozen=True)
class CodecConfig:
    """Grass-Lattice parameters.

    Attributes
    ----------
    T : int
        Coherence time in symbols (>= 2).
    B : int
        Bits per real hypercube coordinate (>= 1).
    alpha : float
        Lattice margin in (0, 0.5); the lattice spans [alpha, 1 - alpha].
    """

    T: int
    B: int
    alpha: float

    def __post_init__(self):
        if int(self.T) != self.T or self.T < 2:
            raise ValueError(f"T must be an integer >= 2, got {self.T}")
        if int(self.B) != self.B or self.B < 1:
            raise ValueError(f"B must be an integer >= 1, got {self.B}")
        if not 0.0 < self.alpha < 0.5:
            raise ValueError(f"alpha must lie in (0, 0.5), got {self.alpha}")

    @property
    def dims(self):
        """Number of real hypercube coordinates, 2(T-1)."""
        return 2 * (self.T - 1)

    @property
    def n_bits(self):
        return self.B * self.dims

    @property
    def K(self):
        """Constellation size 2^(2B(T-1))."""
        return 2**self.n_bits

    @property
    def rate(self):
        """Spectral efficiency 2B(T-1)/T in b/s/Hz."""
        return self.n_bits / self.T

    @cached_property
    def spacing(self):
        return (1.0 - 2.0 * self.alpha) / (2**self.B - 1)


def lattice_points(cfg):
    """The 2^B points alpha + p (1 - 2 alpha) / (2^B - 1), p = 0..2^B - 1."""
    return cfg.alpha + np.arange(2**cfg.B) * cfg.spacing


def gray_encode(index, B):
    """Binary-reflected Gray code of `index` as B bits (MSB first), shape (..., B)."""
    index = np.asarray(index)
    if np.any((index < 0) | (index >= 2**B)):
        raise ValueError(f"index out of range for B={B}")
    g = index ^ (index >> 1)
    shifts = np.arange(B - 1, -1, -1)
    return ((g[..., None] >> shifts) & 1).astype(np.uint8)


def gray_decode(bits):
    """Inverse of :func:`gray_encode`: bits (..., B) -> lattice index (...)."""
    bits = np.asarray(bits).astype(np.int64)
    # binary bit i is the XOR of Gray bits 0..i
    binary = np.bitwise_xor.accumulate(bits, axis=-1)
    B = bits.shape[-1]
    weights = 1 << np.arange(B - 1, -1, -1)
    return binary @ weights


def _check_bits(bits, cfg):
    bits = np.asarray(bits)
    if bits.shape[-1] != cfg.n_bits:
        raise ValueError(f"expected {cfg.n_bits} bits per word, got {bits.shape[-1]}")
    if np.any((bits != 0) & (bits != 1)):
        raise ValueError("bits must be 0 or 1")
    return bits.astype(np.uint8)


def bits_to_indices(bits, cfg):
    """Bit words (..., 2B(T-1)) -> lattice indices (..., 2(T-1))."""
    bits = _check_bits(bits, cfg)
    groups = bits.reshape(bits.shape[:-1] + (cfg.dims, cfg.B))
    return gray_decode(groups)


def indices_to_bits(indices, cfg):
    """Lattice indices (..., 2(T-1)) -> bit words (..., 2B(T-1))."""
    indices = np.asarray(indices)
    bits = gray_encode(indices, cfg.B)
    return bits.reshape(indices.shape[:-1] + (cfg.n_bits,))


def hypercube_point(bits, cfg):
    """Lattice coordinates (a, b) selected by a bit word."""
    return lattice_points(cfg)[bits_to_indices(bits, cfg)]


def encode(bits, cfg):
    """Bit words -> unit-norm codewords (..., T) with real positive first entry."""
    return theta3(theta2(theta1(hypercube_point(bits, cfg))))


def denoise(Y):
    """Dominant left singular vector of the T x N block Y (batched over leading axes).

    For N = 1 this is y / |y|. Otherwise the dominant eigenvector of the
    smaller Gram matrix is taken (Y Y^H when T <= N, else Y^H Y mapped back
    through Y). The overall phase of the result is arbitrary.
    """
    Y = np.asarray(Y, dtype=complex)
    if Y.ndim < 2:
        raise ValueError("denoise expects a block of shape (..., T, N)")
    T, N = Y.shape[-2:]
    fro = np.linalg.norm(Y, axis=(-2, -1))
    if np.any(fro == 0):
        raise ValueError("received block is identically zero")
    if N == 1:
        return Y[..., 0] / fro[..., None]
    YH = np.conj(np.swapaxes(Y, -1, -2))
    if T <= N:
        _, vecs = np.linalg.eigh(Y @ YH)
        r = vecs[..., :, -1]
    else:
        _, vecs = np.linalg.eigh(YH @ Y)
        r = (Y @ vecs[..., :, -1:])[..., 0]
        r = r / np.linalg.norm(r, axis=-1, keepdims=True)
    return r


def _ball_estimate(r):
    """Strip the phase of the first entry: unit vector r = (v0, v) -> ball point w, its radius, capped radius."""
    v0 = r[..., 0]
    v = r[..., 1:]
    mag = np.abs(v0)
    degenerate = mag < _DEGENERATE_V0
    phase = np.where(degenerate, 1.0, np.conj(v0) / np.where(degenerate, 1.0, mag))
    norm_r = np.linalg.norm(r, axis=-1)
    w = v * (phase / norm_r)[..., None]
    radius = np.linalg.norm(w, axis=-1)
    capped = np.where(degenerate | (radius > _RADIUS_CAP), _RADIUS_CAP, radius)
    return w, radius, capped


def decode_soft(Y, cfg):
    """Run decoder steps up to the unquantized hypercube estimate (..., 2(T-1))."""
    Y = np.asarray(Y, dtype=complex)
    if Y.shape[-2] != cfg.T:
        raise ValueError(f"block has {Y.shape[-2]} rows, configuration has T={cfg.T}")
    r = denoise(Y)
    w, radius, capped = _ball_estimate(r)
    s = np.asarray(theta2_inv_radius(capped, cfg.T - 1))
    with np.errstate(invalid="ignore", divide="ignore"):
        unit = np.where(radius[..., None] > 0, w / radius[..., None], 0.0)
    z = unit * s[..., None]
    return np.concatenate([gauss_cdf(z.real), gauss_cdf(z.imag)], axis=-1)


def _snap(u, cfg):
    # round half up, clamped to the lattice
    idx = np.floor((u - cfg.alpha) / cfg.spacing + 0.5)
    return np.clip(idx, 0, 2**cfg.B - 1).astype(np.int64)


def decode(Y, cfg):
    """Received blocks (..., T, N) -> decoded bit words (..., 2B(T-1)).

    A 1-D input of length T is treated as a single-antenna block.
    """
    Y = np.asarray(Y, dtype=complex)
    if Y.ndim == 1:
        Y = Y[:, None]
    return indices_to_bits(_snap(decode_soft(Y, cfg), cfg), cfg)


def all_words(cfg):
    """Every bit word of the constellation, shape (K, 2B(T-1)), in index order."""
    if cfg.n_bits > 24:
        raise ValueError(f"refusing to enumerate 2^{cfg.n_bits} words")
    k = np.arange(cfg.K)
    shifts = np.arange(cfg.n_bits - 1, -1, -1)
    return ((k[:, None] >> shifts) & 1).astype(np.uint8)


def constellation(cfg):
    """Full codebook (K, T) generated from :func:`all_words`."""
    return encode(all_words(cfg), cfg)
