"""Coherent pilot-based baseline: one pilot symbol plus Gray-labeled square QAM.

Block layout for coherence time T: x = [sqrt(p), sqrt((1-p)/(T-1)) d_1, ...,
sqrt((1-p)/(T-1)) d_{T-1}] with E|d_k|^2 = 1, so E|x|^2 = 1 for any pilot
fraction p. The receiver forms the MMSE channel estimate from the pilot row,
applies the per-symbol MMSE equalizer to every data row, removes the MMSE
bias and slices to the nearest QAM point.
"""

import json
import math
from importlib import resources

import numpy as np

from ..codec import gray_decode, gray_encode
from .channel import db_to_linear, draw_channel, ebn0_from_snr
from .montecarlo import ErrorStats, StopRule, _simulate_point, point_rng

__all__ = [
    "QAM",
    "pilot_block",
    "pilot_baseline",
    "pilot_rate",
    "default_power_split",
    "sweep_power_split",
]


class QAM:
    """Square Gray-labeled QAM of order 4^m, normalized to unit average energy.

    The first m bits of a symbol select the in-phase level and the last m
    bits the quadrature level, each through a binary-reflected Gray code.
    """

    def __init__(self, order):
        m = round(math.log(order, 4)) if order > 1 else 0
        if order < 4 or 4**m != order:
            raise ValueError(f"QAM order must be a power of 4 (>= 4), got {order}")
        self.order = order
        self.m = m
        self.levels = 2**m
        self.bits_per_symbol = 2 * m
        self.scale = math.sqrt(2.0 * (self.levels**2 - 1) / 3.0)

    def _pam(self, idx):
        return (2 * idx - (self.levels - 1)) / self.scale

    def modulate(self, bits):
        """Bits (..., 2m) -> complex symbols (...)."""
        bits = np.asarray(bits)
        i = gray_decode(bits[..., : self.m])
        q = gray_decode(bits[..., self.m :])
        return self._pam(i) + 1j * self._pam(q)

    def _slice_axis(self, v):
        idx = np.rint((v * self.scale + (self.levels - 1)) / 2)
        return np.clip(idx, 0, self.levels - 1).astype(np.int64)

    def demodulate(self, s):
        """Nearest-point hard decision: complex (...) -> bits (..., 2m)."""
        s = np.asarray(s, dtype=complex)
        bi = gray_encode(self._slice_axis(s.real), self.m)
        bq = gray_encode(self._slice_axis(s.imag), self.m)
        return np.concatenate([bi, bq], axis=-1)

    def points(self):
        """All symbols with their labels, in label order."""
        k = np.arange(self.order)
        shifts = np.arange(self.bits_per_symbol - 1, -1, -1)
        labels = ((k[:, None] >> shifts) & 1).astype(np.uint8)
        return self.modulate(labels), labels


def pilot_rate(T, qam_order):
    return (T - 1) * math.log2(qam_order) / T


def pilot_block(data_symbols, power_split):
    """Assemble blocks (..., T) from data symbols (..., T-1)."""
    d = np.asarray(data_symbols, dtype=complex)
    n_data = d.shape[-1]
    head = np.full(d.shape[:-1] + (1,), math.sqrt(power_split), dtype=complex)
    return np.concatenate([head, math.sqrt((1.0 - power_split) / n_data) * d], axis=-1)


def _detect(Y, power_split, rho, qam):
    T = Y.shape[-2]
    sigma2 = 0.0 if math.isinf(rho) else 1.0 / (T * rho)
    a = math.sqrt(power_split)
    c = math.sqrt((1.0 - power_split) / (T - 1))
    h_hat = (a / (power_split + sigma2)) * Y[..., 0, :]
    err_var = sigma2 / (power_split + sigma2)
    noise_var = c * c * err_var + sigma2
    g2 = np.sum(np.abs(h_hat) ** 2, axis=-1)
    # per data row: MMSE estimate, then divide out its bias c^2 g2 / (c^2 g2 + noise_var)
    mf = np.einsum("...n,...tn->...t", np.conj(h_hat), Y[..., 1:, :])
    mmse = c * mf / (c * c * g2 + noise_var)[..., None]
    bias = (c * c * g2 / (c * c * g2 + noise_var))[..., None]
    with np.errstate(invalid="ignore", divide="ignore"):
        d_hat = np.where(bias > 0, mmse / bias, 0.0)
    return qam.demodulate(d_hat)


def pilot_baseline(T, N, qam_order, power_split=None, snr_db_list=(), stop=StopRule(), seed=0):
    """SER/BER of the pilot scheme, one ErrorStats per SNR point.

    power_split is the fraction of block energy on the pilot; None picks
    :func:`default_power_split`. The value used is stored in
    ``stats.extra['power_split']``.
    """
    qam = QAM(qam_order)
    if power_split is None:
        power_split = default_power_split(T, N, qam_order)
    if not 0.0 < power_split < 1.0:
        raise ValueError("power_split must lie in (0, 1)")
    n_bits = (T - 1) * qam.bits_per_symbol
    R = pilot_rate(T, qam_order)

    out = []
    for snr_db in snr_db_list:
        rho = math.inf if math.isinf(snr_db) else float(db_to_linear(snr_db))

        def run(n, rng):
            bits = rng.integers(0, 2, size=(n, T - 1, qam.bits_per_symbol), dtype=np.uint8)
            x = pilot_block(qam.modulate(bits), power_split)
            Y = draw_channel(n, T, N, rho, rng).apply(x)
            wrong = _detect(Y, power_split, rho, qam) != bits
            wrong = wrong.reshape(n, -1)
            return int(np.count_nonzero(wrong.any(axis=1))), int(np.count_nonzero(wrong))

        blocks, sym, bit = _simulate_point(run, snr_db, stop, point_rng(seed, snr_db))
        out.append(
            ErrorStats(
                blocks, sym, bit, float(snr_db), ebn0_from_snr(snr_db, R), n_bits,
                extra={"power_split": power_split},
            )
        )
    return out


def _load_defaults():
    try:
        text = resources.files("grasslattice").joinpath("data/power_split_defaults.json").read_text()
    except FileNotFoundError:
        return {}
    return json.loads(text).get("table", {})


def default_power_split(T, N, qam_order):
    """Pilot energy fraction: 1/2 for T = 2, otherwise the cached sweep result.

    Falls back to 1/2 when no cached value exists for (T, N, qam_order).
    """
    if T == 2:
        return 0.5
    return float(_load_defaults().get(f"{T},{N},{qam_order}", 0.5))


def sweep_power_split(T, N, qam_order, snr_db, grid, stop=StopRule(), seed=0):
    """Coarse search for the pilot fraction with the lowest SER at one SNR."""
    ser = []
    for p in grid:
        ser.append(pilot_baseline(T, N, qam_order, float(p), [snr_db], stop, seed)[0].ser)
    best = int(np.argmin(ser))
    return float(grid[best]), ser
