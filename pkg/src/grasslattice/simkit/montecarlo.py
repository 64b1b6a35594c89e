"""Monte Carlo SER/BER estimation for Grass-Lattice and file-loaded codebooks.

Every SNR point draws from its own RNG stream derived from (seed, snr_db), so
results for a point do not depend on which other points are in the list or
their order. Blocks are simulated in fixed-size chunks; a point stops after
the first chunk that brings the symbol-error count to `min_symbol_errors`,
or when `max_blocks` is reached.
"""

from dataclasses import dataclass, field
import math
import struct

import numpy as np

from ..codec import CodecConfig, decode, encode
from .channel import db_to_linear, draw_channel, ebn0_from_snr, ml_detect

__all__ = [
    "StopRule",
    "ErrorStats",
    "AlphaSweep",
    "point_rng",
    "run_error_rate",
    "sweep_alpha",
    "run_ml_error_rate",
    "required_ebn0",
]

DEFAULT_CHUNK = 20_000


@dataclass(frozen=True)
class StopRule:
    min_symbol_errors: int = 100
    max_blocks: int = 10_000_000
    chunk: int = DEFAULT_CHUNK


@dataclass
class ErrorStats:
    """Tallies for one operating point.

    `bits_per_block` is the number of bits in one block; BER is NaN when the
    scheme has no bit labels (bits_per_block = 0).
    """

    blocks: int
    symbol_errors: int
    bit_errors: int
    snr_db: float
    ebn0_db: float
    bits_per_block: int
    extra: dict = field(default_factory=dict)

    @property
    def ser(self):
        return self.symbol_errors / self.blocks if self.blocks else math.nan

    @property
    def ber(self):
        if not self.blocks or not self.bits_per_block:
            return math.nan
        return self.bit_errors / (self.blocks * self.bits_per_block)

    @property
    def ser_std(self):
        """Binomial standard error of the SER estimate."""
        p = self.ser
        return math.sqrt(p * (1.0 - p) / self.blocks)


def _float_key(x):
    return struct.unpack("<Q", struct.pack("<d", float(x)))[0]


def point_rng(seed, *keys):
    """Generator for the stream identified by a seed and float-valued keys."""
    entropy = [int(seed) & (2**64 - 1)] + [_float_key(k) for k in keys]
    return np.random.default_rng(np.random.SeedSequence(entropy))


def _simulate_point(draw_and_count, snr_db, stop, rng):
    blocks = sym = bit = 0
    while blocks < stop.max_blocks and sym < stop.min_symbol_errors:
        n = min(stop.chunk, stop.max_blocks - blocks)
        s, b = draw_and_count(n, rng)
        blocks += n
        sym += s
        bit += b
    return blocks, sym, bit


def _grasslattice_counter(cfg, N, rho):
    def run(n, rng):
        bits = rng.integers(0, 2, size=(n, cfg.n_bits), dtype=np.uint8)
        x = encode(bits, cfg)
        Y = draw_channel(n, cfg.T, N, rho, rng).apply(x)
        wrong = decode(Y, cfg) != bits
        return int(np.count_nonzero(wrong.any(axis=1))), int(np.count_nonzero(wrong))

    return run


def run_error_rate(cfg, N, snr_db_list, stop=StopRule(), seed=0):
    """Grass-Lattice SER/BER with the low-complexity decoder, one entry per SNR.

    snr_db may be math.inf for a noiseless channel.
    """
    out = []
    for snr_db in snr_db_list:
        rho = math.inf if math.isinf(snr_db) else float(db_to_linear(snr_db))
        blocks, sym, bit = _simulate_point(
            _grasslattice_counter(cfg, N, rho), snr_db, stop, point_rng(seed, snr_db)
        )
        out.append(
            ErrorStats(blocks, sym, bit, float(snr_db), ebn0_from_snr(snr_db, cfg.rate), cfg.n_bits)
        )
    return out


@dataclass
class AlphaSweep:
    alphas: list
    stats: list
    alpha_star: float

    def rows(self):
        return [(a, s.ser, s.ber) for a, s in zip(self.alphas, self.stats)]


def sweep_alpha(T, B, alpha_grid, snr_db, N, stop=StopRule(), seed=0):
    """SER/BER over a grid of lattice margins at one SNR; alpha* minimizes SER.

    All alphas share the stream for (seed, snr_db), i.e. common random
    numbers, which keeps the argmin stable across seeds. Ties in SER go to
    the smallest alpha.
    """
    alphas = [float(a) for a in alpha_grid]
    if not alphas:
        raise ValueError("empty alpha grid")
    stats = [run_error_rate(CodecConfig(T, B, a), N, [snr_db], stop, seed)[0] for a in alphas]
    best = min(range(len(alphas)), key=lambda i: (stats[i].ser, alphas[i]))
    return AlphaSweep(alphas, stats, alphas[best])


def _ml_counter(cb, N, rho):
    C = cb.entries
    labels = cb.labels

    def run(n, rng):
        idx = rng.integers(0, cb.K, size=n)
        Y = draw_channel(n, cb.T, N, rho, rng).apply(C[idx])
        # bound the (n, K, N) projection tensor
        step = max(1, 2_000_000 // max(1, cb.K * N))
        est = np.concatenate([ml_detect(Y[i : i + step], C) for i in range(0, n, step)])
        sym = int(np.count_nonzero(est != idx))
        bit = 0
        if labels is not None:
            bit = int(np.count_nonzero(labels[est] != labels[idx]))
        return sym, bit

    return run


def run_ml_error_rate(cb, N, snr_db_list, stop=StopRule(), seed=0):
    """SER (and BER if labeled) of an arbitrary codebook under ML detection."""
    out = []
    bits = cb.bits_per_word or 0
    for snr_db in snr_db_list:
        rho = math.inf if math.isinf(snr_db) else float(db_to_linear(snr_db))
        blocks, sym, bit = _simulate_point(
            _ml_counter(cb, N, rho), snr_db, stop, point_rng(seed, snr_db)
        )
        out.append(ErrorStats(blocks, sym, bit, float(snr_db), ebn0_from_snr(snr_db, cb.rate), bits))
    return out


def required_ebn0(stats, target_ber=1e-4):
    """Eb/N0 (dB) where the BER curve crosses `target_ber`, by log-linear interpolation.

    Returns NaN if the curve never reaches the target.
    """
    pts = sorted((s.ebn0_db, s.ber) for s in stats if s.blocks and not math.isnan(s.ber))
    for (e0, b0), (e1, b1) in zip(pts, pts[1:]):
        if b0 >= target_ber >= b1 and b1 > 0:
            if b0 == b1:
                return e0
            f = (math.log10(b0) - math.log10(target_ber)) / (math.log10(b0) - math.log10(b1))
            return e0 + f * (e1 - e0)
        if b0 >= target_ber and b1 == 0:
            return e1
    return math.nan
