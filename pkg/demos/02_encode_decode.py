"""
Encoding and decoding bits
==========================

A Grass-Lattice codeword is computed on the fly from its bit label; there is
no stored table. The decoder inverts the chain and snaps to the lattice.
"""

import numpy as np

from grasslattice import CodecConfig, decode, encode
from grasslattice.simkit import min_chordal_distance, transmit

cfg = CodecConfig(T=4, B=2, alpha=0.14)
print(f"T={cfg.T}, B={cfg.B}: {cfg.n_bits} bits per block, K={cfg.K}, rate {cfg.rate} bit/channel use")

rng = np.random.default_rng(1)
bits = rng.integers(0, 2, size=cfg.n_bits)
x = encode(bits, cfg)
print("bits    :", "".join(map(str, bits)))
print("codeword:", np.round(x, 4))

# the receiver sees x h^T plus noise; the unknown fading h is never estimated
Y = transmit(x, N=2, rho=10 ** (25 / 10), rng=rng)
print("decoded :", "".join(map(str, decode(Y, cfg))))

# a whole batch at once, at a lower SNR
words = rng.integers(0, 2, size=(10_000, cfg.n_bits))
Y = transmit(encode(words, cfg), N=2, rho=10 ** (15 / 10), rng=rng)
wrong = decode(Y, cfg) != words
print(f"15 dB, N=2: SER {wrong.any(axis=1).mean():.4f}, BER {wrong.mean():.5f}")

# small constellations can still be enumerated and their packing measured
small = CodecConfig(T=2, B=2, alpha=0.14)
print("min chordal distance, T=2 B=2:", round(min_chordal_distance(small), 4))
