"""
Error rates against a pilot-based baseline
==========================================

Compare Grass-Lattice with one pilot symbol plus 16-QAM at the same rate
(T = 2, 2 bits per channel use) and report where each reaches BER 1e-3.
"""

import numpy as np

from grasslattice import CodecConfig
from grasslattice.simkit import (
    StopRule,
    default_alpha,
    pilot_baseline,
    required_ebn0,
    run_error_rate,
)

snrs = np.arange(0.0, 41.0, 5.0)
stop = StopRule(min_symbol_errors=200, max_blocks=500_000)
cfg = CodecConfig(2, 2, default_alpha(2, 2, 1))

gl = run_error_rate(cfg, 1, snrs, stop, seed=4)
pl = pilot_baseline(2, 1, 16, 0.5, snrs, stop, seed=4)

print(" Eb/N0   Grass-Lattice SER / BER     pilot+16QAM SER / BER")
for a, b in zip(gl, pl):
    print(f"{a.ebn0_db:6.2f}   {a.ser:.2e} / {a.ber:.2e}        {b.ser:.2e} / {b.ber:.2e}")

print("Eb/N0 for BER 1e-3: Grass-Lattice %.2f dB, pilot %.2f dB"
      % (required_ebn0(gl, 1e-3), required_ebn0(pl, 1e-3)))

# a second receive antenna buys diversity
gl2 = run_error_rate(cfg, 2, [20.0], stop, seed=4)[0]
print(f"20 dB SER with N=1: {gl[4].ser:.2e}, with N=2: {gl2.ser:.2e}")
