"""
ML detection with a codebook file
=================================

Any constellation stored in the text codebook format can be simulated with
the exhaustive ML detector. Here a Grass-Lattice codebook is written out,
read back and compared with the low-complexity decoder.
"""

import tempfile
from pathlib import Path

import numpy as np

from grasslattice import CodecConfig
from grasslattice.simkit import (
    Codebook,
    StopRule,
    grasslattice_codebook,
    load_codebook,
    run_error_rate,
    run_ml_error_rate,
    save_codebook,
)

cfg = CodecConfig(2, 2, 0.14)
path = Path(tempfile.mkdtemp()) / "gl_T2_B2.csv"
save_codebook(grasslattice_codebook(cfg), path)
print(path.read_text().splitlines()[0], "...")

cb = load_codebook(path)
stop = StopRule(min_symbol_errors=300, max_blocks=300_000)
for snr in (10.0, 20.0):
    ml = run_ml_error_rate(cb, 1, [snr], stop, seed=5)[0]
    fast = run_error_rate(cfg, 1, [snr], stop, seed=5)[0]
    print(f"{snr:4.0f} dB  ML SER {ml.ser:.3e}   on-the-fly decoder SER {fast.ser:.3e}")

# an unlabeled random codebook of the same size: SER only
rng = np.random.default_rng(6)
g = rng.standard_normal((16, 2)) + 1j * rng.standard_normal((16, 2))
rand = Codebook(g / np.linalg.norm(g, axis=1, keepdims=True))
r = run_ml_error_rate(rand, 1, [20.0], stop, seed=5)[0]
print(f"random 16-point codebook at 20 dB: SER {r.ser:.3e} (BER undefined: {r.ber})")
