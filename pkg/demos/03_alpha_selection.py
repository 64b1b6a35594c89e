"""
Choosing the lattice margin alpha
=================================

alpha keeps the lattice away from the hypercube faces, whose images crowd
together near the boundary of the ball. Too small and the outer codewords
collide; too large and the inner ones do. Both the minimum chordal distance
and the simulated SER show an interior optimum.
"""

import numpy as np

from grasslattice.simkit import StopRule, default_alpha, min_chordal_curve, sweep_alpha
from grasslattice.simkit.defaults import ALPHA_GRID

grid = np.array(ALPHA_GRID)
for B in (2, 3):
    d = min_chordal_curve(2, B, grid)
    print(f"T=2 B={B}: min chordal distance peaks at alpha={grid[np.argmax(d)]} ({d.max():.4f})")

# SER at 20 dB, 4 symbols per block, 2 receive antennas
sw = sweep_alpha(4, 1, [0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45], 20.0, 2,
                 StopRule(min_symbol_errors=100), seed=3)
for a, ser, ber in sw.rows():
    print(f"  alpha={a:.2f}  SER={ser:.2e}  BER={ber:.2e}")
print("SER argmin:", sw.alpha_star)

# the library ships a table of these optima for common settings
print("cached alpha for T=4, B=1, N=2:", default_alpha(4, 1, 2))
