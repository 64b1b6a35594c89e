"""Regenerate the cached defaults shipped in src/grasslattice/data/.

alpha_defaults.json       alpha* = argmin SER at 20 dB on {0.02, ..., 0.40}
power_split_defaults.json pilot fraction with the lowest SER at 20 dB, T > 2

Run from the repository root:

    python demos/precompute_defaults.py
"""

import json
import sys
import time
from pathlib import Path

import numpy as np

from grasslattice.simkit import StopRule, sweep_alpha, sweep_power_split
from grasslattice.simkit.defaults import ALPHA_GRID

DATA = Path(__file__).resolve().parents[1] / "src" / "grasslattice" / "data"
SEED = 20220501
SNR_DB = 20.0
ALPHA_STOP = StopRule(min_symbol_errors=400, max_blocks=400_000)
SPLIT_STOP = StopRule(min_symbol_errors=400, max_blocks=200_000)


def alpha_table():
    table = {}
    for T in (2, 3, 4, 6, 8, 14):
        for B in (1, 2, 3):
            for N in (1, 2):
                t0 = time.time()
                sw = sweep_alpha(T, B, ALPHA_GRID, SNR_DB, N, ALPHA_STOP, SEED)
                table[f"{T},{B},{N}"] = sw.alpha_star
                print(f"T={T} B={B} N={N}: alpha*={sw.alpha_star} ({time.time() - t0:.1f}s)", flush=True)
    return table


def split_table():
    grid = np.round(np.arange(0.1, 0.91, 0.05), 2)
    table = {}
    for T in (4, 8):
        for N in (1, 2):
            for q in (4, 16, 64):
                best, _ = sweep_power_split(T, N, q, SNR_DB, grid, SPLIT_STOP, SEED)
                table[f"{T},{N},{q}"] = best
                print(f"T={T} N={N} QAM={q}: pilot fraction={best}", flush=True)
    return table


def write(name, table, **meta):
    payload = {"snr_db": SNR_DB, "seed": SEED, **meta, "table": table}
    (DATA / name).write_text(json.dumps(payload, indent=1, sort_keys=True) + "\n")


if __name__ == "__main__":
    which = sys.argv[1:] or ["alpha", "split"]
    DATA.mkdir(exist_ok=True)
    if "alpha" in which:
        write(
            "alpha_defaults.json",
            alpha_table(),
            grid=list(ALPHA_GRID),
            stop=[ALPHA_STOP.min_symbol_errors, ALPHA_STOP.max_blocks],
        )
    if "split" in which:
        write(
            "power_split_defaults.json",
            split_table(),
            stop=[SPLIT_STOP.min_symbol_errors, SPLIT_STOP.max_blocks],
        )
