"""Cached lattice margins alpha* (lowest SER at 20 dB) per (T, B, N)."""

import json
from functools import lru_cache
from importlib import resources

__all__ = ["default_alpha", "ALPHA_GRID"]

ALPHA_GRID = tuple(round(0.02 * k, 2) for k in range(1, 21))


@lru_cache(maxsize=1)
def _table():
    try:
        text = resources.files("grasslattice").joinpath("data/alpha_defaults.json").read_text()
    except FileNotFoundError:
        return {}
    return json.loads(text).get("table", {})


def default_alpha(T, B, N):
    """alpha* from the cached sweep; KeyError if (T, B, N) was not precomputed."""
    key = f"{T},{B},{N}"
    try:
        return float(_table()[key])
    except KeyError:
        raise KeyError(f"no cached alpha for T={T}, B={B}, N={N}; pass alpha explicitly") from None
