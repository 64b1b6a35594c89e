"""Codebook container, the plain-text codebook format, and distance tooling.

File format::

    # grasscodebook v1 T=<T> K=<K>
    re_1,im_1,re_2,im_2,...,re_T,im_T[,label]

One codeword per row with interleaved real/imaginary parts; the optional
last column is a string of 0/1 characters (the bit label). Other lines
starting with '#' are comments.
"""

from dataclasses import dataclass
import re

import numpy as np

from ..codec import CodecConfig, all_words, constellation

__all__ = [
    "Codebook",
    "CodebookError",
    "load_codebook",
    "save_codebook",
    "grasslattice_codebook",
    "pairwise_chordal",
    "min_chordal_distance",
    "min_chordal_curve",
]

_HEADER = re.compile(r"#\s*grasscodebook\s+v1\s+T=(\d+)\s+K=(\d+)\s*$")
_MAX_K = 2**20
_DUPLICATE_TOL = 1e-9


class CodebookError(ValueError):
    """Raised for malformed or inconsistent codebook files."""


@dataclass
class Codebook:
    """K unit-norm codewords (K, T) with optional bit labels (K, n_bits)."""

    entries: np.ndarray
    labels: np.ndarray | None = None

    @property
    def K(self):
        return self.entries.shape[0]

    @property
    def T(self):
        return self.entries.shape[1]

    @property
    def bits_per_word(self):
        return None if self.labels is None else self.labels.shape[1]

    @property
    def rate(self):
        return np.log2(self.K) / self.T


def grasslattice_codebook(cfg):
    """Materialize a Grass-Lattice constellation with its Gray bit labels."""
    return Codebook(entries=constellation(cfg), labels=all_words(cfg))


def save_codebook(cb, path):
    with open(path, "w") as fh:
        fh.write(f"# grasscodebook v1 T={cb.T} K={cb.K}\n")
        for k, x in enumerate(cb.entries):
            cols = []
            for v in x:
                cols.append(repr(float(v.real)))
                cols.append(repr(float(v.imag)))
            if cb.labels is not None:
                cols.append("".join(str(int(b)) for b in cb.labels[k]))
            fh.write(",".join(cols) + "\n")


def load_codebook(path):
    """Parse a codebook file; rows are renormalized to unit norm.

    Raises CodebookError on a missing/invalid header, wrong column counts,
    rows that are not unit norm within 1e-6, duplicate lines (chordal
    distance below 1e-9), or malformed labels.
    """
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines:
        raise CodebookError("empty codebook file")
    m = _HEADER.match(lines[0])
    if not m:
        raise CodebookError("missing header '# grasscodebook v1 T=<T> K=<K>'")
    T, K = int(m.group(1)), int(m.group(2))
    rows, labels = [], []
    for ln in lines[1:]:
        if ln.startswith("#"):
            continue
        cols = [c.strip() for c in ln.split(",")]
        if len(cols) == 2 * T + 1:
            lab = cols.pop()
            if not lab or set(lab) - {"0", "1"}:
                raise CodebookError(f"bad label {lab!r}")
            labels.append(lab)
        elif len(cols) != 2 * T:
            raise CodebookError(f"expected {2 * T} or {2 * T + 1} columns, got {len(cols)}")
        try:
            vals = np.array([float(c) for c in cols])
        except ValueError as exc:
            raise CodebookError(str(exc)) from None
        rows.append(vals[0::2] + 1j * vals[1::2])
    if len(rows) != K:
        raise CodebookError(f"header declares K={K} but file has {len(rows)} rows")
    if labels and len(labels) != K:
        raise CodebookError("labels must be given for every row or for none")
    entries = np.array(rows)
    norms = np.linalg.norm(entries, axis=1)
    if np.any(np.abs(norms - 1.0) > 1e-6):
        raise CodebookError("codewords must be unit norm within 1e-6")
    entries = entries / norms[:, None]
    if K > 1 and min_chordal_distance(entries) < _DUPLICATE_TOL:
        raise CodebookError("codebook contains duplicate codewords")
    lab_arr = None
    if labels:
        if len({len(s) for s in labels}) != 1:
            raise CodebookError("labels must all have the same length")
        if len(set(labels)) != K:
            raise CodebookError("labels must be distinct")
        lab_arr = np.array([[int(c) for c in s] for s in labels], dtype=np.uint8)
    return Codebook(entries=entries, labels=lab_arr)


def pairwise_chordal(X, Y=None):
    """Matrix of chordal distances between rows of X and rows of Y (default X)."""
    X = np.asarray(X, dtype=complex)
    Y = X if Y is None else np.asarray(Y, dtype=complex)
    ip = np.abs(np.conj(X) @ Y.T) ** 2
    return np.sqrt(np.clip(1.0 - ip, 0.0, None))


def min_chordal_distance(C, block=2048):
    """Exact minimum pairwise chordal distance of a codebook (K, T) or config.

    Accepts either an array of codewords or a CodecConfig, in which case the
    constellation is generated first. O(K^2) pair scan, limited to K <= 2^20.
    """
    if isinstance(C, CodecConfig):
        C = constellation(C)
    C = np.asarray(C, dtype=complex)
    K = len(C)
    if K < 2:
        raise ValueError("need at least two codewords")
    if K > _MAX_K:
        raise ValueError(f"K={K} exceeds the exhaustive-scan limit {_MAX_K}")
    best = 1.0
    for i in range(0, K, block):
        rows = C[i : i + block]
        ip = np.abs(np.conj(rows) @ C.T) ** 2
        # ignore self and lower triangle pairs
        cols = np.arange(K)
        mask = cols[None, :] <= (i + np.arange(len(rows)))[:, None]
        ip[mask] = -np.inf
        best = min(best, float(np.sqrt(max(0.0, 1.0 - ip.max()))))
    return best


def min_chordal_curve(T, B, alphas):
    """Minimum chordal distance of the Grass-Lattice codebook over an alpha grid."""
    return np.array([min_chordal_distance(CodecConfig(T, B, float(a))) for a in alphas])
