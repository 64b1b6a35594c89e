"""Command-line front end.

    grasslattice encode      --T 2 --B 1 --alpha 0.1 --bits 01
    grasslattice decode      --T 2 --B 1 --alpha 0.1 --block y.csv
    grasslattice simulate    --scheme grasslattice --T 2 --B 2 --N 1 --snr-list 0:30:5 --out r.csv
    grasslattice sweep-alpha --T 4 --B 1 --N 2 --snr 20 --alpha-grid 0.05:0.45:0.05
    grasslattice min-chordal --T 2 --B 2 --alpha-grid 0.02:0.40:0.02
    grasslattice hopf        --T 2 --B 4 --alpha 0.1 --out stages.csv
    grasslattice codebook    --T 2 --B 2 --alpha 0.14 --out cb.csv

Settings come from flags, then a key=value config file (--config), then
built-in defaults; the seed falls back to $GRASS_SEED before the default.
Every CSV written starts with '# key=value' manifest lines, so a results file
can itself be passed as --config to reproduce it.

Exit codes: 0 success, 2 usage or parse error, 3 degenerate input.
"""

import argparse
import math
import os
import sys

import numpy as np

from . import __version__
from .codec import CodecConfig, all_words, decode, encode, hypercube_point
from .ballmap import theta2
from .gaussmap import theta1
from .grassmap import theta3
from .simkit import (
    StopRule,
    CodebookError,
    default_alpha,
    grasslattice_codebook,
    hopf_project,
    load_codebook,
    min_chordal_curve,
    pilot_baseline,
    run_error_rate,
    run_ml_error_rate,
    save_codebook,
    sweep_alpha,
)
from .simkit.defaults import ALPHA_GRID
from .simkit.pilot import default_power_split

EXIT_USAGE = 2
EXIT_DEGENERATE = 3

DEFAULTS = {
    "N": 1,
    "scheme": "grasslattice",
    "snr_list": "0:30:5",
    "snr": 20.0,
    "min_errors": 100,
    "max_blocks": 10_000_000,
    "seed": 0,
    "qam": None,
    "power_split": None,
    "alpha_grid": None,
}


class UsageError(Exception):
    def __init__(self, flag, msg):
        super().__init__(f"{flag}: {msg}")
        self.flag = flag


def fmt(x):
    """17 significant digits: enough to round-trip a double."""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".17g")


def parse_grid(text, flag):
    """'a,b,c' or 'start:stop:step' (stop inclusive) -> list of floats."""
    try:
        text = str(text).strip()
        if ":" in text:
            start, stop, step = (float(v) for v in text.split(":"))
            if step <= 0:
                raise ValueError("step must be positive")
            n = int(math.floor((stop - start) / step + 1e-9)) + 1
            return [round(start + k * step, 10) for k in range(n)]
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise UsageError(flag, f"cannot parse {text!r} ({exc})") from None


def read_config(path):
    """Flat key=value file; '#' prefixes are allowed so result headers re-parse."""
    conf = {}
    try:
        with open(path) as fh:
            for line in fh:
                line = line.strip().lstrip("#").strip()
                if "=" not in line:
                    continue
                key, _, value = line.partition("=")
                conf[key.strip().replace("-", "_")] = value.strip()
    except OSError as exc:
        raise UsageError("--config", str(exc)) from None
    return conf


def _coerce(value, kind, flag):
    if not isinstance(value, str):
        return value
    if value.lower() in ("none", ""):
        return None
    if kind is None:
        return value
    try:
        return kind(value)
    except ValueError:
        raise UsageError(flag, f"invalid value {value!r}") from None


_KINDS = {
    "T": int, "B": int, "N": int, "alpha": float, "snr": float, "min_errors": int,
    "max_blocks": int, "seed": int, "qam": int, "power_split": float,
}


def resolve(args, keys):
    """Merge flags > config file > environment (seed only) > defaults."""
    conf = read_config(args.config) if args.config else {}
    out = {}
    for key in keys:
        flag = "--" + key.replace("_", "-")
        val = getattr(args, key, None)
        if val is None and key in conf:
            val = conf[key]
        if val is None and key == "seed" and os.environ.get("GRASS_SEED"):
            val = os.environ["GRASS_SEED"]
        if val is None:
            val = DEFAULTS.get(key)
        out[key] = _coerce(val, _KINDS.get(key), flag)
    return out


def _need(opts, *keys):
    for k in keys:
        if opts.get(k) is None:
            raise UsageError("--" + k.replace("_", "-"), "is required")


def _codec(opts):
    _need(opts, "T", "B")
    alpha = opts.get("alpha")
    if alpha is None:
        try:
            alpha = default_alpha(opts["T"], opts["B"], opts.get("N") or 1)
        except KeyError as exc:
            raise UsageError("--alpha", str(exc.args[0])) from None
        opts["alpha"] = alpha
    try:
        return CodecConfig(opts["T"], opts["B"], alpha)
    except ValueError as exc:
        flag = "--alpha" if "alpha" in str(exc) else f"--{str(exc).split()[0]}"
        raise UsageError(flag, str(exc)) from None


def _stop(opts):
    if opts["min_errors"] < 1 or opts["max_blocks"] < 1:
        raise UsageError("--min-errors", "stop rule values must be positive")
    return StopRule(min_symbol_errors=opts["min_errors"], max_blocks=opts["max_blocks"])


def manifest(command, opts, extra=()):
    lines = [f"# grasslattice {__version__}", f"# command={command}"]
    for k in sorted(opts):
        v = opts[k]
        lines.append(f"# {k}={'none' if v is None else (fmt(v) if isinstance(v, float) else v)}")
    lines.extend(f"# {k}={v}" for k, v in extra)
    return lines


def emit(lines, out):
    text = "\n".join(lines) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_encode(args):
    opts = resolve(args, ["T", "B", "alpha", "N"])
    cfg = _codec(opts)
    bits = args.bits
    if bits is None or set(bits) - {"0", "1"}:
        raise UsageError("--bits", "must be a string of 0/1 characters")
    if len(bits) != cfg.n_bits:
        raise UsageError("--bits", f"expected {cfg.n_bits} bits for T={cfg.T}, B={cfg.B}, got {len(bits)}")
    x = encode(np.array([int(c) for c in bits], dtype=np.uint8), cfg)
    cols = []
    for v in x:
        cols += [fmt(v.real), fmt(v.imag)]
    emit([",".join(cols)], None)


def read_block(path, T):
    rows = []
    try:
        with open(path) as fh:
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                vals = [float(c) for c in line.split(",")]
                if len(vals) % 2:
                    raise ValueError("odd number of columns (need interleaved re,im pairs)")
                rows.append(np.array(vals[0::2]) + 1j * np.array(vals[1::2]))
    except (OSError, ValueError) as exc:
        raise UsageError("--block", str(exc)) from None
    if len(rows) != T:
        raise UsageError("--block", f"expected {T} rows, found {len(rows)}")
    if len({len(r) for r in rows}) != 1:
        raise UsageError("--block", "rows have different lengths")
    return np.array(rows)


def cmd_decode(args):
    opts = resolve(args, ["T", "B", "alpha", "N"])
    cfg = _codec(opts)
    if not args.block:
        raise UsageError("--block", "is required")
    Y = read_block(args.block, cfg.T)
    if not np.all(np.isfinite(Y)):
        raise UsageError("--block", "non-finite entries")
    if not np.any(Y):
        print("error: received block is identically zero", file=sys.stderr)
        return EXIT_DEGENERATE
    bits = decode(Y, cfg)
    emit(["".join(str(int(b)) for b in bits)], None)
    return 0


RESULT_COLUMNS = "snr_db,ebn0_db,blocks,symbol_errors,bit_errors,ser,ber"


def _stats_rows(stats):
    rows = [RESULT_COLUMNS]
    for s in stats:
        rows.append(",".join(fmt(v) for v in (s.snr_db, s.ebn0_db, s.blocks, s.symbol_errors,
                                              s.bit_errors, s.ser, s.ber)))
    return rows


def cmd_simulate(args):
    keys = ["scheme", "T", "B", "alpha", "N", "snr_list", "min_errors", "max_blocks", "seed",
            "qam", "power_split", "codebook"]
    opts = resolve(args, keys)
    scheme = opts["scheme"]
    snrs = parse_grid(opts["snr_list"], "--snr-list")
    stop = _stop(opts)
    _need(opts, "N")
    if scheme == "grasslattice":
        cfg = _codec(opts)
        for k in ("qam", "power_split", "codebook"):
            opts.pop(k)
        stats = run_error_rate(cfg, opts["N"], snrs, stop, opts["seed"])
    elif scheme == "pilot":
        _need(opts, "T")
        if opts["qam"] is None:
            _need(opts, "B")
            if opts["T"] != 2:
                raise UsageError("--qam", "is required when T != 2")
            opts["qam"] = 4 ** opts["B"]
        if opts["power_split"] is None:
            opts["power_split"] = default_power_split(opts["T"], opts["N"], opts["qam"])
        for k in ("alpha", "codebook"):
            opts.pop(k)
        try:
            stats = pilot_baseline(opts["T"], opts["N"], opts["qam"], opts["power_split"], snrs,
                                   stop, opts["seed"])
        except ValueError as exc:
            raise UsageError("--qam" if "QAM" in str(exc) else "--power-split", str(exc)) from None
    elif scheme == "mlfile":
        if not opts["codebook"]:
            raise UsageError("--codebook", "is required for --scheme mlfile")
        try:
            cb = load_codebook(opts["codebook"])
        except (OSError, CodebookError) as exc:
            raise UsageError("--codebook", str(exc)) from None
        for k in ("alpha", "B", "qam", "power_split"):
            opts.pop(k)
        opts["T"] = cb.T
        stats = run_ml_error_rate(cb, opts["N"], snrs, stop, opts["seed"])
    else:
        raise UsageError("--scheme", f"unknown scheme {scheme!r}")
    emit(manifest("simulate", opts) + _stats_rows(stats), args.out)


def cmd_sweep_alpha(args):
    opts = resolve(args, ["T", "B", "N", "snr", "alpha_grid", "min_errors", "max_blocks", "seed"])
    _need(opts, "T", "B")
    grid = parse_grid(opts["alpha_grid"] or "0.02:0.40:0.02", "--alpha-grid")
    if not grid or any(not 0 < a < 0.5 for a in grid):
        raise UsageError("--alpha-grid", "values must lie in (0, 0.5)")
    opts["alpha_grid"] = ",".join(fmt(a) for a in grid)
    sw = sweep_alpha(opts["T"], opts["B"], grid, opts["snr"], opts["N"], _stop(opts), opts["seed"])
    rows = ["alpha,blocks,symbol_errors,bit_errors,ser,ber"]
    for a, s in zip(sw.alphas, sw.stats):
        rows.append(",".join(fmt(v) for v in (a, s.blocks, s.symbol_errors, s.bit_errors, s.ser, s.ber)))
    emit(manifest("sweep-alpha", opts, [("alpha_star", fmt(sw.alpha_star))]) + rows, args.out)


def cmd_min_chordal(args):
    opts = resolve(args, ["T", "B", "alpha_grid"])
    _need(opts, "T", "B")
    grid = parse_grid(opts["alpha_grid"] or ",".join(map(str, ALPHA_GRID)), "--alpha-grid")
    if not grid or any(not 0 < a < 0.5 for a in grid):
        raise UsageError("--alpha-grid", "values must lie in (0, 0.5)")
    if 2 * opts["B"] * (opts["T"] - 1) > 20:
        raise UsageError("--B", "constellation too large for an exhaustive pair scan (K > 2^20)")
    opts["alpha_grid"] = ",".join(fmt(a) for a in grid)
    d = min_chordal_curve(opts["T"], opts["B"], grid)
    rows = ["alpha,min_chordal_distance"] + [f"{fmt(a)},{fmt(v)}" for a, v in zip(grid, d)]
    extra = [("distance", "chordal sqrt(1-|x^H y|^2)"), ("alpha_star", fmt(grid[int(np.argmax(d))]))]
    emit(manifest("min-chordal", opts, extra) + rows, args.out)


def cmd_hopf(args):
    opts = resolve(args, ["T", "B", "alpha"])
    _need(opts, "T", "B")
    if opts["T"] != 2:
        raise UsageError("--T", "the Hopf projection needs T = 2")
    opts["N"] = 1
    cfg = _codec(opts)
    opts.pop("N")
    p = hypercube_point(all_words(cfg), cfg)
    z = theta1(p)[:, 0]
    w = theta2(theta1(p))
    s = hopf_project(theta3(w))
    stages = [
        ("hypercube", p),
        ("gaussian", np.stack([z.real, z.imag], axis=1)),
        ("ball", np.stack([w[:, 0].real, w[:, 0].imag], axis=1)),
        ("sphere", s),
    ]
    rows = ["stage,idx,c1,c2,c3"]
    for name, pts in stages:
        for i, row in enumerate(pts):
            vals = [fmt(v) for v in row] + [""] * (3 - len(row))
            rows.append(",".join([name, str(i)] + vals))
    emit(manifest("hopf", opts) + rows, args.out)


def cmd_codebook(args):
    opts = resolve(args, ["T", "B", "alpha", "N"])
    cfg = _codec(opts)
    if not args.out:
        raise UsageError("--out", "is required")
    save_codebook(grasslattice_codebook(cfg), args.out)


def build_parser():
    p = argparse.ArgumentParser(prog="grasslattice", description="Grass-Lattice constellation tools")
    p.add_argument("--version", action="version", version=f"grasslattice {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, alpha=True, out=True):
        sp.add_argument("--config", help="key=value settings file (or a previous results CSV)")
        sp.add_argument("--T", type=int, help="coherence time (symbols)")
        sp.add_argument("--B", type=int, help="bits per real component")
        if alpha:
            sp.add_argument("--alpha", type=float, help="lattice margin in (0, 0.5)")
        if out:
            sp.add_argument("--out", help="output CSV path (default stdout)")

    sp = sub.add_parser("encode", help="encode one bit word")
    common(sp, out=False)
    sp.add_argument("--N", type=int, help="receive antennas (selects the cached alpha)")
    sp.add_argument("--bits", required=True)
    sp.set_defaults(func=cmd_encode)

    sp = sub.add_parser("decode", help="decode one received block")
    common(sp, out=False)
    sp.add_argument("--N", type=int)
    sp.add_argument("--block", required=True, help="CSV: T rows of interleaved re,im pairs")
    sp.set_defaults(func=cmd_decode)

    def mc(sp):
        sp.add_argument("--N", type=int)
        sp.add_argument("--min-errors", type=int, dest="min_errors")
        sp.add_argument("--max-blocks", type=int, dest="max_blocks")
        sp.add_argument("--seed", type=int)

    sp = sub.add_parser("simulate", help="Monte Carlo SER/BER")
    common(sp)
    mc(sp)
    sp.add_argument("--scheme", choices=["grasslattice", "pilot", "mlfile"])
    sp.add_argument("--snr-list", dest="snr_list", help="e.g. 0,10,20 or 0:30:5 (dB)")
    sp.add_argument("--qam", type=int, help="pilot scheme QAM order (default 4^B)")
    sp.add_argument("--power-split", type=float, dest="power_split", help="pilot energy fraction")
    sp.add_argument("--codebook", help="codebook file for --scheme mlfile")
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("sweep-alpha", help="SER/BER versus the lattice margin")
    common(sp, alpha=False)
    mc(sp)
    sp.add_argument("--snr", type=float)
    sp.add_argument("--alpha-grid", dest="alpha_grid")
    sp.set_defaults(func=cmd_sweep_alpha)

    sp = sub.add_parser("min-chordal", help="minimum chordal distance versus alpha")
    common(sp, alpha=False)
    sp.add_argument("--alpha-grid", dest="alpha_grid")
    sp.set_defaults(func=cmd_min_chordal)

    sp = sub.add_parser("hopf", help="export the T=2 mapping stages")
    common(sp)
    sp.set_defaults(func=cmd_hopf)

    sp = sub.add_parser("codebook", help="write the full constellation as a codebook file")
    common(sp)
    sp.add_argument("--N", type=int)
    sp.set_defaults(func=cmd_codebook)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args) or 0
    except UsageError as exc:
        print(f"grasslattice {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
