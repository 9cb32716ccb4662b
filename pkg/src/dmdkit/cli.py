"""Batch front end: decompose, realize, regress, generate, check.

Subcommands
    dmd    snapshots -> eigenvalues.csv, modes.csv, report.txt
    era    Markov parameters -> poles.csv, realization CSVs, report.txt
    lim    snapshots -> green.csv, eigenvalues.csv, report.txt
    gen    reference signals -> snapshots CSV
    check  linear-consistency report for a pairing

File conventions
    Snapshot CSV: one state entry per row, one snapshot per column,
    optional single header row (skipped with --header). Values are
    written with repr(), so parsing a written file reproduces the exact
    float64 bits; identical config + inputs + seed give byte-identical
    outputs.
    Complex matrices (modes.csv, green.csv, realization blocks): rows
    interleave real and imaginary parts per state entry, row 2i holding
    Re(entry i) and row 2i+1 holding Im(entry i).

Exit codes
    0 success, 2 usage or conflicting flags, 3 input parse failure,
    4 dimension mismatch, 5 rank-zero data, 6 domain refusal
    (inconsistent request the library rejected), 1 unexpected error.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import era as era_mod
from . import generators as gen_mod
from . import lim as lim_mod
from .dmd import (
    exact_dmd,
    exact_dmd_qr,
    exact_dmd_sequential,
    linear_consistency,
    projected_dmd,
    spectrum,
)
from .errors import (
    ConfigError,
    DimensionError,
    DmdkitError,
    ParseError,
    RankZeroError,
)
from .linalg import eig_dense
from .pairs import (
    embed_sequence,
    pairs_from_arrays,
    pairs_from_sequence,
    pairs_from_strided,
    pairs_from_trajectories,
    subtract_mean,
)
from .scaling import scale_amplitudes, scale_biorthogonal, scale_unit_norm

__all__ = ["RunConfig", "run", "main", "build_parser"]


@dataclass
class RunConfig:
    """Everything one invocation needs; flags map onto fields 1:1."""

    command: str
    inputs: list[str] = field(default_factory=list)
    output_dir: str = "."
    header: bool = False
    pairing: str = "sequential"
    stride: int | None = None
    delay: int = 1
    mean: str = "none"
    algorithm: str = "exact"
    scaling: str = "none"
    rank_rtol: float | None = None
    rank_atol: float | None = None
    zero_tol: float | None = None
    include_zero_modes: bool = False
    dt: float = 1.0
    m_weight: float = 0.0
    force: bool = False
    # era
    era_p: int = 1
    era_q: int = 1
    era_mc: int | None = None
    era_mo: int | None = None
    era_order: int | None = None  # None = full numerical rank
    # gen
    kind: str = "ar1"
    steps: int = 100
    seed: int = 0
    output: str = "snapshots.csv"
    decay: float = 0.5
    sigma2: float = 1.0
    z0: float = 0.0
    theta: float = float(np.pi) / 4.0
    dim: int = 4
    spectral_radius: float = 0.9
    f_fast: float = 1.0
    f_slow: float = 0.1
    decay_fast: float = 0.0
    decay_slow: float = 0.0
    amp_fast: float = 1.0
    amp_slow: float = 1.0


def _fmt(x: float) -> str:
    return repr(float(x))


def read_matrix(path: str, header: bool = False) -> np.ndarray:
    """Parse a snapshot CSV into a float64 matrix (rows = state entries)."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = [ln.strip() for ln in fh]
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    lines = [ln for ln in lines if ln]
    if header:
        lines = lines[1:]
    if not lines:
        raise ParseError(f"{path}: no data rows")
    rows = []
    width = None
    for idx, ln in enumerate(lines):
        tokens = ln.split(",")
        if width is None:
            width = len(tokens)
        elif len(tokens) != width:
            raise ParseError(
                f"{path}: row {idx + 1} has {len(tokens)} fields, expected {width}"
            )
        try:
            rows.append([float(tok) for tok in tokens])
        except ValueError as exc:
            raise ParseError(f"{path}: row {idx + 1} is not numeric: {exc}") from exc
    return np.array(rows, dtype=np.float64)


def write_real_matrix(path: str, mat: np.ndarray, header: list[str] | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        if header is not None:
            fh.write(",".join(header) + "\n")
        for row in np.atleast_2d(mat):
            fh.write(",".join(_fmt(v) for v in row.real) + "\n")


def write_complex_matrix(path: str, mat: np.ndarray, header: list[str] | None = None) -> None:
    """Write a complex matrix with interleaved Re/Im rows per entry."""
    mat = np.atleast_2d(mat)
    out = np.empty((2 * mat.shape[0], mat.shape[1]), dtype=np.float64)
    out[0::2] = mat.real
    out[1::2] = mat.imag
    write_real_matrix(path, out, header)


def _write_report(path: str, lines: list[str]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def _tol_str(value: float | None) -> str:
    return "default" if value is None else _fmt(value)


def _load_inputs(config: RunConfig) -> list[np.ndarray]:
    if not config.inputs:
        raise ConfigError("at least one --input is required")
    return [read_matrix(p, config.header) for p in config.inputs]


def _validate_pairing_flags(config: RunConfig) -> None:
    if config.pairing not in ("sequential", "strided", "paired", "multi-run"):
        raise ConfigError(f"unknown pairing {config.pairing!r}")
    if config.pairing == "strided":
        if config.stride is None:
            raise ConfigError("--pairing strided requires --stride")
        if config.stride < 1:
            raise ConfigError("--stride must be >= 1")
    elif config.stride is not None:
        raise ConfigError("--stride only applies to --pairing strided")
    if config.delay < 1:
        raise ConfigError("--delay must be >= 1")
    if config.delay > 1 and config.pairing != "sequential":
        raise ConfigError("--delay needs --pairing sequential (shifted copies)")
    n_inputs = len(config.inputs)
    if config.pairing == "paired":
        if n_inputs != 2:
            raise ConfigError("--pairing paired takes exactly two inputs (x, y)")
    elif config.pairing != "multi-run" and n_inputs != 1:
        raise ConfigError(f"--pairing {config.pairing} takes exactly one input")
    if config.mean not in ("none", "x", "pooled"):
        raise ConfigError(f"unknown mean mode {config.mean!r}")


def _build_pairs(config: RunConfig, arrays: list[np.ndarray]):
    """Returns (pairs, sequence-or-None) after delay embedding and centering."""
    if config.pairing == "sequential":
        z = arrays[0]
        if config.delay > 1:
            z = embed_sequence(z, config.delay)
        pairs = pairs_from_sequence(z, dt=config.dt)
    elif config.pairing == "strided":
        pairs = pairs_from_strided(arrays[0], config.stride, dt=config.dt)
        z = None
    elif config.pairing == "paired":
        pairs = pairs_from_arrays(arrays[0], arrays[1], dt=config.dt)
        z = None
    else:
        pairs = pairs_from_trajectories(arrays, dt=config.dt)
        z = None
    if config.mean != "none":
        mode = "x-mean" if config.mean == "x" else "pooled-mean"
        pairs, _ = subtract_mean(pairs, mode)
        if z is not None:
            z = np.concatenate([pairs.x, pairs.y[:, -1:]], axis=1)
    return pairs, z


def _decompose(config: RunConfig, pairs, z):
    kwargs = dict(
        rtol=config.rank_rtol,
        atol=config.rank_atol,
        zero_tol=config.zero_tol,
        include_zero_modes=config.include_zero_modes,
    )
    if config.algorithm == "exact":
        return exact_dmd(pairs, **kwargs)
    if config.algorithm == "projected":
        return projected_dmd(pairs, **kwargs)
    if config.algorithm == "qr":
        return exact_dmd_qr(pairs, **kwargs)
    if config.algorithm == "sequential":
        if z is None:
            raise ConfigError("--algorithm sequential needs --pairing sequential")
        return exact_dmd_sequential(z, dt=config.dt, **kwargs)
    raise ConfigError(f"unknown algorithm {config.algorithm!r}")


def _apply_scaling(config: RunConfig, dec, pairs):
    if config.scaling == "none":
        return dec
    if config.scaling == "unit-norm":
        return scale_unit_norm(dec)
    if config.scaling == "biorthogonal":
        return scale_biorthogonal(dec)
    if config.scaling in ("amplitude-qr", "amplitude-gram"):
        if pairs.provenance not in ("sequential", "delay-embedded"):
            raise ConfigError("amplitude scaling needs --pairing sequential")
        return scale_amplitudes(dec, pairs, method=config.scaling.split("-")[1])
    raise ConfigError(f"unknown scaling {config.scaling!r}")


def _write_eigenvalue_table(path: str, dec, points) -> None:
    cols = [
        "re",
        "im",
        "magnitude",
        "frequency",
        "growth_continuous",
        "mode_norm",
        "weighted_norm",
    ]
    with_amp = dec.amplitudes is not None
    if with_amp:
        cols += ["amplitude_re", "amplitude_im"]
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(",".join(cols) + "\n")
        for j, pt in enumerate(points):
            row = [
                pt.eigenvalue.real,
                pt.eigenvalue.imag,
                pt.growth_discrete,
                pt.frequency,
                pt.growth_continuous,
                pt.mode_norm,
                pt.weighted_norm,
            ]
            if with_amp:
                row += [dec.amplitudes[j].real, dec.amplitudes[j].imag]
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _run_dmd(config: RunConfig) -> None:
    _validate_pairing_flags(config)
    if config.algorithm == "sequential" and config.pairing != "sequential":
        raise ConfigError("--algorithm sequential needs --pairing sequential")
    if config.scaling in ("amplitude-qr", "amplitude-gram") and config.pairing != "sequential":
        raise ConfigError("amplitude scaling needs --pairing sequential")
    arrays = _load_inputs(config)
    pairs, z = _build_pairs(config, arrays)
    consistency = linear_consistency(
        pairs, rtol=config.rank_rtol, atol=config.rank_atol
    )
    dec = _decompose(config, pairs, z)
    dec = _apply_scaling(config, dec, pairs)
    points = spectrum(dec, dt=config.dt, m_weight=config.m_weight)

    os.makedirs(config.output_dir, exist_ok=True)
    _write_eigenvalue_table(os.path.join(config.output_dir, "eigenvalues.csv"), dec, points)
    write_complex_matrix(
        os.path.join(config.output_dir, "modes.csv"),
        dec.modes,
        header=[f"mode_{j + 1}" for j in range(dec.n_modes)],
    )
    lines = [
        "command: dmd",
        f"inputs: {', '.join(config.inputs)}",
        f"pairing: {config.pairing}",
        f"delay: {config.delay}",
        f"mean: {config.mean}",
        f"algorithm: {config.algorithm}",
        f"scaling: {dec.scaling}",
        f"state_dimension: {pairs.n_states}",
        f"pair_count: {pairs.n_pairs}",
        f"rank: {dec.svd_of_x.rank}",
        f"rank_truncation_tol: {_fmt(dec.svd_of_x.truncation_tol)}",
        f"rank_rtol: {_tol_str(config.rank_rtol)}",
        f"rank_atol: {_tol_str(config.rank_atol)}",
        f"zero_tol: {_tol_str(config.zero_tol)}",
        f"modes: {dec.n_modes}",
        f"dt: {_fmt(config.dt)}",
        f"m_weight: {_fmt(config.m_weight)}",
        f"consistency_defect: {_fmt(consistency.defect)}",
        f"consistency_residual: {_fmt(consistency.residual)}",
        f"linearly_consistent: {'yes' if consistency.consistent else 'no'}",
        f"consistency_tol: {_fmt(consistency.tol)}",
    ]
    if dec.amplitude_residual is not None:
        lines.append(f"amplitude_residual: {_fmt(dec.amplitude_residual)}")
    if dec.warnings:
        for w in dec.warnings:
            lines.append(f"warning: {w}")
    else:
        lines.append("warnings: none")
    _write_report(os.path.join(config.output_dir, "report.txt"), lines)


def _run_check(config: RunConfig) -> None:
    _validate_pairing_flags(config)
    arrays = _load_inputs(config)
    pairs, _ = _build_pairs(config, arrays)
    report = linear_consistency(pairs, rtol=config.rank_rtol, atol=config.rank_atol)
    lines = [
        "command: check",
        f"inputs: {', '.join(config.inputs)}",
        f"pairing: {config.pairing}",
        f"delay: {config.delay}",
        f"state_dimension: {pairs.n_states}",
        f"pair_count: {pairs.n_pairs}",
        f"rank: {report.rank}",
        f"consistency_defect: {_fmt(report.defect)}",
        f"consistency_residual: {_fmt(report.residual)}",
        f"linearly_consistent: {'yes' if report.consistent else 'no'}",
        f"consistency_tol: {_fmt(report.tol)}",
    ]
    if not report.consistent:
        lines.append(
            "hint: no linear map sends each x_k to y_k; part of y falls outside "
            "what x can predict. Stacking consecutive snapshots usually repairs "
            "this; try --delay 2."
        )
    for ln in lines:
        print(ln)
    os.makedirs(config.output_dir, exist_ok=True)
    _write_report(os.path.join(config.output_dir, "report.txt"), lines)


def _run_era(config: RunConfig) -> None:
    if len(config.inputs) != 1:
        raise ConfigError("era takes exactly one --input (Markov CSV)")
    if config.era_p < 1 or config.era_q < 1:
        raise ConfigError("--p and --q must be >= 1")
    stride = 1 if config.stride is None else config.stride
    if stride < 1:
        raise ConfigError("--stride must be >= 1")
    raw = read_matrix(config.inputs[0], config.header)
    q, p = config.era_q, config.era_p
    if q * p == 1 and raw.shape[0] > 1 and raw.shape[1] == 1:
        raw = raw.T  # scalar sequence written one value per line
    if raw.shape[0] != q * p:
        raise DimensionError(
            f"Markov CSV has {raw.shape[0]} rows, expected q*p = {q * p} "
            "(one column-major vectorized block per column)"
        )
    blocks = [raw[:, j].reshape((q, p), order="F") for j in range(raw.shape[1])]
    seq = era_mod.markov_from_blocks(blocks, stride=stride)
    h, h_shift = era_mod.build_hankel(seq, m_c=config.era_mc, m_o=config.era_mo)
    real = era_mod.era_realize(
        h, h_shift, config.era_order, p, q,
        rtol=config.rank_rtol, atol=config.rank_atol,
    )
    report = era_mod.era_dmd_similarity(
        h, h_shift, rtol=config.rank_rtol, atol=config.rank_atol
    )

    os.makedirs(config.output_dir, exist_ok=True)
    poles = eig_dense(real.a_r).values
    poles = poles[np.lexsort((np.angle(poles), -np.abs(poles)))]
    with open(os.path.join(config.output_dir, "poles.csv"), "w", encoding="utf-8") as fh:
        fh.write("re,im,magnitude\n")
        for lam in poles:
            fh.write(",".join(_fmt(v) for v in (lam.real, lam.imag, abs(lam))) + "\n")
    write_complex_matrix(os.path.join(config.output_dir, "a_r.csv"), real.a_r)
    write_complex_matrix(os.path.join(config.output_dir, "b_r.csv"), real.b_r)
    write_complex_matrix(os.path.join(config.output_dir, "c_r.csv"), real.c_r)
    write_complex_matrix(os.path.join(config.output_dir, "d_r.csv"), real.d_r)
    lines = [
        "command: era",
        f"inputs: {', '.join(config.inputs)}",
        f"block_rows_q: {q}",
        f"block_cols_p: {p}",
        f"stride: {stride}",
        f"markov_count: {len(seq.params)}",
        f"hankel_shape: {h.shape[0]}x{h.shape[1]}",
        f"order: {real.order}",
        f"hankel_rank: {report.order}",
        f"poles: {len(poles)}",
        f"dmd_eigenvalue_mismatch: {_fmt(report.max_eigenvalue_mismatch)}",
        f"eigenvector_map_residual: {_fmt(report.max_map_residual)}",
    ]
    _write_report(os.path.join(config.output_dir, "report.txt"), lines)


def _run_lim(config: RunConfig) -> None:
    _validate_pairing_flags(config)
    arrays = _load_inputs(config)
    pairs, _ = _build_pairs(config, arrays)
    model = lim_mod.lim_model(
        pairs, force=config.force, rtol=config.rank_rtol, atol=config.rank_atol
    )
    equiv = lim_mod.lim_dmd_equivalence(
        pairs, force=config.force, rtol=config.rank_rtol, atol=config.rank_atol
    )

    os.makedirs(config.output_dir, exist_ok=True)
    write_complex_matrix(os.path.join(config.output_dir, "green.csv"), model.green)
    lam = eig_dense(model.green).values
    lam = lam[np.lexsort((np.angle(lam), -np.abs(lam)))]
    with open(os.path.join(config.output_dir, "eigenvalues.csv"), "w", encoding="utf-8") as fh:
        fh.write("re,im,magnitude,frequency,growth_continuous\n")
        for v in lam:
            mag = abs(v)
            freq = float(np.angle(v)) / (2.0 * np.pi * config.dt) if mag else 0.0
            growth = float(np.log(mag)) / config.dt if mag else float("-inf")
            fh.write(
                ",".join(_fmt(x) for x in (v.real, v.imag, mag, freq, growth)) + "\n"
            )
    lines = [
        "command: lim",
        f"inputs: {', '.join(config.inputs)}",
        f"pairing: {config.pairing}",
        f"mean: {config.mean}",
        f"force: {'yes' if config.force else 'no'}",
        f"state_dimension: {pairs.n_states}",
        f"pair_count: {pairs.n_pairs}",
        f"eof_count: {model.eofs.shape[1]}",
        f"lag_tau: {_fmt(config.dt)}",
        f"propagator_vs_reduced_operator_max_abs_diff: {_fmt(equiv.max_abs_diff)}",
        f"equivalence_tol: {_fmt(equiv.tol)}",
        f"equivalent: {'yes' if equiv.equivalent else 'no'}",
    ]
    _write_report(os.path.join(config.output_dir, "report.txt"), lines)


def _run_gen(config: RunConfig) -> None:
    kind = config.kind
    rng = np.random.default_rng(config.seed)
    matrix_path = None
    if kind == "ar1":
        z = gen_mod.gen_ar1(
            config.decay, config.sigma2, config.steps, config.seed, z0=config.z0
        )
        data = z[None, :]
    elif kind in ("standing-wave", "planar-rotation"):
        q = rng.standard_normal(config.dim)
        fn = (
            gen_mod.gen_standing_wave
            if kind == "standing-wave"
            else gen_mod.gen_planar_rotation
        )
        data = fn(config.theta, q, config.steps)
    elif kind == "random-linear":
        mat, data = gen_mod.gen_random_linear(
            config.dim, config.steps, config.seed,
            spectral_radius=config.spectral_radius,
        )
        matrix_path = os.path.join(
            os.path.dirname(config.output) or ".", "system_matrix.csv"
        )
        write_real_matrix(matrix_path, mat)
    elif kind == "two-timescale":
        data = gen_mod.gen_two_timescale(
            config.f_fast,
            config.f_slow,
            config.steps,
            config.seed,
            decay_fast=config.decay_fast,
            decay_slow=config.decay_slow,
            n=config.dim,
            dt=config.dt,
            amplitudes=(config.amp_fast, config.amp_slow),
        )
    else:
        raise ConfigError(f"unknown kind {kind!r}")
    out_dir = os.path.dirname(config.output)
    if out_dir:
        os.makedirs(out_dir, exist_ok=True)
    write_real_matrix(config.output, data)


def run(config: RunConfig) -> int:
    """Execute one configured invocation; returns 0, raises on failure."""
    dispatch = {
        "dmd": _run_dmd,
        "era": _run_era,
        "lim": _run_lim,
        "gen": _run_gen,
        "check": _run_check,
    }
    if config.command not in dispatch:
        raise ConfigError(f"unknown command {config.command!r}")
    dispatch[config.command](config)
    return 0


def _add_common_io(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--input", action="append", default=[], dest="inputs",
                     help="input CSV; repeat for multi-run or paired data")
    sub.add_argument("--output-dir", default=".", help="directory for output files")
    sub.add_argument("--header", action="store_true",
                     help="inputs carry one header row to skip")


def _add_pairing(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--pairing", default="sequential",
                     choices=["sequential", "strided", "paired", "multi-run"])
    sub.add_argument("--stride", type=int, default=None,
                     help="coarse anchor spacing P for --pairing strided")
    sub.add_argument("--delay", type=int, default=1,
                     help="stack this many consecutive snapshots per column")
    sub.add_argument("--mean", default="none", choices=["none", "x", "pooled"],
                     help="subtract the column mean before decomposing")
    sub.add_argument("--rank-rtol", type=float, default=None, dest="rank_rtol")
    sub.add_argument("--rank-atol", type=float, default=None, dest="rank_atol")
    sub.add_argument("--dt", type=float, default=1.0,
                     help="time advanced per snapshot pair")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dmdkit",
        description="Modal decompositions of snapshot data, plus system "
                    "realization and linear inverse modeling on the same pairs.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p_dmd = subs.add_parser("dmd", help="decompose snapshot pairs")
    _add_common_io(p_dmd)
    _add_pairing(p_dmd)
    p_dmd.add_argument("--algorithm", default="exact",
                       choices=["exact", "projected", "qr", "sequential"])
    p_dmd.add_argument("--scaling", default="none",
                       choices=["none", "unit-norm", "biorthogonal",
                                "amplitude-qr", "amplitude-gram"])
    p_dmd.add_argument("--zero-tol", type=float, default=None, dest="zero_tol")
    p_dmd.add_argument("--include-zero-modes", action="store_true",
                       dest="include_zero_modes")
    p_dmd.add_argument("--m-weight", type=float, default=0.0, dest="m_weight",
                       help="weight mode norms by |lambda|^m_weight")

    p_era = subs.add_parser("era", help="realize a state-space model from Markov data")
    _add_common_io(p_era)
    p_era.add_argument("--p", type=int, default=1, dest="era_p",
                       help="inputs per Markov block")
    p_era.add_argument("--q", type=int, default=1, dest="era_q",
                       help="outputs per Markov block")
    p_era.add_argument("--stride", type=int, default=None,
                       help="subsample the impulse sequence at this spacing")
    p_era.add_argument("--mc", type=int, default=None, dest="era_mc",
                       help="Hankel block columns minus one")
    p_era.add_argument("--mo", type=int, default=None, dest="era_mo",
                       help="Hankel block rows minus one")
    p_era.add_argument("--order", default="full",
                       help='model order, or "full" for the numerical rank')
    p_era.add_argument("--rank-rtol", type=float, default=None, dest="rank_rtol")
    p_era.add_argument("--rank-atol", type=float, default=None, dest="rank_atol")

    p_lim = subs.add_parser("lim", help="fit the EOF-coefficient lag propagator")
    _add_common_io(p_lim)
    _add_pairing(p_lim)
    p_lim.set_defaults(mean="x")
    p_lim.add_argument("--force", action="store_true",
                       help="skip the mean-subtraction check")

    p_gen = subs.add_parser("gen", help="write a reference signal as snapshot CSV")
    p_gen.add_argument("--kind", required=True,
                       choices=["ar1", "standing-wave", "planar-rotation",
                                "random-linear", "two-timescale"])
    p_gen.add_argument("--output", default="snapshots.csv")
    p_gen.add_argument("--steps", type=int, default=100)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--decay", type=float, default=0.5,
                       help="ar1: the autoregressive coefficient")
    p_gen.add_argument("--sigma2", type=float, default=1.0,
                       help="ar1: noise variance")
    p_gen.add_argument("--z0", type=float, default=0.0, help="ar1: initial state")
    p_gen.add_argument("--theta", type=float, default=float(np.pi) / 4.0,
                       help="standing-wave/planar-rotation: phase advance per step")
    p_gen.add_argument("--dim", type=int, default=4,
                       help="state dimension (shape vector size)")
    p_gen.add_argument("--spectral-radius", type=float, default=0.9,
                       dest="spectral_radius", help="random-linear: |lambda| bound")
    p_gen.add_argument("--f-fast", type=float, default=1.0, dest="f_fast")
    p_gen.add_argument("--f-slow", type=float, default=0.1, dest="f_slow")
    p_gen.add_argument("--decay-fast", type=float, default=0.0, dest="decay_fast")
    p_gen.add_argument("--decay-slow", type=float, default=0.0, dest="decay_slow")
    p_gen.add_argument("--amp-fast", type=float, default=1.0, dest="amp_fast")
    p_gen.add_argument("--amp-slow", type=float, default=1.0, dest="amp_slow")
    p_gen.add_argument("--dt", type=float, default=0.1,
                       help="two-timescale: sampling interval")

    p_chk = subs.add_parser("check", help="report whether the pairing is linearly consistent")
    _add_common_io(p_chk)
    _add_pairing(p_chk)

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    config = RunConfig(command=args.command)
    for key, value in vars(args).items():
        if key == "command":
            continue
        if key == "era_order":
            continue
        if hasattr(config, key):
            setattr(config, key, value)
    if getattr(args, "order", None) is not None:
        if args.order == "full":
            config.era_order = None
        else:
            try:
                config.era_order = int(args.order)
            except ValueError as exc:
                raise ConfigError('--order must be an integer or "full"') from exc
    return config


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config_from_args(args)
        return run(config)
    except ConfigError as exc:
        print(f"error[usage]: {exc}", file=sys.stderr)
        return 2
    except ParseError as exc:
        print(f"error[parse]: {exc}", file=sys.stderr)
        return 3
    except DimensionError as exc:
        print(f"error[dimension]: {exc}", file=sys.stderr)
        return 4
    except RankZeroError as exc:
        print(f"error[rank-zero]: {exc}", file=sys.stderr)
        return 5
    except (DmdkitError, ValueError) as exc:
        print(f"error[domain]: {exc}", file=sys.stderr)
        return 6
    except Exception as exc:  # pragma: no cover - safety net
        print(f"error[internal]: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
