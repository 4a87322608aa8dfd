"""Command-line front end.

Commands: bounds, simulate, vidal-curve, f-grid, haar-average, verify.
Exit codes: 0 success, 1 verification failure, 2 usage error.  Seeded
commands take --seed, fall back to the EPP_LAB_SEED environment variable,
then to DEFAULT_SEED; the seed in effect is echoed in the output.  CSV
floats are written with repr, which round-trips exactly.
"""
from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import protocols, sampling, vidal
from . import verify as verify_mod
from .kraus import KrausParams, constraint_value, f_parameter, params_valid
from .linalg import as_state, schmidt_state

DEFAULT_SEED = 42
SEED_ENV_VAR = "EPP_LAB_SEED"

# CLI inputs tolerate slightly stale normalization; anything past this is an error
_NORM_ERROR = 1e-8
_NORM_WARN = 1e-10


@dataclass
class RunConfig:
    """Resolved invocation: one command plus its validated inputs."""

    command: str
    seed: int = DEFAULT_SEED
    samples: int = 10_000
    grid_points: int = 100
    state: np.ndarray | None = None
    mode: str = "known-basis"
    a: complex = complex(np.sqrt(2) / 2)
    b: complex = complex(np.sqrt(2) / 2)
    out: str | None = None
    corrupt_kraus: bool = False


def _fmt(x) -> str:
    return repr(float(x))


def _parse_complex(text: str) -> complex:
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]))
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"expected 're' or 're,im', got {text!r}")


def _parse_state(text: str) -> np.ndarray:
    tokens = text.split()
    if len(tokens) != 4:
        raise argparse.ArgumentTypeError("state needs exactly four amplitudes")
    try:
        amps = np.array([complex(t) for t in tokens])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad amplitude: {exc}")
    norm = np.linalg.norm(amps)
    if abs(norm - 1.0) > _NORM_ERROR:
        raise argparse.ArgumentTypeError(
            f"amplitudes must be normalized within {_NORM_ERROR:g}; |norm-1| = {abs(norm - 1.0):.3e}"
        )
    if abs(norm - 1.0) > _NORM_WARN:
        print(f"warning: renormalizing input state (|norm-1| = {abs(norm - 1.0):.3e})", file=sys.stderr)
    return amps / norm


def _parse_lambda(text: str) -> float:
    try:
        lam = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad lambda: {text!r}")
    if not 0.0 < lam < 1.0:
        raise argparse.ArgumentTypeError("lambda must lie strictly between 0 and 1")
    return lam


def _parse_seed(text: str) -> int:
    try:
        seed = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad seed: {text!r}")
    if not 0 <= seed < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return seed


def _resolve_seed(parser: argparse.ArgumentParser, cli_seed) -> int:
    if cli_seed is not None:
        return cli_seed
    env = os.environ.get(SEED_ENV_VAR)
    if env is not None:
        try:
            return _parse_seed(env)
        except argparse.ArgumentTypeError as exc:
            parser.error(f"{SEED_ENV_VAR}: {exc}")
    return DEFAULT_SEED


def _resolve_state(parser: argparse.ArgumentParser, args) -> np.ndarray:
    if args.state is None and args.lam is None:
        parser.error("provide --state or --lambda")
    if args.state is not None and args.lam is not None:
        parser.error("--state and --lambda are mutually exclusive")
    if args.state is not None:
        return args.state
    return schmidt_state(np.sqrt(args.lam), np.sqrt(1.0 - args.lam))


def _write_lines(path: str | None, lines: list) -> None:
    text = "\n".join(lines) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="epp-lab",
        description="Numerical laboratory for conclusive purification of two-qubit pure states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_state_args(p):
        p.add_argument("--state", type=_parse_state, default=None, metavar='"c1 c2 c3 c4"',
                       help="four complex amplitudes, e.g. \"0.6 0 0 0.8\"")
        p.add_argument("--lambda", dest="lam", type=_parse_lambda, default=None,
                       help="larger squared Schmidt coefficient of sqrt(l)|00>+sqrt(1-l)|11>")

    p_bounds = sub.add_parser("bounds", help="closed-form success bounds for one state")
    add_state_args(p_bounds)

    p_sim = sub.add_parser("simulate", help="run both purification stages at matrix level")
    add_state_args(p_sim)
    p_sim.add_argument("--a", type=_parse_complex, default=None, metavar="re,im")
    p_sim.add_argument("--b", type=_parse_complex, default=None, metavar="re,im")

    p_vidal = sub.add_parser("vidal-curve", help="CSV of conversion probabilities over lambda")
    p_vidal.add_argument("--grid", type=int, default=100, help="number of interior grid points")
    p_vidal.add_argument("--out", default=None, help="CSV path (stdout when omitted)")

    p_fgrid = sub.add_parser("f-grid", help="CSV of validity and asymmetry f over (|a|, |b|)")
    p_fgrid.add_argument("--grid", type=int, default=100, help="grid points per axis")
    p_fgrid.add_argument("--out", default=None, help="CSV path (stdout when omitted)")

    p_haar = sub.add_parser("haar-average", help="analytic and Monte Carlo Haar averages")
    p_haar.add_argument("--mode", choices=("known-basis", "unknown-basis"),
                        default="known-basis")
    p_haar.add_argument("--samples", type=int, default=10_000)
    p_haar.add_argument("--seed", type=_parse_seed, default=None)

    p_verify = sub.add_parser("verify", help="run the acceptance suite")
    p_verify.add_argument("--seed", type=_parse_seed, default=None)
    p_verify.add_argument("--out", default=None, help="JSON summary path")
    p_verify.add_argument("--corrupt-kraus", action="store_true", help=argparse.SUPPRESS)

    return parser


def cmd_bounds(cfg: RunConfig) -> int:
    c = as_state(cfg.state, dim=4)
    lines = ["state = " + " ".join(repr(complex(z)) for z in c)]
    if abs(c[1]) <= 1e-10 and abs(c[2]) <= 1e-10:
        lines.append("schmidt_pair_bound = " + _fmt(protocols.schmidt_pair_bound(c[0], c[3])))
    lines.append("schmidt_conversion_bound = " + _fmt(protocols.schmidt_conversion_bound(c)))
    lines.append("four_copy_bell_bound = " + _fmt(protocols.four_copy_bell_bound(c)))
    p1 = protocols.kalman_stage1_prob(c)
    lines.append("kalman_stage1_prob = " + _fmt(p1))
    if p1 == 0.0:
        lines.append("kalman_stage2_prob = undefined")
    else:
        lines.append("kalman_stage2_prob = " + _fmt(protocols.kalman_stage2_prob(c)))
    print("\n".join(lines))
    return 0


def cmd_simulate(cfg: RunConfig) -> int:
    c = as_state(cfg.state, dim=4)
    params = KrausParams(cfg.a, cfg.b)
    lines = [
        "state = " + " ".join(repr(complex(z)) for z in c),
        f"a = {cfg.a!r}",
        f"b = {cfg.b!r}",
    ]
    first = protocols.stage1(c, params)
    lines.append("stage1_prob = " + _fmt(first.success_prob))
    if first.output is None:
        lines.append("stage1_output = undefined")
    else:
        lines.append("stage1_output = " + " ".join(repr(complex(z)) for z in first.output))
    result = protocols.full_pipeline(c, params)
    lines.append("stage_probs = " + " ".join(_fmt(p) for p in result.stage_probs))
    lines.append("pipeline_prob = " + _fmt(result.success_prob))
    if result.output is None:
        lines.append("pipeline_output = undefined")
    else:
        lines.append("bell_fidelity = " + _fmt(protocols.bell_fidelity(result.output)))
    print("\n".join(lines))
    return 0


def cmd_vidal_curve(cfg: RunConfig) -> int:
    lines = ["lambda,p_vidal,p_universal"]
    target = vidal.embedded_bell_coeffs()
    n = cfg.grid_points
    for k in range(1, n + 1):
        lam = 0.5 + 0.5 * k / (n + 1)
        p_v = vidal.vidal_probability(vidal.doubled_schmidt_coeffs(lam), target)
        p_u = vidal.universal_two_copy_prob(lam)
        lines.append(f"{_fmt(lam)},{_fmt(p_v)},{_fmt(p_u)}")
    _write_lines(cfg.out, lines)
    return 0


def cmd_f_grid(cfg: RunConfig) -> int:
    lines = ["abs_a,abs_b,valid,f"]
    grid = np.linspace(0.0, 1.0, cfg.grid_points)
    for a in grid:
        for b in grid:
            valid = int(params_valid(a, b))
            lines.append(f"{_fmt(a)},{_fmt(b)},{valid},{_fmt(f_parameter(a, b))}")
    _write_lines(cfg.out, lines)
    return 0


def cmd_haar_average(cfg: RunConfig) -> int:
    lines = [f"mode = {cfg.mode}", f"seed = {cfg.seed}", f"samples = {cfg.samples}"]
    if cfg.mode == "known-basis":
        analytic = sampling.known_basis_average_quadrature()
        est = sampling.known_basis_average_mc(cfg.samples, cfg.seed)
        target = 0.2
    else:
        analytic = sampling.unknown_basis_average_exact()
        est = sampling.unknown_basis_average_mc(cfg.samples, cfg.seed)
        target = 2.0 / 105.0
    ok = est.within_sigmas(target, 4.0)
    lines.append("analytic = " + _fmt(analytic))
    lines.append("mc_mean = " + _fmt(est.mean))
    lines.append("mc_std_error = " + ("undefined" if est.n_samples == 1 else _fmt(est.std_error)))
    lines.append(f"rng = {est.algorithm}")
    lines.append("agreement_4_sigma = " + ("PASS" if ok else "FAIL"))
    print("\n".join(lines))
    return 0 if ok else 1


def cmd_verify(cfg: RunConfig) -> int:
    rows = verify_mod.run_all(cfg.seed, corrupt_kraus=cfg.corrupt_kraus)
    print(f"seed = {cfg.seed}")
    for row in rows:
        status = "PASS" if row.passed else "FAIL"
        print(f"[{status}] {row.criterion}: expected {row.expected}, "
              f"observed {row.observed}, tolerance {row.tolerance}")
    n_bad = sum(1 for r in rows if not r.passed)
    if cfg.out is not None:
        with open(cfg.out, "w", newline="\n") as fh:
            fh.write(verify_mod.rows_to_json(rows, cfg.seed))
    if n_bad:
        print(f"FAILED: {n_bad} of {len(rows)} checks")
        return 1
    print(f"all {len(rows)} checks passed")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig(command=args.command)

    if args.command in ("bounds", "simulate"):
        cfg.state = _resolve_state(parser, args)
    if args.command == "simulate":
        root_half = complex(np.sqrt(2) / 2)
        cfg.a = args.a if args.a is not None else root_half
        cfg.b = args.b if args.b is not None else root_half
        if (cfg.a == 0 and cfg.b == 0) or constraint_value(cfg.a, cfg.b) > 1.0 + 1e-12:
            parser.error("invalid Kraus parameters: need 2(|a|^4+|b|^4) <= 1, not both zero")
    if args.command in ("vidal-curve", "f-grid"):
        if args.grid < 2:
            parser.error("--grid must be at least 2")
        cfg.grid_points = args.grid
        cfg.out = args.out
    if args.command == "haar-average":
        if args.samples < 1:
            parser.error("--samples must be at least 1")
        cfg.samples = args.samples
        cfg.mode = args.mode
        cfg.seed = _resolve_seed(parser, args.seed)
    if args.command == "verify":
        cfg.seed = _resolve_seed(parser, args.seed)
        cfg.out = args.out
        cfg.corrupt_kraus = args.corrupt_kraus

    handlers = {
        "bounds": cmd_bounds,
        "simulate": cmd_simulate,
        "vidal-curve": cmd_vidal_curve,
        "f-grid": cmd_f_grid,
        "haar-average": cmd_haar_average,
        "verify": cmd_verify,
    }
    return handlers[args.command](cfg)


if __name__ == "__main__":
    sys.exit(main())
