"""Command line interface.

Subcommands:

    run          evolve one configured state, write the observable CSV
    verify       kernel-oracle and identity suites, exit 0 iff green
    paper-table  the 3 shapes x 3 time steps conservation grid
    compare      reaction step vs exact unitary from the same state
    even-odd     parity demonstration report

Exit codes: 0 success, 1 failed checks, 2 invalid configuration,
3 numerical guard violation.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from .config import RunConfig, read_config
from .evolve import TimestepBoundError, euler_step_spectral, exact_step, run
from .experiments import (
    even_odd_comparison,
    identity_suite,
    kernel_oracle_check,
    paper_table_grid,
    paper_table_text,
)
from .ioutil import atomic_write_text, fmt
from .kernels import build_kernel_table
from .observables import drift_velocity
from .state import build_state, norm_m, write_state_csv

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_CONFIG = 2
EXIT_GUARD = 3


def _add_run_overrides(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="flat key = value config file")
    parser.add_argument("--n-sites", type=int, dest="n_sites")
    parser.add_argument("--lattice-constant", type=float, dest="lattice_constant")
    parser.add_argument("--shape", choices=["gaussian", "uniform", "random"])
    parser.add_argument("--center", type=int)
    parser.add_argument("--width", type=float,
                        help="gaussian sigma or uniform half-width, in sites")
    parser.add_argument("--velocity-index", type=int, dest="velocity_index")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--scheme", choices=["euler", "exact"])
    parser.add_argument("--euler-method", choices=["spectral", "reference"],
                        dest="euler_method")
    parser.add_argument("--tau", type=float)
    parser.add_argument("--n-steps", type=int, dest="n_steps")
    parser.add_argument("--record-every", type=int, dest="record_every")
    parser.add_argument("--parity-mode", choices=["odd_standard", "even_naive"],
                        dest="parity_mode")


def _config_from_args(args) -> RunConfig:
    base = RunConfig()
    if args.config:
        base = read_config(args.config, base=base)
    overrides = {
        name: getattr(args, name)
        for name in (
            "n_sites", "lattice_constant", "shape", "center", "width",
            "velocity_index", "seed", "scheme", "euler_method", "tau",
            "n_steps", "record_every", "parity_mode",
        )
        if getattr(args, name, None) is not None
    }
    for name in ("csv_path", "json_path", "checkpoint_every", "checkpoint_dir"):
        value = getattr(args, name, None)
        if value is not None:
            overrides[name] = value
    return RunConfig(**{**base.__dict__, **overrides})


def _cmd_run(args) -> int:
    try:
        config = _config_from_args(args)
        lattice = config.lattice()
        state = build_state(lattice, config.state_spec())
        evolution = config.evolution()
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_CONFIG
    try:
        kernels = build_kernel_table(lattice) if lattice.parity == "odd" else None
        series = run(
            state,
            evolution,
            config.n_steps,
            config.record_every,
            kernels=kernels,
            checkpoint_every=config.checkpoint_every,
        )
    except TimestepBoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    if config.csv_path:
        series.write_csv(config.csv_path)
    else:
        sys.stdout.write(series.to_csv_text())
    if config.json_path:
        series.write_json(config.json_path)
    if config.checkpoint_every > 0:
        directory = config.checkpoint_dir or "."
        os.makedirs(directory, exist_ok=True)
        for step, checkpoint in sorted(series.checkpoints.items()):
            write_state_csv(checkpoint, os.path.join(directory, f"state_{step:06d}.csv"))
    return EXIT_OK


def _cmd_verify(args) -> int:
    kernel_ns = [n for n in (3, 5, 7, 21, 101, 801) if n <= args.max_n] or [3]
    identity_ns = [n for n in (3, 5, 9, 15, 21) if n <= args.max_n] or [3]
    reports = [
        kernel_oracle_check(kernel_ns, perturbation=args.inject_kernel_error),
        identity_suite(identity_ns),
    ]
    for report in reports:
        sys.stdout.write(report.to_text())
    if all(report.passed for report in reports):
        print("verify: all checks passed")
        return EXIT_OK
    failing = [
        check.name for report in reports for check in report.checks
        if check.gated and not check.passed
    ]
    print("verify: FAILED -> " + "; ".join(failing))
    return EXIT_CHECK_FAILED


def _cmd_paper_table(args) -> int:
    report = paper_table_grid(n_steps=args.steps, seed=args.seed)
    table = paper_table_text(report)
    sys.stdout.write(table)
    print(f"result: {'PASS' if report.passed else 'FAIL'}")
    if args.json:
        report.write_json(args.json)
    if args.text:
        atomic_write_text(args.text, table)
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def _cmd_compare(args) -> int:
    try:
        config = _config_from_args(args)
        if config.parity_mode != "odd_standard":
            raise ValueError("compare runs on the standard odd lattice")
        lattice = config.lattice()
        state = build_state(lattice, config.state_spec())
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_CONFIG
    kernels = build_kernel_table(lattice)
    rows = []
    euler_state = state
    for step in range(config.n_steps + 1):
        if step % config.record_every == 0 or step == config.n_steps:
            exact_state = state if step == 0 else exact_step(state, step * config.tau)
            deviation = float(
                np.linalg.norm(euler_state.amplitudes() - exact_state.amplitudes())
            )
            rows.append(
                (
                    step,
                    deviation,
                    norm_m(euler_state),
                    norm_m(exact_state),
                    drift_velocity(euler_state, kernels),
                    drift_velocity(exact_state, kernels),
                )
            )
        if step < config.n_steps:
            try:
                euler_state = euler_step_spectral(euler_state, config.tau)
            except TimestepBoundError as exc:
                print(f"error: {exc}", file=sys.stderr)
                return EXIT_GUARD
    lines = ["step,deviation,m_euler,m_exact,drift_euler,drift_exact"]
    for row in rows:
        lines.append(str(row[0]) + "," + ",".join(fmt(x) for x in row[1:]))
    text = "\n".join(lines) + "\n"
    if args.csv_path:
        atomic_write_text(args.csv_path, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_even_odd(args) -> int:
    report = even_odd_comparison(
        n_even=args.n_even, n_odd=args.n_odd, sigma=args.sigma,
        n_steps=args.steps, tau=args.tau,
    )
    sys.stdout.write(report.to_text())
    if args.json:
        report.write_json(args.json)
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ringfield",
        description="two-field reaction process on a cyclic lattice",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="evolve a state and write the observable series")
    _add_run_overrides(p_run)
    p_run.add_argument("--csv", dest="csv_path", help="observable CSV path (default stdout)")
    p_run.add_argument("--json", dest="json_path", help="also write the series as JSON")
    p_run.add_argument("--checkpoint-every", type=int, dest="checkpoint_every")
    p_run.add_argument("--checkpoint-dir", dest="checkpoint_dir")
    p_run.set_defaults(func=_cmd_run)

    p_verify = sub.add_parser("verify", help="kernel oracle and identity suites")
    p_verify.add_argument("--max-n", type=int, default=801,
                          help="largest lattice to include (default 801)")
    p_verify.add_argument("--inject-kernel-error", type=float, default=0.0,
                          help="self-test hook: offset added to the closed-form "
                               "kernel so the equivalence check must fail")
    p_verify.set_defaults(func=_cmd_verify)

    p_table = sub.add_parser("paper-table", help="conservation grid with pass/fail bands")
    p_table.add_argument("--steps", type=int, default=1000)
    p_table.add_argument("--seed", type=int, default=0)
    p_table.add_argument("--json", help="write the report as JSON")
    p_table.add_argument("--text", help="write the report as text")
    p_table.set_defaults(func=_cmd_paper_table)

    p_cmp = sub.add_parser("compare", help="reaction step vs exact unitary")
    _add_run_overrides(p_cmp)
    p_cmp.add_argument("--csv", dest="csv_path", help="comparison CSV path (default stdout)")
    p_cmp.set_defaults(func=_cmd_compare)

    p_eo = sub.add_parser("even-odd", help="even vs odd parity demonstration")
    p_eo.add_argument("--n-even", type=int, default=800, dest="n_even")
    p_eo.add_argument("--n-odd", type=int, default=801, dest="n_odd")
    p_eo.add_argument("--sigma", type=float, default=5.0)
    p_eo.add_argument("--steps", type=int, default=100)
    p_eo.add_argument("--tau", type=float, default=1e-3)
    p_eo.add_argument("--json", help="write the report as JSON")
    p_eo.set_defaults(func=_cmd_even_odd)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
