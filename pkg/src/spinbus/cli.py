"""Command-line driver: named experiments and the acceptance suite.

Exit codes: 0 success, 2 config or usage problem, 3 capacity exceeded,
4 eigensolver non-convergence, 1 anything unexpected.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_CONFIG = 2
EXIT_CAPACITY = 3
EXIT_CONVERGENCE = 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinbus",
        description="Heisenberg chains with weakly attached qubits: "
        "effective couplings and entanglement datasets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a named experiment and write its datasets")
    run.add_argument("--experiment", help="fig2 | fig3 | fig4 | fig5 | parity_levels | scaling | custom")
    run.add_argument("--config", type=Path, help="JSON config file (overridden by flags)")
    run.add_argument("--out", type=Path, help="output directory (default out/<experiment>)")
    run.add_argument("--force", action="store_true", help="overwrite existing output files")
    run.add_argument("--threads", type=int, help="BLAS thread cap; 1 gives bit-reproducible output")
    run.add_argument("--seed", type=int, help="start-vector seed for the iterative eigensolver")
    run.add_argument("--jq", type=float, help="bare qubit-chain coupling in units of J0")
    run.add_argument("--lambda-min", type=float, dest="lambda_min")
    run.add_argument("--lambda-max", type=float, dest="lambda_max")
    run.add_argument("--lambda-steps", type=int, dest="lambda_steps")
    run.add_argument("--mixture", action="store_true", help="use the doublet mixture for maps")

    verify = sub.add_parser("verify", help="run the acceptance criteria and report pass/fail")
    verify.add_argument("--cap", type=int, default=24, help="skip checks needing more sites than this")
    verify.add_argument("--out", type=Path, help="also write summary.json here")
    verify.add_argument("--force", action="store_true", help="overwrite an existing summary")
    verify.add_argument("--threads", type=int)
    verify.add_argument("--seed", type=int, default=7)
    return parser


def _load_config(args) -> "ExperimentConfig":
    from .experiments import ExperimentConfig

    payload: dict = {}
    if args.config is not None:
        payload = json.loads(args.config.read_text())
        if not isinstance(payload, dict):
            raise ValueError("config file must hold a JSON object")
    if args.experiment is not None:
        payload["experiment"] = args.experiment
    if "experiment" not in payload:
        raise ValueError("no experiment named; pass --experiment or put it in the config")
    if args.out is not None:
        payload["out_dir"] = str(args.out)
    if args.seed is not None:
        payload["seed"] = args.seed
    if args.jq is not None:
        payload["j_bare"] = args.jq
    for key in ("lambda_min", "lambda_max", "lambda_steps"):
        value = getattr(args, key)
        if value is not None:
            payload[key] = value
    if args.mixture:
        payload["doublet_mixture"] = True
    return ExperimentConfig.from_dict(payload)


def _thread_limiter(threads: int | None):
    if threads is None:
        import contextlib

        return contextlib.nullcontext()
    from threadpoolctl import threadpool_limits

    return threadpool_limits(limits=threads)


def _cmd_run(args) -> int:
    from .experiments import run_experiment

    config = _load_config(args)
    with _thread_limiter(args.threads):
        checks = run_experiment(config, force=args.force)
    for check in checks:
        print(check.line())
    print(f"wrote datasets to {config.resolved_out_dir()}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    from .acceptance import run_all

    with _thread_limiter(args.threads):
        results = run_all(cap=args.cap, seed=args.seed)
    for r in results:
        print(r.line())
    n_fail = sum(r.status == "FAIL" for r in results)
    n_skip = sum(r.status == "SKIP" for r in results)
    print(f"{len(results)} checks: {len(results) - n_fail - n_skip} passed, "
          f"{n_fail} failed, {n_skip} skipped")
    if args.out is not None:
        args.out.mkdir(parents=True, exist_ok=True)
        target = args.out / "summary.json"
        if target.exists() and not args.force:
            raise FileExistsError(f"{target} exists; pass --force to overwrite")
        target.write_text(json.dumps([r.to_dict() for r in results], indent=2) + "\n")
    return EXIT_OK if n_fail == 0 else EXIT_UNEXPECTED


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    from .errors import CapacityError, ConvergenceError

    try:
        if args.command == "run":
            return _cmd_run(args)
        return _cmd_verify(args)
    except (ValueError, KeyError, FileExistsError, FileNotFoundError, json.JSONDecodeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except CapacityError as err:
        print(f"capacity error: {err}", file=sys.stderr)
        return EXIT_CAPACITY
    except ConvergenceError as err:
        print(f"convergence error: {err}", file=sys.stderr)
        return EXIT_CONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
