"""Command-line interface.

Exit codes: 0 success, 1 cross-check failure, 2 invalid input or
configuration, 3 no closed form (use ``simulate``).
"""

import argparse
import csv
import sys
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional

from pydantic import ValidationError

from meancycle import __version__
from meancycle.config import settings
from meancycle.models.cases import CaseFamily
from meancycle.models.matrix import MatrixModel
from meancycle.models.schemas import Estimate, ExactResult, ModelFile, SimConfig, SweepSpec
from meancycle.services import evaluation
from meancycle.services.classifier import classify
from meancycle.services.reference_table import build_table
from meancycle.services.sweep import PRESETS, preset_spec, save_csv, sweep, write_csv
from meancycle.solvers.montecarlo import simulate
from meancycle.utils.exceptions import (
    InvalidConfigurationError,
    MeanCycleError,
    NoClosedFormError,
)
from meancycle.utils.logger import log, setup_logging

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INVALID = 2
EXIT_NO_CLOSED_FORM = 3

# Exact fractions are shown only below this denominator.
MAX_SHOWN_DENOMINATOR = 10**6


def load_model(path: Path) -> MatrixModel:
    """Read a JSON model file; raises ValidationError naming the offending field."""
    return ModelFile.model_validate_json(Path(path).read_text(encoding="utf-8")).entries


def format_lambda(value: float, exact: Optional[str] = None) -> str:
    """``1.785088 (= 407/228)``; the fraction is omitted when its denominator is large."""
    text = f"{value:.6f}"
    if exact is not None and Fraction(exact).denominator <= MAX_SHOWN_DENOMINATOR:
        text += f" (= {exact})"
    return text


def _print_exact(result: ExactResult) -> None:
    line = f"{result.family.value}, lambda = {format_lambda(result.value, result.exact)}"
    if result.low_precision:
        line += f" [printed constant, +/- {result.precision:.1e}]"
    print(line)
    print(f"  method: {result.method}, transform: {result.transform.value}")


def _print_estimate(estimate: Estimate) -> None:
    print(f"lambda_hat = {estimate.lambda_hat:.6f}, stderr = {estimate.stderr:.6f}")
    print(f"  steps={estimate.steps}, replications={estimate.replications}, "
          f"seed={estimate.seed}, renorm_period={estimate.renorm_period}")


def _sim_config(args: argparse.Namespace) -> SimConfig:
    overrides = {
        "steps": args.steps,
        "replications": args.reps,
        "seed": args.seed,
        "renorm_period": args.renorm,
    }
    return SimConfig(**{k: v for k, v in overrides.items() if v is not None})


def cmd_analytic(args: argparse.Namespace) -> int:
    m = load_model(args.model)
    case = classify(m)
    print(case.describe())
    if not case.has_closed_form:
        print("No closed form applies; use `meancycle simulate` for a Monte Carlo estimate.", file=sys.stderr)
        return EXIT_NO_CLOSED_FORM
    _print_exact(evaluation.evaluate_case(case))
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace) -> int:
    m = load_model(args.model)
    estimate = simulate(m, _sim_config(args), workers=args.threads)
    _print_estimate(estimate)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(["replication", "lambda_hat"])
            for i, value in enumerate(estimate.per_replication):
                writer.writerow([i, repr(value)])
        log.info(f"Wrote {len(estimate.per_replication)} replications to {args.csv}")
    return EXIT_OK


def cmd_compare(args: argparse.Namespace) -> int:
    m = load_model(args.model)
    record = evaluation.compare(m, _sim_config(args), workers=args.threads)
    if record.exact is not None:
        _print_exact(record.exact)
    else:
        print(f"{record.family.value}: no exact value, Monte Carlo only")
    _print_estimate(record.estimate)
    if record.z_score is not None:
        verdict = "ok" if record.passed else "FAILED"
        print(f"z = {record.z_score:+.3f} (threshold {record.threshold:g}): {verdict}")
    return EXIT_OK if record.passed else EXIT_CHECK_FAILED


def _parse_assignments(items: List[str]) -> Dict[str, float]:
    params = {}
    for item in items:
        name, sep, value = item.partition("=")
        if not sep:
            raise InvalidConfigurationError(f"Expected name=value, got '{item}'")
        try:
            params[name.strip()] = float(value)
        except ValueError:
            raise InvalidConfigurationError(f"Parameter '{name}' needs a number, got '{value}'")
    return params


def _sweep_spec(args: argparse.Namespace) -> SweepSpec:
    if args.preset:
        spec = preset_spec(args.preset, fix=args.fix, points=args.points)
        return spec.model_copy(update={"fixed": {**spec.fixed, **_parse_assignments(args.set)}})
    if not args.case or not args.vary or args.start is None or args.stop is None:
        raise InvalidConfigurationError("sweep needs --preset, or --case, --vary, --from and --to")
    try:
        family = CaseFamily(args.case)
    except ValueError:
        raise InvalidConfigurationError(f"Unknown case '{args.case}'")
    return SweepSpec(
        case=family,
        vary=args.vary,
        start=args.start,
        stop=args.stop,
        points=args.points,
        fixed=_parse_assignments(args.set),
    )


def cmd_sweep(args: argparse.Namespace) -> int:
    rows = sweep(_sweep_spec(args))
    if args.output:
        save_csv(rows, args.output)
    else:
        write_csv(rows, sys.stdout)
    return EXIT_OK


def cmd_table(args: argparse.Namespace) -> int:
    rows = build_table(include_mc=not args.no_mc)
    print(f"{'reference':<30} {'published':>16} {'recomputed':>14} {'method':<12} {'difference':>11}  ok")
    for row in rows:
        print(f"{row.label:<30} {row.published:>16} {row.recomputed:>14.9f} {row.method:<12} "
              f"{row.difference:>11.2e}  {'yes' if row.agrees else 'NO'}")
    return EXIT_OK if all(row.agrees for row in rows) else EXIT_CHECK_FAILED


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run("meancycle.main:app", host=args.host, port=args.port)
    return EXIT_OK


def _add_sim_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("model", type=Path, help="JSON model file")
    p.add_argument("--steps", type=int, default=None, help=f"steps per replication (default {settings.sim_steps})")
    p.add_argument("--reps", type=int, default=None, help=f"replications (default {settings.sim_replications})")
    p.add_argument("--seed", type=int, default=None, help=f"base seed (default {settings.sim_seed})")
    p.add_argument("--renorm", type=int, default=None, help=f"renormalization period (default {settings.sim_renorm_period})")
    p.add_argument("--threads", type=int, default=None, help="worker processes (default MCT_THREADS or CPU count)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="meancycle",
        description="Mean cycle time of stochastic 2x2 max-plus systems.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", default=None, help="override MCT_LOG_LEVEL")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analytic", help="classify a model and evaluate its closed form")
    p.add_argument("model", type=Path, help="JSON model file")
    p.set_defaults(func=cmd_analytic)

    p = sub.add_parser("simulate", help="Monte Carlo estimate")
    _add_sim_flags(p)
    p.add_argument("--csv", type=Path, default=None, help="write replication,lambda_hat rows here")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("compare", help="exact value against Monte Carlo")
    _add_sim_flags(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("sweep", help="lambda over a parameter grid, as CSV")
    p.add_argument("--preset", choices=sorted(PRESETS), default=None)
    p.add_argument("--fix", type=float, default=1.0, help="value of the preset's fixed parameter")
    p.add_argument("--case", default=None, help="family name, e.g. ConstDiagOneRandom")
    p.add_argument("--vary", default=None, help="parameter to vary")
    p.add_argument("--from", dest="start", type=float, default=None)
    p.add_argument("--to", dest="stop", type=float, default=None)
    p.add_argument("--points", type=int, default=61)
    p.add_argument("--set", action="append", default=[], metavar="NAME=VALUE", help="fixed parameter")
    p.add_argument("--output", type=Path, default=None, help="CSV path (default stdout)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("table", help="published constants against recomputation")
    p.add_argument("--no-mc", action="store_true", help="skip rows that need Monte Carlo")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("serve", help="run the HTTP API")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)
    return parser


def _describe_validation(e: ValidationError) -> str:
    lines = []
    for err in e.errors():
        where = ".".join(str(part) for part in err["loc"]) or "input"
        lines.append(f"  {where}: {err['msg']}")
    return "\n".join(lines)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INVALID if e.code else EXIT_OK

    if args.log_level:
        settings.log_level = args.log_level
        setup_logging()

    try:
        return args.func(args)
    except ValidationError as e:
        print(f"error: invalid input\n{_describe_validation(e)}", file=sys.stderr)
    except NoClosedFormError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NO_CLOSED_FORM
    except MeanCycleError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
    return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
