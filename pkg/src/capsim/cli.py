"""Command-line entry point: validate, sample, run, compare, serve.

All randomness flows from the --seed flag; outputs are byte-identical across
repeated invocations with the same inputs. Exit codes: 0 success, 1 validation
failure, 2 runtime error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace
from pathlib import Path

from . import __version__
from .decision import Lexicographic, NeedConstrained, Weighted
from .dynamics import report_to_json, run, trajectory_csv
from .errors import CapsimError, ParseError, ValidationError
from .evaluation import compare, compute_metrics, delta_to_json, metrics_to_json
from .population import population_csv, sample_population
from .scenario import bundled_scenario_names, load_scenario, validate

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_RUNTIME = 2


def _default_out_dir() -> str:
    return os.environ.get("CAPSIM_OUT_DIR", "out")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="capsim",
        description="Capability-approach policy simulation",
    )
    parser.add_argument("--version", action="version", version=f"capsim {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a scenario file, print violations")
    p.add_argument("scenario", help="path to a scenario file or a bundled scenario name")

    p = sub.add_parser("sample", help="sample a population and dump it as CSV")
    p.add_argument("scenario")
    p.add_argument("--n", type=int, default=None, help="override the population size")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", default=None, help="output file (default: stdout)")

    p = sub.add_parser("run", help="simulate and write report, trajectory, metrics")
    p.add_argument("scenario")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out-dir", default=None, help=f"output directory (default: $CAPSIM_OUT_DIR or {_default_out_dir()!r})")
    p.add_argument("--horizon", type=int, default=None)
    p.add_argument("--aggregation", choices=["lexicographic", "weighted", "need_constrained"], default=None)
    p.add_argument("--epsilon", type=float, default=None, help="epsilon for lexicographic/need_constrained")
    p.add_argument("--w", type=float, default=None, help="long-term weight for weighted aggregation")
    p.add_argument("--disable-norm", action="append", default=[], metavar="NORM_ID")
    p.add_argument("--enable-norm", action="append", default=[], metavar="NORM_ID")
    p.add_argument("--schedule", choices=["ascending", "shuffled"], default=None)
    p.add_argument("--format", choices=["text", "structured"], default="text", help="stdout summary style")

    p = sub.add_parser("compare", help="diff two metrics files")
    p.add_argument("metrics_a")
    p.add_argument("metrics_b")
    p.add_argument("--out", default=None, help="write the delta report here (default: stdout only)")
    p.add_argument("--format", choices=["text", "structured"], default="text")

    p = sub.add_parser("serve", help="start the HTTP service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--workers", type=int, default=2, help="run-executor worker threads")

    p = sub.add_parser("scenarios", help="list bundled scenarios")
    return parser


def _aggregation_from_args(args, scenario):
    if args.aggregation is None:
        return None
    if args.aggregation == "weighted":
        return Weighted(w=args.w if args.w is not None else scenario.simulation.aggregation.w)
    eps = args.epsilon if args.epsilon is not None else scenario.simulation.aggregation.epsilon
    if args.aggregation == "need_constrained":
        return NeedConstrained(epsilon=eps)
    return Lexicographic(epsilon=eps)


def _cmd_validate(args) -> int:
    try:
        load_scenario(args.scenario)
    except ValidationError as exc:
        for violation in exc.violations:
            print(f"violation: {violation}", file=sys.stderr)
        return EXIT_VALIDATION
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    print("ok")
    return EXIT_OK


def _cmd_sample(args) -> int:
    scenario = load_scenario(args.scenario)
    pop = scenario.population
    if args.n is not None:
        pop = replace(pop, n=args.n)
    agents = sample_population(pop, args.seed, needs=scenario.needs)
    text = population_csv(agents, needs=scenario.needs)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"wrote {args.out} ({len(agents)} agents)")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _text_summary(metrics_dict: dict) -> str:
    lines = [
        f"scenario: {metrics_dict['scenario_name']}  seed: {metrics_dict['seed']}  "
        f"agents: {metrics_dict['n_agents']}  horizon: {metrics_dict['horizon']}",
        "capability            deprivation  functioning",
    ]
    for cap, m in sorted(metrics_dict["capabilities"].items()):
        lines.append(f"{cap:<22}{m['deprivation_ratio']:>10.4f}{m['functioning_rate']:>13.4f}")
    for payer, amount in sorted(metrics_dict["expenses"].items()):
        lines.append(f"expenses[{payer}]: {amount:.2f}")
    return "\n".join(lines)


def _cmd_run(args) -> int:
    scenario = load_scenario(args.scenario)
    overrides = {norm_id: False for norm_id in args.disable_norm}
    overrides.update({norm_id: True for norm_id in args.enable_norm})
    report = run(
        scenario,
        seed=args.seed,
        horizon=args.horizon,
        aggregation=_aggregation_from_args(args, scenario),
        norm_overrides=overrides,
        schedule=args.schedule,
    )
    metrics = compute_metrics(report, scenario)

    out_dir = Path(args.out_dir if args.out_dir is not None else _default_out_dir())
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "report.json").write_text(report_to_json(report), encoding="utf-8")
    (out_dir / "trajectory.csv").write_text(trajectory_csv(report), encoding="utf-8")
    metrics_json = metrics_to_json(metrics)
    (out_dir / "metrics.json").write_text(metrics_json, encoding="utf-8")

    if args.format == "text":
        print(_text_summary(metrics.to_dict()))
        print(f"wrote {out_dir}/report.json, trajectory.csv, metrics.json")
    else:
        sys.stdout.write(metrics_json)
    return EXIT_OK


def _cmd_compare(args) -> int:
    a = json.loads(Path(args.metrics_a).read_text(encoding="utf-8"))
    b = json.loads(Path(args.metrics_b).read_text(encoding="utf-8"))
    delta = compare(a, b)
    text = delta_to_json(delta)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    if args.format == "structured" or not args.out:
        sys.stdout.write(text)
    else:
        d = delta.to_dict()
        print(f"comparing {d['a']} -> {d['b']}")
        for cap, entry in sorted(d["capability_deltas"].items()):
            print(
                f"{cap:<22}deprivation {entry['deprivation_delta']:+.4f}  "
                f"functioning {entry['functioning_delta']:+.4f}  ({entry['flag']})"
            )
        for payer, amount in sorted(d["expense_deltas"].items()):
            print(f"expenses[{payer}]: {amount:+.2f}")
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(workers=args.workers), host=args.host, port=args.port, log_level="info")
    return EXIT_OK


def _cmd_scenarios(args) -> int:
    for name in bundled_scenario_names():
        print(name)
    return EXIT_OK


_COMMANDS = {
    "validate": _cmd_validate,
    "sample": _cmd_sample,
    "run": _cmd_run,
    "compare": _cmd_compare,
    "serve": _cmd_serve,
    "scenarios": _cmd_scenarios,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ValidationError as exc:
        for violation in exc.violations:
            print(f"violation: {violation}", file=sys.stderr)
        return EXIT_VALIDATION
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except CapsimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
