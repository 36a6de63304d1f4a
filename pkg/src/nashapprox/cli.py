"""Command line: ``nashapprox run | selftest | describe``.

Exit codes: 0 all checks pass, 2 a verification check failed, 3 a pipeline
stage failed, 4 the input (problem file or flags) is invalid.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .core import AdmissionError, ApproxConfig, PipelineError
from .elim import ElimError
from .jet import JetError
from .poly import PolyError
from .problemio import ProblemError, load_problem, result_to_json, run_problem
from .selftest import SUITES, run_selftest
from .verify import verify_result

EXIT_OK, EXIT_VERIFY, EXIT_PIPELINE, EXIT_INPUT = 0, 2, 3, 4


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    problem: Path
    order: int | None
    nu_list: tuple
    seed: int
    precision: int
    tol: float
    max_tries: int
    max_depth: int
    out: Path | None
    mode: str | None
    verbose: bool

    def __post_init__(self):
        if self.order is not None and self.order < 2:
            raise ConfigError("--order must be at least 2")
        if not self.nu_list:
            raise ConfigError("--nu must list at least one value")
        if any(b <= a for a, b in zip(self.nu_list, self.nu_list[1:])) or self.nu_list[0] < 0:
            raise ConfigError("--nu must be non-negative and strictly ascending")
        if self.precision < 64:
            raise ConfigError("--precision must be at least 64 bits")
        if not self.tol > 0:
            raise ConfigError("--tol must be positive")
        if self.max_tries < 1 or self.max_depth < 0:
            raise ConfigError("--max-tries must be positive and --max-depth non-negative")

    def approx_config(self) -> ApproxConfig:
        return ApproxConfig(
            precision=self.precision,
            tolerance=self.tol,
            seed=self.seed,
            max_tries=self.max_tries,
            max_depth=self.max_depth,
        )


def _nu_list(text: str) -> tuple:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError as exc:
        raise ConfigError(f"bad --nu list {text!r}") from exc


def _emit(doc: dict, out: Path | None) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def run(cfg: RunConfig) -> int:
    acfg = cfg.approx_config()
    try:
        spec = load_problem(cfg.problem, acfg)
        if cfg.mode is not None and cfg.mode != spec.mode:
            raise ProblemError(f"--mode {cfg.mode} does not match the problem file ({spec.mode})")
        if cfg.order is not None:
            spec = spec.with_order(cfg.order)
    except ProblemError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        result = run_problem(spec, cfg.nu_list, acfg)
    except AdmissionError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (PipelineError, ElimError, PolyError, JetError) as exc:
        print(f"pipeline error: {exc}", file=sys.stderr)
        for line in getattr(exc, "trace", []):
            print(f"  {line}", file=sys.stderr)
        return EXIT_PIPELINE
    report = verify_result(result, acfg)
    doc = {
        "problem": spec.describe(),
        "config": acfg.to_json(),
        "result": result_to_json(result, include_timings=cfg.verbose),
        "report": report.to_json(include_timings=cfg.verbose),
    }
    _emit(doc, cfg.out)
    if cfg.verbose:
        print(report.render_text(), file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_VERIFY


def selftest(only: str | None, fault: bool) -> int:
    try:
        results = run_selftest(only, fault)
    except KeyError:
        print(f"unknown suite {only!r}; choose from {sorted(SUITES)}", file=sys.stderr)
        return EXIT_INPUT
    for r in results:
        tail = f"  ({r.detail})" if r.detail else ""
        print(f"{'PASS' if r.ok else 'FAIL'}  {r.suite}: {r.name}{tail}")
    return EXIT_OK if all(r.ok for r in results) else EXIT_VERIFY


def describe(path: Path | None) -> int:
    if path is None:
        doc = {
            "stages": ["admission", "proper position + descent", "division", "coefficient recursion",
                       "candidates", "correction + lifting", "annihilators", "verification"],
            "defaults": ApproxConfig().to_json(),
            "exit_codes": {"0": "all checks pass", "2": "verification failure", "3": "pipeline error", "4": "input error"},
        }
        _emit(doc, None)
        return EXIT_OK
    try:
        spec = load_problem(path)
    except ProblemError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _emit(spec.describe(), None)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nashapprox", description="Nash approximation of holomorphic solution jets.")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="approximate a problem file and verify the result")
    r.add_argument("--problem", required=True, type=Path)
    r.add_argument("--order", type=int)
    r.add_argument("--nu", default="1,2,3,4,5,6")
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--precision", type=int, default=128)
    r.add_argument("--tol", type=float, default=1e-9)
    r.add_argument("--max-tries", type=int, default=40)
    r.add_argument("--max-depth", type=int, default=4)
    r.add_argument("--out", type=Path)
    r.add_argument("--mode", choices=["theorem", "variety"])
    r.add_argument("--verbose", action="store_true")

    s = sub.add_parser("selftest", help="run the bundled property suites")
    s.add_argument("--filter", choices=sorted(SUITES))
    s.add_argument("--inject-fault", action="store_true", help="corrupt one golden value per suite")

    d = sub.add_parser("describe", help="summarize a problem file (or the pipeline defaults)")
    d.add_argument("--problem", type=Path)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if args.command == "selftest":
        return selftest(args.filter, args.inject_fault)
    if args.command == "describe":
        return describe(args.problem)
    try:
        cfg = RunConfig(
            problem=args.problem,
            order=args.order,
            nu_list=_nu_list(args.nu),
            seed=args.seed,
            precision=args.precision,
            tol=args.tol,
            max_tries=args.max_tries,
            max_depth=args.max_depth,
            out=args.out,
            mode=args.mode,
            verbose=args.verbose,
        )
    except ConfigError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
