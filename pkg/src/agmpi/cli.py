"""Command-line front end.

    agmpi compute --digits 1000 --algorithm bb4
    agmpi table   --digits 200 --format json
    agmpi verify  --digits 200 --iterations 5
    agmpi oracle
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from typing import Optional, Sequence, TextIO

from . import convergence, equivalence, integral_oracle
from .agm import agm_output, agm_states
from .borwein import bb2_output, bb2_states, bb4_output, bb4_states
from .fixedpoint import DEFAULT_GUARD_DIGITS, PrecisionContext

COMMANDS = ("compute", "table", "verify", "oracle")
ALGORITHMS = ("bs", "bb2", "bb4")


@dataclass(frozen=True)
class CliConfig:
    command: str
    digits: int = 100
    algorithm: str = "bs"
    guard: int = DEFAULT_GUARD_DIGITS
    iterations: Optional[int] = None
    format: str = "text"

    def __post_init__(self) -> None:
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        if self.digits < 1:
            raise ValueError("digits must be >= 1")
        if self.guard < 0:
            raise ValueError("guard must be >= 0")
        if self.iterations is not None and self.iterations < 0:
            raise ValueError("iterations must be >= 0")
        if self.format not in ("text", "json"):
            raise ValueError(f"unknown format {self.format!r}")

    @property
    def context(self) -> PrecisionContext:
        return PrecisionContext(self.digits, self.guard)


def _count(minimum: int):
    def parse(text: str) -> int:
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
        if value < minimum:
            raise argparse.ArgumentTypeError(f"must be >= {minimum}, got {value}")
        return value

    return parse


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--digits", type=_count(1), default=100, help="decimal digits after the point")
    common.add_argument("--algorithm", choices=ALGORITHMS, default="bs")
    common.add_argument("--guard", type=_count(0), default=DEFAULT_GUARD_DIGITS, help="extra working digits")
    common.add_argument("--iterations", type=_count(0), default=None)
    common.add_argument("--format", choices=("text", "json"), default="text")

    parser = argparse.ArgumentParser(prog="agmpi", description="AGM-type pi iterations.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("compute", parents=[common], help="print pi to --digits digits")
    sub.add_parser("table", parents=[common], help="per-iteration convergence table")
    sub.add_parser("verify", parents=[common], help="cross-check the three iterations")
    sub.add_parser("oracle", parents=[common], help="quadrature checks of the integral identities")
    return parser


def parse_args(argv: Sequence[str]) -> CliConfig:
    """Parse ``argv``; usage errors exit with status 2."""
    ns = build_parser().parse_args(list(argv))
    return CliConfig(
        command=ns.command,
        digits=ns.digits,
        algorithm=ns.algorithm,
        guard=ns.guard,
        iterations=ns.iterations,
        format=ns.format,
    )


def planned_iterations(digits: int, algorithm: str) -> int:
    n = convergence.required_iterations(digits)
    return math.ceil(n / 2) if algorithm == "bb4" else n


def compute_digits(cfg: CliConfig) -> tuple[str, int]:
    ctx = cfg.context
    n = cfg.iterations if cfg.iterations is not None else planned_iterations(cfg.digits, cfg.algorithm)
    if cfg.algorithm == "bs":
        value = agm_output(agm_states(ctx, n)[-1])
    elif cfg.algorithm == "bb2":
        value = bb2_output(bb2_states(ctx, n)[-1])
    else:
        value = bb4_output(bb4_states(ctx, n)[-1])
    return value.to_decimal_string(cfg.digits), n


def run(cfg: CliConfig, out: Optional[TextIO] = None) -> int:
    """Execute ``cfg``, writing results to ``out`` (stdout by default); returns the exit status."""
    if out is None:
        out = sys.stdout
    if cfg.command == "compute":
        digits, n = compute_digits(cfg)
        if cfg.format == "json":
            out.write(json.dumps({
                "algorithm": cfg.algorithm,
                "digits": cfg.digits,
                "guard": cfg.guard,
                "iterations": n,
                "value": digits,
            }) + "\n")
        else:
            out.write(digits + "\n")
        return 0

    if cfg.command == "table":
        n = cfg.iterations if cfg.iterations is not None else convergence.required_iterations(cfg.digits)
        report = convergence.build_report(max(n, 1), cfg.context)
        out.write((report.to_json() if cfg.format == "json" else report.to_table()) + "\n")
        return 0

    if cfg.command == "verify":
        n = cfg.iterations if cfg.iterations is not None else convergence.required_iterations(cfg.digits)
        report = equivalence.check_all(n, cfg.context)
        out.write((report.to_json() if cfg.format == "json" else report.to_text()) + "\n")
        return 0 if report.passed else 1

    checks = integral_oracle.run_oracle()
    if cfg.format == "json":
        out.write(integral_oracle.checks_to_json(checks) + "\n")
    else:
        out.write(integral_oracle.checks_to_text(checks) + "\n")
    return 0 if all(c.passed for c in checks) else 1


def main(argv: Optional[Sequence[str]] = None) -> int:
    cfg = parse_args(sys.argv[1:] if argv is None else argv)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
