"""Side-by-side runs of the three pi iterations.

The AGM iteration, the quadratic Borwein iteration and the quartic one
produce the same outputs (the quartic one every second output of the
other two).  Here that is measured: every per-step identity is evaluated
at working precision and the largest deviation of each kind reported.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from typing import Optional

from .agm import agm_output, agm_states
from .borwein import bb2_output, bb2_states, bb4_output, bb4_states
from .fixedpoint import BigFixed, PrecisionContext, sqrt

TOLERANCE_SLACK_DIGITS = 10


def default_tolerance_log10(ctx: PrecisionContext) -> float:
    return -(ctx.working_digits - TOLERANCE_SLACK_DIGITS)


def _dev(x: BigFixed, y: BigFixed) -> float:
    """``log10|x - y|``; ``-inf`` for an exact match."""
    return (x - y).log10_abs()


def _worst(current: Optional[float], new: float) -> float:
    return new if current is None else max(current, new)


@dataclass
class EquivalenceReport:
    """Largest deviations, all stored as ``log10`` of the absolute value.

    ``max_dev_y`` checks ``y_n = sqrt(k_2n)`` in squared form,
    ``|y_n**2 - k_2n|``.  Taking the root of a tiny ``k_2n`` turns one unit in
    the last place into roughly ``sqrt(ulp)``, so the unsquared deviation
    ``max_dev_y_root`` is kept for information and does not gate ``passed``.
    """

    iterations: int
    frac_bits: int
    tolerance_log10: float
    max_dev_e: Optional[float] = None
    max_dev_k: Optional[float] = None
    max_dev_y: Optional[float] = None
    max_dev_y_root: Optional[float] = None
    max_dev_z: Optional[float] = None
    max_dev_outputs: Optional[float] = None

    GATED = ("max_dev_e", "max_dev_k", "max_dev_y", "max_dev_z", "max_dev_outputs")

    @property
    def passed(self) -> bool:
        return all(
            getattr(self, name) is None or getattr(self, name) < self.tolerance_log10
            for name in self.GATED
        )

    def merge(self, other: EquivalenceReport) -> EquivalenceReport:
        out = EquivalenceReport(
            iterations=max(self.iterations, other.iterations),
            frac_bits=self.frac_bits,
            tolerance_log10=self.tolerance_log10,
        )
        for name in self.GATED + ("max_dev_y_root",):
            a, b = getattr(self, name), getattr(other, name)
            vals = [v for v in (a, b) if v is not None]
            setattr(out, name, max(vals) if vals else None)
        return out

    def as_dict(self) -> dict:
        d = asdict(self)
        for key, value in d.items():
            if isinstance(value, float) and value == float("-inf"):
                d[key] = "-inf"
        d["passed"] = self.passed
        return d

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2)

    def to_text(self) -> str:
        return "\n".join(f"{k}: {v}" for k, v in self.as_dict().items())


def _new_report(N: int, ctx: PrecisionContext, tolerance_log10: Optional[float]) -> EquivalenceReport:
    tol = default_tolerance_log10(ctx) if tolerance_log10 is None else tolerance_log10
    return EquivalenceReport(iterations=N, frac_bits=ctx.frac_bits, tolerance_log10=tol)


def check_quadratic_equivalence(
    N: int, ctx: PrecisionContext, tolerance_log10: Optional[float] = None
) -> EquivalenceReport:
    """``e_n`` against ``1/p_n`` and ``k_n`` against ``a_n/a_(n+1) - 1`` for n <= N."""
    if N < 0:
        raise ValueError("N must be >= 0")
    report = _new_report(N, ctx, tolerance_log10)
    agm = agm_states(ctx, N + 1)
    quad = bb2_states(ctx, N)
    for n in range(N + 1):
        p = agm_output(agm[n])
        report.max_dev_e = _worst(report.max_dev_e, _dev(quad[n].e, 1 / p))
        ratio = agm[n].a / agm[n + 1].a - 1
        report.max_dev_k = _worst(report.max_dev_k, _dev(quad[n].k, ratio))
    report.max_dev_outputs = _dev(bb2_output(quad[N]), agm_output(agm[N]))
    return report


def check_quartic_equivalence(
    N: int, ctx: PrecisionContext, tolerance_log10: Optional[float] = None
) -> EquivalenceReport:
    """``y_n`` against ``sqrt(k_2n)`` and ``z_n`` against ``e_2n`` for n <= N."""
    if N < 0:
        raise ValueError("N must be >= 0")
    report = _new_report(N, ctx, tolerance_log10)
    quad = bb2_states(ctx, 2 * N)
    quart = bb4_states(ctx, N)
    for n in range(N + 1):
        y, k = quart[n].y, quad[2 * n].k
        report.max_dev_y = _worst(report.max_dev_y, _dev(y * y, k))
        report.max_dev_y_root = _worst(report.max_dev_y_root, _dev(y, sqrt(k)))
        report.max_dev_z = _worst(report.max_dev_z, _dev(quart[n].z, quad[2 * n].e))
    report.max_dev_outputs = _dev(bb4_output(quart[N]), bb2_output(quad[2 * N]))
    return report


def check_all(
    N: int, ctx: PrecisionContext, tolerance_log10: Optional[float] = None
) -> EquivalenceReport:
    """Both checks, plus the quartic output against ``p_2N`` directly."""
    quad = check_quadratic_equivalence(N, ctx, tolerance_log10)
    quart = check_quartic_equivalence(N, ctx, tolerance_log10)
    report = quad.merge(quart)
    direct = _dev(bb4_output(bb4_states(ctx, N)[N]), agm_output(agm_states(ctx, 2 * N)[2 * N]))
    report.max_dev_outputs = _worst(report.max_dev_outputs, direct)
    return report
