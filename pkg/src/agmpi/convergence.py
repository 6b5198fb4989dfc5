"""Error bounds, iteration planning and per-iteration accuracy reports."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence

from .agm import agm_output, agm_states
from .fixedpoint import BigFixed, PrecisionContext, kernels

QUADRATIC_CONSTANT = 0.075
PLANNING_MARGIN_DIGITS = 10

_LOG10_2 = math.log10(2)
_LOG10_PI = math.log10(math.pi)


class InsufficientPrecisionError(ValueError):
    """The context cannot resolve the quantity being measured."""


def brent_bound_log10(n: int) -> float:
    """``log10`` of the a-priori bound ``(2**(n+4)*pi**2 - 8*pi) * exp(-2**(n+1)*pi)``.

    Evaluated in log space; the bound itself underflows any fixed format
    after a handful of iterations.
    """
    if n < 1:
        raise ValueError("bound is stated for n >= 1")
    if n >= 30:
        prefactor = (n + 4) * _LOG10_2 + 2 * _LOG10_PI
    else:
        prefactor = math.log10(2.0 ** (n + 4) * math.pi**2 - 8 * math.pi)
    return prefactor - math.ldexp(math.pi, n + 1) / math.log(10)


def required_iterations(digits: int) -> int:
    """Smallest ``N`` whose bound is below ``10**-(digits + 10)``."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    target = -(digits + PLANNING_MARGIN_DIGITS)
    n = 1
    while brent_bound_log10(n) >= target:
        n += 1
    return n


def correct_digit_count(candidate: str, reference: str) -> int:
    """Number of fraction digits to which ``candidate`` is accurate.

    Both are decimal strings ``I.FFF...``.  Returns the largest ``k`` with
    ``|candidate - reference| < 10**-k``, the difference taken exactly on
    the digit strings (the shorter fraction is padded with zeros).
    Identical strings count every digit.
    """
    ci, cf = _split_numeral(candidate)
    ri, rf = _split_numeral(reference)
    d = max(len(cf), len(rf))
    w = max(len(ci), len(ri))
    a = ci.zfill(w) + cf.ljust(d, "0")
    b = ri.zfill(w) + rf.ljust(d, "0")
    m = next((i for i in range(len(a)) if a[i] != b[i]), None)
    if m is None:
        return d
    # digits before m agree, so the difference lives in the tails
    diff = abs(kernels.from_decimal_digits(a[m:]) - kernels.from_decimal_digits(b[m:]))
    return max(d - _decimal_length(diff), 0)


def _decimal_length(n: int) -> int:
    k = max(1, int(n.bit_length() * _LOG10_2))
    while 10**k <= n:
        k += 1
    while k > 1 and 10 ** (k - 1) > n:
        k -= 1
    return k


def _split_numeral(s: str) -> tuple[str, str]:
    if not isinstance(s, str) or s.count(".") != 1:
        raise ValueError(f"expected a decimal string with a point: {s!r}")
    ipart, fpart = s.split(".")
    if not ipart.isdigit() or not (fpart == "" or fpart.isdigit()):
        raise ValueError(f"malformed decimal string: {s!r}")
    return ipart, fpart


@dataclass
class IterationRecord:
    n: int
    value: str
    correct_digits: int
    log10_error: Optional[float]
    log10_bound: Optional[float]
    empirical_ratio: Optional[float]


@dataclass
class ConvergenceReport:
    records: list[IterationRecord] = field(default_factory=list)
    reference_digits: str = ""

    def to_json(self) -> str:
        rows = []
        for r in self.records:
            row = asdict(r)
            # JSON has no inf/nan
            for key in ("log10_error", "log10_bound", "empirical_ratio"):
                if row[key] is not None and not math.isfinite(row[key]):
                    row[key] = None
            rows.append(row)
        return json.dumps(
            {"reference_digits": self.reference_digits, "records": rows}, indent=2
        )

    def to_table(self, width: int = 24) -> str:
        header = f"{'n':>3}  {'p_n':<{width + 2}}  {'digits':>7}  {'log10|pi-p_n|':>14}  {'log10 bound':>14}  {'ratio':>10}"
        lines = [header, "-" * len(header)]
        for r in self.records:
            err = "-" if r.log10_error is None else f"{r.log10_error:.2f}"
            bound = "-" if r.log10_bound is None else f"{r.log10_bound:.2f}"
            ratio = "-" if r.empirical_ratio is None else f"{r.empirical_ratio:.3e}"
            shown = r.value[: width + 2]
            lines.append(
                f"{r.n:>3}  {shown:<{width + 2}}  {r.correct_digits:>7}  {err:>14}  {bound:>14}  {ratio:>10}"
            )
        return "\n".join(lines)


def _log_gap(reference: BigFixed, value: BigFixed) -> Optional[float]:
    gap = reference - value
    if gap.sign == 0:
        return None
    return gap.log10_abs()


def _resolvable(log_err: Optional[float], ctx: PrecisionContext) -> bool:
    # a few ulps of difference is arithmetic noise, not signal
    noise = (8 - ctx.frac_bits) * _LOG10_2
    return log_err is not None and log_err > noise


def report_from_outputs(
    outputs: Sequence[BigFixed], reference: BigFixed
) -> ConvergenceReport:
    """Fill a report from precomputed outputs ``p_0..p_N`` and a reference."""
    ctx = reference.context
    digits = ctx.requested_digits
    ref_txt = reference.to_decimal_string(digits)
    report = ConvergenceReport(reference_digits=ref_txt)
    prev_log: Optional[float] = None
    for n, p in enumerate(outputs):
        txt = p.to_decimal_string(digits)
        log_err = _log_gap(reference, p)
        ok = _resolvable(log_err, ctx)
        ratio = None
        if n >= 1 and ok and prev_log is not None:
            ratio = 10.0 ** (log_err - 2 * prev_log)
        report.records.append(
            IterationRecord(
                n=n,
                value=txt,
                correct_digits=correct_digit_count(txt, ref_txt),
                log10_error=log_err if ok else None,
                log10_bound=brent_bound_log10(n) if n >= 1 else None,
                empirical_ratio=ratio,
            )
        )
        prev_log = log_err if ok else None
    return report


def reference_pi(ctx: PrecisionContext) -> BigFixed:
    """Pi at the context's precision, one iteration past the planned count."""
    n_ref = required_iterations(ctx.requested_digits) + 1
    return agm_output(agm_states(ctx, n_ref)[-1])


def build_report(N: int, ctx: PrecisionContext) -> ConvergenceReport:
    if N < 1:
        raise ValueError("N must be >= 1")
    n_ref = required_iterations(ctx.requested_digits) + 1
    states = agm_states(ctx, max(N, n_ref))
    outputs = [agm_output(st) for st in states]
    return report_from_outputs(outputs[: N + 1], outputs[n_ref])


def empirical_ratio(n: int, ctx: PrecisionContext) -> float:
    """``|pi - p_(n+1)| / |pi - p_n|**2`` measured at the context's precision."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if ctx.requested_digits < 2 * 2 ** (n + 2):
        raise InsufficientPrecisionError(
            f"n={n} needs at least {2 * 2 ** (n + 2)} digits, context has {ctx.requested_digits}"
        )
    n_ref = required_iterations(ctx.requested_digits) + 1
    states = agm_states(ctx, max(n + 1, n_ref))
    ref = agm_output(states[n_ref])
    num = _log_gap(ref, agm_output(states[n + 1]))
    den = _log_gap(ref, agm_output(states[n]))
    if not _resolvable(num, ctx) or not _resolvable(den, ctx):
        raise InsufficientPrecisionError(f"|pi - p_{n + 1}| is below the working precision")
    return 10.0 ** (num - 2 * den)
