"""Brent-Salamin (Gauss-Legendre) iteration and a general AGM evaluator."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Optional

from .fixedpoint import BigFixed, PrecisionContext, shift_pow2, sqrt

if TYPE_CHECKING:
    from .convergence import ConvergenceReport

# slack over the last bit before two means count as equal
AGM_CUTOFF_BITS = 8


@dataclass(frozen=True)
class AgmState:
    """One point of the Brent-Salamin sequence.

    ``c_sq`` is ``a**2 - b**2`` and ``s`` the running sum of ``2**j * c_j**2``
    for ``j = 1..n``.
    """

    n: int
    a: BigFixed
    b: BigFixed
    c_sq: BigFixed
    s: BigFixed

    @property
    def context(self) -> PrecisionContext:
        return self.a.context


def agm_init(ctx: PrecisionContext) -> AgmState:
    one = ctx.one()
    half = shift_pow2(one, -1)
    return AgmState(n=0, a=one, b=sqrt(half), c_sq=half, s=ctx.zero())


def agm_step(st: AgmState) -> AgmState:
    a, b = st.a, st.b
    a_next = shift_pow2(a + b, -1)
    b_next = sqrt(a * b)
    # ((a - b)/2)**2 rather than a'**2 - b'**2, which cancels half the digits
    half_gap = shift_pow2(a - b, -1)
    c_sq = half_gap * half_gap
    n = st.n + 1
    return AgmState(n=n, a=a_next, b=b_next, c_sq=c_sq, s=st.s + shift_pow2(c_sq, n))


def agm_output(st: AgmState) -> BigFixed:
    """``(a + b)**2 / (1 - 2*s)``."""
    num = st.a + st.b
    den = 1 - shift_pow2(st.s, 1)
    return (num * num) / den


def agm_states(ctx: PrecisionContext, iterations: int) -> list[AgmState]:
    """States for ``n = 0..iterations``."""
    if iterations < 0:
        raise ValueError("iterations must be >= 0")
    states = [agm_init(ctx)]
    for _ in range(iterations):
        states.append(agm_step(states[-1]))
    return states


def agm_limit(a0: BigFixed, b0: BigFixed, max_steps: int = 10_000) -> BigFixed:
    """Common limit of the arithmetic and geometric means of ``a0`` and ``b0``."""
    if a0.sign <= 0 or b0.sign <= 0:
        raise ValueError("AGM needs positive arguments")
    a, b = (a0, b0) if a0 >= b0 else (b0, a0)
    tol = 1 << AGM_CUTOFF_BITS
    for _ in range(max_steps):
        if abs(a.raw - b.raw) < tol:
            return a
        a, b = shift_pow2(a + b, -1), sqrt(a * b)
    raise RuntimeError("AGM did not settle")  # pragma: no cover


def run_brent_salamin(
    digits: int,
    iterations: Optional[int] = None,
    guard_digits: Optional[int] = None,
) -> tuple[str, ConvergenceReport]:
    """Compute pi to ``digits`` truncated decimals with the AGM iteration.

    Returns the digit string of ``p_N`` and a per-iteration report.  When
    ``iterations`` is omitted it comes from the a-priori error bound.  The
    reference for the report is one iteration past the planned count, so
    it costs a single extra step rather than a second run.
    """
    from . import convergence

    if digits < 1:
        raise ValueError("digits must be >= 1")
    if iterations is not None and iterations < 0:
        raise ValueError("iterations must be >= 0")
    ctx = (
        PrecisionContext(digits)
        if guard_digits is None
        else PrecisionContext(digits, guard_digits)
    )
    n_ref = convergence.required_iterations(digits) + 1
    n_run = iterations if iterations is not None else n_ref - 1
    states = agm_states(ctx, max(n_run, n_ref))
    outputs = [agm_output(st) for st in states]
    report = convergence.report_from_outputs(outputs[: n_run + 1], outputs[n_ref])
    return outputs[n_run].to_decimal_string(digits), report
