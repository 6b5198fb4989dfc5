"""Borwein iterations of second and fourth order."""

from __future__ import annotations

from dataclasses import dataclass

from .fixedpoint import BigFixed, PrecisionContext, fourth_root, shift_pow2, sqrt


class PrecisionExhaustedError(ArithmeticError):
    """An iterate left its valid range, meaning rounding noise took over."""


@dataclass(frozen=True)
class BorweinQuadState:
    n: int
    k: BigFixed
    e: BigFixed


@dataclass(frozen=True)
class BorweinQuartState:
    n: int
    y: BigFixed
    z: BigFixed


def _six_minus_four_root2(ctx: PrecisionContext) -> tuple[BigFixed, BigFixed]:
    root2 = sqrt(ctx.from_int(2))
    return root2, 6 - shift_pow2(root2, 2)


def bb2_init(ctx: PrecisionContext) -> BorweinQuadState:
    root2, e0 = _six_minus_four_root2(ctx)
    k0 = 3 - shift_pow2(root2, 1)
    return BorweinQuadState(n=0, k=k0, e=e0)


def bb2_step(st: BorweinQuadState) -> BorweinQuadState:
    k = st.k
    if k.sign < 0 or k >= 1:
        raise PrecisionExhaustedError(f"k_{st.n} outside [0, 1)")
    # sqrt(1 - k^2) in factored form
    r = sqrt((1 - k) * (1 + k))
    k_next = (1 - r) / (1 + r)
    n = st.n + 1
    g = 1 + k_next
    e_next = st.e * (g * g) - shift_pow2(k_next, n + 1)
    return BorweinQuadState(n=n, k=k_next, e=e_next)


def bb2_output(st: BorweinQuadState) -> BigFixed:
    return 1 / st.e


def bb2_states(ctx: PrecisionContext, iterations: int) -> list[BorweinQuadState]:
    states = [bb2_init(ctx)]
    for _ in range(iterations):
        states.append(bb2_step(states[-1]))
    return states


def bb4_init(ctx: PrecisionContext) -> BorweinQuartState:
    root2, z0 = _six_minus_four_root2(ctx)
    return BorweinQuartState(n=0, y=root2 - 1, z=z0)


def bb4_step(st: BorweinQuartState) -> BorweinQuartState:
    y = st.y
    if y.sign < 0 or y >= 1:
        raise PrecisionExhaustedError(f"y_{st.n} outside [0, 1)")
    y2 = y * y
    r = fourth_root(1 - y2 * y2)
    y_next = (1 - r) / (1 + r)
    n = st.n + 1
    g = 1 + y_next
    g2 = g * g
    tail = y_next * (1 + y_next + y_next * y_next)
    # 2 * 4**n = 2**(2n + 1)
    z_next = st.z * (g2 * g2) - shift_pow2(tail, 2 * n + 1)
    return BorweinQuartState(n=n, y=y_next, z=z_next)


def bb4_output(st: BorweinQuartState) -> BigFixed:
    return 1 / st.z


def bb4_states(ctx: PrecisionContext, iterations: int) -> list[BorweinQuartState]:
    states = [bb4_init(ctx)]
    for _ in range(iterations):
        states.append(bb4_step(states[-1]))
    return states
