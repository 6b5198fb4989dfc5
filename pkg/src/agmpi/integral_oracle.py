"""Double-precision quadrature checks of the integral identities behind the AGM.

Independent of the fixed-point machinery except where an identity
explicitly involves the AGM limit, which is then taken from ``agm``.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from .agm import agm_limit
from .fixedpoint import PrecisionContext

IDENTITY_TOL = 1e-9
GAMMA_TOL = 1e-7
GAUSS_TOL = 1e-12

# the AGM oracle only needs a little more than double precision
_AGM_CTX = PrecisionContext(40, 10)


class QuadratureError(RuntimeError):
    """Panel doubling hit its limit without meeting the tolerance."""


@dataclass(frozen=True)
class QuadratureSettings:
    target_tol: float = 1e-11
    max_refinements: int = 24
    truncation_T: Optional[float] = None  # None: pick per integrand

    def __post_init__(self) -> None:
        if not self.target_tol > 0:
            raise ValueError("target_tol must be positive")
        if self.max_refinements < 4:
            raise ValueError("max_refinements must be >= 4")


DEFAULT_SETTINGS = QuadratureSettings()


@dataclass
class IdentityCheck:
    name: str
    lhs: float
    rhs: float
    abs_dev: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.abs_dev < self.tol

    def as_dict(self) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        return d


def _check(name: str, lhs: float, rhs: float, tol: float) -> IdentityCheck:
    return IdentityCheck(name, float(lhs), float(rhs), abs(float(lhs) - float(rhs)), tol)


def simpson(
    f: Callable[[np.ndarray], np.ndarray],
    lo: float,
    hi: float,
    qs: QuadratureSettings = DEFAULT_SETTINGS,
) -> float:
    """Composite Simpson rule, doubling panels until two passes agree to tol/2."""
    prev = None
    panels = 2
    for level in range(qs.max_refinements):
        x = np.linspace(lo, hi, panels + 1)
        y = f(x)
        h = (hi - lo) / panels
        val = h / 3 * (y[0] + y[-1] + 4 * y[1:-1:2].sum() + 2 * y[2:-1:2].sum())
        # a few levels before trusting agreement; smooth-looking coarse grids lie
        if prev is not None and level >= 3 and abs(val - prev) < qs.target_tol / 2:
            return float(val)
        prev = val
        panels *= 2
    raise QuadratureError(f"no convergence on [{lo}, {hi}] after {qs.max_refinements} refinements")


def _check_positive(*vals: float) -> None:
    if any(not v > 0 for v in vals):
        raise ValueError("arguments must be positive")


def integral_I(a: float, b: float, qs: QuadratureSettings = DEFAULT_SETTINGS) -> float:
    """``∫_0^{π/2} dΦ / sqrt(a² cos²Φ + b² sin²Φ)``."""
    _check_positive(a, b)
    return simpson(
        lambda p: 1.0 / np.sqrt(a * a * np.cos(p) ** 2 + b * b * np.sin(p) ** 2),
        0.0,
        math.pi / 2,
        qs,
    )


def integral_L(a: float, b: float, qs: QuadratureSettings = DEFAULT_SETTINGS) -> float:
    """``∫_0^{π/2} cos²Φ dΦ / sqrt(a² cos²Φ + b² sin²Φ)``."""
    _check_positive(a, b)
    return simpson(
        lambda p: np.cos(p) ** 2 / np.sqrt(a * a * np.cos(p) ** 2 + b * b * np.sin(p) ** 2),
        0.0,
        math.pi / 2,
        qs,
    )


def agm_float(a: float, b: float) -> float:
    """AGM of two doubles, evaluated by the fixed-point ``agm_limit``."""
    _check_positive(a, b)
    return agm_limit(_AGM_CTX.from_float(a), _AGM_CTX.from_float(b)).to_float()


def _agm_pairs(a: float, b: float, steps: int) -> list[tuple[float, float]]:
    pairs = [(a, b)]
    for _ in range(steps):
        a, b = pairs[-1]
        pairs.append(((a + b) / 2, math.sqrt(a * b)))
    return pairs


def check_agm_invariance(
    a: float, b: float, steps: int, qs: QuadratureSettings = DEFAULT_SETTINGS
) -> list[IdentityCheck]:
    if not a >= b > 0:
        raise ValueError("need a >= b > 0")
    base = integral_I(a, b, qs)
    return [
        _check(f"I(a_{k},b_{k}) = I(a_0,b_0) at ({a:g},{b:g})", integral_I(ak, bk, qs), base, IDENTITY_TOL)
        for k, (ak, bk) in enumerate(_agm_pairs(a, b, steps))
        if k >= 1
    ]


def check_agm_value(a: float, b: float, qs: QuadratureSettings = DEFAULT_SETTINGS) -> IdentityCheck:
    return _check(
        f"I(a,b) = pi/(2 AGM(a,b)) at ({a:g},{b:g})",
        integral_I(a, b, qs),
        math.pi / (2 * agm_float(a, b)),
        IDENTITY_TOL,
    )


def check_L_sum(a: float, b: float, qs: QuadratureSettings = DEFAULT_SETTINGS) -> IdentityCheck:
    return _check(
        f"L(b,a) + L(a,b) = I(a,b) at ({a:g},{b:g})",
        integral_L(b, a, qs) + integral_L(a, b, qs),
        integral_I(a, b, qs),
        IDENTITY_TOL,
    )


def check_L_difference(a: float, b: float, qs: QuadratureSettings = DEFAULT_SETTINGS) -> IdentityCheck:
    if not a >= b > 0:
        raise ValueError("need a >= b > 0")
    a1, b1 = (a + b) / 2, math.sqrt(a * b)
    return _check(
        f"L(b,a) - L(a,b) = (a-b)/(a+b) L(b1,a1) at ({a:g},{b:g})",
        integral_L(b, a, qs) - integral_L(a, b, qs),
        (a - b) / (a + b) * integral_L(b1, a1, qs),
        IDENTITY_TOL,
    )


def agm_weighted_sum(a: float, b: float, terms: int) -> float:
    """``sum_{j=1..terms} 2**j c_j**2`` with ``c_j**2 = ((a_{j-1} - b_{j-1})/2)**2``."""
    total = 0.0
    for j, (aj, bj) in enumerate(_agm_pairs(a, b, terms - 1), start=1):
        total += 2.0**j * ((aj - bj) / 2) ** 2
    return total


def check_sum_identity(
    a: float, b: float, terms: int = 30, qs: QuadratureSettings = DEFAULT_SETTINGS
) -> IdentityCheck:
    if not a >= b > 0:
        raise ValueError("need a >= b > 0")
    c0_sq = a * a - b * b
    S = agm_weighted_sum(a, b, terms)
    return _check(
        f"2 c0^2 L(a,b) = (c0^2 - S) I(a,b) at ({a:g},{b:g})",
        2 * c0_sq * integral_L(a, b, qs),
        (c0_sq - S) * integral_I(a, b, qs),
        IDENTITY_TOL,
    )


def check_scaling(
    a: float, b: float, lam: float, qs: QuadratureSettings = DEFAULT_SETTINGS
) -> IdentityCheck:
    _check_positive(a, b, lam)
    return _check(
        f"I(la,lb) = I(a,b)/l at ({a:g},{b:g}), l={lam:g}",
        integral_I(lam * a, lam * b, qs),
        integral_I(a, b, qs) / lam,
        IDENTITY_TOL,
    )


def check_gauss_formula(terms: int = 30, tol: float = GAUSS_TOL) -> IdentityCheck:
    """``pi = 4 AGM(1, 1/sqrt 2)**2 / (1 - 2 S)`` with ``S`` cut after ``terms`` terms."""
    m = agm_float(1.0, math.sqrt(0.5))
    S = agm_weighted_sum(1.0, math.sqrt(0.5), terms)
    return _check(f"Gauss formula, {terms} terms", 4 * m * m / (1 - 2 * S), math.pi, tol)


def check_lemniscate_product(qs: QuadratureSettings = DEFAULT_SETTINGS) -> IdentityCheck:
    r2 = math.sqrt(2.0)
    return _check(
        "L(sqrt2,1) I(sqrt2,1) = pi/4",
        integral_L(r2, 1.0, qs) * integral_I(r2, 1.0, qs),
        math.pi / 4,
        IDENTITY_TOL,
    )


def _smoothing_power(u: float) -> int:
    """Integer ``m`` making ``m * s**(m*u - 1)`` smooth enough for Simpson.

    A small denominator makes the exponent an integer.  Otherwise push the
    exponent to at least 3, past which Simpson keeps its fourth order.
    """
    q = Fraction(u).limit_denominator(64)
    if abs(float(q) - u) < 1e-15:
        return q.denominator
    return max(1, math.ceil(4 / u))


def _gamma_cutoff(u: float) -> float:
    # e^-T T^(u-1) < 1e-20
    T = 50.0
    while math.exp(-T) * T ** (u - 1) >= 1e-20:
        T *= 1.25
    return T


def gamma_value(u: float, qs: QuadratureSettings = DEFAULT_SETTINGS) -> float:
    """``∫_0^T t^(u-1) e^-t dt`` after substituting ``t = s**m``."""
    _check_positive(u)
    T = qs.truncation_T if qs.truncation_T is not None else _gamma_cutoff(u)
    m = _smoothing_power(u)
    p = m * u - 1

    def f(s: np.ndarray) -> np.ndarray:
        with np.errstate(divide="ignore", invalid="ignore"):
            out = m * np.power(s, p) * np.exp(-np.power(s, m))
        if p == 0:
            out[s == 0] = m
        return np.nan_to_num(out)

    return simpson(f, 0.0, T ** (1.0 / m), qs)


def beta_value(u: float, v: float, qs: QuadratureSettings = DEFAULT_SETTINGS) -> float:
    """``∫_0^1 t^(u-1) (1-t)^(v-1) dt``, split at 1/2 with a power substitution per end."""
    _check_positive(u, v)

    def half(alpha: float, beta: float) -> float:
        # ∫_0^{1/2} t^(alpha-1) (1-t)^(beta-1) dt with t = s**m
        m = _smoothing_power(alpha)
        p = m * alpha - 1

        def f(s: np.ndarray) -> np.ndarray:
            with np.errstate(divide="ignore", invalid="ignore"):
                out = m * np.power(s, p) * np.power(1 - np.power(s, m), beta - 1)
            if p == 0:
                out[s == 0] = m
            return np.nan_to_num(out)

        return simpson(f, 0.0, 0.5 ** (1.0 / m), qs)

    return half(u, v) + half(v, u)


def check_gamma_half(qs: QuadratureSettings = DEFAULT_SETTINGS) -> IdentityCheck:
    return _check("Gamma(1/2) = sqrt(pi)", gamma_value(0.5, qs), math.sqrt(math.pi), GAMMA_TOL)


def check_gamma_recurrence(u: float, qs: QuadratureSettings = DEFAULT_SETTINGS) -> IdentityCheck:
    return _check(
        f"Gamma(u+1) = u Gamma(u) at u={u:g}",
        gamma_value(u + 1, qs),
        u * gamma_value(u, qs),
        GAMMA_TOL,
    )


def check_beta_relation(u: float, v: float, qs: QuadratureSettings = DEFAULT_SETTINGS) -> IdentityCheck:
    return _check(
        f"B(u,v) = Gamma(u)Gamma(v)/Gamma(u+v) at ({u:g},{v:g})",
        beta_value(u, v, qs),
        gamma_value(u, qs) * gamma_value(v, qs) / gamma_value(u + v, qs),
        GAMMA_TOL,
    )


def check_beta_quarter_product(qs: QuadratureSettings = DEFAULT_SETTINGS) -> IdentityCheck:
    """``B(3/4,1/2) B(1/4,1/2) / 16 = pi/4``."""
    return _check(
        "B(3/4,1/2) B(1/4,1/2)/16 = pi/4",
        beta_value(0.75, 0.5, qs) * beta_value(0.25, 0.5, qs) / 16,
        math.pi / 4,
        GAMMA_TOL,
    )


def run_oracle(qs: QuadratureSettings = DEFAULT_SETTINGS) -> list[IdentityCheck]:
    """Every identity at its standard sample points."""
    r2, ir2 = math.sqrt(2.0), math.sqrt(0.5)
    checks: list[IdentityCheck] = []
    checks += check_agm_invariance(1.0, ir2, 4, qs)
    checks += check_agm_invariance(2.0, 1.0, 3, qs)
    checks += [check_agm_value(a, b, qs) for a, b in ((1.0, 1.0), (1.0, ir2), (3.0, 2.0))]
    checks += [check_L_sum(a, b, qs) for a, b in ((1.0, ir2), (2.0, 1.0))]
    checks += [check_L_difference(a, b, qs) for a, b in ((1.0, ir2), (2.0, 1.0))]
    checks += [check_sum_identity(a, b, 30, qs) for a, b in ((1.0, ir2), (r2, 1.0))]
    checks += [check_scaling(r2, 1.0, ir2, qs), check_scaling(1.0, 0.5, 3.0, qs)]
    checks.append(check_gauss_formula())
    checks.append(check_lemniscate_product(qs))
    checks.append(check_gamma_half(qs))
    checks.append(check_gamma_recurrence(0.5, qs))
    checks += [check_beta_relation(u, v, qs) for u, v in ((1.0, 1.0), (0.75, 0.5), (0.25, 0.5), (2.0, 3.0))]
    checks.append(check_beta_quarter_product(qs))
    return checks


def checks_to_json(checks: list[IdentityCheck]) -> str:
    return json.dumps([c.as_dict() for c in checks], indent=2)


def checks_to_text(checks: list[IdentityCheck]) -> str:
    lines = []
    for c in checks:
        status = "PASS" if c.passed else "FAIL"
        lines.append(f"{status}  {c.abs_dev:.3e} < {c.tol:.0e}  {c.name}")
    return "\n".join(lines)
