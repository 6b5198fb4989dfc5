from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from . import kernels

LOG2_10 = math.log2(10)
DEFAULT_GUARD_DIGITS = 50
MIN_FRAC_BITS = 8


class ContextMismatchError(ValueError):
    """Arithmetic between numbers carrying different fraction widths."""


class DigitCapacityError(ValueError):
    """More output digits requested than the context was built for."""


@dataclass(frozen=True)
class PrecisionContext:
    """Fixed-point format shared by every number in one computation.

    ``frac_bits`` is derived: enough binary fraction bits to hold
    ``requested_digits + guard_digits`` decimals.
    """

    requested_digits: int
    guard_digits: int = DEFAULT_GUARD_DIGITS
    frac_bits: int = field(init=False)

    def __post_init__(self) -> None:
        if self.requested_digits < 1:
            raise ValueError("requested_digits must be >= 1")
        if self.guard_digits < 0:
            raise ValueError("guard_digits must be >= 0")
        total = self.requested_digits + self.guard_digits
        bits = max(MIN_FRAC_BITS, math.ceil(total * LOG2_10))
        object.__setattr__(self, "frac_bits", bits)

    @property
    def working_digits(self) -> int:
        return self.requested_digits + self.guard_digits

    def from_int(self, n: int) -> BigFixed:
        return BigFixed._from_raw(n << self.frac_bits, self)

    def from_fraction(self, q: Union[Fraction, int]) -> BigFixed:
        """Nearest representable value toward zero."""
        q = Fraction(q)
        num = abs(q.numerator) << self.frac_bits
        mag = num // q.denominator
        return BigFixed._from_raw(-mag if q < 0 else mag, self)

    def from_float(self, x: float) -> BigFixed:
        return self.from_fraction(Fraction(x))

    def from_string(self, s: str) -> BigFixed:
        return from_decimal_string(s, self)

    def one(self) -> BigFixed:
        return self.from_int(1)

    def zero(self) -> BigFixed:
        return BigFixed(0, 0, self)


Operand = Union["BigFixed", int]


@dataclass(frozen=True)
class BigFixed:
    """Signed binary fixed-point number ``sign * mantissa * 2**-F``.

    Immutable.  All arithmetic truncates toward zero.  Plain ``int``
    operands are accepted by ``+ - *`` and are exact.
    """

    sign: int
    mantissa: int
    context: PrecisionContext = field(repr=False)

    def __post_init__(self) -> None:
        if self.mantissa < 0:
            raise ValueError("mantissa must be non-negative")
        if self.sign not in (-1, 0, 1):
            raise ValueError("sign must be -1, 0 or +1")
        if (self.sign == 0) != (self.mantissa == 0):
            raise ValueError("sign is 0 exactly when mantissa is 0")

    @classmethod
    def _from_raw(cls, raw: int, ctx: PrecisionContext) -> BigFixed:
        if raw > 0:
            return cls(1, raw, ctx)
        if raw < 0:
            return cls(-1, -raw, ctx)
        return cls(0, 0, ctx)

    @property
    def raw(self) -> int:
        """Signed scaled integer ``value * 2**F``."""
        return self.sign * self.mantissa

    @property
    def frac_bits(self) -> int:
        return self.context.frac_bits

    def _coerce(self, other: Operand) -> BigFixed:
        if isinstance(other, BigFixed):
            if other.context.frac_bits != self.context.frac_bits:
                raise ContextMismatchError(
                    f"fraction bits differ: {self.context.frac_bits} vs {other.context.frac_bits}"
                )
            return other
        if isinstance(other, int):
            return self.context.from_int(other)
        return NotImplemented

    def __add__(self, other: Operand) -> BigFixed:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __sub__(self, other: Operand) -> BigFixed:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return sub(self, other)

    def __rsub__(self, other: Operand) -> BigFixed:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return sub(other, self)

    def __mul__(self, other: Operand) -> BigFixed:
        if isinstance(other, int):
            # exact scaling, no truncation involved
            return BigFixed._from_raw(self.raw * other, self.context)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other: Operand) -> BigFixed:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return div(self, other)

    def __rtruediv__(self, other: Operand) -> BigFixed:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return div(other, self)

    def __neg__(self) -> BigFixed:
        return BigFixed(-self.sign, self.mantissa, self.context)

    def __abs__(self) -> BigFixed:
        return BigFixed(abs(self.sign), self.mantissa, self.context)

    def __lshift__(self, j: int) -> BigFixed:
        return shift_pow2(self, j)

    def __rshift__(self, j: int) -> BigFixed:
        return shift_pow2(self, -j)

    def _cmp_raw(self, other: Operand) -> int:
        other = self._coerce(other)
        if other is NotImplemented:
            raise TypeError(f"cannot compare BigFixed with {type(other).__name__}")
        return other.raw

    def __lt__(self, other: Operand) -> bool:
        return self.raw < self._cmp_raw(other)

    def __le__(self, other: Operand) -> bool:
        return self.raw <= self._cmp_raw(other)

    def __gt__(self, other: Operand) -> bool:
        return self.raw > self._cmp_raw(other)

    def __ge__(self, other: Operand) -> bool:
        return self.raw >= self._cmp_raw(other)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, BigFixed):
            return self.frac_bits == other.frac_bits and self.raw == other.raw
        if isinstance(other, int):
            return self.raw == other << self.frac_bits
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.raw, self.frac_bits))

    def __bool__(self) -> bool:
        return self.sign != 0

    def __float__(self) -> float:
        return self.to_float()

    def to_float(self) -> float:
        if self.sign == 0:
            return 0.0
        f, e = kernels._float_top(self.mantissa)
        return self.sign * math.ldexp(f, e - self.frac_bits)

    def to_fraction(self) -> Fraction:
        return Fraction(self.raw, 1 << self.frac_bits)

    def log10_abs(self) -> float:
        """``log10(|x|)`` as a float; works far below the double range."""
        if self.sign == 0:
            return -math.inf
        f, e = kernels._float_top(self.mantissa)
        return math.log10(f) + (e - self.frac_bits) * math.log10(2)

    def to_decimal_string(self, digits: int) -> str:
        return to_decimal_string(self, digits)

    def __str__(self) -> str:
        return to_decimal_string(self, min(self.context.requested_digits, 30))


def _check(x: BigFixed, y: BigFixed) -> None:
    if x.context.frac_bits != y.context.frac_bits:
        raise ContextMismatchError(
            f"fraction bits differ: {x.context.frac_bits} vs {y.context.frac_bits}"
        )


def add(x: BigFixed, y: BigFixed) -> BigFixed:
    _check(x, y)
    return BigFixed._from_raw(x.raw + y.raw, x.context)


def sub(x: BigFixed, y: BigFixed) -> BigFixed:
    _check(x, y)
    return BigFixed._from_raw(x.raw - y.raw, x.context)


def mul(x: BigFixed, y: BigFixed) -> BigFixed:
    _check(x, y)
    sign = x.sign * y.sign
    if sign == 0:
        return x.context.zero()
    mag = kernels.karatsuba_mul(x.mantissa, y.mantissa) >> x.frac_bits
    return BigFixed(sign if mag else 0, mag, x.context)


def div(x: BigFixed, y: BigFixed) -> BigFixed:
    _check(x, y)
    if y.sign == 0:
        raise ZeroDivisionError("BigFixed division by zero")
    if x.sign == 0:
        return x.context.zero()
    mag, _ = kernels.divmod_newton(x.mantissa << x.frac_bits, y.mantissa)
    return BigFixed(x.sign * y.sign if mag else 0, mag, x.context)


def sqrt(x: BigFixed) -> BigFixed:
    if x.sign < 0:
        raise ValueError("square root of a negative number")
    if x.sign == 0:
        return x
    mag = kernels.isqrt_newton(x.mantissa << x.frac_bits)
    return BigFixed(1 if mag else 0, mag, x.context)


def fourth_root(x: BigFixed) -> BigFixed:
    """Two square roots, the inner one carried at double width.

    ``isqrt(isqrt(n)) == floor(n ** (1/4))`` exactly, so the result is the
    truncated fourth root.  Rounding the inner root to F bits instead would
    let its last-bit error grow by ``1/(2 sqrt(s))`` for small arguments.
    """
    if x.sign < 0:
        raise ValueError("fourth root of a negative number")
    if x.sign == 0:
        return x
    inner = kernels.isqrt_newton(x.mantissa << (3 * x.frac_bits))
    mag = kernels.isqrt_newton(inner)
    return BigFixed(1 if mag else 0, mag, x.context)


def shift_pow2(x: BigFixed, j: int) -> BigFixed:
    """``x * 2**j``; exact for ``j >= 0``, truncated toward zero otherwise."""
    if j >= 0:
        return BigFixed(x.sign, x.mantissa << j, x.context)
    mag = x.mantissa >> -j
    return BigFixed(x.sign if mag else 0, mag, x.context)


def to_decimal_string(x: BigFixed, digits: int) -> str:
    """Decimal expansion truncated (not rounded) to ``digits`` fraction digits."""
    if digits < 0:
        raise ValueError("digits must be >= 0")
    if digits > x.context.requested_digits:
        raise DigitCapacityError(
            f"{digits} digits requested but context holds {x.context.requested_digits}"
        )
    F = x.frac_bits
    ipart = x.mantissa >> F
    head = kernels.to_decimal_digits(ipart)
    if digits == 0:
        text = head
        nonzero = ipart != 0
    else:
        frac = x.mantissa & ((1 << F) - 1)
        scaled = kernels.karatsuba_mul(frac, 10**digits) >> F
        text = head + "." + kernels.to_decimal_digits(scaled, digits)
        nonzero = ipart != 0 or scaled != 0
    return "-" + text if x.sign < 0 and nonzero else text


_NUMERAL = re.compile(r"^\s*([-−+]?)(\d+)(?:\.(\d*))?\s*$")


def from_decimal_string(s: str, ctx: PrecisionContext) -> BigFixed:
    """Parse ``[-]int[.frac]``.

    Magnitudes are rounded up to the next representable value, so the
    result is within ``2**-F`` and truncating it back to the same number
    of digits reproduces the input.
    """
    m = _NUMERAL.match(s)
    if not m:
        raise ValueError(f"not a decimal numeral: {s!r}")
    sign_txt, int_txt, frac_txt = m.group(1), m.group(2), m.group(3) or ""
    d = len(frac_txt)
    num = kernels.from_decimal_digits(int_txt + frac_txt) if (int_txt + frac_txt) else 0
    den = 10**d
    mag = -((-(num << ctx.frac_bits)) // den)  # ceil
    negative = sign_txt in ("-", "−")
    return BigFixed._from_raw(-mag if negative else mag, ctx)
