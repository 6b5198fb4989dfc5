"""Arbitrary-precision binary fixed-point arithmetic."""

from . import kernels
from .kernels import KARATSUBA_THRESHOLD, karatsuba_mul
from .number import (
    DEFAULT_GUARD_DIGITS,
    BigFixed,
    ContextMismatchError,
    DigitCapacityError,
    PrecisionContext,
    add,
    div,
    fourth_root,
    from_decimal_string,
    mul,
    shift_pow2,
    sqrt,
    sub,
    to_decimal_string,
)

__all__ = [
    "BigFixed",
    "ContextMismatchError",
    "DEFAULT_GUARD_DIGITS",
    "DigitCapacityError",
    "KARATSUBA_THRESHOLD",
    "PrecisionContext",
    "add",
    "div",
    "fourth_root",
    "from_decimal_string",
    "karatsuba_mul",
    "kernels",
    "mul",
    "shift_pow2",
    "sqrt",
    "sub",
    "to_decimal_string",
]
