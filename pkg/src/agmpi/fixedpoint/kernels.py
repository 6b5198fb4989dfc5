"""Integer kernels behind the fixed-point type.

Everything here works on plain non-negative Python ints.  The fixed-point
layer (``number.py``) owns scaling and signs; these functions only know
about bit lengths.
"""

from __future__ import annotations

import math

LIMB_BITS = 64
KARATSUBA_THRESHOLD = 32  # limbs

# Below this many bits the float seed is already as good as Newton gets.
_SEED_BITS = 50
_NEWTON_GUARD = 32


def karatsuba_mul(x: int, y: int, threshold: int = KARATSUBA_THRESHOLD) -> int:
    """Product of two non-negative ints.

    Operands shorter than ``threshold`` limbs go to the interpreter's
    schoolbook path; longer ones are split at a limb boundary and
    recombined from three half-size products.
    """
    if x < 0 or y < 0:
        raise ValueError("karatsuba_mul expects non-negative operands")
    # below two limbs a split cannot shrink the operands
    return _kmul(x, y, max(threshold, 2) * LIMB_BITS)


def _kmul(x: int, y: int, cutoff: int) -> int:
    nx = x.bit_length()
    ny = y.bit_length()
    if nx < cutoff or ny < cutoff:
        return x * y
    # split on the shorter operand so unbalanced products don't degrade
    half = (min(nx, ny) // 2 // LIMB_BITS) * LIMB_BITS or LIMB_BITS
    mask = (1 << half) - 1
    x1, x0 = x >> half, x & mask
    y1, y0 = y >> half, y & mask
    z2 = _kmul(x1, y1, cutoff)
    z0 = _kmul(x0, y0, cutoff)
    z1 = _kmul(x1 + x0, y1 + y0, cutoff) - z2 - z0
    return (((z2 << half) + z1) << half) + z0


def _float_top(n: int) -> tuple[float, int]:
    """Return (f, e) with n ~= f * 2**e and f in [0.5, 1)."""
    shift = n.bit_length() - 53
    if shift > 0:
        top = n >> shift
    else:
        top = n << -shift
    return top / (1 << 53), shift + 53


def _precision_ladder(target: int) -> list[int]:
    """Bit precisions visited by a doubling Newton schedule, ascending."""
    steps = []
    p = target
    while p > _SEED_BITS:
        steps.append(p)
        p = p // 2 + 2
    steps.append(p)
    steps.reverse()
    return steps


def reciprocal(m: int, prec: int) -> int:
    """Approximate ``2**(prec + n) // m`` where ``n = m.bit_length()``.

    The result has about ``prec + 1`` bits and is accurate to a few units
    in the last place.  Uses Newton's iteration ``y += y*(1 - x*y)`` with the
    working precision doubling at each step.
    """
    if m <= 0:
        raise ZeroDivisionError("reciprocal of non-positive integer")
    n = m.bit_length()
    ladder = _precision_ladder(prec)
    p = ladder[0]
    f, _ = _float_top(m)
    y = int((1.0 / f) * (1 << p))  # 1/x with x = m / 2**n in [0.5, 1)
    for q in ladder[1:]:
        # x truncated to q fraction bits
        xq = m >> (n - q) if n > q else m << (q - n)
        y <<= q - p
        e = (1 << (2 * q)) - _kmul(xq, y, KARATSUBA_THRESHOLD * LIMB_BITS)
        if e >= 0:
            y += _kmul(y, e, KARATSUBA_THRESHOLD * LIMB_BITS) >> (2 * q)
        else:
            y -= _kmul(y, -e, KARATSUBA_THRESHOLD * LIMB_BITS) >> (2 * q)
        p = q
    return y << (prec - p) if prec > p else y >> (p - prec)


def divmod_newton(a: int, b: int) -> tuple[int, int]:
    """Exact ``divmod(a, b)`` for ``a >= 0, b > 0`` via a Newton reciprocal."""
    if b <= 0:
        raise ZeroDivisionError("division by non-positive integer")
    if a < b:
        return 0, a
    na, nb = a.bit_length(), b.bit_length()
    if nb <= 2048 or na - nb <= 64:
        return divmod(a, b)
    qbits = na - nb + 1
    prec = qbits + _NEWTON_GUARD
    y = reciprocal(b, prec)  # ~ 2**(prec + nb) / b
    q = _kmul(a >> (nb - 1) if nb > 1 else a, y, KARATSUBA_THRESHOLD * LIMB_BITS)
    q >>= prec + 1
    r = a - _kmul(q, b, KARATSUBA_THRESHOLD * LIMB_BITS)
    while r < 0:
        q -= 1
        r += b
    while r >= b:
        q += 1
        r -= b
    return q, r


def isqrt_newton(n: int) -> int:
    """``floor(sqrt(n))`` via Newton's iteration for the inverse square root.

    The float seed covers the top 50 bits, each step doubles the working
    precision up to the target plus guard bits, and a last full-width
    correction makes the result exact.
    """
    if n < 0:
        raise ValueError("square root of negative integer")
    if n < (1 << 100):
        return math.isqrt(n)
    L = n.bit_length()
    k = (L + 1) // 2  # u = n / 4**k lies in [1/4, 1)
    target = k + _NEWTON_GUARD
    ladder = _precision_ladder(target)
    p = ladder[0]
    f, e = _float_top(n)
    u0 = f * 2.0 ** (e - 2 * k)
    y = int((1 << p) / math.sqrt(u0))  # 1/sqrt(u) in (1, 2]
    cutoff = KARATSUBA_THRESHOLD * LIMB_BITS
    for q in ladder[1:]:
        shift = 2 * k - q
        uq = n >> shift if shift >= 0 else n << -shift
        y <<= q - p
        t = _kmul(y, y, cutoff) >> q
        err = (1 << (2 * q)) - _kmul(uq, t, cutoff)
        if err >= 0:
            y += _kmul(y, err, cutoff) >> (2 * q + 1)
        else:
            y -= _kmul(y, -err, cutoff) >> (2 * q + 1)
        p = q
    # sqrt(n) = n * y / 2**(k + p); only the top bits of n matter here
    drop = max(0, L - p - 2)
    s = _kmul(n >> drop, y, cutoff) >> (k + p - drop)
    r = n - _kmul(s, s, cutoff)
    while r < 0:
        s -= 1
        r += 2 * s + 1
    while r > 2 * s:
        r -= 2 * s + 1
        s += 1
    return s


def to_decimal_digits(n: int, width: int = 0) -> str:
    """Decimal representation of ``n >= 0``, left-padded with zeros to ``width``.

    Divide and conquer on powers ``10**(2**i)`` so the work is dominated by
    a few large divisions instead of one digit at a time.  Avoids the
    interpreter's cap on int-to-str conversion.
    """
    if n < 0:
        raise ValueError("to_decimal_digits expects a non-negative integer")
    if width <= 0:
        # digit count estimate; _dc pads, so overshoot is trimmed below
        width = max(1, int(n.bit_length() * 0.30103) + 1)
        return _dc_digits(n, width).lstrip("0") or "0"
    return _dc_digits(n, width)


_LEAF_DIGITS = 1000


def _dc_digits(n: int, width: int) -> str:
    if width <= _LEAF_DIGITS:
        s = str(n)
        if len(s) > width:
            raise ValueError("value does not fit in requested width")
        return s.zfill(width)
    powers = [10]
    span = 1
    while span * 2 < width:
        powers.append(powers[-1] * powers[-1])
        span *= 2
    return _split(n, width, powers)


def _split(n: int, width: int, powers: list[int]) -> str:
    if width <= _LEAF_DIGITS:
        s = str(n)
        if len(s) > width:
            raise ValueError("value does not fit in requested width")
        return s.zfill(width)
    i = (width - 1).bit_length() - 1  # 2**i < width
    low_width = 1 << i
    hi, lo = divmod_newton(n, powers[i])
    return _split(hi, width - low_width, powers) + _split(lo, low_width, powers)


def from_decimal_digits(s: str) -> int:
    """Parse a string of ASCII digits into an int (any length)."""
    if not s or not s.isdigit() or not s.isascii():
        raise ValueError(f"not a digit string: {s[:20]!r}")
    if len(s) <= _LEAF_DIGITS:
        return int(s)
    half = len(s) // 2
    low = len(s) - half
    return from_decimal_digits(s[:half]) * 10**low + from_decimal_digits(s[half:])
