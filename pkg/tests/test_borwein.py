import mpmath
import pytest

from agmpi.agm import agm_output, agm_states
from agmpi.borwein import (
    BorweinQuadState,
    BorweinQuartState,
    PrecisionExhaustedError,
    bb2_init,
    bb2_output,
    bb2_states,
    bb2_step,
    bb4_init,
    bb4_output,
    bb4_states,
    bb4_step,
)
from agmpi.fixedpoint import PrecisionContext, sqrt, to_decimal_string

from conftest import GOLDEN_P, mp_digits

# mpmath, 50 digits truncated
K0 = "0.17157287525380990239662255158060384286065624924610"
E0 = "0.34314575050761980479324510316120768572131249849220"
Y0 = "0.41421356237309504880168872420969807856967187537694"


def test_oracle_constants():
    with mpmath.workdps(80):
        r2 = mpmath.sqrt(2)
        assert mp_digits(3 - 2 * r2, 50) == K0
        assert mp_digits(6 - 4 * r2, 50) == E0
        assert mp_digits(r2 - 1, 50) == Y0


def test_bb2_init(ctx60):
    s = bb2_init(ctx60)
    assert s.n == 0
    assert to_decimal_string(s.k, 50) == K0
    assert to_decimal_string(s.e, 50) == E0
    assert s.e.raw == 2 * s.k.raw


def test_bb4_init(ctx60):
    q = bb4_init(ctx60)
    assert to_decimal_string(q.y, 50) == Y0
    assert abs((q.y * q.y - bb2_init(ctx60).k).raw) < 1 << 6
    assert q.z == bb2_init(ctx60).e


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
def test_bb2_outputs_match_golden(n):
    s = bb2_states(PrecisionContext(60), n)[-1]
    assert to_decimal_string(bb2_output(s), 45) == GOLDEN_P[n]


@pytest.mark.parametrize("n", [0, 1, 2])
def test_bb4_outputs_match_golden(n):
    s = bb4_states(PrecisionContext(60), n)[-1]
    assert to_decimal_string(bb4_output(s), 45) == GOLDEN_P[2 * n]


def test_bb2_e1_against_agm(ctx60):
    s = bb2_states(ctx60, 1)[-1]
    p1 = agm_output(agm_states(ctx60, 1)[-1])
    assert abs(s.e - 1 / p1).log10_abs() < -100


def test_degenerate_inputs_are_fixed_points(ctx60):
    z = ctx60.zero()
    s = bb2_step(BorweinQuadState(0, z, ctx60.one()))
    assert s.k.sign == 0
    q = bb4_step(BorweinQuartState(0, z, ctx60.one()))
    assert q.y.sign == 0


@pytest.mark.parametrize("bad", ["1", "1.5", "-0.1"])
def test_out_of_range_signals_exhaustion(ctx60, bad):
    x = ctx60.from_string(bad)
    with pytest.raises(PrecisionExhaustedError):
        bb2_step(BorweinQuadState(3, x, ctx60.one()))
    with pytest.raises(PrecisionExhaustedError):
        bb4_step(BorweinQuartState(3, x, ctx60.one()))


def test_k_and_y_decrease_quadratically(ctx200):
    slack = ctx200.from_fraction(2**10) >> ctx200.frac_bits
    quad = bb2_states(ctx200, 6)
    for s, t in zip(quad, quad[1:]):
        assert 0 < t.k.sign
        assert t.k < s.k
        assert t.k < s.k * s.k + slack
        assert t.e > 0
    quart = bb4_states(ctx200, 3)
    for s, t in zip(quart, quart[1:]):
        assert 0 < t.y.sign and t.y < s.y and t.z > 0


def test_identities_at_working_precision(ctx200):
    tol = 1 << 20
    agm = agm_states(ctx200, 7)
    quad = bb2_states(ctx200, 6)
    quart = bb4_states(ctx200, 3)
    for n in range(6):
        assert abs((quad[n].e - 1 / agm_output(agm[n])).raw) < tol
        assert abs((quad[n].k - (agm[n].a / agm[n + 1].a - 1)).raw) < tol
    for n in range(4):
        assert abs((quart[n].z - quad[2 * n].e).raw) < tol
        y = quart[n].y
        assert abs((y * y - quad[2 * n].k).raw) < tol
    # unsquared only while k_2n is large; sqrt of a tiny k magnifies its last bit
    for n in range(2):
        assert abs((quart[n].y - sqrt(quad[2 * n].k)).raw) < tol


def test_unsquared_y_deviation_grows_as_k_shrinks(ctx200):
    quad = bb2_states(ctx200, 6)
    quart = bb4_states(ctx200, 3)
    dev = [abs((quart[n].y - sqrt(quad[2 * n].k)).raw) for n in range(4)]
    assert dev[3] > 1 << 100
    assert abs((quart[3].y * quart[3].y - quad[6].k).raw) < 1 << 20


def test_bb2_and_bb4_agree_at_300_digits():
    ctx = PrecisionContext(300)
    a = bb2_output(bb2_states(ctx, 8)[-1]).to_decimal_string(300)
    b = bb4_output(bb4_states(ctx, 4)[-1]).to_decimal_string(300)
    assert a == b
    with mpmath.workdps(330):
        assert a == mp_digits(+mpmath.pi, 300)
