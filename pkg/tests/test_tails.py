import math

import numpy as np
import pytest

from glscov import (
    DomainError,
    conjugate,
    conjugate_info,
    empirical_tail,
    extremal,
    orlicz_N,
    power,
    tail_bound,
    v_of,
)


def test_v_of_power():
    psi = power(1.0)
    assert v_of(psi, 3.0) == pytest.approx(3.0 * math.log(3.0))


def test_conjugate_power_one_closed_form():
    # v(p) = p ln p  =>  v*(x) = e^(x-1) for x >= 1 (maximizer p = e^(x-1))
    psi = power(1.0)
    for x in (1.0, 1.5, 2.0, 3.0):
        assert conjugate(psi, x) == pytest.approx(math.exp(x - 1.0), rel=1e-8)


def test_conjugate_boundary_below_one():
    # for x < 1 the maximizer sits at p = 1 and v*(x) = x
    psi = power(1.0)
    for x in (-1.0, 0.0, 0.5):
        info = conjugate_info(psi, x)
        assert info.value == pytest.approx(x, abs=1e-10)
        assert info.argmax_p == pytest.approx(1.0)


def test_conjugate_unbounded_flag_for_extremal():
    # v identically 0 on [1, r]: v*(x) = r x for x > 0, attained at p = r
    psi = extremal(4.0)
    info = conjugate_info(psi, 2.0)
    assert info.value == pytest.approx(8.0, rel=1e-12)
    assert not info.unbounded_at_cap


def test_fenchel_young_inequality():
    psi = power(2.0)
    ps = np.linspace(1.0, 40.0, 25)
    xs = np.linspace(-1.0, 3.0, 25)
    for p in ps:
        vp = v_of(psi, float(p))
        for x in xs:
            vs = conjugate(psi, float(x))
            slack = 1e-8 * max(1.0, abs(p * x))
            assert vp + vs >= p * x - slack


def test_tail_bound_monotone_and_capped():
    psi = power(2.0)
    norm = 1.0
    ys = np.linspace(math.e, 8.0, 30)
    vals = [tail_bound(psi, norm, float(y)) for y in ys]
    assert all(v <= 1.0 for v in vals)
    assert all(b <= a + 1e-12 for a, b in zip(vals, vals[1:]))


def test_tail_bound_rejects_small_y():
    with pytest.raises(DomainError):
        tail_bound(power(1.0), 1.0, 2.0)  # 2.0 < e * 1.0


def test_tail_bound_scales_with_norm():
    psi = power(2.0)
    a = tail_bound(psi, 1.0, 4.0)
    b = tail_bound(psi, 2.0, 8.0)
    assert a == pytest.approx(b, rel=1e-9)


def test_orlicz_continuity_at_e():
    psi = power(1.0)
    left = orlicz_N(psi, math.e * (1 - 1e-9))
    right = orlicz_N(psi, math.e * (1 + 1e-9))
    assert left == pytest.approx(right, rel=1e-6)


def test_orlicz_quadratic_below_e():
    psi = power(1.0)
    c = orlicz_N(psi, 1.0)
    assert orlicz_N(psi, 2.0) == pytest.approx(4.0 * c, rel=1e-12)


def test_empirical_tail_counts():
    x = np.array([-3.0, -1.0, 0.5, 2.0, 2.5, 4.0])
    # one-sided: P(x > 2.2) = 2/6, P(x < -2.2) = 1/6 -> max = 1/3
    assert empirical_tail(x, 2.2) == pytest.approx(2.0 / 6.0)
    assert empirical_tail(x, 5.0) == 0.0
