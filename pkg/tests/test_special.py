import math

import numpy as np
import pytest
from scipy.special import airy, erf

from dispgibbs import (asymptotic_I, eval_E, eval_I, eval_kernel, normalize,
                       ode_residual, residue_part)

from _frozen import E_HEAT_M0_S2, FROZEN_I, FROZEN_KERNEL

HEAT = normalize({2: -1j})
SCHRO = normalize({2: 1})


def _close(got, re, im, tol=5e-13):
    # mixed absolute/relative: deep-decay values carry relative accuracy,
    # O(1) values absolute
    return abs(got - complex(re, im)) <= tol * (1 + abs(complex(re, im)))


@pytest.mark.parametrize("name", sorted(FROZEN_I))
def test_frozen_values(name):
    coeffs, m, y, t, re, im = FROZEN_I[name]
    got = eval_I(normalize(coeffs), m, y, t)
    assert _close(got, re, im), (name, got, (re, im))


@pytest.mark.parametrize("name", sorted(FROZEN_KERNEL))
def test_frozen_kernels(name):
    coeffs, x, t, val = FROZEN_KERNEL[name]
    got = eval_kernel(normalize(coeffs), x, t)
    assert abs(got - val) < 5e-13
    assert abs(got.imag) < 5e-13


def test_heat_closed_form_grid():
    ss = np.linspace(-10, 10, 201)
    worst = max(abs(eval_I(HEAT, 0, float(s), 1.0) - (erf(s / 2) - 1) / 2)
                for s in ss)
    assert worst < 1e-10


def test_heat_kernel_gaussian():
    assert eval_kernel(HEAT, 0.0, 1.0) == pytest.approx(1 / (2 * math.sqrt(math.pi)), abs=1e-13)
    x, t = 1.5, 0.3
    assert eval_kernel(HEAT, x, t) == pytest.approx(
        math.exp(-x * x / (4 * t)) / math.sqrt(4 * math.pi * t), abs=1e-13)


def test_airy_kernel():
    # omega = k^3: K_t(x) = (3t)^{-1/3} Ai(-x (3t)^{-1/3})
    om = normalize({3: 1})
    for x, t in [(0.5, 1.0), (-1.2, 0.4), (2.0, 2.0)]:
        scale = (3 * t) ** (-1 / 3)
        want = scale * airy(-x * scale)[0]
        assert eval_kernel(om, x, t) == pytest.approx(want, abs=1e-12)


def test_values_at_zero():
    # even n: -1/2; odd n: -(1 + sgn(omega_n)/n)/2
    for n in (2, 4, 6):
        got = eval_I(normalize({n: 1}), 0, 0.0, 1.0)
        assert abs(got - (-0.5)) < 1e-9, n
    for n in (3, 5, 7):
        for sgn in (1.0, -1.0):
            got = eval_I(normalize({n: sgn}), 0, 0.0, 1.0)
            want = -0.5 * (1 + sgn / n)
            assert abs(got - want) < 1e-9, (n, sgn)


def test_zero_value_time_independence():
    for n, sgn in [(2, 1.0), (3, 1.0), (3, -1.0), (5, 1.0)]:
        om = normalize({n: sgn})
        vals = [eval_I(om, 0, 0.0, t) for t in (1e-3, 1.0, 10.0)]
        assert max(abs(v - vals[0]) for v in vals) < 1e-10


def test_t0_closed_form():
    # I_m(y, 0) = -(y^m / m!) for y < 0, 0 for y > 0
    om = normalize({3: 1, 2: 1})
    for m in (0, 1, 2, 3):
        for y in (0.7, 3.2):
            assert eval_I(om, m, y, 0.0) == 0
            want = -((-y) ** m) / math.factorial(m)
            assert eval_I(om, m, -y, 0.0) == pytest.approx(want, abs=1e-14)


def test_t0_kernel_rejected():
    with pytest.raises(ValueError):
        eval_kernel(HEAT, 1.0, 0.0)
    with pytest.raises(ValueError):
        eval_I(HEAT, -1, 1.0, 0.0)


def test_limits_decaying_sides():
    # exponentially-reached limits: I_0 -> 0 (y -> +inf), -1 (y -> -inf)
    assert abs(eval_I(HEAT, 0, 12.0, 1.0)) < 1e-6
    assert abs(eval_I(HEAT, 0, -12.0, 1.0) + 1.0) < 1e-6
    # omega = -k^3 decays to the right; omega = +k^3 plateaus to the left
    assert abs(eval_I(normalize({3: -1}), 0, 15.0, 1.0)) < 1e-6
    assert abs(eval_I(normalize({3: 1}), 0, -15.0, 1.0) + 1.0) < 1e-6


def test_limits_oscillatory_sides():
    # purely oscillatory tails approach the limit with an algebraic envelope:
    # Schrodinger ~ 1/s, Airy side ~ s^(-3/4); check magnitude and trend
    a40 = abs(eval_I(SCHRO, 0, 40.0, 1.0))
    a80 = abs(eval_I(SCHRO, 0, 80.0, 1.0))
    assert a40 < 1.2 / (40.0 * math.sqrt(math.pi))
    assert a80 < 0.7 * a40
    b = [abs(eval_I(normalize({3: 1}), 0, s, 1.0)) for s in (40.0, 160.0)]
    assert b[0] < 0.05
    assert b[1] < 0.5 * b[0]


def test_derivative_ladder():
    # d/dy I_m = I_{m-1} via 4th-order central differences
    h = 1e-2
    stencil = [(-2, 1 / 12), (-1, -8 / 12), (1, 8 / 12), (2, -1 / 12)]
    for coeffs in ({2: -1j}, {2: 1}, {3: 1}, {4: 1}):
        om = normalize(coeffs)
        for m in (0, 1):
            for y in (0.8, -1.7):
                fd = sum(w * eval_I(om, m, y + k * h, 0.7)
                         for k, w in stencil) / h
                want = eval_I(om, m - 1, y, 0.7)
                assert abs(fd - want) < 1e-5, (coeffs, m, y)


def test_ode_identity_sample():
    # t * omega'(-i d/dy) I_m = y I_m - (m+1) I_{m+1}, normalized residual
    rng = np.random.default_rng(41)
    worst = 0.0
    for coeffs in ({2: -1j}, {2: 1}, {3: 1}, {4: -1j}, {3: 1, 2: -0.5j}):
        for m in (0, 1):
            for _ in range(2):
                y = float(rng.uniform(0.5, 3.0) * rng.choice([-1, 1]))
                t = float(rng.uniform(0.3, 1.5))
                worst = max(worst, ode_residual(normalize(coeffs), m, y, t, 1e-2))
    assert worst < 1e-4


def test_ode_y0_right_side():
    # at y = 0 the right side is -(m+1) I_{m+1}(0,t)/t, not zero
    assert ode_residual(HEAT, 0, 0.0, 1.0, 1e-2) < 1e-5


def test_eval_E_heat():
    got = eval_E(2, 0, -1j, 2.0)
    assert abs(got - E_HEAT_M0_S2) < 1e-12


def test_eval_E_derivative_ladder():
    # d/ds E_{n,m} = E_{n,m-1}
    h = 1e-2
    stencil = [(-2, 1 / 12), (-1, -8 / 12), (1, 8 / 12), (2, -1 / 12)]
    for n, sig in [(2, -1j), (3, 1.0)]:
        for m in (0, 1):
            s = 0.9
            fd = sum(w * eval_E(n, m, sig, s + k * h) for k, w in stencil) / h
            assert abs(fd - eval_E(n, m - 1, sig, s)) < 1e-6


def test_heat_profile_derivative():
    # d/ds I_{heat,0}(s,1) = (1/(2 sqrt(pi))) e^{-s^2/4}
    s, h = 1.0, 1e-3
    fd = (eval_I(HEAT, 0, s + h, 1.0) - eval_I(HEAT, 0, s - h, 1.0)) / (2 * h)
    want = math.exp(-s * s / 4) / (2 * math.sqrt(math.pi))
    assert abs(fd - want) < 1e-6


def test_schrodinger_closed_form_spot():
    from scipy.special import wofz
    # 1/2 (erf(e^{-i pi/4} s / 2) - 1) via the Faddeeva function
    def cerf(z):
        return 1.0 - np.exp(-z * z) * wofz(1j * z)
    for s in (-6.3, -1.0, 0.4, 5.5):
        z = np.exp(-1j * np.pi / 4) * s / 2
        want = (cerf(z) - 1) / 2
        assert abs(eval_I(SCHRO, 0, float(s), 1.0) - want) < 1e-10


def test_descent_vs_direct():
    rng = np.random.default_rng(99)
    for coeffs in ({2: 1}, {3: 1}, {3: -1}, {4: -1j}, {5: 1}):
        om = normalize(coeffs)
        for m in (-1, 0, 1):
            s = float(rng.uniform(5.0, 15.0) * rng.choice([-1, 1]))
            vd = eval_I(om, m, s, 1.0, method="descent")
            vr = eval_I(om, m, s, 1.0, method="direct")
            assert abs(vd - vr) <= 1e-9 * (1 + abs(vr)), (coeffs, m, s)


def test_deep_decay_relative_accuracy():
    # descent keeps relative accuracy where the integrand is 1e-45 small
    got = eval_I(HEAT, 0, 20.0, 1.0)
    want = FROZEN_I["heat_I0_y20_t1"][4]
    assert abs(got - want) < 1e-12 * abs(want)


def test_asymptotic_superpolynomial_residue_decay():
    # n = 3, omega_3 y < 0: no real saddles, I - residue decays faster than y^-8
    om = normalize({3: 1})
    errs = [abs(eval_I(om, 0, y, 1.0) - residue_part(om, 0, y, 1.0))
            for y in (-10.0, -30.0)]
    assert errs[1] < errs[0] * (10 / 30) ** 8


def test_asymptotic_heat():
    rels = []
    for s in (20.0, 40.0):
        av = asymptotic_I(HEAT, 0, s, 1.0)
        ev = eval_I(HEAT, 0, s, 1.0)
        rels.append(abs(av.total - ev) / abs(ev))
    assert rels[0] < 0.05
    assert rels[1] < 0.6 * rels[0]


def test_asymptotic_parts_consistent():
    av = asymptotic_I(normalize({3: 1}), 0, -12.0, 1.0)
    assert av.total == av.residue_part + av.oscillatory_part
    assert av.residue_part == pytest.approx(-1.0)  # plateau on y<0
    assert av.order_estimate > 0


def test_rescale_consistency():
    # I(y,t) = (|w_n| t)^{m/n} I_canonical(y (|w_n| t)^{-1/n}, 1) is internal;
    # externally: same value from the (y,t) query directly and via t=1 rescale
    om = normalize({3: 1, 2: 1})
    from dispgibbs import rescaled
    y, t = 0.9, 0.3
    lhs = eval_I(om, 1, y, t)
    rhs = t ** (1 / 3) * eval_I(rescaled(om, t), 1, y * t ** (-1 / 3), 1.0)
    assert abs(lhs - rhs) < 1e-10
