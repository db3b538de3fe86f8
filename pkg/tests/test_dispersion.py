import numpy as np
import pytest

from dispgibbs import (DegeneratePhase, IllPosed, InvalidDispersion,
                       format_omega, normalize, parse_omega, rescaled,
                       scaled_phase, stationary_points)


def test_normalize_strips_low_order_terms():
    om = normalize({0: 5, 1: 2, 2: 1})
    assert om.coeffs[0] == 0 and om.coeffs[1] == 0
    assert om.coeffs[2] == 1
    assert om.drift == 2
    assert om.phase_rate == 5


def test_normalize_idempotent():
    om = normalize({0: 1 + 2j, 1: -0.5, 3: 1, 2: 0.25j - 0.1})
    again = normalize(om)
    assert again.coeffs == om.coeffs
    assert again.drift == om.drift
    assert again.phase_rate == om.phase_rate


def test_well_posedness():
    normalize({2: -1j})            # heat: n even, Im <= 0
    normalize({2: 1})              # Schroedinger
    normalize({3: -2.5})           # odd n, real leading
    with pytest.raises(IllPosed):
        normalize({3: 1j})
    with pytest.raises(IllPosed):
        normalize({2: 1j})         # Im > 0: backwards heat
    with pytest.raises(InvalidDispersion):
        normalize({1: 3})
    with pytest.raises(InvalidDispersion):
        normalize({0: 1})


def test_polynomial_eval():
    assert normalize({3: 1})(2.0) == pytest.approx(8.0)
    assert normalize({4: 1, 3: 2})(1.0) == pytest.approx(3.0)
    # omega = -ik^2 at k = 1+i: -i * (1+i)^2 = -i*2i = 2
    assert normalize({2: -1j})(1 + 1j) == pytest.approx(2.0)


def test_rescaled_monomial_invariance():
    om = normalize({2: 1})
    assert rescaled(om, 4.0).coeffs == om.coeffs


def test_rescaled_coefficients():
    om_t = rescaled(normalize({4: 1, 3: 2}), 1e-4)
    assert om_t.coeffs[4] == pytest.approx(1.0)
    assert om_t.coeffs[3] == pytest.approx(0.2)
    om_t = rescaled(normalize({3: 1, 2: 1}), 1e-3)
    assert om_t.coeffs[2] == pytest.approx(0.1)


def test_rescaled_identity_random_k():
    # eval(omega_t, k) = t * eval(omega, k t^{-1/n})
    rng = np.random.default_rng(7)
    om = normalize({4: 1, 3: 2, 2: -0.3j})
    for t in (1e-4, 0.37, 12.0):
        om_t = rescaled(om, t)
        ks = rng.standard_normal(100) + 1j * rng.standard_normal(100)
        for k in ks:
            lhs = om_t(k)
            rhs = t * om(k * t ** -0.25)
            assert abs(lhs - rhs) <= 1e-12 * (1 + abs(rhs))


def test_scaled_phase_heat_like():
    om = normalize({2: 1})
    ph = scaled_phase(om, 1.0, 1.0)
    assert ph.big_x == pytest.approx(1.0)
    z = 0.3 + 0.1j
    assert ph.phi(z) == pytest.approx(1j * z - 1j * z * z)


def test_scaled_phase_negative_x():
    # omega = k^3, x = -1: sigma = -1 so omega_n sigma^n = -1
    ph = scaled_phase(normalize({3: 1}), -1.0, 1.0)
    assert ph.sigma == -1
    z = 0.4 - 0.2j
    assert ph.phi(z) == pytest.approx(1j * z + 1j * z ** 3)


def test_scaled_phase_perturbation_scaling():
    # omega = k^3 + k^2, x=1, t=1e-2: X = 10, R coefficient 10^{-1}
    ph = scaled_phase(normalize({3: 1, 2: 1}), 1.0, 1e-2)
    assert ph.big_x == pytest.approx(10.0)
    z = 0.7 + 0.05j
    assert ph.phi(z) == pytest.approx(1j * z - 1j * z ** 3 - 1j * 0.1 * z * z)


def test_stationary_points_closed_forms():
    pts = stationary_points(scaled_phase(normalize({2: 1}), 1.0, 1.0))
    assert len(pts) == 1
    assert pts[0] == pytest.approx(0.5)

    pts = stationary_points(scaled_phase(normalize({3: 1}), 1.0, 1.0))
    assert len(pts) == 2
    assert sorted(p.real for p in pts) == pytest.approx(
        [-1 / np.sqrt(3), 1 / np.sqrt(3)])

    pts = stationary_points(scaled_phase(normalize({3: 1}), -1.0, 1.0))
    assert len(pts) == 1
    assert pts[0] == pytest.approx(1j / np.sqrt(3))


@pytest.mark.parametrize("n", range(2, 9))
@pytest.mark.parametrize("sign", [1.0, -1.0])
def test_stationary_point_count_table(n, sign):
    # n even: 1 + (n-2)/2; n odd: 2 + (n-3)/2 if omega_n sigma^n > 0 else (n-1)/2
    om = normalize({n: sign if n % 2 else sign * 1.0})
    for x in (1.0, -1.0):
        ph = scaled_phase(om, x, 1.0)
        pts = stationary_points(ph)
        lead = complex(sign) * ph.sigma ** n
        if n % 2 == 0:
            expect = 1 + (n - 2) // 2
        elif lead.real > 0:
            expect = 2 + (n - 3) // 2
        else:
            expect = (n - 1) // 2
        assert len(pts) == expect
        # upper half plane, counterclockwise from the positive real axis
        assert all(p.imag >= -1e-12 for p in pts)
        args = [np.angle(complex(p)) % (2 * np.pi) for p in pts]
        assert args == sorted(args)
        # monomial stationary points satisfy n w sigma^n z^{n-1} = 1 exactly
        for p in pts:
            assert abs(n * lead * p ** (n - 1) - 1) < 1e-12


def test_degenerate_phase_on_collision():
    # omega = k^3/3 - k^2 has omega'(k) = k^2 - 2k with critical value -1
    # at k = 1, so x/t = -1 makes two stationary points coalesce there
    om = normalize({3: 1.0 / 3.0, 2: -1.0})
    with pytest.raises(DegeneratePhase):
        stationary_points(scaled_phase(om, -1.0, 1.0))


def test_parse_format_roundtrip():
    for text in ("3:1", "2:0-1i", "3:1,2:-0.5i", "5:2.5,3:0+1i,2:-1"):
        om = parse_omega(text)
        again = parse_omega(format_omega(om))
        assert again.coeffs == om.coeffs


def test_parse_rejects_bad_input():
    with pytest.raises(ValueError):
        parse_omega("-1:2")
    with pytest.raises(ValueError):
        parse_omega("2:1,2:3")      # duplicate degree
    with pytest.raises(ValueError):
        parse_omega("not a relation")
