import math

import numpy as np
import pytest
from scipy.integrate import cumulative_trapezoid
from scipy.special import airy, sici, wofz

from dispgibbs import (fourier_gibbs_reference, overshoot, overshoot_table,
                       wilbraham_gibbs_constant)

from _frozen import GIBBS_CONSTANT


@pytest.fixture(scope="module")
def report3():
    return overshoot(3)


def test_gibbs_constant():
    g = wilbraham_gibbs_constant()
    assert abs(g - GIBBS_CONSTANT) < 1e-15
    assert abs(g - (sici(math.pi)[0] / math.pi - 0.5)) < 1e-13
    assert f"{g:.6f}" == "0.089490"


def test_overshoot_schrodinger_against_closed_form():
    # brute-force the dispersive step 1/2 + (erf(e^{-i pi/4} y/2))/2 on a
    # dense grid and compare with the refined report
    y = np.linspace(0.0, 10.0, 50001)
    z = np.exp(-1j * np.pi / 4) * y / 2
    cerf = 1.0 - np.exp(-z * z) * wofz(1j * z)
    g = cerf.real.max() / 2 + 0.5
    rep = overshoot(2)
    assert abs(rep.sup_re - g) < 1e-6
    assert rep.arg_sup_re > 0


def test_overshoot_airy_against_primitive(report3):
    # independent n = 3 anchor: G(y) = 1/3 + int_{-3^{-1/3} y}^0 Ai, maximized
    # over the oscillatory side via a dense cumulative trapezoid of scipy's Ai
    u = np.linspace(-20.0, 0.0, 400001)
    ai = airy(u)[0]
    cum = cumulative_trapezoid(ai, u, initial=0.0)   # int_{-20}^{u} Ai
    g = 1.0 / 3.0 + (cum[-1] - cum)                  # int_u^0 Ai
    assert abs(report3.sup_re - g.max()) < 1e-6


def test_overshoot_bounds(report3):
    g = wilbraham_gibbs_constant()
    for rep in [overshoot(2), report3, overshoot(4)]:
        assert 1.0 < rep.sup_re < 1.0 + 4 * g
        # the low side can graze zero from above (no undershoot for n = 3)
        assert -0.5 < rep.inf_re <= 1e-6
        assert rep.sup_abs >= rep.sup_re - 1e-12
        assert abs(rep.sup_im) < 0.5 and abs(rep.inf_im) < 0.5


def test_overshoot_schrodinger_symmetry():
    # even real kernel: G(y) + G(-y) = 1, so inf_re = 1 - sup_re
    rep = overshoot(2)
    assert abs(rep.inf_re - (1.0 - rep.sup_re)) < 1e-6
    assert abs(rep.sup_im + rep.inf_im) < 1e-6


def test_overshoot_imaginary_part_vanishes_for_airy(report3):
    # sigma real and odd power: the kernel is real, so G is real
    assert abs(report3.sup_im) < 1e-7
    assert abs(report3.inf_im) < 1e-7


def test_overshoot_determinism(report3):
    assert overshoot(3) == report3


def test_overshoot_t_independent(report3):
    for t in (0.25, 4.0):
        rep = overshoot(3, t=t)
        assert abs(rep.sup_re - report3.sup_re) < 1e-7
        assert abs(rep.inf_re - report3.inf_re) < 1e-7
        # the location scales with the similarity length t^{1/3}
        assert abs(rep.arg_sup_re * t ** (-1 / 3) - report3.arg_sup_re) < 1e-6


def test_overshoot_monotone_in_n(report3):
    # |sup_re - (1+g)| shrinks with n within each parity family; even symbols
    # start much closer than odd ones, so the families are compared separately
    g = wilbraham_gibbs_constant()
    dev = {n: abs(overshoot(n).sup_re - (1 + g)) for n in (2, 4, 5)}
    dev[3] = abs(report3.sup_re - (1 + g))
    assert dev[3] > dev[5]
    assert dev[2] > dev[4]
    assert dev[2] < dev[3]


def test_overshoot_validation():
    with pytest.raises(ValueError):
        overshoot(1)


def test_overshoot_table(report3):
    rows = overshoot_table([2, 3])
    assert [r.n for r in rows] == [2, 3]
    assert rows[1] == report3


def test_fourier_reference():
    g = wilbraham_gibbs_constant()
    x = np.linspace(0.9, 1.1, 8001)
    s = fourier_gibbs_reference(400, x)
    assert np.isrealobj(s)
    assert abs(s.max() - (1 + g)) < 2e-3
    assert abs(fourier_gibbs_reference(400, [0.0])[0] - 1.0) < 2e-3
    left = fourier_gibbs_reference(50, -x)
    assert np.max(np.abs(left - fourier_gibbs_reference(50, x))) == 0.0
    with pytest.raises(ValueError):
        fourier_gibbs_reference(0, [0.0])
