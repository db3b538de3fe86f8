"""Evaluation of the kernel-family integrals

    I_m(y, t) = (1/2pi) int_C exp(iky - i omega(k) t) / (ik)^(m+1) dk,

where C is the real axis detouring above k = 0.  These are the building
blocks of every solution with piecewise-polynomial data: x-derivatives walk
down the ladder (d/dy I_m = I_{m-1}, I_{-1} is the fundamental solution) and
jump strengths of the data multiply shifted copies of I_m.

Evaluation strategy.  The substitution k = lambda (|omega_n| t)^(-1/n)
canonicalizes any query to t = 1 and a unit-modulus leading coefficient,

    I_m(y, t) = u^m * I_m[omega_can](y/u, 1),   u = (|omega_n| t)^(1/n),

so only the shape s = y/u matters.  Small |s| is handled on a bent version
of the defining contour ("direct"); large |s| through the saddle-point
system of the rescaled phase ("descent"), which keeps relative accuracy even
when the answer is 1e-100 of the integrand scale.  t = 0 is exact:
I_m(y, 0) = -(y^m / m!) for y < 0 and 0 for y > 0.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .contour import descent_system, direct_contour
from .dispersion import (
    DegeneratePhase,
    DispersionRelation,
    normalize,
    scaled_phase,
)
from .quadrature import NonFinite, integrate_contour

__all__ = [
    "SpecialFunctionQuery",
    "eval_I",
    "eval_E",
    "eval_kernel",
    "residue_part",
    "AsymptoticValue",
    "asymptotic_I",
    "ode_residual",
]

DESCENT_THRESHOLD = 4.0   # switch to saddle contours once |y|/u exceeds this
ZETA_MAX = 40.0           # max tolerated cubic phase (radians) on a central segment
QUAD_TOL = 1e-10


@dataclass(frozen=True)
class SpecialFunctionQuery:
    omega: DispersionRelation
    m: int
    y: float
    t: float
    method: str = "auto"

    def validate(self):
        if not isinstance(self.m, int) or self.m < -1:
            raise ValueError(f"m must be an integer >= -1, got {self.m!r}")
        if not math.isfinite(self.y):
            raise ValueError("y must be finite")
        if not (math.isfinite(self.t) and self.t >= 0):
            raise ValueError("t must be finite and >= 0")
        if self.t == 0 and self.m == -1:
            raise ValueError("the fundamental solution has no value at t = 0")
        if self.t == 0 and self.y == 0:
            raise ValueError("I_m(0, 0) is undefined (jump point of the data)")
        if self.method not in ("auto", "direct", "descent"):
            raise ValueError(f"unknown method {self.method!r}")

    def evaluate(self):
        return eval_I(self.omega, self.m, self.y, self.t, method=self.method)


def residue_part(omega, m, y, t):
    """-i * Res_{k=0}[exp(iky - i omega(k) t)/(ik)^(m+1)] * chi_(y<0).

    The residue is the k^m Taylor coefficient e_m of exp(iky - i omega(k) t)
    divided by i^(m+1); exp-of-series gives e_m exactly in m steps.
    """
    if m < 0 or y >= 0:
        return 0j
    g = np.zeros(m + 1, dtype=complex)
    if m >= 1:
        g[1] = 1j * y
    for j, c in enumerate(omega.coeffs):
        if c != 0 and 2 <= j <= m:
            g[j] += -1j * c * t
    e = np.zeros(m + 1, dtype=complex)
    e[0] = 1.0
    for r in range(1, m + 1):
        e[r] = sum(l * g[l] * e[r - l] for l in range(1, r + 1)) / r
    inv_i_m = (1, -1j, -1, 1j)[m % 4]  # i^(-m)
    return -inv_i_m * e[m]


def _canonical(omega, y, t):
    """Fold t and |leading| into the variables: returns (omega_can, s, u)."""
    n = omega.degree
    u = (abs(omega.leading) * t) ** (1.0 / n)
    coeffs = tuple(c * t / u ** j for j, c in enumerate(omega.coeffs))
    return DispersionRelation(coeffs), y / u, u


def _poly_desc(omega):
    return np.array(omega.coeffs[::-1], dtype=complex)


def _direct_core(can, m, s, tol):
    desc = _poly_desc(can)
    two_pi = 2.0 * math.pi

    def f(z):
        val = np.exp(1j * z * s - 1j * np.polyval(desc, z))
        if m >= 0:
            val = val / (1j * z) ** (m + 1)
        return val / two_pi

    cont = direct_contour(can, m, s)
    with np.errstate(over="ignore", invalid="ignore", under="ignore"):
        return integrate_contour(f, cont, tol=tol)


def _dist_to_origin(seg):
    a, b = seg.start, seg.end
    d = b - a
    L2 = abs(d) ** 2
    if L2 == 0:
        return abs(a)
    tt = -(a.real * d.real + a.imag * d.imag) / L2
    tt = min(1.0, max(0.0, tt))
    return abs(a + tt * d)


def _descent_core(can, m, s, tol, guarded):
    if s == 0:
        raise DegeneratePhase("descent evaluation needs y != 0")
    phase = scaled_phase(can, s, 1.0)
    system = descent_system(phase)
    X = phase.big_x

    if m >= 0:
        dmin = min(_dist_to_origin(seg) for c in system.contours for seg in c.segments)
        zmin = min(abs(z) for z in system.points)
        if dmin < 1e-3:
            raise DegeneratePhase("descent contour passes through the pole")
        if guarded and dmin < 0.05 * max(zmin, 1e-6):
            raise DegeneratePhase("descent contour crowds the pole")
    if guarded:
        for zj in system.points:
            phi2 = abs(complex(phase.d2phi(zj)))
            h = 6.0 / math.sqrt(X * phi2)
            zeta = X * abs(complex(phase.d3phi(zj))) * h ** 3 / 6.0
            if zeta > ZETA_MAX:
                raise DegeneratePhase("saddles too close for quadratic descent scaling")

    two_pi = 2.0 * math.pi
    total = 0j
    with np.errstate(over="ignore", invalid="ignore", under="ignore"):
        for zj, cont in zip(system.points, system.contours):
            c_ref = X * complex(phase.phi(zj)).real
            if c_ref > 700.0:
                raise NonFinite("descent saddle magnitude overflows")

            def g(z, _c=c_ref):
                val = np.exp(X * phase.phi(z) - _c)
                if m >= 0:
                    val = val / (1j * z) ** (m + 1)
                return val / two_pi

            total += integrate_contour(g, cont, tol=tol) * math.exp(c_ref)

    sign = -1.0 if (phase.sigma < 0 and (m + 1) % 2 == 1) else 1.0  # sigma^(m+1)
    osc = sign * phase.scale ** (-m) * total
    return residue_part(can, m, s, 1.0) + osc


def eval_I(omega, m, y, t, method="auto", tol=QUAD_TOL):
    """Evaluate I_m(y, t) for a (possibly unnormalized) dispersion relation.

    method:
      auto    -- descent when |y|/(|omega_n| t)^(1/n) >= 4 and the saddle
                 geometry is healthy, otherwise direct; degenerate saddle
                 configurations fall back to direct automatically.
      direct  -- bent defining contour only.
      descent -- saddle-point system only (raises DegeneratePhase when the
                 stationary points are unusable).
    """
    omega = normalize(omega)
    SpecialFunctionQuery(omega, m, float(y), float(t), method).validate()
    y = float(y) - omega.drift * float(t)
    t = float(t)
    factor = cmath.exp(-1j * omega.phase_rate * t) if omega.phase_rate else 1.0

    if t == 0.0:
        if y > 0:
            return 0.0 * factor
        return factor * (-((y ** m) / math.factorial(m)))

    can, s, u = _canonical(omega, y, t)
    scale = factor * u ** m

    if method == "direct":
        return scale * _direct_core(can, m, s, tol)
    if method == "descent":
        return scale * _descent_core(can, m, s, tol, guarded=False)
    if abs(s) >= DESCENT_THRESHOLD:
        try:
            return scale * _descent_core(can, m, s, tol, guarded=True)
        except DegeneratePhase:
            pass
    return scale * _direct_core(can, m, s, tol)


def eval_E(n, m, sigma, s):
    """Canonical monomial family: I_m for omega = sigma * k^n at t = 1."""
    omega = normalize({n: sigma})
    return eval_I(omega, m, s, 1.0)


def eval_kernel(omega, x, t):
    """Fundamental solution (m = -1); heat gives exp(-x^2/4t)/sqrt(4 pi t)."""
    return eval_I(omega, -1, x, t)


@dataclass(frozen=True)
class AsymptoticValue:
    residue_part: complex     # exact jump plateau, -i Res * chi_(y<0)
    oscillatory_part: complex # leading saddle contributions
    order_estimate: float     # relative size of the first neglected term

    @property
    def total(self):
        return self.residue_part + self.oscillatory_part


def asymptotic_I(omega, m, y, t):
    """Leading large-|y| approximation sharing eval_I's conventions exactly.

    Each stationary point z_j contributes
    exp(X Phi(z_j) + i theta_j) / ((i z_j)^(m+1) sqrt(2 pi X |Phi''(z_j)|)),
    scaled by sigma^(m+1) s_f^(-m); the residue plateau is carried
    separately and exactly.
    """
    omega = normalize(omega)
    if t <= 0:
        raise ValueError("asymptotics need t > 0")
    y = float(y) - omega.drift * t
    if y == 0:
        raise ValueError("asymptotics need y != 0")
    factor = cmath.exp(-1j * omega.phase_rate * t) if omega.phase_rate else 1.0

    can, s, u = _canonical(omega, y, t)
    phase = scaled_phase(can, s, 1.0)
    system = descent_system(phase)
    X = phase.big_x

    osc = 0j
    for zj, th in zip(system.points, system.angles):
        phi2 = complex(phase.d2phi(zj))
        term = cmath.exp(X * complex(phase.phi(zj)) + 1j * th)
        term /= math.sqrt(2.0 * math.pi * X * abs(phi2))
        if m >= 0:
            term /= (1j * zj) ** (m + 1)
        osc += term
    sign = -1.0 if (phase.sigma < 0 and (m + 1) % 2 == 1) else 1.0
    pref = factor * u ** m
    return AsymptoticValue(
        residue_part=pref * residue_part(can, m, s, 1.0),
        oscillatory_part=pref * sign * phase.scale ** (-m) * osc,
        order_estimate=1.0 / X,
    )


def _fornberg(offsets, max_order):
    """Finite-difference weights at 0 for derivative orders 0..max_order."""
    xs = np.asarray(offsets, dtype=float)
    n = len(xs)
    c = np.zeros((n, max_order + 1))
    c[0, 0] = 1.0
    c1 = 1.0
    c4 = xs[0]
    for i in range(1, n):
        mn = min(i, max_order)
        c2 = 1.0
        c5 = c4
        c4 = xs[i]
        for j in range(i):
            c3 = xs[i] - xs[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[i, k] = c1 * (k * c[i - 1, k - 1] - c5 * c[i - 1, k]) / c2
                c[i, 0] = -c1 * c5 * c[i - 1, 0] / c2
            for k in range(mn, 0, -1):
                c[j, k] = (c4 * c[j, k] - k * c[j, k - 1]) / c3
            c[j, 0] = c4 * c[j, 0] / c3
        c1 = c2
    return c


def ode_residual(omega, m, y, t, h=1e-3, method="auto"):
    """Residual of the exact identity t*omega'(-i d/dy) I_m = y I_m - (m+1) I_{m+1}.

    The y-derivatives (orders 0..n-1) are taken by central finite differences
    of eval_I samples, so the check is independent of the derivative ladder.
    Returns |lhs - rhs| / (|rhs| + 1) with both sides divided by t.
    """
    omega = normalize(omega)
    if t <= 0:
        raise ValueError("ode residual needs t > 0")
    n = omega.degree
    dmax = n - 1
    half = (dmax + 5) // 2
    offsets = np.arange(-half, half + 1) * h
    vals = np.array(
        [eval_I(omega, m, y + d, t, method=method) for d in offsets], dtype=complex
    )
    weights = _fornberg(offsets, dmax)
    derivs = weights.T @ vals  # derivs[d] = d-th derivative at y

    lhs = 0j
    for j, c in enumerate(omega.coeffs):
        if c != 0 and j >= 2:
            lhs += j * c * (-1j) ** (j - 1) * derivs[j - 1]
    i_m = vals[half]
    i_m1 = eval_I(omega, m + 1, y, t, method=method)
    rhs = (y * i_m - (m + 1) * i_m1) / t
    return abs(lhs - rhs) / (abs(rhs) + 1.0)
