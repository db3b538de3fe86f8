"""Polynomial dispersion relations and the rescaled saddle-point phase.

A relation omega(k) = sum_j omega_j k^j (complex coefficients, degree n >= 2)
drives the evolution i q_t - omega(-i d/dx) q = 0.  Degree-0 and degree-1
terms carry no dispersion: normalization strips them into a phase rate and a
drift that the solution layer reapplies as exp(-i omega_0 t) and x -> x -
omega_1 t.  Well-posedness on the line requires Im(omega_n) <= 0 for even n
and real omega_n for odd n, otherwise the propagator blows up at one of the
ends of the k-axis.

For |y| large the integral I(y,t) = (1/2pi) int exp(iky - i omega(k) t) /
(ik)^(m+1) dk is dominated by saddles.  Substituting k = sigma * s_f * z with
sigma = sign(y) and s_f = (|y|/t)^(1/(n-1)) turns the exponent into
X * Phi(z) with X = |y| s_f and

    Phi(z) = i z - i W(z),     W(z) = (t/X) * omega(sigma s_f z),

whose leading coefficient is always omega_n sigma^n.  Stationary points solve
W'(z) = 1; the ones in the closed upper half plane carry the asymptotics.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "InvalidDispersion",
    "IllPosed",
    "DegeneratePhase",
    "DispersionRelation",
    "normalize",
    "parse_omega",
    "format_omega",
    "rescaled",
    "ScaledPhase",
    "scaled_phase",
    "stationary_points",
    "expected_stationary_count",
]

MAX_DEGREE = 64


class InvalidDispersion(ValueError):
    """Coefficients do not describe a usable dispersion relation."""


class IllPosed(InvalidDispersion):
    """The leading coefficient makes the line problem ill-posed."""


class DegeneratePhase(RuntimeError):
    """Stationary-point structure unusable (collisions, wrong count, ...)."""


@dataclass(frozen=True)
class DispersionRelation:
    """Normalized dispersion relation: coeffs[j] = omega_j, coeffs[0:2] == 0."""

    coeffs: tuple          # ascending powers, length degree+1
    drift: float = 0.0     # stripped omega_1 (must be real)
    phase_rate: complex = 0j  # stripped omega_0

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def leading(self):
        return self.coeffs[-1]

    def __call__(self, k):
        """omega(k) without the stripped drift/phase terms; k may be an array."""
        return np.polyval(self._desc(), k)

    def full(self, k):
        """omega(k) including drift and phase_rate."""
        return self(k) + self.drift * np.asarray(k) + self.phase_rate

    def derivative_coeffs(self):
        """Ascending coefficients of omega'(k) (drift excluded)."""
        return tuple(j * c for j, c in enumerate(self.coeffs))[1:]

    def _desc(self):
        return np.array(self.coeffs[::-1], dtype=complex)

    def describe(self):
        return format_omega(self)


def _as_coeff_dict(coeffs):
    if isinstance(coeffs, DispersionRelation):
        d = {j: c for j, c in enumerate(coeffs.coeffs) if c != 0}
        if coeffs.drift:
            d[1] = d.get(1, 0j) + coeffs.drift
        if coeffs.phase_rate:
            d[0] = d.get(0, 0j) + coeffs.phase_rate
        return d
    if isinstance(coeffs, dict):
        items = coeffs.items()
    else:
        items = enumerate(coeffs)
    out = {}
    for j, c in items:
        if not float(j).is_integer():
            raise InvalidDispersion(f"non-integer degree {j!r}")
        j = int(j)
        if j < 0:
            raise InvalidDispersion(f"negative degree {j}")
        if j > MAX_DEGREE:
            raise InvalidDispersion(f"degree {j} beyond supported maximum {MAX_DEGREE}")
        c = complex(c)
        if c != 0:
            out[j] = out.get(j, 0j) + c
    return out


def normalize(coeffs):
    """Build a DispersionRelation, stripping drift/phase and validating.

    Accepts a dict {degree: coefficient}, a sequence of ascending
    coefficients, or an existing relation.  Raises InvalidDispersion when no
    term of degree >= 2 survives, IllPosed when the leading coefficient
    violates Im(omega_n) <= 0 (n even) / omega_n real (n odd).
    """
    d = _as_coeff_dict(coeffs)
    phase_rate = d.pop(0, 0j)
    drift = d.pop(1, 0j)
    if abs(drift.imag) > 1e-14 * max(1.0, abs(drift)):
        raise InvalidDispersion("complex drift (Im omega_1 != 0) is not supported")
    drift = drift.real
    if not d:
        raise InvalidDispersion("dispersion relation needs a term of degree >= 2")
    n = max(d)
    wn = d[n]
    if n % 2 == 0:
        if wn.imag > 1e-14 * abs(wn):
            raise IllPosed(f"even degree {n} needs Im(omega_n) <= 0, got {wn}")
        if 0 < wn.imag:
            wn = complex(wn.real, 0.0)
    else:
        if abs(wn.imag) > 1e-14 * abs(wn):
            raise IllPosed(f"odd degree {n} needs real omega_n, got {wn}")
        wn = complex(wn.real, 0.0)
    d[n] = wn
    dense = [0j] * (n + 1)
    for j, c in d.items():
        dense[j] = c
    return DispersionRelation(tuple(dense), drift=drift, phase_rate=phase_rate)


def parse_omega(text):
    """Parse 'j:coeff' entries, e.g. '3:1' or '2:0-1i,3:0.5' ('i' notation).

    Degrees must be distinct non-negative integers; at least one entry of
    degree >= 2 must be present after normalization.
    """
    d = {}
    for raw in str(text).split(","):
        entry = raw.strip()
        if not entry:
            raise InvalidDispersion(f"empty entry in {text!r}")
        if ":" not in entry:
            raise InvalidDispersion(f"entry {entry!r} is not of the form degree:coeff")
        js, cs = entry.split(":", 1)
        try:
            j = int(js.strip())
        except ValueError:
            raise InvalidDispersion(f"bad degree {js!r}") from None
        if j in d:
            raise InvalidDispersion(f"duplicate degree {j}")
        try:
            c = complex(cs.strip().replace(" ", "").replace("i", "j"))
        except ValueError:
            raise InvalidDispersion(f"bad coefficient {cs!r}") from None
        d[j] = c
    return normalize(d)


def _fmt_c(c):
    re, im = c.real, c.imag
    if im == 0:
        return f"{re:g}"
    if re == 0:
        return f"{im:g}i"
    return f"{re:g}{im:+g}i"


def format_omega(omega):
    """Inverse of parse_omega (drift/phase re-emitted as degrees 1/0)."""
    parts = []
    if omega.phase_rate:
        parts.append(f"0:{_fmt_c(complex(omega.phase_rate))}")
    if omega.drift:
        parts.append(f"1:{_fmt_c(complex(omega.drift))}")
    parts += [f"{j}:{_fmt_c(c)}" for j, c in enumerate(omega.coeffs) if c != 0]
    return ",".join(parts)


def rescaled(omega, t):
    """Relation omega_t with omega_t(k) = t * omega(k t^(-1/n)).

    Satisfies I_m(y, t) = t^(m/n) * I_m[omega_t](y t^(-1/n), 1); coefficient
    j picks up the factor t^(1 - j/n).
    """
    if t <= 0:
        raise ValueError("t must be positive")
    n = omega.degree
    coeffs = tuple(c * t ** (1.0 - j / n) for j, c in enumerate(omega.coeffs))
    return DispersionRelation(coeffs, drift=omega.drift, phase_rate=omega.phase_rate)


@dataclass(frozen=True)
class ScaledPhase:
    """Phi(z) = i(z - W(z)) with X factored out of the exponent."""

    omega: DispersionRelation
    sigma: float
    big_x: float            # X = |y| * s_f
    scale: float            # s_f = (|y|/t)^(1/(n-1))
    wcoeffs: tuple          # ascending coefficients of W

    @property
    def degree(self):
        return len(self.wcoeffs) - 1

    @property
    def leading(self):
        # equals omega_n sigma^n for any y, t
        return self.wcoeffs[-1]

    def _wd(self, order):
        return _poly_deriv(self.wcoeffs, order)

    def phi(self, z):
        return 1j * (z - np.polyval(self._wd(0), z))

    def dphi(self, z):
        return 1j * (1.0 - np.polyval(self._wd(1), z))

    def d2phi(self, z):
        return -1j * np.polyval(self._wd(2), z)

    def d3phi(self, z):
        if self.degree < 3:
            return np.zeros_like(np.asarray(z, dtype=complex))
        return -1j * np.polyval(self._wd(3), z)


@lru_cache(maxsize=512)
def _poly_deriv(wcoeffs, order):
    c = np.array(wcoeffs[::-1], dtype=complex)
    for _ in range(order):
        c = np.polyder(c)
    c.setflags(write=False)
    return c


def scaled_phase(omega, y, t):
    """ScaledPhase for the query (y, t); requires y != 0, t > 0."""
    if y == 0:
        raise ValueError("scaled phase undefined at y = 0")
    if t <= 0:
        raise ValueError("t must be positive")
    n = omega.degree
    sigma = 1.0 if y > 0 else -1.0
    rho = abs(y) / t
    s_f = rho ** (1.0 / (n - 1))
    big_x = abs(y) * s_f
    w = [0j] * (n + 1)
    for j, c in enumerate(omega.coeffs):
        if c != 0:
            w[j] = (t / big_x) * c * (sigma * s_f) ** j
    return ScaledPhase(omega, sigma, big_x, s_f, tuple(w))


def expected_stationary_count(n, wlead):
    """Number of stationary points of Phi in the closed upper half plane.

    The n-1 roots of n*w*z^(n-1) = 1 sit on a circle; well-posedness pins how
    many land in Im z >= 0: n/2 for even n, (n +/- 1)/2 for odd n with
    sign(w) = +/- 1.  Lower-order terms perturb but cannot change the count
    while the phase is non-degenerate.
    """
    if n % 2 == 0:
        return n // 2
    return (n + 1) // 2 if wlead.real > 0 else (n - 1) // 2


def stationary_points(phase, collision_tol=1e-6):
    """Stationary points of Phi in the closed UHP, counterclockwise from 0+.

    Solves W'(z) = 1 by companion matrix plus a couple of Newton polish
    steps.  Raises DegeneratePhase when two roots nearly collide or when the
    UHP count differs from the non-degenerate expectation (the usual cause:
    |y|/t too small for the scaling to separate the saddles).
    """
    coeffs = [j * c for j, c in enumerate(phase.wcoeffs)][1:]  # W', ascending
    desc = np.array(coeffs[::-1], dtype=complex)
    desc[-1] -= 1.0  # W'(z) - 1
    roots = np.roots(desc)
    # Newton polish on f = W'(z) - 1
    dcoef = np.polyder(desc)
    for _ in range(2):
        fz = np.polyval(desc, roots)
        dfz = np.polyval(dcoef, roots)
        ok = np.abs(dfz) > 1e-30
        roots[ok] -= fz[ok] / dfz[ok]

    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            if abs(roots[i] - roots[j]) < collision_tol * max(1.0, abs(roots[i])):
                raise DegeneratePhase(
                    f"stationary points collide: {roots[i]} ~ {roots[j]}"
                )

    keep = [z for z in roots if z.imag >= -1e-12]
    want = expected_stationary_count(phase.degree, phase.leading)
    if len(keep) != want:
        raise DegeneratePhase(
            f"found {len(keep)} upper-half-plane stationary points, expected {want}"
        )
    keep = [complex(z.real, max(z.imag, 0.0)) for z in keep]
    keep.sort(key=lambda z: (math.atan2(z.imag, z.real), abs(z)))
    return keep
