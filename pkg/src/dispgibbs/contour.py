"""Integration paths in the complex plane.

Three families:

* ``pole_avoiding_contour`` -- the defining path: the real axis with a small
  semicircular detour passing above k = 0 (the detour is what distinguishes
  the integral from a principal value when m >= 0).

* ``direct_contour`` -- the pole-avoiding path with both ends bent off the
  real axis into directions where exp(-i omega(k) t) decays.  For odd-degree
  real relations there is *no* decay along the real axis itself, so bending
  is not an optimization but the only way to truncate; the bend radius is
  chosen outside all saddles so the homotopy never changes the value.

* ``descent_system`` -- one short three-segment path per stationary point
  z_j of the rescaled phase Phi: a central segment through z_j along the
  local steepest-descent direction, plus two rays out to where the integrand
  has died, aimed at the asymptotic decay directions of exp(X Phi).  The sum
  of the pieces is homotopic to the full path, but every segment now decays,
  which preserves *relative* accuracy even when exp(X Phi(z_j)) is 1e-100.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .dispersion import DegeneratePhase, stationary_points

__all__ = [
    "Segment",
    "Contour",
    "pole_avoiding_contour",
    "direct_contour",
    "decay_directions",
    "DescentSystem",
    "descent_system",
    "validate_descent",
    "ValidationReport",
]

# drop in exp(Re X Phi) from the saddle to the tail ends; e^-45 ~ 2.9e-20
TAIL_DROP = 45.0
ARC_CHORDS = 8


@dataclass(frozen=True)
class Segment:
    start: complex
    end: complex
    order: int = 64  # initial Clenshaw-Curtis order, adaptively doubled

    @property
    def length(self):
        return abs(self.end - self.start)

    @property
    def direction(self):
        d = self.end - self.start
        return d / abs(d)


@dataclass(frozen=True)
class Contour:
    segments: tuple
    label: str = ""

    def points(self):
        pts = [self.segments[0].start]
        pts += [s.end for s in self.segments]
        return pts


def _arc(radius, order):
    """Chords tracing the upper semicircle from -r to +r (above the pole)."""
    angles = np.linspace(np.pi, 0.0, ARC_CHORDS + 1)
    pts = radius * np.exp(1j * angles)
    return [Segment(complex(a), complex(b), order) for a, b in zip(pts, pts[1:])]


def pole_avoiding_contour(radius=0.5, truncation=40.0, order=64, detour=True):
    """Real axis from -T to T with an upper semicircular detour around 0."""
    if not 0 < radius < 1:
        raise ValueError("detour radius must satisfy 0 < r < 1")
    if truncation <= 1:
        raise ValueError("truncation must exceed 1")
    segs = []
    if detour:
        segs.append(Segment(complex(-truncation), complex(-radius), order))
        segs += _arc(radius, max(16, order // 2))
        segs.append(Segment(complex(radius), complex(truncation), order))
    else:
        segs.append(Segment(complex(-truncation), complex(truncation), order))
    return Contour(tuple(segs), label="pole-avoiding")


def decay_directions(n, wlead):
    """Steepest decay directions of exp(-i * wlead * z^n) at infinity.

    Solve arg(-i wlead) + n*theta = pi (mod 2pi):
    theta_j = (3pi/2 - arg(wlead) + 2pi j)/n.  For real wlead these are the
    odd multiples of pi/(2n) on which wlead*sin(n theta) < 0; for the heat
    operator (wlead = -i) they collapse onto the real axis.
    """
    base = (1.5 * math.pi - cmath.phase(complex(wlead))) / n
    return [(base + 2.0 * math.pi * j / n) % (2.0 * math.pi) for j in range(n)]


def _wrap(a):
    return (a + math.pi) % (2.0 * math.pi) - math.pi


def _phase_exponent(omega, s, z):
    """Re(i z s - i omega(z)), the log-magnitude of the direct integrand."""
    return (1j * z * s - 1j * omega(z)).real


def _ray_for_end(omega, s, anchor, want_right):
    """Pick the decay direction giving the fastest kill past the bend point."""
    n = omega.degree
    best = None
    for th in decay_directions(n, omega.leading):
        c = math.cos(th)
        if want_right and c < 0.05:
            continue
        if not want_right and c > -0.05:
            continue
        probe = anchor + 3.0 * cmath.exp(1j * th)
        val = _phase_exponent(omega, s, probe)
        if best is None or val < best[1]:
            best = (th, val)
    if best is None:
        raise DegeneratePhase("no usable decay direction for the contour end")
    return best[0]


def _march_out(logmag, anchor, theta, drop, step0):
    """Distance L to the logmag = -drop crossing along anchor + L e^i theta.

    Doubles until the drop is met, then bisects back to the crossing:
    for steep symbols the doubling overshoots by orders of magnitude and
    the overshot stretch carries integrand values below the subnormal
    floor, which quadrature sees as pure rounding noise.
    """
    e = cmath.exp(1j * theta)
    L = step0
    for _ in range(200):
        if logmag(anchor + L * e) <= -drop:
            break
        L *= 2.0
    else:
        raise DegeneratePhase("integrand refuses to decay along chosen ray")
    lo, hi = (0.0, L) if L <= step0 else (L / 2.0, L)
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if logmag(anchor + mid * e) <= -drop:
            hi = mid
        else:
            lo = mid
    return hi


def _phase_knots(omega, s, lo, hi, budget):
    """Split [lo, hi] on the real axis into equal-phase pieces.

    The phase density (s - omega'(x)) is wildly nonuniform for steep
    symbols -- near the bend an equal-width piece can hold thousands of
    radians while the piece by the pole holds a handful -- so the knots
    equalise the accumulated-phase bound |s| x + sum_j |omega_j| x^j.
    """

    def phi(x):
        tot = abs(s) * x
        for j, c in enumerate(omega.coeffs):
            if j and c:
                tot += abs(c) * x ** j
        return tot

    total = phi(hi) - phi(lo)
    k = max(1, int(math.ceil(total / budget)))
    knots = [lo]
    for i in range(1, k):
        target = phi(lo) + total * i / k
        a_, b_ = knots[-1], hi
        for _ in range(60):
            mid = 0.5 * (a_ + b_)
            if phi(mid) < target:
                a_ = mid
            else:
                b_ = mid
        knots.append(0.5 * (a_ + b_))
    knots.append(hi)
    return knots


def _ray_breaks(omega, s, logmag, anchor, theta, drop, budget):
    """Truncation-ray split radii [0, ..., L] bounded by a phase budget.

    The first march step is scaled to the local decay rate (for steep
    symbols the ray dies within a sliver, and a unit step would hand the
    quadrature thousands of radians); the accumulated-phase bound
    |s| r + sum_j |omega_j| ((rho+r)^j - rho^j) is monotone, so budget
    knots come out of a bisection.
    """
    e = cmath.exp(1j * theta)
    probe = 1e-3
    rate = (logmag(anchor) - logmag(anchor + probe * e)) / probe
    step0 = min(1.0, max(1e-6, drop / max(rate, 1.0)))
    L = _march_out(logmag, anchor, theta, drop, step0)
    rho = abs(anchor)

    def span(r):
        tot = abs(s) * r
        for j, c in enumerate(omega.coeffs):
            if j and c:
                tot += abs(c) * ((rho + r) ** j - rho ** j)
        return tot

    total = span(L)
    k = max(2, int(math.ceil(total / budget)))
    breaks = [0.0]
    for i in range(1, k):
        target = total * i / k
        lo, hi = breaks[-1], L
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            if span(mid) < target:
                lo = mid
            else:
                hi = mid
        breaks.append(0.5 * (lo + hi))
    breaks.append(L)
    return breaks


def _adjacent_valleys(alpha, dirs):
    """The two decay directions angularly bracketing the angle `alpha`.

    The steepest path through a stationary point at position angle alpha
    asymptotes to the decay sectors on either side of it; choosing any
    other pair breaks the telescoping of the contour union (two saddles
    can silently span the same homotopy class and double the integral).
    Returns (below, above) with below <= alpha < above, unwrapped so the
    bracket is contiguous even across the 0/2pi seam.
    """
    ds = sorted(d % (2.0 * math.pi) for d in dirs)
    a = alpha % (2.0 * math.pi)
    below = None
    for d in ds:
        if d <= a + 1e-12:
            below = d
    if below is None:
        return ds[-1] - 2.0 * math.pi, ds[0]
    i = ds.index(below)
    above = ds[i + 1] if i + 1 < len(ds) else ds[0] + 2.0 * math.pi
    return below, above


def direct_contour(omega, m, s, pad=1.3, order=64, phase_budget=120.0):
    """Bent pole-avoiding contour for (1/2pi) int e^(izs - i omega(z)) / (iz)^(m+1) dz.

    omega must already have t folded in (t=1).  The bend radius sits outside
    every saddle of the full phase and outside the region where lower-order
    terms compete with the leading one, so only decaying tails are cut.
    The oscillatory stretch [-a, a] is split so each segment holds a bounded
    number of radians of phase.
    """
    n = omega.degree
    wn = abs(omega.leading)
    r_saddle = (abs(s) / (n * wn)) ** (1.0 / (n - 1)) if s else 0.0
    r_dom = 0.0
    for j, c in enumerate(omega.coeffs[:-1]):
        if c != 0:
            r_dom = max(r_dom, (4.0 * abs(c) / wn) ** (1.0 / (n - j)))
    a = pad * max(1.0, r_saddle, r_dom)

    th_r = _ray_for_end(omega, s, a, True)
    th_l = _ray_for_end(omega, s, -a, False)
    ref = max(0.0, _phase_exponent(omega, s, 0.001j))

    def logmag(z):
        return _phase_exponent(omega, s, z) - ref

    br_r = _ray_breaks(omega, s, logmag, a, th_r, TAIL_DROP, phase_budget)
    br_l = _ray_breaks(omega, s, logmag, -a, th_l, TAIL_DROP, phase_budget)

    segs = []
    e_l = cmath.exp(1j * th_l)
    for r_far, r_near in zip(br_l[::-1], br_l[-2::-1]):
        segs.append(Segment(-a + r_far * e_l, -a + r_near * e_l, order))

    if m >= 0:
        radius = min(0.5, a / 4.0)
        cuts = _phase_knots(omega, s, radius, a, phase_budget)
        segs += [Segment(complex(-u), complex(-v), order) for u, v in zip(cuts[::-1], cuts[-2::-1])]
        segs += _arc(radius, max(16, order // 2))
        segs += [Segment(complex(u), complex(v), order) for u, v in zip(cuts, cuts[1:])]
    else:
        cuts = _phase_knots(omega, s, 0.0, a, phase_budget)
        segs += [Segment(complex(-u), complex(-v), order) for u, v in zip(cuts[::-1], cuts[-2::-1])]
        segs += [Segment(complex(u), complex(v), order) for u, v in zip(cuts, cuts[1:])]

    e_r = cmath.exp(1j * th_r)
    for r_near, r_far in zip(br_r, br_r[1:]):
        segs.append(Segment(a + r_near * e_r, a + r_far * e_r, order))
    return Contour(tuple(segs), label="direct")


@dataclass(frozen=True)
class DescentSystem:
    phase: object            # the ScaledPhase driving everything
    points: tuple            # stationary points, counterclockwise
    angles: tuple            # central segment direction at each point
    contours: tuple          # one three-segment Contour per point

    @property
    def big_x(self):
        return self.phase.big_x


def _central_angle(phi2):
    """Direction minimizing Re(phi2 e^{2 i theta}): theta = (pi - arg phi2)/2.

    Normalized so the segment is traversed with increasing real part
    (cos > 0); exactly vertical descent picks sin > 0.
    """
    th = 0.5 * (math.pi - cmath.phase(complex(phi2)))
    th = _wrap(th)
    if math.cos(th) < -1e-12 or (abs(math.cos(th)) <= 1e-12 and math.sin(th) < 0):
        th = _wrap(th + math.pi)
    return th


def descent_system(phase, c0=6.0, order=96, tail_order=64):
    """One contour per stationary point, central segment + two decay rays.

    Central half-width h_j = c0 / sqrt(X |Phi''(z_j)|) makes the integrand
    drop by exp(-c0^2/2) by the joints; each tail runs from a joint to a
    point on the valley ray z_j + L e^{i theta}, where the two thetas are
    the decay directions bracketing the saddle's position angle (the pair
    its steepest path actually connects), and L is chosen so Re(X Phi) has
    fallen TAIL_DROP below the saddle value.
    """
    pts = stationary_points(phase)
    n = phase.degree
    X = phase.big_x
    dirs = decay_directions(n, phase.leading)

    contours = []
    angles = []
    for j, zj in enumerate(pts):
        phi2 = complex(phase.d2phi(zj))
        if abs(phi2) < 1e-12:
            raise DegeneratePhase(f"vanishing Phi'' at stationary point {zj}")
        th = _central_angle(phi2)
        angles.append(th)
        h = c0 / math.sqrt(X * abs(phi2))
        # keep the joints inside this saddle's own basin: past ~a third of
        # the separation the quadratic model (and the valley bookkeeping)
        # belongs to the neighbour
        sep = min((abs(zj - zk) for zk in pts if zk is not zj), default=math.inf)
        h = min(h, 0.35 * sep)
        e = cmath.exp(1j * th)
        p_minus = zj - h * e
        p_plus = zj + h * e

        ref = (complex(phase.phi(zj))).real

        def logmag(z, _ref=ref):
            return X * ((complex(phase.phi(z))).real - _ref)

        alpha = math.atan2(max(zj.imag, 0.0), zj.real)
        below, above = _adjacent_valleys(alpha, dirs)
        if math.cos(below - th) >= math.cos(above - th):
            fwd, bwd = below, above
        else:
            fwd, bwd = above, below
        if math.cos(fwd - th) <= 0.0:
            raise DegeneratePhase(
                "central direction points away from both adjacent valleys")
        L_f = _march_out(logmag, zj, fwd, TAIL_DROP, max(h, 0.25))
        L_b = _march_out(logmag, zj, bwd, TAIL_DROP, max(h, 0.25))
        q_plus = zj + L_f * cmath.exp(1j * fwd)
        q_minus = zj + L_b * cmath.exp(1j * bwd)
        for a, b in ((p_plus, q_plus), (q_minus, p_minus)):
            crest = max(logmag(a + (b - a) * uu)
                        for uu in np.linspace(0.0, 1.0, 33))
            if crest > 2.0:
                raise DegeneratePhase("descent tail crosses a growth ridge")
        contours.append(Contour((
            Segment(q_minus, p_minus, tail_order),
            Segment(p_minus, p_plus, order),
            Segment(p_plus, q_plus, tail_order),
        ), label=f"descent-{j}"))
    return DescentSystem(phase, tuple(pts), tuple(angles), tuple(contours))


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    max_gradient: float        # |Phi'| at the stationary points
    max_uphill: float          # worst Re X Phi excess over the saddle value
    min_joint_drop: float      # Re X Phi saddle-to-joint decrease
    min_terminal_drop: float   # Re X Phi saddle-to-endpoint decrease
    max_angle_error: float     # tail angle distance to nearest admissible


def validate_descent(system, samples=33):
    """Sample each descent contour and check it actually descends.

    Valid systems satisfy: stationarity |Phi'(z_j)| ~ 0, the integrand never
    rises above its saddle value along the path (up to slack), magnitudes at
    the joints are down by roughly exp(-c0^2/2), tails end deep in decay, and
    terminal ray angles sit on admissible asymptotic directions.
    """
    phase = system.phase
    X = phase.big_x
    dirs = decay_directions(phase.degree, phase.leading)

    max_grad = 0.0
    max_uphill = -math.inf
    min_joint = math.inf
    min_term = math.inf
    max_ang = 0.0
    for zj, cont in zip(system.points, system.contours):
        max_grad = max(max_grad, abs(complex(phase.dphi(zj))))
        ref = complex(phase.phi(zj)).real
        for seg in cont.segments:
            u = np.linspace(0.0, 1.0, samples)
            z = seg.start + (seg.end - seg.start) * u
            re = X * (np.real(phase.phi(z)) - ref)
            max_uphill = max(max_uphill, float(re.max()))
        joints = (cont.segments[0].end, cont.segments[1].end)
        for p in joints:
            min_joint = min(min_joint, -X * (complex(phase.phi(p)).real - ref))
        ends = (cont.segments[0].start, cont.segments[2].end)
        for p in ends:
            min_term = min(min_term, -X * (complex(phase.phi(p)).real - ref))
        for p in (cont.segments[0].start, cont.segments[2].end):
            ang = cmath.phase(p - zj)
            err = min(abs(_wrap(ang - d)) for d in dirs)
            max_ang = max(max_ang, err)

    ok = (
        max_grad <= 1e-7
        and max_uphill <= 1e-6 * max(1.0, X)
        and min_term >= TAIL_DROP - 1.0
        and max_ang <= 0.05
    )
    return ValidationReport(ok, max_grad, max_uphill, min_joint, min_term, max_ang)
