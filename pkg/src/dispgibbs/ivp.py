"""Exact dispersive evolution of compactly supported piecewise-polynomial data.

A piecewise-polynomial initial condition has an entire Fourier transform, so
the solution of i q_t - omega(-i d_x) q = 0 collapses to a finite sum of the
kernel integrals evaluated by :mod:`dispgibbs.special`: one term per
(breakpoint, derivative-jump) pair.  This module holds the data type, the
jump bookkeeping, the exact solver, the short-time Taylor expansion valid
away from the breakpoints, and the jump-local rescaling that exposes the
universal Gibbs profile.
"""

import bisect
import math

import numpy as np

from .dispersion import normalize
from .special import eval_I


class NotAJump(ValueError):
    """The requested breakpoint carries no zeroth-order jump."""


class PieceTooShallow(ValueError):
    """A Taylor expansion was requested past the local polynomial degree."""


def _trimmed(coeffs):
    cs = [complex(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def _poly_eval(coeffs, x):
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _poly_deriv(coeffs, m=1):
    cs = list(coeffs)
    for _ in range(m):
        cs = [k * c for k, c in enumerate(cs)][1:]
    return tuple(cs)


class PiecewisePolynomialIC:
    """Compactly supported piecewise polynomial q_o.

    breakpoints: strictly increasing reals c_1 < ... < c_N; pieces: N-1
    ascending coefficient tuples, piece i living on (c_i, c_{i+1}); the
    function vanishes outside [c_1, c_N].  Evaluation uses the
    right-continuous convention at the breakpoints themselves (the evolution
    never looks at those single points).
    """

    def __init__(self, breakpoints, pieces, max_degree=8):
        bps = tuple(float(c) for c in breakpoints)
        if len(bps) < 2:
            raise ValueError("need at least two breakpoints")
        if any(b >= a for a, b in zip(bps[1:], bps)):
            raise ValueError("breakpoints must be strictly increasing")
        if not all(math.isfinite(c) for c in bps):
            raise ValueError("breakpoints must be finite")
        ps = tuple(_trimmed(p) for p in pieces)
        if len(ps) != len(bps) - 1:
            raise ValueError(
                f"{len(bps)} breakpoints need {len(bps) - 1} pieces, got {len(ps)}")
        for p in ps:
            if len(p) > max_degree + 1:
                raise ValueError(
                    f"piece degree {len(p) - 1} exceeds the cap {max_degree}")
        self.breakpoints = bps
        self.pieces = ps
        self.max_degree = int(max_degree)

    def __repr__(self):
        return (f"PiecewisePolynomialIC(breakpoints={self.breakpoints!r}, "
                f"pieces={self.pieces!r})")

    def piece_at(self, x):
        """Coefficients in force at x (the zero tuple outside the support)."""
        i = bisect.bisect_right(self.breakpoints, x) - 1
        if i < 0 or i >= len(self.pieces):
            return ()
        return self.pieces[i]

    def __call__(self, x):
        x = float(x)
        return _poly_eval(self.piece_at(x), x)

    def derivative_jump(self, c, m):
        """[q_o^{(m)}(c)] = right minus left derivative, exactly from coefficients."""
        i = self.breakpoints.index(c)
        left = self.pieces[i - 1] if i > 0 else ()
        right = self.pieces[i] if i < len(self.pieces) else ()
        return (_poly_eval(_poly_deriv(right, m), c)
                - _poly_eval(_poly_deriv(left, m), c))

    def __add__(self, other):
        if not isinstance(other, PiecewisePolynomialIC):
            return NotImplemented
        bps = sorted(set(self.breakpoints) | set(other.breakpoints))
        pieces = []
        for a, b in zip(bps, bps[1:]):
            mid = 0.5 * (a + b)
            pa, pb = self.piece_at(mid), other.piece_at(mid)
            width = max(len(pa), len(pb))
            pieces.append(tuple(
                (pa[k] if k < len(pa) else 0) + (pb[k] if k < len(pb) else 0)
                for k in range(width)))
        return PiecewisePolynomialIC(
            bps, pieces, max(self.max_degree, other.max_degree))

    def __mul__(self, scalar):
        s = complex(scalar)
        return PiecewisePolynomialIC(
            self.breakpoints,
            tuple(tuple(s * c for c in p) for p in self.pieces),
            self.max_degree)

    __rmul__ = __mul__


def box():
    """The indicator of [-1, 1]."""
    return PiecewisePolynomialIC((-1.0, 1.0), ((1.0,),))


def tent():
    """The hat max(0, 1 - |x|)."""
    return PiecewisePolynomialIC((-1.0, 0.0, 1.0), ((1.0, 1.0), (1.0, -1.0)))


def smoothed_box(delta):
    """Box with the left edge replaced by a linear ramp of width delta.

    Continuous at -1 - delta and -1 (only derivative jumps there); the full
    unit jump survives at +1.  Integrates to 2 + delta/2.
    """
    d = float(delta)
    if d <= 0:
        raise ValueError("delta must be positive")
    ramp = ((1.0 + d) / d, 1.0 / d)
    return PiecewisePolynomialIC((-1.0 - d, -1.0, 1.0), (ramp, (1.0,)))


class JumpDecomposition:
    """Nonzero derivative jumps of an IC: entries (c, m, [q_o^{(m)}(c)])."""

    def __init__(self, entries):
        self.entries = tuple(entries)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def at(self, c, m):
        for ci, mi, j in self.entries:
            if ci == c and mi == m:
                return j
        return 0j

    def __repr__(self):
        return f"JumpDecomposition({self.entries!r})"


def jump_decomposition(ic):
    """All nonzero derivative jumps of ic, orders 0..max piece degree.

    Jumps are differences of exact coefficient arithmetic; values that only
    differ by rounding in the piece coefficients (a smoothed ramp meeting its
    plateau, say) are dropped relative to the one-sided derivative sizes.
    """
    top = max((len(p) - 1 for p in ic.pieces), default=0)
    entries = []
    for i, c in enumerate(ic.breakpoints):
        left = ic.pieces[i - 1] if i > 0 else ()
        right = ic.pieces[i] if i < len(ic.pieces) else ()
        for m in range(top + 1):
            lv = _poly_eval(_poly_deriv(left, m), c)
            rv = _poly_eval(_poly_deriv(right, m), c)
            jump = rv - lv
            if abs(jump) > 1e-9 * (abs(lv) + abs(rv) + 1.0):
                entries.append((c, m, jump))
    return JumpDecomposition(entries)


def solve(ic, omega, x, t, method="auto"):
    """q(x, t) for i q_t - omega(-i d_x) q = 0 with q(x, 0) = ic(x).

    The solution is the exact finite superposition
    q(x,t) = sum_{(c,m,J)} J * I_{omega,m}(x - c, t); constant and linear
    parts of omega enter through the phase/drift handling inside eval_I.
    At t = 0 the sum telescopes back to the piece value, so x must then
    stay off the breakpoints (no canonical value exists there).
    """
    om = normalize(omega)
    total = 0j
    for c, m, jump in jump_decomposition(ic):
        total += jump * eval_I(om, m, x - c, t, method=method)
    return total


def taylor_away(ic, omega, x, t, order):
    """Short-time expansion sum_{j<=order} ((-it)^j / j!) omega(-i d_x)^j q_o(x).

    Exact polynomial differentiation of the piece containing x, so the
    result is meaningful only at points a fixed distance from every
    breakpoint.  A zero piece returns 0 for every order; a nonzero piece
    must have degree >= n*order or the top term is pure truncation noise
    (PieceTooShallow).
    """
    om = normalize(omega)
    x = float(x)
    if x in ic.breakpoints:
        raise ValueError("the expansion is not defined at a breakpoint")
    piece = ic.piece_at(x)
    if not piece:
        return 0j
    order = int(order)
    if order < 0:
        raise ValueError("order must be >= 0")
    n = om.degree
    if len(piece) - 1 < n * order:
        raise PieceTooShallow(
            f"degree-{len(piece) - 1} piece cannot feed {order} powers of a "
            f"degree-{n} symbol")
    symbol = list(om.coeffs)
    symbol[0] += om.phase_rate
    symbol[1] += om.drift

    def apply_symbol(coeffs):
        out = [0j] * max(len(coeffs), 1)
        for r, w in enumerate(symbol):
            if w == 0:
                continue
            term = [w * (-1j) ** r * c for c in _poly_deriv(coeffs, r)]
            for k, c in enumerate(term):
                out[k] += c
        return _trimmed(out)

    total = _poly_eval(piece, x)
    cur = piece
    fac = 1.0
    for j in range(1, order + 1):
        cur = apply_symbol(cur)
        fac *= j
        total += (-1j * t) ** j / fac * _poly_eval(cur, x)
    return total


def rescaled_profile(ic, omega, c, x_grid, t, method="auto"):
    """Jump-local profile (q(c + x h, t) - q_c) / [q_o(c)], h = (|w_n| t)^{1/n}.

    omega must be a monomial w_n k^n; c must carry a zeroth-order jump of
    ic (NotAJump otherwise).  q_c collects everything at the breakpoint
    except its own leading kernel term: q_c = q(c,t) - [q_o(c)] I_{omega,0}(0,t).
    As t -> 0 the profile converges to I_{omega,0}(x, 1) uniformly on
    bounded x sets, whatever the rest of the IC does.
    """
    om = normalize(omega)
    nz = [j for j, w in enumerate(om.coeffs) if w != 0]
    if om.drift or om.phase_rate or nz != [om.degree]:
        raise ValueError("the rescaled profile needs a monomial dispersion relation")
    if t <= 0:
        raise ValueError("the rescaled profile needs t > 0")
    c = float(c)
    jump = jump_decomposition(ic).at(c, 0)
    if jump == 0:
        raise NotAJump(f"no zeroth-order jump at {c!r}")
    n = om.degree
    h = (abs(om.leading) * t) ** (1.0 / n)
    q_c = solve(ic, om, c, t, method=method) - jump * eval_I(om, 0, 0.0, t,
                                                             method=method)
    return np.array([
        (solve(ic, om, c + float(x) * h, t, method=method) - q_c) / jump
        for x in np.asarray(x_grid, dtype=float).ravel()
    ])
