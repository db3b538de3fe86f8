"""Data-emitting command line for the dispersive Gibbs toolkit.

Six subcommands: eval (kernel integrals on a grid), solve (piecewise
polynomial evolution), gibbs-table (overshoot extrema per monomial degree),
kernel (fundamental solution), contour-dump (integration paths as JSON),
and verify (self-check suites).  Output is CSV/JSON/markdown written to
stdout or a file; identical invocations produce byte-identical bytes.

Exit codes: 0 success, 2 argument/validation problems, 3 numerical
failures (non-convergent quadrature, degenerate saddle geometry), with the
failing query echoed on stderr.
"""

import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import click
import numpy as np

from .dispersion import (DegeneratePhase, InvalidDispersion, normalize,
                         parse_omega)
from .quadrature import NoConvergence, NonFinite
from .special import asymptotic_I, eval_I, eval_kernel, ode_residual
from .contour import (descent_system, direct_contour, pole_avoiding_contour,
                      validate_descent)
from .dispersion import scaled_phase
from . import special as _special
from .ivp import PiecewisePolynomialIC, box, smoothed_box, solve, tent
from .gibbs import overshoot_table, wilbraham_gibbs_constant

NUMERICAL_ERRORS = (NoConvergence, NonFinite, DegeneratePhase)


def _fmt(x):
    return f"{float(x):.17g}"


def _parse_grid(text):
    parts = text.split(":")
    if len(parts) != 3:
        raise click.UsageError(f"grid must be a:b:n, got {text!r}")
    try:
        a, b, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise click.UsageError(f"grid must be a:b:n with numeric fields, got {text!r}")
    if n < 2:
        raise click.UsageError("grids need at least 2 points")
    if not (math.isfinite(a) and math.isfinite(b) and a < b):
        raise click.UsageError("grid endpoints must be finite with a < b")
    return np.linspace(a, b, n)


def _parse_omega_opt(text):
    try:
        om = parse_omega(text)
        normalize(om)
        return om
    except (InvalidDispersion, ValueError) as exc:
        raise click.UsageError(f"bad --omega {text!r}: {exc}")


def _parse_ic(text):
    if text == "box":
        return box()
    if text == "tent":
        return tent()
    if text.startswith("smoothed-box:"):
        try:
            return smoothed_box(float(text.split(":", 1)[1]))
        except ValueError as exc:
            raise click.UsageError(f"bad smoothed-box width: {exc}")
    if os.path.exists(text):
        with open(text) as fh:
            data = json.load(fh)
        try:
            return PiecewisePolynomialIC(data["breakpoints"], data["pieces"])
        except (KeyError, TypeError, ValueError) as exc:
            raise click.UsageError(f"bad IC file {text!r}: {exc}")
    raise click.UsageError(
        f"--ic must be box, tent, smoothed-box:<delta>, or a JSON file; got {text!r}")


def _workers():
    raw = os.cpu_count() or 1
    cap = os.environ.get("DISPGIBBS_THREADS")
    if cap is not None:
        try:
            cap = int(cap)
        except ValueError:
            raise click.UsageError(f"DISPGIBBS_THREADS must be an integer, got {cap!r}")
        if cap < 1:
            raise click.UsageError("DISPGIBBS_THREADS must be >= 1")
        raw = min(raw, cap)
    return raw


def _map_ordered(fn, items):
    """Apply fn over items preserving order, threading when allowed."""
    items = list(items)
    w = _workers()
    if w == 1 or len(items) < 4:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=w) as pool:
        return list(pool.map(fn, items))


def _emit(text, output):
    if output and output != "-":
        with open(output, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _rows_csv(header, rows):
    lines = [",".join(header)]
    lines += [",".join(_fmt(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"


def _rows_json(header, rows):
    payload = [dict(zip(header, (float(v) for v in row))) for row in rows]
    return json.dumps(payload, indent=2) + "\n"


def _fail_numerical(exc, query):
    click.echo(f"numerical failure: {exc}", err=True)
    click.echo(f"failing query: {query}", err=True)
    sys.exit(3)


@click.group()
def main():
    """Contour integrals, dispersive evolution, and Gibbs overshoot data."""


@main.command("eval")
@click.option("--omega", required=True, help="dispersion relation, e.g. 2:0-1i or 3:1,2:-0.5i")
@click.option("--m", default=0, show_default=True, help="pole order index (>= -1)")
@click.option("--t", required=True, type=float)
@click.option("--y-grid", "ygrid", required=True, help="a:b:n inclusive grid")
@click.option("--method", default="auto", show_default=True,
              type=click.Choice(["auto", "direct", "descent"]))
@click.option("--format", "fmt", default="csv", show_default=True,
              type=click.Choice(["csv", "json"]))
@click.option("--output", default="-", show_default=True)
def eval_cmd(omega, m, t, ygrid, method, fmt, output):
    """Evaluate I_{omega,m}(y, t) over a y grid."""
    om = _parse_omega_opt(omega)
    ys = _parse_grid(ygrid)

    def one(y):
        return eval_I(om, m, float(y), t, method=method)

    try:
        normalize(om)
        vals = _map_ordered(one, ys)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    except NUMERICAL_ERRORS as exc:
        _fail_numerical(exc, f"eval --omega {omega} --m {m} --t {t} --y-grid {ygrid}")
    rows = [(y, v.real, v.imag) for y, v in zip(ys, vals)]
    text = (_rows_csv(("y", "re", "im"), rows) if fmt == "csv"
            else _rows_json(("y", "re", "im"), rows))
    _emit(text, output)


@main.command("solve")
@click.option("--omega", required=True)
@click.option("--ic", required=True,
              help="box | tent | smoothed-box:<delta> | IC JSON file")
@click.option("--t", "tlist", required=True,
              help="comma-separated times, e.g. 1e-6,1e-4")
@click.option("--x-grid", "xgrid", required=True)
@click.option("--format", "fmt", default="csv", show_default=True,
              type=click.Choice(["csv", "json"]))
@click.option("--output", default="-", show_default=True)
def solve_cmd(omega, ic, tlist, xgrid, fmt, output):
    """Evolve a piecewise-polynomial IC and tabulate q(x, t)."""
    om = _parse_omega_opt(omega)
    data = _parse_ic(ic)
    xs = _parse_grid(xgrid)
    try:
        ts = [float(s) for s in tlist.split(",") if s]
    except ValueError:
        raise click.UsageError(f"bad --t list {tlist!r}")
    if not ts or any(t < 0 or not math.isfinite(t) for t in ts):
        raise click.UsageError("--t needs finite times >= 0")

    rows = []
    for t in ts:
        def one(x):
            return solve(data, om, float(x), t)
        try:
            vals = _map_ordered(one, xs)
        except ValueError as exc:
            raise click.UsageError(str(exc))
        except NUMERICAL_ERRORS as exc:
            _fail_numerical(exc, f"solve --omega {omega} --ic {ic} --t {t} --x-grid {xgrid}")
        rows += [(t, x, v.real, v.imag) for x, v in zip(xs, vals)]
    text = (_rows_csv(("t", "x", "re", "im"), rows) if fmt == "csv"
            else _rows_json(("t", "x", "re", "im"), rows))
    _emit(text, output)


@main.command("kernel")
@click.option("--omega", required=True)
@click.option("--t", required=True, type=float)
@click.option("--x-grid", "xgrid", required=True)
@click.option("--format", "fmt", default="csv", show_default=True,
              type=click.Choice(["csv", "json"]))
@click.option("--output", default="-", show_default=True)
def kernel_cmd(omega, t, xgrid, fmt, output):
    """Fundamental solution K_t(x) = I_{omega,-1}(x, t)."""
    om = _parse_omega_opt(omega)
    xs = _parse_grid(xgrid)

    def one(x):
        return eval_kernel(om, float(x), t)

    try:
        vals = _map_ordered(one, xs)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    except NUMERICAL_ERRORS as exc:
        _fail_numerical(exc, f"kernel --omega {omega} --t {t} --x-grid {xgrid}")
    rows = [(x, v.real, v.imag) for x, v in zip(xs, vals)]
    text = (_rows_csv(("x", "re", "im"), rows) if fmt == "csv"
            else _rows_json(("x", "re", "im"), rows))
    _emit(text, output)


GIBBS_COLUMNS = ("n", "sigma", "sup_re", "inf_re", "sup_im", "inf_im",
                 "sup_abs", "inf_abs", "arg_sup_re")


@main.command("gibbs-table")
@click.option("--n", "nlist", required=True, help="comma-separated degrees, e.g. 2,3,5")
@click.option("--sigma", default=1.0, show_default=True, type=float)
@click.option("--format", "fmt", default="csv", show_default=True,
              type=click.Choice(["csv", "json", "markdown"]))
@click.option("--output", default="-", show_default=True)
def gibbs_cmd(nlist, sigma, fmt, output):
    """Overshoot extrema of the jump profile for monomial dispersion."""
    try:
        ns = [int(s) for s in nlist.split(",") if s]
    except ValueError:
        raise click.UsageError(f"bad --n list {nlist!r}")
    if not ns or any(n < 2 for n in ns):
        raise click.UsageError("--n needs integers >= 2")
    try:
        reports = overshoot_table(ns, sigma=sigma)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    except NUMERICAL_ERRORS as exc:
        _fail_numerical(exc, f"gibbs-table --n {nlist} --sigma {sigma}")
    rows = [(r.n, complex(r.sigma).real, r.sup_re, r.inf_re, r.sup_im,
             r.inf_im, r.sup_abs, r.inf_abs, r.arg_sup_re) for r in reports]
    if fmt == "csv":
        text = _rows_csv(GIBBS_COLUMNS, rows)
    elif fmt == "json":
        text = _rows_json(GIBBS_COLUMNS, rows)
    else:
        head = "| " + " | ".join(GIBBS_COLUMNS) + " |"
        rule = "|" + "|".join("---" for _ in GIBBS_COLUMNS) + "|"
        body = ["| " + " | ".join(_fmt(v) for v in row) + " |" for row in rows]
        text = "\n".join([head, rule] + body) + "\n"
    _emit(text, output)


@main.command("contour-dump")
@click.option("--omega", required=True)
@click.option("--m", default=0, show_default=True)
@click.option("--y", required=True, type=float)
@click.option("--t", required=True, type=float)
@click.option("--kind", default="auto", show_default=True,
              type=click.Choice(["auto", "direct", "descent", "detour"]))
@click.option("--output", default="-", show_default=True)
def contour_cmd(omega, m, y, t, kind, output):
    """Integration-path segments as JSON [{re0, im0, re1, im1, order}]."""
    om = _parse_omega_opt(omega)
    try:
        if kind == "detour":
            contours = [pole_avoiding_contour()]
        else:
            if t <= 0:
                raise click.UsageError("contour construction needs t > 0")
            rel = normalize(om)
            can, s, _ = _special._canonical(rel, y - rel.drift * t, t)
            if kind in ("auto", "descent") and abs(s) >= _special.DESCENT_THRESHOLD:
                try:
                    sysd = descent_system(scaled_phase(can, s, 1.0))
                    contours = list(sysd.contours)
                except DegeneratePhase:
                    if kind == "descent":
                        raise
                    contours = [direct_contour(can, m, s)]
            elif kind == "descent":
                raise DegeneratePhase(
                    f"|s| = {abs(s):.3g} below the descent threshold")
            else:
                contours = [direct_contour(can, m, s)]
    except ValueError as exc:
        raise click.UsageError(str(exc))
    except NUMERICAL_ERRORS as exc:
        _fail_numerical(exc, f"contour-dump --omega {omega} --m {m} --y {y} --t {t}")
    segs = [
        {"re0": complex(sg.start).real, "im0": complex(sg.start).imag,
         "re1": complex(sg.end).real, "im1": complex(sg.end).imag,
         "order": sg.order}
        for c in contours for sg in c.segments
    ]
    _emit(json.dumps(segs, indent=2) + "\n", output)


def _suite_oracles():
    from scipy.special import airy, wofz
    from .quadrature import integrate_segment

    def cerf(z):
        z = complex(z)
        return 1.0 - np.exp(-z * z) * wofz(1j * z)

    lines = []
    ok = True
    s = np.linspace(-10.0, 10.0, 201)

    heat = np.array([eval_I({2: -1j}, 0, float(y), 1.0) for y in s])
    err = np.abs(heat - 0.5 * (np.array([cerf(v / 2) for v in s]) - 1.0)).max()
    ok &= err < 1e-8
    lines.append(("heat vs erf", err, 1e-8))

    sch = np.array([eval_I({2: 1.0}, 0, float(y), 1.0) for y in s])
    ref = 0.5 * (np.array([cerf(np.exp(-1j * np.pi / 4) * v / 2) for v in s]) - 1.0)
    err = np.abs(sch - ref).max()
    ok &= err < 1e-8
    lines.append(("schrodinger vs erf", err, 1e-8))

    def ai_cdf(v):
        # integral of Ai over (-inf, v] by spectral quadrature of the
        # (accurately tabulated) Airy function itself; Ai integrates to 2/3
        # over the left half-line and decays superexponentially past ~+15
        if v >= 0:
            tail, _ = integrate_segment(lambda z: airy(z)[0].real, v, v + 20.0, 192)
            return 1.0 - tail.real
        head, _ = integrate_segment(lambda z: airy(z)[0].real, v, 0.0, 256)
        return 2.0 / 3.0 - head.real

    stokes = np.array([eval_I({3: -1.0}, 0, float(y), 1.0) for y in s])
    ref = np.array([ai_cdf(v / 3.0 ** (1.0 / 3.0)) - 1.0 for v in s])
    err = np.abs(stokes - ref).max()
    ok &= err < 1e-6
    lines.append(("stokes vs airy", err, 1e-6))
    return ok, lines


def _suite_ode():
    samples = []
    for om in ({2: -1j}, {2: 1.0}, {3: 1.0}, {3: -1.0}, {4: -1j}):
        for m in (0, 1):
            for y, t in ((2.3, 0.7), (-5.1, 1.3)):
                samples.append((om, m, y, t))
    lines = []
    ok = True
    worst = 0.0
    for om, m, y, t in samples:
        r = ode_residual(om, m, y, t)
        worst = max(worst, r)
    ok = worst < 1e-4
    lines.append(("ode residual (20 samples)", worst, 1e-4))
    return ok, lines


def _suite_limits():
    checks = [
        ("heat left -> -1", {2: -1j}, -12.0, -1.0, 1e-3),
        ("heat right -> 0", {2: -1j}, 12.0, 0.0, 1e-3),
        ("stokes right -> 0", {3: -1.0}, 15.0, 0.0, 1e-3),
        ("stokes left -> -1", {3: -1.0}, -7000.0, -1.0, 1e-3),
    ]
    lines = []
    ok = True
    for name, om, y, target, tol in checks:
        v = eval_I(om, 0, y, 1.0)
        err = abs(v - target)
        ok &= err < tol
        lines.append((name, err, tol))
    return ok, lines


def _suite_gibbs():
    from scipy.special import sici
    lines = []
    g = wilbraham_gibbs_constant()
    ref = sici(math.pi)[0] / math.pi - 0.5
    err = abs(g - ref)
    ok = err < 1e-12
    lines.append(("gibbs constant vs Si(pi)", err, 1e-12))
    reports = overshoot_table([3, 5, 9])
    dev = [abs(r.sup_re - (1.0 + g)) for r in reports]
    trend_ok = dev[0] > dev[1] > dev[2]
    ok &= trend_ok
    lines.append(("overshoot |sup_re-(1+g)| decreasing over n=3,5,9",
                  0.0 if trend_ok else 1.0, 0.5))
    return ok, lines


SUITES = {
    "oracles": _suite_oracles,
    "ode": _suite_ode,
    "limits": _suite_limits,
    "gibbs": _suite_gibbs,
}


@main.command("verify")
@click.argument("suite", required=False,
                type=click.Choice(sorted(SUITES) + ["all"]))
def verify_cmd(suite):
    """Run a self-check suite (oracles, ode, limits, gibbs; default all)."""
    names = sorted(SUITES) if suite in (None, "all") else [suite]
    all_ok = True
    for name in names:
        try:
            ok, lines = SUITES[name]()
        except NUMERICAL_ERRORS as exc:
            _fail_numerical(exc, f"verify {name}")
        for label, err, tol in lines:
            status = "ok  " if err < tol else "FAIL"
            click.echo(f"{status} [{name}] {label}: err {err:.3e} (tol {tol:g})")
        all_ok &= ok
    if not all_ok:
        sys.exit(1)


if __name__ == "__main__":
    main()
