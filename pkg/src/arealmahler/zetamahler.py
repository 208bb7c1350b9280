"""Zeta Mahler functions of x + k, x + y and x + y + k, and the complex zeros of the areal one.

Z(s, P) is the s-th moment of |P| over the torus, Z_D(s, P) over the polydisk.
Both are assembled from Gamma factors and 3F2 series in z = k^2/4 (k < 2) or
4/k^2 (k >= 2).  At real odd s the two k < 2 terms have cancelling poles;
the value there is the symmetric limit, taken by Richardson extrapolation.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import densities as dens
from . import specfun
from .errors import ConvergenceError, DomainError, InvalidSpecError, PoleError, ZeroCountMismatch
from .quadrature import QuadratureSpec, ToleranceWarning, integrate, require

PI = math.pi
LOG2 = math.log(2.0)
ODD_DELTA = 1e-3


@dataclass(frozen=True)
class ZetaEvalPoint:
    s: complex
    k: float

    def __post_init__(self):
        object.__setattr__(self, "s", specfun.as_complex(self.s))
        if not (self.k >= 0 and math.isfinite(self.k)):
            raise DomainError("k must be finite and >= 0")


def _k(k) -> float:
    if isinstance(k, dens.FamilyParamK):
        return k.k
    if isinstance(k, complex):
        return abs(k)
    k = float(k)
    if not math.isfinite(k):
        raise DomainError("k must be finite")
    return abs(k)


def _lg(z) -> complex:
    return specfun.loggamma(z)


def _finite(val: complex, what: str) -> complex:
    if not (math.isfinite(val.real) and math.isfinite(val.imag)):
        raise PoleError(f"{what} has a pole here")
    return val


def _is_odd_integer(s: complex) -> bool:
    if s.imag != 0:
        return False
    r = round(s.real)
    return abs(s.real - r) < 1e-12 and r % 2 == 1


def _odd_limit(f, s: complex) -> complex:
    """Symmetric limit at a real odd s, Richardson-extrapolated in delta^2."""
    d = ODD_DELTA

    def avg(h):
        return 0.5 * (f(s + h) + f(s - h))

    return (4 * avg(d / 2) - avg(d)) / 3


# ---------------------------------------------------------------------------
# x + k and x + y
# ---------------------------------------------------------------------------


def z_x_plus_k(s, k) -> complex:
    """Z(s, x + k): 2F1(-s/2, -s/2; 1; |k|^2) inside the circle, |k|^s 2F1(...; |k|^-2) outside."""
    s = specfun.as_complex(s)
    k = _k(k)
    if k == 1:
        return _finite(cmath.exp(_lg(1 + s) - 2 * _lg(1 + s / 2)), "Z(s, x+1)")
    a = -s / 2
    if k < 1:
        return specfun.gauss_2f1(a, a, 1, k * k)
    return cmath.exp(s * math.log(k)) * specfun.gauss_2f1(a, a, 1, 1 / (k * k))


def zd_x_plus_1(s) -> complex:
    """Z_D(s, x + 1) = Gamma(2+s) / Gamma(2+s/2)^2."""
    s = specfun.as_complex(s)
    return _finite(specfun.gamma(2 + s) * specfun.rgamma(2 + s / 2) ** 2, "Z_D(s, x+1)")


def zd_xy(s) -> complex:
    """Z_D(s, x + y) = 4/(s+4) Gamma(2+s) / Gamma(2+s/2)^2."""
    s = specfun.as_complex(s)
    if s == -4:
        raise PoleError("Z_D(s, x+y) has a pole at s = -4")
    try:
        g = specfun.gamma(2 + s)
    except (ZeroDivisionError, OverflowError, DomainError) as exc:
        raise PoleError(f"Gamma(2+s) has a pole at s = {s}") from exc
    return _finite(4 / (s + 4) * g * specfun.rgamma(2 + s / 2) ** 2, "Z_D(s, x+y)")


# ---------------------------------------------------------------------------
# x + y + k
# ---------------------------------------------------------------------------


def alpha0(s: complex) -> complex:
    """-2^{s+2} tan(pi s/2) Gamma(1+s/2)^2 / (pi Gamma((5+s)/2)^2)."""
    return (
        -cmath.exp((s + 2) * LOG2 + 2 * (_lg(1 + s / 2) - _lg((5 + s) / 2))) * cmath.tan(PI * s / 2) / PI
    )


def alpha1(s: complex) -> complex:
    """4/(s+4) Gamma(2+s) / Gamma(2+s/2)^2."""
    return 4 / (s + 4) * cmath.exp(_lg(2 + s) - 2 * _lg(2 + s / 2))


def beta0(s: complex) -> complex:
    """2^{-s} tan(pi s/2) (Gamma(1+s) / (Gamma((1+s)/2) Gamma((3+s)/2)))^2."""
    return cmath.exp(-s * LOG2 + 2 * (_lg(1 + s) - _lg((1 + s) / 2) - _lg((3 + s) / 2))) * cmath.tan(PI * s / 2)


def beta1(s: complex) -> complex:
    """Gamma(1+s) / Gamma(1+s/2)^2."""
    return cmath.exp(_lg(1 + s) - 2 * _lg(1 + s / 2))


def _zd_small_terms(s: complex, k: float) -> tuple[complex, complex]:
    z = k * k / 4
    f1 = specfun.hyper([-2 - s / 2, -1 - s / 2, -s / 2], [1, -(1 + s) / 2], z)
    t1 = alpha1(s) * f1
    if k == 0:
        if (s + 3).real <= 0:
            raise DomainError("(k/2)^{s+3} is singular at k = 0 for Re(s) <= -3")
        return 0j, t1
    f0 = specfun.hyper([-0.5, 0.5, 1.5], [(5 + s) / 2, (5 + s) / 2], z)
    t0 = alpha0(s) * cmath.exp((s + 3) * (math.log(k) - LOG2)) * f0
    return t0, t1


def _zd_small(s: complex, k: float) -> complex:
    t0, t1 = _zd_small_terms(s, k)
    return t0 + t1


def _zd_large(s: complex, k: float) -> complex:
    return cmath.exp(s * math.log(k)) * specfun.hyper([-s / 2, -s / 2, 1.5], [2, 3], 4 / (k * k))


def zd_xyk(s, k) -> complex:
    """Z_D(s, x + y + k), the s-th moment of |X + Y + k| for X, Y uniform on the disk.

    For k < 2 the alpha_0/alpha_1 combination (also the meromorphic
    continuation in s); for k >= 2 the single 3F2 in 4/k^2.
    """
    s = specfun.as_complex(s)
    k = _k(k)
    try:
        if k >= 2:
            return _finite(_zd_large(s, k), "Z_D")
        if _is_odd_integer(s):
            return _finite(_odd_limit(lambda t: _zd_small(t, k), s), "Z_D")
        return _finite(_zd_small(s, k), "Z_D")
    except (ZeroDivisionError, OverflowError) as exc:
        raise PoleError(f"Z_D(s, x+y+k) has a pole at s = {s}") from exc


def _z_small(s: complex, k: float) -> complex:
    z = k * k / 4
    g1 = specfun.hyper([-s / 2, -s / 2, -s / 2], [1, (1 - s) / 2], z)
    val = beta1(s) * g1
    if k == 0:
        if (1 + s).real <= 0:
            raise DomainError("(k/2)^{1+s} is singular at k = 0 for Re(s) <= -1")
        return val
    g0 = specfun.hyper([0.5, 0.5, 0.5], [(3 + s) / 2, (3 + s) / 2], z)
    return val + beta0(s) * cmath.exp((1 + s) * (math.log(k) - LOG2)) * g0


def _z_large(s: complex, k: float) -> complex:
    return cmath.exp(s * math.log(k)) * specfun.hyper([-s / 2, -s / 2, 0.5], [1, 1], 4 / (k * k))


def z_xyk(s, k) -> complex:
    """Z(s, x + y + k), the s-th moment of |x + y + k| on the torus."""
    s = specfun.as_complex(s)
    k = _k(k)
    try:
        if k >= 2:
            return _finite(_z_large(s, k), "Z")
        if _is_odd_integer(s):
            return _finite(_odd_limit(lambda t: _z_small(t, k), s), "Z")
        return _finite(_z_small(s, k), "Z")
    except (ZeroDivisionError, OverflowError) as exc:
        raise PoleError(f"Z(s, x+y+k) has a pole at s = {s}") from exc


# ---------------------------------------------------------------------------
# derivative at s = 0
# ---------------------------------------------------------------------------

_FUNCS = {
    "zd_xy": lambda s, k: zd_xy(s),
    "zd_xyk": zd_xyk,
    "z_xyk": z_xyk,
}


def complex_step(f, x: float = 0.0, h: float = 1e-20) -> float:
    """f'(x) = Im f(x + ih) / h for f real on the real axis."""
    return f(complex(x, h)).imag / h


def mahler_from_derivative(which: str, k=0.0) -> float:
    """d/ds Z(s, P) at s = 0 by complex-step, cross-checked at a second step."""
    if which not in _FUNCS:
        raise InvalidSpecError(f"unknown function {which!r}")
    f = _FUNCS[which]
    kk = _k(k)
    d1 = complex_step(lambda s: f(s, kk), 0.0, 1e-20)
    d2 = complex_step(lambda s: f(s, kk), 0.0, 1e-7)
    # the second step carries an O(h^2) truncation error
    if abs(d1 - d2) > 1e-9 * max(1.0, abs(d1)):
        raise ConvergenceError(f"complex-step derivative unstable: {d1} vs {d2}")
    return d1


# ---------------------------------------------------------------------------
# the continued k > 2 formula and its ODE
# ---------------------------------------------------------------------------


def g_tilde(s, z) -> complex:
    """(4z)^{s/2} 3F2(-s/2, -s/2, 3/2; 2, 3; 1/z), z = k^2/4 >= 1."""
    s = specfun.as_complex(s)
    z = float(z)
    if z < 1:
        raise DomainError("the series form of G~ needs z >= 1")
    return cmath.exp(s / 2 * math.log(4 * z)) * specfun.hyper([-s / 2, -s / 2, 1.5], [2, 3], 1 / z)


def g_tilde_ode_residual(s, z, h: float = 1e-2) -> complex:
    """Residual of s(8+6s+s^2)V - 2(2+3s^2z+s(2+6z))V' - 4z(-3+s-3sz)V'' - 8(z-1)z^2V''' at V = G~.

    Derivatives are central differences; their O(h^2) error is removed by one
    Richardson step between h and h/2.
    """
    s = specfun.as_complex(s)
    z = float(z)
    return (4 * _ode_residual_fd(s, z, h / 2) - _ode_residual_fd(s, z, h)) / 3


def _ode_residual_fd(s: complex, z: float, h: float) -> complex:
    if z - 2 * h < 1:
        raise DomainError("stencil must stay in z >= 1")
    v = [g_tilde(s, z + j * h) for j in (-2, -1, 0, 1, 2)]
    v0 = v[2]
    v1 = (v[3] - v[1]) / (2 * h) - (v[4] - 2 * v[3] + 2 * v[1] - v[0]) / (12 * h)
    v2 = (v[3] - 2 * v[2] + v[1]) / h**2
    v3 = (v[4] - 2 * v[3] + 2 * v[1] - v[0]) / (2 * h**3)
    return (
        s * (8 + 6 * s + s * s) * v0
        - 2 * (2 + 3 * s * s * z + s * (2 + 6 * z)) * v1
        - 4 * z * (-3 + s - 3 * s * z) * v2
        - 8 * (z - 1) * z * z * v3
    )


def g_continued(s: float, k: float, eps: float, tol: float = 1e-11) -> complex:
    """(k + i eps)^s int_0^2 p_T1(v) 2F1(-s/2, -s/2; 1; v^2/(k + i eps)^2) dv."""
    kc = complex(k, eps)
    a = -s / 2
    spec = QuadratureSpec(tol, tol, max_subdivisions=4000, endpoint_rule="sqrt-singular")

    def integrand(v):
        v = np.atleast_1d(v)
        w = dens.p_t1(v)
        return np.array([wi * specfun.gauss_2f1(a, a, 1, (vi / kc) ** 2) for vi, wi in zip(v, w)])

    pieces = [(0.0, min(k, 2.0)), (min(k, 2.0), 2.0)]
    total = 0j
    for lo, hi in pieces:
        if hi > lo:
            re = require(integrate(lambda v: integrand(v).real, lo, hi, spec), "G real part")
            im = require(integrate(lambda v: integrand(v).imag, lo, hi, spec), "G imaginary part")
            total += complex(re, im)
    return cmath.exp(s * cmath.log(kc)) * total


def g_boundary_value(s: float, k: float, eps_ladder=(1e-2, 1e-3, 1e-4)) -> complex:
    """Limit eps -> 0+ of g_continued, Richardson-extrapolated linearly in eps."""
    vals = [g_continued(s, k, e) for e in eps_ladder]
    e1, e2 = eps_ladder[-2:]
    v1, v2 = vals[-2:]
    return (e1 * v2 - e2 * v1) / (e1 - e2)


def zd_from_boundary(s: float, k: float) -> float:
    """Re G(k) - cot(pi s/2) Im G(k) for real s > 0 not an odd integer."""
    if s <= 0 or _is_odd_integer(complex(s)):
        raise DomainError("needs real s > 0 not an odd integer")
    g = g_boundary_value(s, k)
    return g.real - g.imag / math.tan(PI * s / 2)


# ---------------------------------------------------------------------------
# moment integrals (definition of Z_D)
# ---------------------------------------------------------------------------


def zd_xyk_quadrature(s: float, k: float, tol: float = 1e-11) -> float:
    """int_0^2 p_T1(v) E|k + v e^{i phi}|^s dv for real s.

    The inner expectation is the u^s moment of p_cond(u | v, k); it is taken
    over the uniform angle phi in [0, pi], where it is smooth, because
    evaluating p_cond in u loses digits next to narrow supports.  The outer
    integral splits at v = k where |k + v e^{i phi}| can vanish.
    """
    k = _k(k)
    s = float(s)
    inner_spec = QuadratureSpec(tol / 10, tol / 10, max_subdivisions=400)

    def inner(v: float) -> float:
        def integrand(phi):
            return np.abs(k + v * np.exp(1j * phi)) ** s / PI

        return require(integrate(integrand, 0.0, PI, inner_spec), "inner moment")

    def outer(v):
        v = np.atleast_1d(v)
        return np.array([inner(float(x)) for x in v]) * dens.p_t1(v)

    spec = QuadratureSpec(tol, tol, max_subdivisions=2000)
    cuts = sorted({0.0, 2.0} | ({k} if 0 < k < 2 else set()))
    return math.fsum(
        require(integrate(outer, a, b, spec), "outer moment") for a, b in zip(cuts[:-1], cuts[1:])
    )


# ---------------------------------------------------------------------------
# zeros of Z_D(s, x + y + k)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ZeroBox:
    re_min: float
    re_max: float
    im_min: float
    im_max: float
    grid_density: int = 4

    def __post_init__(self):
        if not (self.re_min < self.re_max and self.im_min < self.im_max):
            raise InvalidSpecError("ZeroBox needs re_min < re_max and im_min < im_max")
        if self.grid_density < 1:
            raise InvalidSpecError("grid_density must be a positive int")

    def contains(self, s: complex, pad: float = 0.0) -> bool:
        return (
            self.re_min - pad <= s.real <= self.re_max + pad and self.im_min - pad <= s.imag <= self.im_max + pad
        )


@dataclass(frozen=True)
class ZeroRecord:
    location: complex
    residual: float
    box: ZeroBox


def _newton(f, s0: complex, max_iter: int = 60) -> complex:
    """Newton with a central-difference derivative.

    Stops at a step below 1e-14 relative, or once |f| has stalled for three
    iterations at a point where the step is already below 1e-6 relative
    (the evaluation noise floor for large |Im s|).
    """
    s = s0
    best, best_val = s0, math.inf
    stall = 0
    for _ in range(max_iter):
        h = 1e-6 * max(1.0, abs(s))
        fs = f(s)
        if abs(fs) < best_val:
            best, best_val, stall = s, abs(fs), 0
        else:
            stall += 1
        df = (f(s + h) - f(s - h)) / (2 * h)
        if df == 0:
            break
        step = fs / df
        if stall >= 3 and abs(step) < 1e-6 * max(1.0, abs(s)):
            return best
        s = s - step
        if abs(step) < 1e-14 * max(1.0, abs(s)):
            return s
    raise ConvergenceError(f"Newton did not converge from {s0}")


def winding_number(f, box: ZeroBox, max_depth: int = 14) -> int:
    """Zero count inside the box from the change of arg f along its boundary."""
    corners = [
        complex(box.re_min, box.im_min),
        complex(box.re_max, box.im_min),
        complex(box.re_max, box.im_max),
        complex(box.re_min, box.im_max),
    ]
    total = 0.0
    for a, b in zip(corners, corners[1:] + corners[:1]):
        n = max(8, int(abs(b - a) * 4 * box.grid_density))
        pts = [a + (b - a) * j / n for j in range(n + 1)]
        vals = [f(p) for p in pts]
        for j in range(n):
            total += _arg_change(f, pts[j], pts[j + 1], vals[j], vals[j + 1], max_depth)
    w = total / (2 * PI)
    if abs(w - round(w)) > 0.1:
        raise ZeroCountMismatch(f"winding number {w:.3f} is not near an integer")
    return int(round(w))


def _arg_change(f, a, b, fa, fb, depth):
    if fa == 0 or fb == 0:
        raise ZeroCountMismatch("zero on the box boundary")
    d = cmath.phase(fb / fa)
    if abs(d) < PI / 4 or depth == 0:
        return d
    m = 0.5 * (a + b)
    fm = f(m)
    return _arg_change(f, a, m, fa, fm, depth - 1) + _arg_change(f, m, b, fm, fb, depth - 1)


def _grid_seeds(f, box: ZeroBox, density: int):
    nx = max(3, int(math.ceil((box.re_max - box.re_min) * density)) + 1)
    ny = max(3, int(math.ceil((box.im_max - box.im_min) * density)) + 1)
    xs = np.linspace(box.re_min, box.re_max, nx)
    ys = np.linspace(box.im_min, box.im_max, ny)
    mag = np.array([[abs(f(complex(x, y))) for x in xs] for y in ys])
    padded = np.pad(mag, 1, constant_values=np.inf)
    seeds = []
    for j in range(ny):
        for i in range(nx):
            window = padded[j : j + 3, i : i + 3]
            if mag[j, i] <= window.min():
                seeds.append(complex(xs[i], ys[j]))
    return seeds


def find_zeros(
    box: ZeroBox,
    k=1.0,
    residual_tol: float = 1e-10,
    check_winding: bool = True,
    max_refinements: int = 3,
) -> list[ZeroRecord]:
    """All zeros of Z_D(s, x + y + k) in the box, sorted by imaginary part.

    Seeds are local minima of |Z_D| on a grid, refined by Newton; the count
    is audited against the boundary winding number, with the grid doubled
    until they match.
    """
    kk = _k(k)
    if kk >= 2:
        raise DomainError("zero search uses the k < 2 expression")

    def f(s):
        return zd_xyk(s, kk)

    expected = winding_number(f, box) if check_winding else None
    density = box.grid_density
    found: list[complex] = []
    for _ in range(max_refinements + 1):
        for seed in _grid_seeds(f, box, density):
            try:
                root = _newton(f, seed)
            except ConvergenceError:
                continue
            if not box.contains(root):
                continue
            if all(abs(root - r) > 1e-7 * max(1.0, abs(root)) for r in found):
                found.append(root)
        if expected is None or len(found) == expected:
            break
        density *= 2
    if expected is not None and len(found) != expected:
        raise ZeroCountMismatch(f"found {len(found)} zeros but the winding number is {expected}")
    records = []
    for r in sorted(found, key=lambda z: (z.imag, z.real)):
        res = abs(f(r))
        if res > residual_tol:
            raise ConvergenceError(f"zero at {r} has residual {res:.3g} above {residual_tol:.3g}")
        records.append(ZeroRecord(r, res, box))
    return records


def zd_grid(k, re_values, im_values) -> np.ndarray:
    """Z_D(s, x + y + k) on the grid re_values x im_values (rows indexed by im)."""
    kk = _k(k)
    return np.array([[zd_xyk(complex(x, y), kk) for x in re_values] for y in im_values])
