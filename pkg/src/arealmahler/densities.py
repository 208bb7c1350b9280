"""Random-walk densities and the integral functions built from F and G.

* p_t1(v): density of |X + Y| for X, Y uniform on the unit disk.
* p_s1(v): density of |X + Y| for X, Y uniform on the unit circle.
* p_cond(u, v, k): density of |X + Y + k e^{i phi}| given |X + Y| = v.
* f_density(t) = K(1 - t^2/16)/pi^2: density of |(1 + X)(1 + Y)| on the torus.
* g_density(t) = E(1 - t^2/16)/pi^2.
* p_u(t): density of |(1 + X)(1 + Y)| for disk-uniform X, Y.

Integrals over [k, 4] against F or G use u = 4 exp(-w), which turns the
logarithmic singularity of F at 0 into an exponentially decaying tail and
keeps every integrand smooth in w.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import specfun
from .errors import DomainError
from .quadrature import QuadratureSpec, integrate, require

PI = math.pi
DEFAULT_TOL = 1e-14


@dataclass(frozen=True)
class FamilyParamK:
    k: float

    def __post_init__(self):
        if not (self.k >= 0 and math.isfinite(self.k)):
            raise DomainError(f"family parameter k must be finite and >= 0, got {self.k}")


@dataclass(frozen=True)
class CoefficientIndex:
    n: int
    primed: bool = False

    def __post_init__(self):
        lo = -1 if self.primed else 0
        if not (lo <= self.n <= 4):
            raise DomainError(f"coefficient index n={self.n} outside [{lo}, 4]")


def _kval(k) -> float:
    return k.k if isinstance(k, FamilyParamK) else float(k)


# ---------------------------------------------------------------------------
# closed-form densities
# ---------------------------------------------------------------------------


def p_t1(v):
    """(v/pi)(2 pi - v sqrt(4 - v^2) - 4 arcsin(v/2)) on [0, 2]."""
    v = np.asarray(v, dtype=float)
    if np.any((v < 0) | (v > 2)):
        raise DomainError("p_t1 is supported on [0, 2]")
    out = v / PI * (2 * PI - v * np.sqrt(4.0 - v * v) - 4.0 * np.arcsin(0.5 * v))
    out = np.maximum(out, 0.0)
    return float(out) if out.ndim == 0 else out


def p_s1(v):
    """2 / (pi sqrt(4 - v^2)) on [0, 2)."""
    v = np.asarray(v, dtype=float)
    if np.any((v < 0) | (v >= 2)):
        raise DomainError("p_s1 is supported on [0, 2)")
    out = 2.0 / (PI * np.sqrt((2.0 - v) * (2.0 + v)))
    return float(out) if out.ndim == 0 else out


def p_cond(u, v: float, k) -> float:
    """2u / (pi sqrt(4k^2v^2 - (u^2 - v^2 - k^2)^2)) for |k - v| < u < k + v."""
    k = _kval(k)
    u = np.asarray(u, dtype=float)
    lo, hi = abs(k - v), k + v
    if np.any((u <= lo) | (u >= hi)):
        raise DomainError("p_cond evaluated outside the open support (|k - v|, k + v)")
    # factor the radicand to avoid cancellation near the endpoints
    rad = (u - lo) * (u + lo) * (hi - u) * (hi + u)
    out = 2.0 * u / (PI * np.sqrt(rad))
    return float(out) if out.ndim == 0 else out


def f_density(t):
    """F(t) = (1/2pi) 2F1(1/2, 1/2; 1; 1 - t^2/16) = K(1 - t^2/16)/pi^2, 0 < t <= 4."""
    t = np.asarray(t, dtype=float)
    if np.any((t <= 0) | (t > 4)):
        raise DomainError("F(t) is defined for 0 < t <= 4")
    kk, _ = specfun._ke_from_kprime(0.25 * t)
    out = kk / PI**2
    return float(out) if out.ndim == 0 else out


def g_density(t):
    """G(t) = (1/2pi) 2F1(1/2, -1/2; 1; 1 - t^2/16) = E(1 - t^2/16)/pi^2, 0 <= t <= 4."""
    t = np.asarray(t, dtype=float)
    if np.any((t < 0) | (t > 4)):
        raise DomainError("G(t) is defined for 0 <= t <= 4")
    safe = np.where(t == 0, 1.0, t)
    _, ee = specfun._ke_from_kprime(0.25 * safe)
    out = np.where(t == 0, 1.0, ee) / PI**2
    return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# integrals against F and G over [k, 4]
# ---------------------------------------------------------------------------


def _against(weight, k: float, density, tol: float) -> float:
    """int_k^4 weight(t) density(t) dt via t = 4 exp(-w)."""
    if not (0 < k <= 4):
        raise DomainError(f"need 0 < k <= 4, got {k}")
    if k == 4:
        return 0.0
    wmax = math.log(4.0 / k)

    def integrand(w):
        t = 4.0 * np.exp(-w)
        t = np.clip(t, k, 4.0)
        return weight(t) * density(t) * t

    spec = QuadratureSpec(abs_tol=tol, rel_tol=tol, max_subdivisions=4000)
    return require(integrate(integrand, 0.0, wmax, spec), "density integral")


def _density_for(primed: bool):
    return g_density if primed else f_density


@lru_cache(maxsize=4096)
def _coeff(kind: str, n: int, primed: bool, k: float, tol: float) -> float:
    dens = _density_for(primed)
    if kind == "c":
        return _against(lambda t: t ** (2 * n), k, dens, tol)
    return _against(lambda t: t ** (2 * n) * np.log(t), k, dens, tol)


def coeff_c(idx, k, tol: float = DEFAULT_TOL) -> float:
    """c_n(k) = int_k^4 t^{2n} F(t) dt; primed: G in place of F."""
    if isinstance(idx, int):
        idx = CoefficientIndex(idx)
    k = _kval(k)
    if k == 4:
        return 0.0
    if not 0 < k < 4:
        raise DomainError("coefficient integrals need 0 < k < 4")
    return _coeff("c", idx.n, idx.primed, float(k), float(tol))


def coeff_d(idx, k, tol: float = DEFAULT_TOL) -> float:
    """d_n(k) = int_k^4 t^{2n} log(t) F(t) dt; primed: G in place of F."""
    if isinstance(idx, int):
        idx = CoefficientIndex(idx)
    k = _kval(k)
    if k == 4:
        return 0.0
    if not 0 < k < 4:
        raise DomainError("coefficient integrals need 0 < k < 4")
    return _coeff("d", idx.n, idx.primed, float(k), float(tol))


def _check_t(t: float) -> float:
    t = float(t)
    if not 0 < t <= 4:
        raise DomainError("need 0 < t <= 4")
    return t


def theta_y0(t, tol: float = DEFAULT_TOL) -> float:
    """theta y0(t) = -int_t^4 F(u) du, where theta = t d/dt."""
    t = _check_t(t)
    return -coeff_c(0, t, tol) if t < 4 else 0.0


def y0(t, tol: float = DEFAULT_TOL) -> float:
    """Solution of theta^2 y = t F(t) with y(4) = y'(4) = 0."""
    t = _check_t(t)
    if t == 4:
        return 0.0
    return coeff_d(0, t, tol) + math.log(t) * theta_y0(t, tol)


def p_u(t, tol: float = DEFAULT_TOL):
    """p_U(t) = t int_t^4 log(u/t) F(u) du, the density of |(1+X)(1+Y)| on the bidisk."""
    arr = np.asarray(t, dtype=float)
    if np.any((arr <= 0) | (arr > 4)):
        raise DomainError("p_U is evaluated on (0, 4]")
    if arr.ndim == 0:
        tt = float(arr)
        if tt == 4:
            return 0.0
        return max(tt * _against(lambda u: np.log(u / tt), tt, f_density, tol), 0.0)
    return np.array([p_u(float(x), tol) for x in arr])
