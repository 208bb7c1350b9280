"""Classical and areal Mahler measures of x + y + k, (x+1)(y+1) + kz and univariate polynomials.

Every quantity has at least two independent evaluation routes:

* x + y + k, classical: Cassaigne-Maillot dilogarithm form (``cm``) or the
  3F2 series (``hyp``).
* x + y + k, areal: 3F2 series (``hyp3f2``), classical measure minus the
  elementary correction (``difference``, ``dilog``), or the one-dimensional
  density integral (``direct``).
* Q_k = (x+1)(y+1) + kz, areal: the assembled closed form in c_0, F and G
  (``thm12``) or the double integral against the density p_U (``density``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import densities as dens
from . import specfun
from .errors import ConvergenceError, DomainError, InvalidSpecError
from .quadrature import QuadratureSpec, integrate, require

PI = math.pi

METHODS = (
    "cassaigne-maillot",
    "hypergeometric",
    "difference-thm",
    "density-route",
    "jensen-roots",
    "pritsker-roots",
    "shortcut",
)


@dataclass(frozen=True)
class MeasureValue:
    value: float
    method: str

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise ConvergenceError(f"non-finite measure from {self.method}")
        if self.method not in METHODS:
            raise InvalidSpecError(f"unknown method tag {self.method!r}")

    def __float__(self):
        return self.value


def _k(k) -> float:
    if isinstance(k, dens.FamilyParamK):
        return k.k
    if isinstance(k, complex):
        # both families only see |k|
        return abs(k)
    k = float(k)
    if not math.isfinite(k):
        raise DomainError("k must be finite")
    return abs(k)


# ---------------------------------------------------------------------------
# x + y + k
# ---------------------------------------------------------------------------


def xyk_correction(k: float) -> float:
    """[k sqrt(4 - k^2)(10 + k^2) + (8 - 16k^2) arccos(k/2)] / (16 pi), 0 <= k <= 2."""
    k = _k(k)
    if k > 2:
        raise DomainError("the x + y + k correction term lives on [0, 2]")
    return (k * math.sqrt((2 - k) * (2 + k)) * (10 + k * k) + (8 - 16 * k * k) * math.acos(0.5 * k)) / (
        16 * PI
    )


def _m_xyk_cm(k: float) -> float:
    if k == 0:
        return 0.0
    a = math.asin(0.5 * k)
    return (2 * math.log(k) * a + specfun.bloch_wigner(complex(math.cos(2 * a), math.sin(2 * a)))) / PI


def _m_xyk_hyp(k: float) -> float:
    val = specfun.hyper([0.5, 0.5, 0.5], [1.5, 1.5], k * k / 4)
    return k / PI * val.real


def m_xyk(k, route: str = "cm") -> MeasureValue:
    """Mahler measure of x + y + k (log k for k >= 2)."""
    k = _k(k)
    if route not in ("cm", "hyp"):
        raise InvalidSpecError(f"unknown route {route!r}")
    method = "cassaigne-maillot" if route == "cm" else "hypergeometric"
    if k >= 2:
        return MeasureValue(math.log(k), method)
    return MeasureValue(_m_xyk_cm(k) if route == "cm" else _m_xyk_hyp(k), method)


def _md_xyk_direct(k: float, tol: float = 1e-13) -> float:
    if k == 0:
        # limit k -> 0 of log k + int_k^2 p_T1(t) log(t/k) dt
        spec = QuadratureSpec(tol, tol, endpoint_rule="sqrt-singular")
        return require(integrate(lambda t: dens.p_t1(t) * np.log(np.maximum(t, 1e-300)), 0.0, 2.0, spec))
    spec = QuadratureSpec(tol, tol, endpoint_rule="sqrt-singular")
    r = integrate(lambda t: dens.p_t1(t) * np.log(t / k), k, 2.0, spec)
    return math.log(k) + require(r, "direct areal integral")


def md_xyk(k, route: str = "hyp3f2") -> MeasureValue:
    """Areal Mahler measure of x + y + k.

    Routes: ``hyp3f2`` (3F2 series), ``difference`` (hypergeometric m minus the
    elementary correction), ``dilog`` (dilogarithm m minus the correction),
    ``direct`` (log k + int_k^2 p_T1(t) log(t/k) dt).
    """
    k = _k(k)
    routes = {
        "hyp3f2": "hypergeometric",
        "difference": "difference-thm",
        "dilog": "cassaigne-maillot",
        "direct": "density-route",
    }
    if route not in routes:
        raise InvalidSpecError(f"unknown route {route!r}")
    if k >= 2:
        return MeasureValue(math.log(k), routes[route])
    if route == "hyp3f2":
        f = specfun.hyper([-0.5, 0.5, 1.5], [2.5, 2.5], k * k / 4).real
        val = -4 * k**3 / (9 * PI) * f + k * k / 2 - 0.25
    elif route == "difference":
        val = _m_xyk_hyp(k) - xyk_correction(k)
    elif route == "dilog":
        val = _m_xyk_cm(k) - xyk_correction(k)
    else:
        val = _md_xyk_direct(k)
    return MeasureValue(val, routes[route])


# ---------------------------------------------------------------------------
# Q_k = (x+1)(y+1) + kz
# ---------------------------------------------------------------------------


def m_qk(k, tol: float = dens.DEFAULT_TOL) -> MeasureValue:
    """Mahler measure of (x+1)(y+1) + kz: log k + int_k^4 log(t/k) F(t) dt."""
    k = _k(k)
    if k == 0:
        raise DomainError("m(Q_k) needs k > 0")
    if k >= 4:
        return MeasureValue(math.log(k), "density-route")
    lk = math.log(k)
    return MeasureValue(lk + dens.coeff_d(0, k, tol) - lk * dens.coeff_c(0, k, tol), "density-route")


def qk_areal_excess(k, tol: float = dens.DEFAULT_TOL) -> float:
    """m_D(Q_k) - (k^2 + 8)/8 m(Q_k) from c_0, F and G."""
    k = _k(k)
    if k == 0:
        raise DomainError("needs k > 0")
    lk = math.log(k)
    base = 9 / (8 * k * k) - 0.5 - k * k / 8 * lk
    if k >= 4:
        return base
    c0 = dens.coeff_c(0, k, tol)
    fk = dens.f_density(k)
    gk = dens.g_density(k)
    return (
        base
        + c0 * (0.5 - 9 / (8 * k * k) + 5 * k * k / 32)
        + fk * (-9 / (8 * k) - 29 * k / 64 + 17 * k**3 / 128)
        + gk * (-9 / (8 * k) - 49 * k / 32)
    )


def _md_qk_density(k: float, tol: float) -> float:
    lk = math.log(k)
    head = 9 / (8 * k * k) - 0.5 + lk
    if k >= 4:
        return head

    def integrand(t):
        t = np.atleast_1d(t)
        pu = np.array([dens.p_u(float(x), tol * 1e-2) for x in t])
        return pu * (np.log(t) - t * t / (2 * k * k) + 0.5 - lk)

    spec = QuadratureSpec(tol, tol, max_subdivisions=400)
    return head + require(integrate(integrand, k, 4.0, spec), "p_U integral")


def md_qk(k, route: str = "thm12", tol: float | None = None) -> MeasureValue:
    """Areal Mahler measure of (x+1)(y+1) + kz.

    ``thm12`` assembles (k^2+8)/8 m(Q_k) plus the c_0/F/G closed form;
    ``density`` integrates p_U(t)(log t - t^2/(2k^2) + 1/2 - log k) over [k, 4].
    """
    k = _k(k)
    if k == 0:
        raise DomainError("m_D(Q_k) needs k > 0")
    if route == "thm12":
        t = dens.DEFAULT_TOL if tol is None else tol
        val = (k * k + 8) / 8 * m_qk(k, t).value + qk_areal_excess(k, t)
        return MeasureValue(val, "difference-thm")
    if route == "density":
        return MeasureValue(_md_qk_density(k, 1e-12 if tol is None else tol), "density-route")
    raise InvalidSpecError(f"unknown route {route!r}")


# ---------------------------------------------------------------------------
# univariate polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class UniPoly:
    """Polynomial with coefficients listed constant term first."""

    coefficients: tuple

    def __post_init__(self):
        c = tuple(specfun.as_complex(a) for a in self.coefficients)
        if not c or c[-1] == 0:
            raise InvalidSpecError("leading coefficient must be nonzero")
        object.__setattr__(self, "coefficients", c)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, z):
        return np.polyval(np.array(self.coefficients[::-1]), z)


def _aberth(coeffs_lead_first: np.ndarray, max_iter: int = 500):
    p = coeffs_lead_first / coeffs_lead_first[0]
    n = len(p) - 1
    dp = np.polyder(p)
    # Cauchy-type radius for the starting circle
    radius = 1 + np.max(np.abs(p[1:])) ** (1.0 / 1.0) if n > 0 else 1.0
    radius = min(radius, 2 * np.max(np.abs(p[1:]) ** (1.0 / np.arange(1, n + 1))) + 1e-3)
    z = radius * np.exp(1j * (2 * np.pi * np.arange(n) / n + 0.4))
    for _ in range(max_iter):
        pz = np.polyval(p, z)
        dpz = np.polyval(dp, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = pz / dpz
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1.0)
            s = (1.0 / diff).sum(axis=1) - 1.0
            corr = ratio / (1.0 - ratio * s)
        if not np.all(np.isfinite(corr)):
            return z, False
        z = z - corr
        if np.all(np.abs(corr) <= 4e-16 * np.maximum(1.0, np.abs(z))):
            return z, True
    return z, bool(np.all(np.abs(corr) <= 1e-10 * np.maximum(1.0, np.abs(z))))


def poly_roots(p: UniPoly) -> np.ndarray:
    """Roots by Aberth-Ehrlich iteration, falling back to companion-matrix eigenvalues."""
    c = np.array(p.coefficients, dtype=complex)
    zeros = 0
    while c[zeros] == 0:
        zeros += 1
    c = c[zeros:]
    roots = [np.zeros(zeros, dtype=complex)]
    if len(c) > 1:
        lead = c[::-1]
        z, ok = _aberth(lead)
        if not ok:
            z = np.roots(lead)
            if not np.all(np.isfinite(z)):
                raise ConvergenceError("polynomial root finder failed")
        roots.append(z)
    return np.concatenate(roots)


def _shortcut(p: UniPoly):
    c = np.abs(np.array(p.coefficients))
    if c[0] > 0 and c[0] >= c[1:].sum():
        return math.log(c[0])
    return None


def jensen_mahler(p: UniPoly, use_shortcut: bool = True) -> MeasureValue:
    """log|a| + sum log+ |alpha_j|."""
    if p.degree < 1:
        raise DomainError("Jensen's formula needs degree >= 1")
    if use_shortcut:
        s = _shortcut(p)
        if s is not None:
            return MeasureValue(s, "shortcut")
    r = np.abs(poly_roots(p))
    val = math.log(abs(p.coefficients[-1])) + math.fsum(np.log(r[r > 1]))
    return MeasureValue(val, "jensen-roots")


def pritsker_areal(p: UniPoly, use_shortcut: bool = True) -> MeasureValue:
    """Jensen's value plus (1/2) sum over roots inside the disk of (|alpha|^2 - 1)."""
    if p.degree < 1:
        raise DomainError("Pritsker's formula needs degree >= 1")
    if use_shortcut:
        s = _shortcut(p)
        if s is not None:
            return MeasureValue(s, "shortcut")
    r = np.abs(poly_roots(p))
    val = (
        math.log(abs(p.coefficients[-1]))
        + math.fsum(np.log(r[r > 1]))
        + 0.5 * math.fsum(r[r < 1] ** 2 - 1.0)
    )
    return MeasureValue(val, "pritsker-roots")


# ---------------------------------------------------------------------------
# Deninger cycle volumes
# ---------------------------------------------------------------------------


def deninger_volume(family: str, k) -> float:
    """Area of the Deninger cycle: qk-z -> c_0(k), qk-x -> 1 - c_0(k)/2, xyk-x -> 1 - arccos(k/2)/pi."""
    k = _k(k)
    if family in ("qk-z", "qk-x"):
        if not 0 < k < 4:
            raise DomainError("Q_k cycle volumes need 0 < k < 4")
        c0 = dens.coeff_c(0, k)
        return c0 if family == "qk-z" else 1.0 - 0.5 * c0
    if family == "xyk-x":
        if not 0 < k <= 2:
            raise DomainError("x + y + k cycle volume needs 0 < k <= 2")
        return 1.0 - math.acos(0.5 * k) / PI
    raise InvalidSpecError(f"unknown family {family!r}")


# ---------------------------------------------------------------------------
# named constants
# ---------------------------------------------------------------------------


def md_xyk_at_1_closed_form() -> float:
    """(3 sqrt3 / 4pi) L(chi_-3, 2) + 1/6 - 11 sqrt3 / (16 pi)."""
    r3 = math.sqrt(3.0)
    return 3 * r3 / (4 * PI) * specfun.l_chi3_2() + 1 / 6 - 11 * r3 / (16 * PI)


def md_xyk_at_sqrt2_closed_form() -> float:
    """L(chi_-4, 2)/pi + log 2 / 4 + 3/8 - 3/(2 pi)."""
    return specfun.l_chi4_2() / PI + math.log(2) / 4 + 3 / 8 - 3 / (2 * PI)


def m_xyk_at_sqrt2_closed_form() -> float:
    """L(chi_-4, 2)/pi + log 2 / 4."""
    return specfun.l_chi4_2() / PI + math.log(2) / 4


def hyp_combination_lhs(z: float) -> float:
    """3F2(1/2,1/2,1/2; 3/2,3/2; z) + (16z/9) 3F2(-1/2,1/2,3/2; 5/2,5/2; z)."""
    a = specfun.hyper([0.5, 0.5, 0.5], [1.5, 1.5], z)
    b = specfun.hyper([-0.5, 0.5, 1.5], [2.5, 2.5], z)
    return (a + 16 * z / 9 * b).real


def hyp_combination_rhs(z: float) -> float:
    """(2z+5) sqrt(1-z)/4 - (1-8z) Log(sqrt(1-z) + sqrt(-z)) / (4 sqrt(-z)), sqrt(-z) = i sqrt(z)."""
    sq = 1j * math.sqrt(z) if z > 0 else complex(math.sqrt(-z))
    if z == 0:
        return 5 / 4 - 1 / 4
    val = (2 * z + 5) * math.sqrt(1 - z) / 4 - (1 - 8 * z) * np.log(math.sqrt(1 - z) + sq) / (4 * sq)
    return complex(val).real


def c_sqrt2_hypergeometric() -> float:
    """The 4F3(...; 1) combination that equals log 2 / 4."""
    g34 = specfun.gamma(0.75).real
    g14 = specfun.gamma(0.25).real
    root = math.sqrt(2 * PI**3)
    a = specfun.hyper([0.25, 0.25, 0.75, 0.75], [0.5, 1.25, 1.25], 1.0).real
    b = specfun.hyper([0.75, 0.75, 1.25, 1.25], [1.5, 1.75, 1.75], 1.0).real
    return g34**2 / root * a - g14**2 / (72 * root) * b
