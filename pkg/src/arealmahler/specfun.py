"""Complex special functions: Gamma, pFq, Gauss 2F1, K/E, Li2, Bloch-Wigner, L-values.

Everything works in IEEE double precision on Python ``complex`` scalars (the
``ComplexValue`` of the rest of the package).  The elliptic integrals also
accept numpy arrays because the density integrals evaluate them on whole
quadrature panels at once.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import (
    BranchCutError,
    ConvergenceError,
    DomainError,
    InvalidSpecError,
    NonFiniteError,
    PoleError,
)

EPS = 2.220446049250313e-16
PI = math.pi

# Lanczos approximation, g = 7, n = 9.
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_LOG_SQRT_2PI = 0.5 * math.log(2.0 * PI)

# B_2, B_4, ..., B_20
_BERNOULLI_EVEN = (
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
)


def as_complex(z) -> complex:
    """Coerce to ``complex`` and refuse NaN/inf."""
    w = complex(z)
    if not (math.isfinite(w.real) and math.isfinite(w.imag)):
        raise NonFiniteError(f"non-finite value {w!r}")
    return w


def _check_finite(w: complex, what: str) -> complex:
    if not (math.isfinite(w.real) and math.isfinite(w.imag)):
        raise NonFiniteError(f"{what} evaluated to {w!r}")
    return w


def _nonpositive_integer(z: complex, tol: float = 0.0) -> bool:
    if abs(z.imag) > tol:
        return False
    r = round(z.real)
    return r <= 0 and abs(z.real - r) <= tol


# ---------------------------------------------------------------------------
# Gamma family
# ---------------------------------------------------------------------------


def _lanczos_sum(z: complex) -> complex:
    # z is the shifted argument (Gamma(z + 1) form), Re(z) >= -1/2
    x = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        x += _LANCZOS_COEF[i] / (z + i)
    return x


def loggamma(z) -> complex:
    """A logarithm of Gamma(z) (branch unspecified; use differences or exp)."""
    z = as_complex(z)
    if _nonpositive_integer(z, 1e-14):
        raise PoleError(f"Gamma has a pole at {z}")
    if z.real < 0.5:
        # log Gamma(z) = log pi - log sin(pi z) - log Gamma(1 - z)
        return math.log(PI) - cmath.log(cmath.sin(PI * z)) - loggamma(1.0 - z)
    z -= 1.0
    t = z + _LANCZOS_G + 0.5
    return _LOG_SQRT_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(_lanczos_sum(z))


def gamma(z) -> complex:
    """Gamma function with relative error around 1e-14 on |z| <= 50."""
    z = as_complex(z)
    if _nonpositive_integer(z, 1e-14):
        raise PoleError(f"Gamma has a pole at {z}")
    if z.real < 0.5:
        return _check_finite(PI / (cmath.sin(PI * z) * gamma(1.0 - z)), "gamma")
    if z.imag == 0.0 and z.real == round(z.real) and z.real <= 171:
        return complex(math.factorial(int(z.real) - 1))
    if abs(z) > 140:
        return _check_finite(cmath.exp(loggamma(z)), "gamma")
    z -= 1.0
    t = z + _LANCZOS_G + 0.5
    return _check_finite(math.sqrt(2 * PI) * t ** (z + 0.5) * cmath.exp(-t) * _lanczos_sum(z), "gamma")


def rgamma(z) -> complex:
    """1/Gamma(z), entire: exactly zero at the poles of Gamma."""
    z = as_complex(z)
    if _nonpositive_integer(z):
        return 0j
    if z.real < 0.5:
        return cmath.sin(PI * z) * gamma(1.0 - z) / PI
    return 1.0 / gamma(z)


def gamma_ratio(num: Sequence, den: Sequence) -> complex:
    """prod Gamma(num) / prod Gamma(den), robust to large imaginary parts.

    Poles in ``den`` give zero; poles in ``num`` raise PoleError.
    """
    num = [as_complex(a) for a in num]
    den = [as_complex(b) for b in den]
    for b in den:
        if _nonpositive_integer(b):
            return 0j
    for a in num:
        if _nonpositive_integer(a, 1e-14):
            raise PoleError(f"Gamma pole at {a} in numerator")
    big = max([abs(x.imag) for x in num + den] + [0.0]) > 20 or max(
        [abs(x) for x in num + den] + [0.0]
    ) > 100
    if not big:
        out = 1 + 0j
        for a in num:
            out *= gamma(a)
        for b in den:
            out /= gamma(b)
        return _check_finite(out, "gamma_ratio")
    s = sum(loggamma(a) for a in num) - sum(loggamma(b) for b in den)
    return _check_finite(cmath.exp(s), "gamma_ratio")


def digamma(z) -> complex:
    """psi(z) = Gamma'(z)/Gamma(z)."""
    z = as_complex(z)
    if _nonpositive_integer(z, 1e-14):
        raise PoleError(f"digamma has a pole at {z}")
    if z.real < 0.5:
        return digamma(1.0 - z) - PI / cmath.tan(PI * z)
    acc = 0j
    while abs(z) < 12.0:
        acc -= 1.0 / z
        z += 1.0
    z2 = 1.0 / (z * z)
    series = 0j
    p = z2
    for k, b in enumerate(_BERNOULLI_EVEN[:8], start=1):
        series += b / (2 * k) * p
        p *= z2
    return acc + cmath.log(z) - 0.5 / z - series


def pochhammer(a, n: int) -> complex:
    """Rising factorial (a)_n = a (a+1) ... (a+n-1)."""
    if n < 0:
        raise DomainError("pochhammer needs n >= 0")
    a = as_complex(a)
    out = 1 + 0j
    for j in range(n):
        out *= a + j
    return out


# ---------------------------------------------------------------------------
# Generalized hypergeometric series
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SeriesControl:
    max_terms: int = 20000
    tail_tol: float = 1e-16

    def __post_init__(self):
        if self.max_terms < 8:
            raise InvalidSpecError("max_terms must be >= 8")
        if not self.tail_tol > 0:
            raise InvalidSpecError("tail_tol must be positive")


DEFAULT_SERIES = SeriesControl()


@dataclass(frozen=True)
class HypergeometricSpec:
    """Parameters of pFq(upper; lower; argument)."""

    upper: tuple
    lower: tuple
    argument: complex = field(default=0j)

    def __post_init__(self):
        up = tuple(as_complex(a) for a in self.upper)
        lo = tuple(as_complex(b) for b in self.lower)
        z = as_complex(self.argument)
        for b in lo:
            if _nonpositive_integer(b):
                raise InvalidSpecError(f"lower parameter {b} is a non-positive integer")
        object.__setattr__(self, "upper", up)
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "argument", z)

    @property
    def p(self) -> int:
        return len(self.upper)

    @property
    def q(self) -> int:
        return len(self.lower)

    def terminating_degree(self) -> int | None:
        """Degree of the polynomial when an upper parameter is 0, -1, -2, ..."""
        degs = [int(-round(a.real)) for a in self.upper if _nonpositive_integer(a)]
        return min(degs) if degs else None

    def excess(self) -> complex:
        """Sum(lower) - Sum(upper); its real part governs convergence at |z| = 1."""
        return sum(self.lower, 0j) - sum(self.upper, 0j)


def _ratio(upper, lower, n: int) -> complex:
    num = 1 + 0j
    for a in upper:
        num *= a + n
    den = float(n + 1)
    for b in lower:
        den *= b + n
    return num / den


def _levin_u(terms: list, partial: list, n0: int, kmax: int, beta: float = 1.0):
    """Levin u-transform ladder; returns (best value, error estimate)."""
    best, best_err, prev = None, math.inf, None
    for k in range(1, kmax + 1):
        num = 0j
        den = 0j
        for j in range(k + 1):
            nj = n0 + j
            w = (beta + nj) * terms[nj]
            c = (-1) ** j * math.comb(k, j) * ((beta + nj) / (beta + n0 + k)) ** (k - 1)
            num += c * partial[nj] / w
            den += c / w
        val = num / den
        if prev is not None:
            err = abs(val - prev)
            if err < best_err:
                best, best_err = val, err
        prev = val
    return best, best_err


def _pfq_sum(spec: HypergeometricSpec, ctl: SeriesControl) -> tuple[complex, float]:
    a, b, z = spec.upper, spec.lower, spec.argument
    if z == 0:
        return 1 + 0j, 0.0
    deg = spec.terminating_degree()
    if deg is not None:
        # exact polynomial
        term = 1 + 0j
        total = [term]
        for n in range(deg):
            term *= _ratio(a, b, n) * z
            total.append(term)
        return math.fsum(t.real for t in total) + 1j * math.fsum(t.imag for t in total), 0.0
    p, q = spec.p, spec.q
    az = abs(z)
    if p > q + 1:
        raise ConvergenceError("pFq with p > q + 1 diverges for z != 0")
    if p == q + 1:
        if az > 1.0 + 1e-15:
            raise DomainError(f"|z| = {az} > 1: series for {p}F{q} diverges")
        if az >= 1.0 - 1e-15 and spec.excess().real <= 0:
            raise ConvergenceError("series at |z| = 1 needs Re(sum(lower) - sum(upper)) > 0")
        hump = max([abs(x) for x in a + b] + [1.0])
        if az >= 1.0 or hump + 40.0 / -math.log(az) > ctl.max_terms:
            return _pfq_levin(spec, ctl)
    return _pfq_direct(spec, ctl)


def _pfq_direct(spec, ctl):
    a, b, z = spec.upper, spec.lower, spec.argument
    az = abs(z)
    hump = int(max([abs(x) for x in a + b] + [1.0])) + 2
    term = 1 + 0j
    re_parts = [1.0]
    im_parts = [0.0]
    running = 1 + 0j
    small_streak = 0
    for n in range(ctl.max_terms):
        r = _ratio(a, b, n) * z
        term *= r
        re_parts.append(term.real)
        im_parts.append(term.imag)
        running += term
        if n < hump:
            continue
        rho = max(abs(r), az if spec.p == spec.q + 1 else 0.0) * (1.0 + 1.0 / (n + 1))
        if rho >= 1.0:
            continue
        tail = abs(term) * rho / (1.0 - rho)
        scale = max(abs(running), 1e-300)
        if tail <= ctl.tail_tol * scale or tail <= EPS * EPS * scale:
            small_streak += 1
            if small_streak >= 2:
                val = math.fsum(re_parts) + 1j * math.fsum(im_parts)
                return val, tail + EPS * max(abs(t) for t in (complex(x, y) for x, y in zip(re_parts[:64], im_parts[:64])))
        else:
            small_streak = 0
    raise ConvergenceError(f"pFq tail bound not reached within {ctl.max_terms} terms")


def _pfq_levin(spec, ctl):
    a, b, z = spec.upper, spec.lower, spec.argument
    hump = int(max([abs(x) for x in a + b] + [1.0]))
    n0 = min(hump, 40)
    kmax = 24
    nterms = n0 + kmax + 2
    terms = [1 + 0j]
    partial = [1 + 0j]
    for n in range(nterms):
        terms.append(terms[-1] * _ratio(a, b, n) * z)
        partial.append(partial[-1] + terms[-1])
    val, err = _levin_u(terms, partial, n0, kmax)
    # a second ladder from a shifted start gives an independent error check
    val2, err2 = _levin_u(terms, partial, n0 + 2, kmax - 2)
    err = max(err, abs(val - val2))
    tol = max(ctl.tail_tol, 1e-12) * max(abs(val), 1.0) * 100
    if abs(z) >= 1.0 - 1e-15:
        # logarithmic convergence on the unit circle caps double-precision Levin near 1e-11
        tol *= 10
    if not err <= tol:
        raise ConvergenceError(f"Levin acceleration unstable (error estimate {err:.3g})")
    return val, err


def pfq(spec: HypergeometricSpec, ctl: SeriesControl = DEFAULT_SERIES) -> complex:
    """Sum the generalized hypergeometric series described by ``spec``.

    Direct summation with a geometric tail bound inside |z| <= 0.9; near and
    on the unit circle (p = q + 1 only) the partial sums are accelerated
    with the Levin u-transform.
    """
    val, _ = _pfq_sum(spec, ctl)
    return _check_finite(val, "pfq")


def pfq_with_error(spec: HypergeometricSpec, ctl: SeriesControl = DEFAULT_SERIES):
    return _pfq_sum(spec, ctl)


def hyper(upper: Sequence, lower: Sequence, z, ctl: SeriesControl = DEFAULT_SERIES) -> complex:
    """Shorthand: ``hyper([a1, a2, a3], [b1, b2], z)``."""
    return pfq(HypergeometricSpec(tuple(upper), tuple(lower), z), ctl)


# ---------------------------------------------------------------------------
# Gauss 2F1 with analytic continuation
# ---------------------------------------------------------------------------

_SMALL = 0.55


def _f21_series(a, b, c, z):
    return pfq(HypergeometricSpec((a, b), (c,), z))


def _f21_gauss_at_one(a, b, c):
    if (c - a - b).real <= 0:
        raise ConvergenceError("2F1 at z = 1 requires Re(c - a - b) > 0")
    return gamma_ratio([c, c - a - b], [c - a, c - b])


def _f21_reflect(a, b, c, z):
    """Connection z -> 1 - z, including the logarithmic cases c - a - b in Z."""
    w = 1.0 - z
    m_c = c - a - b
    m = round(m_c.real)
    if abs(m_c.imag) < 1e-15 and abs(m_c.real - m) < 1e-13:
        return _f21_reflect_log(a, b, c, w, int(m))
    t1 = gamma_ratio([c, m_c], [c - a, c - b])
    t2 = gamma_ratio([c, -m_c], [a, b])
    out = 0j
    if t1 != 0:
        out += t1 * _f21_series(a, b, 1.0 - m_c, w)
    if t2 != 0:
        out += t2 * w**m_c * _f21_series(c - a, c - b, 1.0 + m_c, w)
    return out


def _log_tail(a, b, m, w, shift_a, shift_b):
    """sum_n (a')_n (b')_n / (n! (n+m)!) w^n [log w - psi(n+1) - psi(n+m+1) + psi(a'+n) + psi(b'+n)]"""
    ap, bp = a + shift_a, b + shift_b
    logw = cmath.log(w)
    psi1 = digamma(1.0)
    psim = digamma(m + 1.0)
    psia = digamma(ap) if not _nonpositive_integer(ap) else None
    psib = digamma(bp) if not _nonpositive_integer(bp) else None
    coef = 1.0 / math.factorial(m)
    total = 0j
    for n in range(4000):
        if psia is None or psib is None:
            raise DomainError("logarithmic 2F1 connection hit a digamma pole")
        term = coef * (logw - psi1 - psim + psia + psib)
        total += term
        if n > 4 and abs(term) < EPS * 1e-2 * max(abs(total), 1e-300):
            return total
        coef *= (ap + n) * (bp + n) * w / ((n + 1) * (n + m + 1))
        psi1 += 1.0 / (n + 1)
        psim += 1.0 / (n + m + 1)
        psia = psia + 1.0 / (ap + n) if ap + n != 0 else None
        psib = psib + 1.0 / (bp + n) if bp + n != 0 else None
    raise ConvergenceError("logarithmic 2F1 connection series did not converge")


def _f21_reflect_log(a, b, c, w, m):
    if m >= 0:
        finite = 0j
        if m > 0:
            pre = gamma_ratio([m, a + b + m], [a + m, b + m])
            term = 1 + 0j
            for n in range(m):
                finite += term
                if n < m - 1:
                    term *= (a + n) * (b + n) * w / ((n + 1) * (1 - m + n))
            finite *= pre
        pre2 = gamma_ratio([a + b + m], [a, b])
        return finite - pre2 * (-w) ** m * _log_tail(a, b, m, w, m, m)
    k = -m
    finite = 0j
    pre = gamma_ratio([k, a + b - k], [a, b])
    term = 1 + 0j
    for n in range(k):
        finite += term
        if n < k - 1:
            term *= (a - k + n) * (b - k + n) * w / ((n + 1) * (1 - k + n))
    finite *= pre * w ** (-k)
    pre2 = gamma_ratio([a + b - k], [a - k, b - k])
    return finite - (-1) ** k * pre2 * _log_tail(a, b, k, w, 0, 0)


def _f21_pfaff(a, b, c, z, inner):
    return (1.0 - z) ** (-a) * inner(a, c - b, c, z / (z - 1.0))


def _f21_ode_path(a, b, c, z):
    """Continue 2F1 along a path by Taylor re-expansion of its ODE."""
    sgn = 1.0 if z.imag >= 0 else -1.0
    z0 = 0.4j * sgn
    w = _f21_series(a, b, c, z0)
    dw = a * b / c * _f21_series(a + 1, b + 1, c + 1, z0)
    pos = z0
    while True:
        rad = min(abs(pos), abs(1.0 - pos))
        step = z - pos
        h = 0.4 * rad
        if abs(step) > h:
            step = step / abs(step) * h
        w, dw = _f21_taylor_step(a, b, c, pos, w, dw, step)
        pos = pos + step
        if abs(z - pos) < 1e-15:
            return w


def _f21_taylor_step(a, b, c, z0, w, dw, h):
    p0 = z0 * (1.0 - z0)
    p1 = 1.0 - 2.0 * z0
    p2 = -1.0
    q0 = c - (a + b + 1.0) * z0
    q1 = -(a + b + 1.0)
    r = -a * b
    c0, c1 = w, dw
    val = c0 + c1 * h
    der = c1
    hp = h
    for n in range(0, 200):
        c2 = -((p1 * n * (n + 1) + q0 * (n + 1)) * c1 + (p2 * n * (n - 1) + q1 * n + r) * c0) / (
            p0 * (n + 2) * (n + 1)
        )
        der += (n + 2) * c2 * hp
        hp *= h
        val += c2 * hp
        c0, c1 = c1, c2
        if n > 6 and abs(c2 * hp) < EPS * 1e-3 * abs(val) and abs(c1 * hp / h) < EPS * 1e-3 * max(abs(val), 1):
            break
    return val, der


def gauss_2f1(a, b, c, z) -> complex:
    """Gauss hypergeometric function 2F1(a, b; c; z) on the plane cut along [1, inf).

    The argument is mapped by z/(z-1), 1-z or their composition 1/(1-z)
    to modulus below ~1/2 before summation; the 1-z connection handles the
    logarithmic cases c - a - b in Z explicitly.  Points where none of those
    maps helps (near exp(+-i pi/3)) are reached by Taylor re-expansion of
    the hypergeometric ODE along a path from a small argument.
    """
    a, b, c, z = (as_complex(x) for x in (a, b, c, z))
    if _nonpositive_integer(c):
        raise PoleError(f"2F1 lower parameter {c} is a non-positive integer")
    if _nonpositive_integer(a) or _nonpositive_integer(b):
        return _f21_series(a, b, c, z)
    if z == 1:
        return _f21_gauss_at_one(a, b, c)
    if z.imag == 0 and z.real > 1:
        raise BranchCutError(f"2F1 argument {z.real} lies on the cut [1, inf)")
    if z == 0:
        return 1 + 0j
    cand = {
        "direct": abs(z),
        "pfaff": abs(z / (z - 1.0)),
        "reflect": abs(1.0 - z),
        "inv1mz": 1.0 / abs(1.0 - z),
    }
    route = min(cand, key=cand.get)
    if cand[route] > _SMALL and cand["direct"] > _SMALL:
        # 0.9-ish moduli converge directly but slowly; the ODE path is quicker
        route = "ode"
    if route == "direct":
        val = _f21_series(a, b, c, z)
    elif route == "pfaff":
        val = _f21_pfaff(a, b, c, z, _f21_series)
    elif route == "reflect":
        val = _f21_reflect(a, b, c, z)
    elif route == "inv1mz":
        val = _f21_pfaff(a, b, c, z, _f21_reflect)
    else:
        val = _f21_ode_path(a, b, c, z)
    return _check_finite(val, "gauss_2f1")


# ---------------------------------------------------------------------------
# Complete elliptic integrals via the AGM
# ---------------------------------------------------------------------------


def agm(a, b):
    """Arithmetic-geometric mean of positive reals (vectorized)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    a, b = np.broadcast_arrays(a, b)
    a = a.copy()
    b = b.copy()
    for _ in range(64):
        an = 0.5 * (a + b)
        b = np.sqrt(a * b)
        a = an
        if np.all(np.abs(a - b) <= 4 * EPS * np.abs(a)):
            break
    return 0.5 * (a + b)


def _ke_from_kprime(kp):
    """(K, E) given the complementary modulus k' = sqrt(1 - m), vectorized."""
    kp = np.asarray(kp, dtype=float)
    a = np.ones_like(kp)
    b = kp.copy()
    m = (1.0 - kp) * (1.0 + kp)
    acc = 0.5 * m  # 2^{-1} c_0^2
    pw = 0.5
    for _ in range(64):
        c = 0.5 * (a - b)
        an = 0.5 * (a + b)
        b = np.sqrt(a * b)
        a = an
        pw *= 2.0
        acc = acc + pw * c * c
        if np.all(np.abs(c) <= 4 * EPS * np.abs(a)):
            break
    with np.errstate(divide="ignore"):
        k = PI / (2.0 * a)
    e = k * (1.0 - acc)
    return k, e


def _check_m(m, upper_open: bool):
    arr = np.asarray(m, dtype=float)
    bad = (arr < 0) | (arr >= 1 if upper_open else arr > 1) | ~np.isfinite(arr)
    if np.any(bad):
        raise DomainError("elliptic parameter m outside its domain")
    return arr


def elliptic_k(m):
    """Complete elliptic integral of the first kind K(m), 0 <= m < 1."""
    arr = _check_m(m, upper_open=True)
    k, _ = _ke_from_kprime(np.sqrt(1.0 - arr))
    return float(k) if np.ndim(k) == 0 else k


def elliptic_e(m):
    """Complete elliptic integral of the second kind E(m), 0 <= m <= 1."""
    arr = _check_m(m, upper_open=False)
    kp = np.sqrt(1.0 - arr)
    _, e = _ke_from_kprime(np.where(kp == 0, 1.0, kp))
    e = np.where(kp == 0, 1.0, e)
    return float(e) if np.ndim(e) == 0 else e


# ---------------------------------------------------------------------------
# Dilogarithm and Bloch-Wigner
# ---------------------------------------------------------------------------

# Bernoulli numbers B_0..B_22 for the u = -log(1 - z) expansion
_BERN = (1.0, -0.5) + tuple(
    x for b in _BERNOULLI_EVEN + (854513.0 / 138.0,) for x in (b, 0.0)
)


def _li2_bernoulli(z: complex) -> complex:
    u = -cmath.log(1.0 - z)
    total = 0j
    up = u
    fact = 1.0
    for n in range(len(_BERN)):
        fact *= n + 1
        if _BERN[n] != 0.0:
            total += _BERN[n] * up / fact
        up *= u
    return total


def dilog(z) -> complex:
    """Principal dilogarithm Li2(z); on the cut (1, inf) the limit from above."""
    z = as_complex(z)
    if z == 0:
        return 0j
    if z == 1:
        return complex(PI * PI / 6)
    if z.imag == 0 and z.real > 1:
        x = z.real
        # Li2(x + i0) = pi^2/6 - log x (log(x-1) - i pi) - Li2(1 - x)
        return PI * PI / 6 - math.log(x) * complex(math.log(x - 1.0), -PI) - dilog(1.0 - x).real
    if abs(z) > 1.0:
        return -PI * PI / 6 - 0.5 * cmath.log(-z) ** 2 - dilog(1.0 / z)
    if z.real > 0.5:
        return PI * PI / 6 - cmath.log(z) * cmath.log(1.0 - z) - dilog(1.0 - z)
    return _li2_bernoulli(z)


def bloch_wigner(z) -> float:
    """Bloch-Wigner dilogarithm D(z) = Im Li2(z) + arg(1 - z) log|z|."""
    z = as_complex(z)
    if z == 0 or z == 1:
        return 0.0
    if z.imag == 0:
        return 0.0
    if abs(z) > 1:
        return -bloch_wigner(1.0 / z)
    return dilog(z).imag + cmath.phase(1.0 - z) * math.log(abs(z))


# ---------------------------------------------------------------------------
# Dirichlet L-values at s = 2
# ---------------------------------------------------------------------------


def hurwitz_zeta2(a: float, n_direct: int = 12) -> float:
    """zeta(2, a) by Euler-Maclaurin after ``n_direct`` explicit terms."""
    if a <= 0:
        raise DomainError("Hurwitz zeta needs a > 0")
    head = math.fsum(1.0 / (n + a) ** 2 for n in range(n_direct))
    x = n_direct + a
    tail = 1.0 / x + 0.5 / (x * x)
    p = 1.0 / x**3
    for b in _BERNOULLI_EVEN:
        tail += b * p
        p /= x * x
    return head + tail


def l_chi4_2(n_terms: int = 24) -> float:
    """Catalan's constant sum (-1)^n/(2n+1)^2, Cohen-Villegas-Zagier acceleration."""
    d = (3.0 + math.sqrt(8.0)) ** n_terms
    d = 0.5 * (d + 1.0 / d)
    b = -1.0
    c = -d
    s = 0.0
    for k in range(n_terms):
        c = b - c
        s += c / (2 * k + 1) ** 2
        b = (k + n_terms) * (k - n_terms) * b / ((k + 0.5) * (k + 1.0))
    return s / d


def l_chi3_2(n_direct: int = 12) -> float:
    """L(chi_{-3}, 2) = (zeta(2, 1/3) - zeta(2, 2/3)) / 9."""
    return (hurwitz_zeta2(1.0 / 3.0, n_direct) - hurwitz_zeta2(2.0 / 3.0, n_direct)) / 9.0
