"""Dedekind eta, the eta quotient x(tau), and modular evaluations of c_0(k).

x(tau) = 16 (eta(2tau) eta(8tau)^2 / eta(4tau)^3)^4 maps the imaginary axis
(i infinity, 0) onto (0, 4).  For 0 < k < 4, t_k > 0 solves x(i/(4 t_k)) = k,
and c_0(k) = int_k^4 F(t) dt has the q-series and lattice-sum expressions
implemented here, with q_k = exp(-pi t_k).
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .densities import FamilyParamK
from .errors import ConvergenceError, DomainError, InvalidSpecError

PI = math.pi


class TruncationWarning(RuntimeWarning):
    """Emitted when a truncated series has a tail bound above 1e-12."""


def _tau(tau) -> complex:
    tau = complex(tau)
    if not tau.imag > 0:
        raise DomainError("eta needs Im(tau) > 0")
    return tau


def _eta_product(tau: complex) -> complex:
    q = cmath.exp(2j * PI * tau)
    prod = 1 + 0j
    qn = q
    while abs(qn) > 1e-18:
        prod *= 1 - qn
        qn *= q
    return cmath.exp(1j * PI * tau / 12) * prod


def eta(tau) -> complex:
    """Dedekind eta e^{pi i tau/12} prod (1 - q^n), q = e^{2 pi i tau}.

    tau is first moved into the fundamental domain with eta(tau + 1) =
    e^{pi i/12} eta(tau) and eta(-1/tau) = sqrt(-i tau) eta(tau), so the
    product always runs with |q| <= e^{-pi sqrt 3}.
    """
    tau = _tau(tau)
    factor = 1 + 0j
    for _ in range(200):
        n = round(tau.real)
        if n:
            tau -= n
            factor *= cmath.exp(1j * PI * n / 12)
        if abs(tau) >= 1.0:
            break
        factor /= cmath.sqrt(-1j * tau)
        tau = -1 / tau
    else:
        raise ConvergenceError("eta argument reduction did not terminate")
    return factor * _eta_product(tau)


def x_of_tau(tau) -> complex:
    """16 (eta(2tau) eta(8tau)^2 / eta(4tau)^3)^4."""
    tau = _tau(tau)
    return 16 * (eta(2 * tau) * eta(8 * tau) ** 2 / eta(4 * tau) ** 3) ** 4


def dx_dtau(tau) -> complex:
    """2 pi i 16 (eta(2tau)^3 eta(8tau)^2 / eta(4tau)^4)^4."""
    tau = _tau(tau)
    return 2j * PI * 16 * (eta(2 * tau) ** 3 * eta(8 * tau) ** 2 / eta(4 * tau) ** 4) ** 4


def x_qseries(q: complex, n_terms: int = 5) -> complex:
    """Leading terms 16q - 64q^3 + 224q^5 - 640q^7 + 1616q^9 of x."""
    coeffs = (16, -64, 224, -640, 1616)[:n_terms]
    return sum(c * q ** (2 * j + 1) for j, c in enumerate(coeffs))


@dataclass(frozen=True)
class ModularPoint:
    t_k: float
    q_k: float
    k: float

    def __post_init__(self):
        if not (self.t_k > 0 and 0 < self.q_k < 1 and 0 < self.k < 4):
            raise DomainError("ModularPoint needs t_k > 0, 0 < q_k < 1, 0 < k < 4")


@dataclass(frozen=True)
class LatticeCutoff:
    max_abs_index: int

    def __post_init__(self):
        if self.max_abs_index < 3:
            raise InvalidSpecError("lattice cutoff must be >= 3")


def _x_imag(t: float) -> float:
    return x_of_tau(1j / (4 * t)).real


def solve_tk(k) -> ModularPoint:
    """t_k > 0 with x(i/(4 t_k)) = k; x(i/(4t)) increases from 0 to 4 with t."""
    k = k.k if isinstance(k, FamilyParamK) else float(k)
    if not 0 < k < 4:
        raise DomainError("solve_tk needs 0 < k < 4")
    lo, hi = 0.0, 0.0  # in log t
    while _x_imag(math.exp(lo)) > k:
        lo -= 1.0
        if lo < -60:
            raise ConvergenceError("could not bracket t_k from below")
    while _x_imag(math.exp(hi)) < k:
        hi += 1.0
        if hi > 60:
            raise ConvergenceError("could not bracket t_k from above")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if _x_imag(math.exp(mid)) < k:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-16:
            break
    t = math.exp(0.5 * (lo + hi))
    if abs(_x_imag(t) - k) > 1e-12 * max(1.0, k):
        raise ConvergenceError(f"solve_tk residual {abs(_x_imag(t) - k):.3g}")
    return ModularPoint(t, math.exp(-PI * t), k)


def chi4(n: int) -> int:
    """The character mod 4: 1 -> +1, 3 -> -1, even -> 0."""
    return (0, 1, 0, -1)[n % 4]


def _c0_coefficients(n_max: int) -> np.ndarray:
    """b_n = sum over d f = n, f odd, of (d/f)(-1)^{d+1} chi4(f)."""
    b = np.zeros(n_max + 1)
    for f in range(1, n_max + 1, 2):
        cf = chi4(f)
        for d in range(1, n_max // f + 1):
            b[d * f] += cf * d / f * (1 if d % 2 else -1)
    return b


def c0_qseries(pt: ModularPoint, terms: int | None = None) -> float:
    """c_0(k) = (16/pi) sum_{d, f >= 1, f odd} (d/f)(-1)^{d+1} chi4(f) q_k^{df}."""
    q = pt.q_k
    if terms is None:
        terms = max(8, int(math.ceil(math.log(1e-18) / math.log(q))) + 1)
    if terms < 1:
        raise InvalidSpecError("terms must be positive")
    b = _c0_coefficients(terms)
    n = np.arange(terms + 1)
    powers = q ** n.astype(float)
    val = 16 / PI * math.fsum(b[1:] * powers[1:])
    # |b_n| <= n d(n) <= n^2
    tail = 16 / PI * sum(m * m * q**m for m in range(terms + 1, terms + 200))
    if tail > 1e-12:
        warnings.warn(f"c0 q-series tail bound {tail:.3g} exceeds 1e-12", TruncationWarning, stacklevel=2)
    return val


def _odd_tail(a: np.ndarray, n0: int) -> np.ndarray:
    """sum_{j >= 0} 1/(a + n0 + 2j)^2 by Euler-Maclaurin with step 2 (|a + n0| large)."""
    x = a + n0
    return 0.5 / x + 0.5 / x**2 + (2 / 12) * 2 / x**3 - (8 / 720) * 24 / x**5 + (32 / 30240) * 720 / x**7


def c0_lattice(pt: ModularPoint, cutoff: LatticeCutoff | int = 200, tail_correction: bool = True) -> complex:
    """(8i/pi^3) sum over odd m, n of e^{-2 pi i m/4} / ((m tau_k + n)^2 m), tau_k = i t_k.

    Terms with |m|, |n| <= cutoff are summed explicitly, inner sum over n
    first.  The bare truncation converges like 1/cutoff because each inner
    n-sum is cut short; with ``tail_correction`` the two n-tails beyond the
    cutoff are added from the Euler-Maclaurin expansion, after which the
    m-sum converges geometrically.
    """
    if isinstance(cutoff, int):
        cutoff = LatticeCutoff(cutoff)
    n_max = cutoff.max_abs_index
    idx = np.arange(-n_max, n_max + 1)
    odd = idx[idx % 2 != 0]
    tau = 1j * pt.t_k
    m = odd.astype(float)
    n = odd[None, :].astype(float)
    mt = (m * tau)[:, None]
    inner = (1.0 / (mt + n) ** 2).sum(axis=1)
    if tail_correction:
        first = odd[-1] + 2
        inner = inner + _odd_tail(m * tau, first) + _odd_tail(-m * tau, first)
    terms = np.exp(-2j * PI * m / 4) * inner / m
    total = complex(math.fsum(terms.real), math.fsum(terms.imag))
    return 8j / PI**3 * total


def eisenstein_coeffs(n_max: int) -> list[int]:
    """a_n = (-1)^n sum_{d | n} d^2 (-1)^{n/d} chi4(n/d), n = 1..n_max."""
    if n_max < 1:
        raise InvalidSpecError("n_max must be >= 1")
    out = []
    for n in range(1, n_max + 1):
        s = 0
        for d in range(1, n + 1):
            if n % d == 0:
                e = n // d
                s += d * d * (-1) ** e * chi4(e)
        out.append((-1) ** n * s)
    return out


def _series_mul(a: list[int], b: list[int], n: int) -> list[int]:
    out = [0] * n
    for i, ai in enumerate(a[:n]):
        if ai:
            for j, bj in enumerate(b[: n - i]):
                out[i + j] += ai * bj
    return out


def _euler_power(step: int, power: int, n: int) -> list[int]:
    """prod_{m >= 1} (1 - q^{step m})^power truncated to n coefficients (power may be negative)."""
    out = [1] + [0] * (n - 1)
    for m in range(step, n, step):
        if power >= 0:
            factor = [0] * n
            for j in range(power + 1):
                if m * j < n:
                    factor[m * j] = math.comb(power, j) * (-1) ** j
        else:
            # (1 - x)^{-p} = sum C(p + j - 1, j) x^j
            p = -power
            factor = [0] * n
            for j in range(0, (n - 1) // m + 1):
                factor[m * j] = math.comb(p + j - 1, j)
        out = _series_mul(out, factor, n)
    return out


def eta_quotient_coeffs(n_max: int) -> list[int]:
    """q-expansion coefficients a_1..a_{n_max} of (eta(4tau)^4 eta(tau)^2 / eta(2tau)^3)^2 = q prod(...)."""
    if n_max < 1:
        raise InvalidSpecError("n_max must be >= 1")
    n = n_max  # coefficient of q^{j+1} sits at index j
    series = _euler_power(4, 8, n)
    series = _series_mul(series, _euler_power(1, 4, n), n)
    series = _series_mul(series, _euler_power(2, -6, n), n)
    return series
