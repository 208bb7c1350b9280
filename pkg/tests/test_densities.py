import math
import warnings

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose
from scipy.integrate import IntegrationWarning, quad

from arealmahler.densities import (
    CoefficientIndex,
    FamilyParamK,
    coeff_c,
    coeff_d,
    f_density,
    g_density,
    p_cond,
    p_s1,
    p_t1,
    p_u,
    theta_y0,
    y0,
)
from arealmahler.errors import DomainError
from arealmahler.modular import c0_qseries, solve_tk
from arealmahler.quadrature import QuadratureSpec, integrate, require
from arealmahler.specfun import gamma, gauss_2f1, pochhammer

SQRT = QuadratureSpec(1e-12, 1e-12, endpoint_rule="sqrt-singular")
# narrow supports |k - v| < u < k + v lose digits to rounding of u itself
COND = QuadratureSpec(1e-10, 1e-10, endpoint_rule="sqrt-singular")
LOG = QuadratureSpec(1e-14, 1e-14, endpoint_rule="log-singular")

mpmath.mp.dps = 30


def test_p_t1_examples():
    assert p_t1(0) == 0
    assert abs(p_t1(2)) < 1e-15
    # plug v = 1 into (v/pi)(2 pi - v sqrt(4 - v^2) - 4 arcsin(v/2))
    assert_allclose(p_t1(1), 4 / 3 - math.sqrt(3) / math.pi, rtol=1e-15)
    with pytest.raises(DomainError):
        p_t1(2.5)


@pytest.mark.parametrize("n", range(5))
def test_p_t1_even_moments(n):
    target = 4**n * pochhammer(1.5, n).real / ((n + 1) * pochhammer(3, n).real)
    val = require(integrate(lambda v: v ** (2 * n) * p_t1(v), 0, 2, SQRT))
    assert_allclose(val, target, rtol=1e-10, atol=1e-10)


def test_p_t1_against_disk_oracle():
    # P(|X + Y| <= 1) by mpmath: area of overlap of the unit disk with the disk |x + y| <= 1 around -y
    def overlap(r):
        # lens area between unit circles at distance r, radii 1 and 1
        return 2 * mpmath.acos(r / 2) - r / 2 * mpmath.sqrt(4 - r * r)

    cdf1 = mpmath.quad(lambda r: 2 * r * overlap(r) / mpmath.pi, [0, 1])
    val = require(integrate(p_t1, 0, 1, QuadratureSpec(1e-14, 1e-14)))
    assert_allclose(val, float(cdf1), rtol=1e-12)


def test_p_s1_examples():
    assert_allclose(p_s1(0), 1 / math.pi, rtol=1e-15)
    assert_allclose(p_s1(math.sqrt(2)), 2 / (math.pi * math.sqrt(2)), rtol=1e-15)
    assert_allclose(require(integrate(p_s1, 0, 2, SQRT)), 1, rtol=1e-13)
    with pytest.raises(DomainError):
        p_s1(2.0)


@pytest.mark.parametrize("s", [1, 2, 3])
def test_p_s1_mellin(s):
    target = (gamma(1 + s) / gamma(1 + s / 2) ** 2).real
    val = require(integrate(lambda v: v**s * p_s1(v), 0, 2, SQRT))
    assert_allclose(val, target, rtol=1e-10)


def test_p_cond_examples():
    assert_allclose(p_cond(3, 1, 3), 6 / (math.pi * math.sqrt(35)), rtol=1e-15)
    norm = require(integrate(lambda u: p_cond(u, 1.0, 3.0), 2, 4, SQRT))
    assert_allclose(norm, 1, rtol=1e-12)
    # E u^2 = 3^2 2F1(-1,-1;1;1/9) = 10
    second = require(integrate(lambda u: u * u * p_cond(u, 1.0, 3.0), 2, 4, SQRT))
    assert_allclose(second, 10, rtol=1e-12)
    assert_allclose(9 * gauss_2f1(-1, -1, 1, 1 / 9).real, 10, rtol=1e-15)
    with pytest.raises(DomainError):
        p_cond(2.0, 1.0, 3.0)


@settings(max_examples=50, deadline=None)
@given(st.floats(0.05, 2.0), st.floats(0.05, 4.0))
def test_p_cond_normalised(v, k):
    lo, hi = abs(k - v), k + v
    norm = require(integrate(lambda u: p_cond(u, v, FamilyParamK(k)), lo, hi, COND))
    assert abs(norm - 1) <= 1e-10


def test_f_density_examples():
    assert_allclose(f_density(4), 1 / (2 * math.pi), rtol=1e-15)
    assert_allclose(require(integrate(f_density, 0, 4, LOG)), 1, rtol=1e-12)
    assert_allclose(require(integrate(lambda t: t * t * f_density(t), 0, 4, LOG)), 4, rtol=1e-12)
    with pytest.raises(DomainError):
        f_density(0)


@pytest.mark.parametrize("t", [1e-6, 0.3, 1.0, 2.5, 3.99])
def test_f_g_against_mpmath(t):
    m = 1 - mpmath.mpf(t) ** 2 / 16
    assert_allclose(f_density(t), float(mpmath.ellipk(m) / mpmath.pi**2), rtol=1e-14)
    assert_allclose(g_density(t), float(mpmath.ellipe(m) / mpmath.pi**2), rtol=1e-14)


def test_g_density_examples():
    assert_allclose(g_density(4), 1 / (2 * math.pi), rtol=1e-15)
    assert_allclose(g_density(0), 1 / math.pi**2, rtol=1e-15)


def test_g_derivative_identity():
    # d/dm [2 2F1(1/2,-1/2;1;m) + 2(m-1) 2F1(1/2,1/2;1;m)] = 2F1(1/2,1/2;1;m), central differences
    def lhs(m):
        return 2 * gauss_2f1(0.5, -0.5, 1, m).real + 2 * (m - 1) * gauss_2f1(0.5, 0.5, 1, m).real

    m, h = 0.4, 1e-5
    deriv = (lhs(m + h) - lhs(m - h)) / (2 * h)
    assert_allclose(deriv, gauss_2f1(0.5, 0.5, 1, m).real, rtol=1e-9)


def test_coefficient_examples():
    assert coeff_c(0, 4) == 0
    # q-series at q = exp(-pi t_k)
    k = math.sqrt(8)
    assert_allclose(coeff_c(0, k), c0_qseries(solve_tk(k)), rtol=1e-12)


def test_coeff_against_mpmath():
    k = 1.5

    def F(t):
        return mpmath.ellipk(1 - t * t / 16) / mpmath.pi**2

    def G(t):
        return mpmath.ellipe(1 - t * t / 16) / mpmath.pi**2

    assert_allclose(coeff_c(CoefficientIndex(1), k), float(mpmath.quad(lambda t: t * t * F(t), [k, 4])), rtol=1e-13)
    assert_allclose(coeff_d(CoefficientIndex(2), k), float(mpmath.quad(lambda t: t**4 * mpmath.log(t) * F(t), [k, 4])), rtol=1e-13)
    assert_allclose(
        coeff_c(CoefficientIndex(-1, primed=True), k), float(mpmath.quad(lambda t: G(t) / t**2, [k, 4])), rtol=1e-13
    )
    assert_allclose(
        coeff_d(CoefficientIndex(0, primed=True), k), float(mpmath.quad(lambda t: mpmath.log(t) * G(t), [k, 4])), rtol=1e-13
    )


def _torus_mahler_qk(k):
    # average of log max(4 cos(a/2) cos(b/2), k) over [0, pi]^2, Jensen in z, scipy nested quad
    def inner(a):
        c = 4 * math.cos(a / 2)
        if c <= k:
            return math.log(k) * math.pi
        bstar = 2 * math.acos(k / c)
        v = quad(lambda b: math.log(c * math.cos(b / 2)), 0, bstar, epsabs=1e-13, epsrel=1e-13, limit=200)[0]
        return v + math.log(k) * (math.pi - bstar)

    astar = 2 * math.acos(k / 4)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        v = quad(inner, 0, astar, epsabs=1e-13, epsrel=1e-13, limit=200)[0]
    return (v + math.log(k) * math.pi * (math.pi - astar)) / math.pi**2


@pytest.mark.parametrize("k", [1.0, 0.5, 2.5])
def test_d0_c0_give_torus_mahler(k):
    lk = math.log(k)
    val = coeff_d(0, k) - lk * coeff_c(0, k) + lk
    assert_allclose(val, _torus_mahler_qk(k), rtol=1e-11, atol=1e-12)


def test_m_q1_frozen():
    # scipy torus quadrature, frozen
    assert_allclose(coeff_d(0, 1.0), 0.4839979734786386, rtol=1e-13)


def test_index_validation():
    with pytest.raises(DomainError):
        CoefficientIndex(-1)
    with pytest.raises(DomainError):
        CoefficientIndex(5, primed=True)
    CoefficientIndex(-1, primed=True)
    with pytest.raises(DomainError):
        FamilyParamK(-1.0)
    with pytest.raises(DomainError):
        coeff_c(0, 5.0)


def test_y0_boundary():
    assert y0(4) == 0 and theta_y0(4) == 0


@pytest.mark.parametrize("t", [1.0, 2.0, 3.0])
def test_y0_ode(t):
    h = 1e-4
    # theta y0 is t y0'
    dy = (y0(t + h) - y0(t - h)) / (2 * h)
    assert abs(t * dy - theta_y0(t)) <= 1e-6
    # theta^2 y0 = t F(t)
    d2 = t * (theta_y0(t + h) - theta_y0(t - h)) / (2 * h)
    assert abs(d2 - t * f_density(t)) <= 1e-6


def test_y0_nonnegative_and_p_u():
    ts = np.linspace(0.05, 3.95, 40)
    ys = np.array([y0(t) for t in ts])
    assert np.all(ys >= 0)
    assert_allclose(p_u(ts), ts * ys, rtol=1e-12, atol=1e-15)


def test_p_u_examples():
    assert p_u(4) == 0
    pu = lambda t: p_u(t, 1e-15)  # noqa: E731
    spec = QuadratureSpec(1e-13, 1e-13, endpoint_rule="log-singular")
    assert_allclose(require(integrate(pu, 0, 4, spec)), 1, atol=1e-10)
    assert_allclose(require(integrate(lambda t: t * t * pu(t), 0, 4, spec)), 9 / 4, atol=1e-10)
    with pytest.raises(DomainError):
        p_u(0)
