import math

import mpmath
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose

from arealmahler.densities import FamilyParamK, coeff_c
from arealmahler.errors import DomainError, InvalidSpecError
from arealmahler.modular import (
    LatticeCutoff,
    ModularPoint,
    TruncationWarning,
    c0_lattice,
    c0_qseries,
    chi4,
    dx_dtau,
    eisenstein_coeffs,
    eta,
    eta_quotient_coeffs,
    solve_tk,
    x_of_tau,
    x_qseries,
)

mpmath.mp.dps = 30

G14 = float(mpmath.gamma(0.25))
PI34 = float(mpmath.pi**0.75)


@pytest.mark.parametrize(
    "tau, expected",
    [
        # closed forms through Gamma(1/4)
        (1j, G14 / (2 * PI34)),
        (0.5j, G14 / (2 ** (7 / 8) * PI34)),
        (2j, G14 / (2 ** (11 / 8) * PI34)),
    ],
)
def test_eta_special_values(tau, expected):
    assert abs(eta(tau) - expected) <= 1e-12


@pytest.mark.parametrize("tau", [0.1 + 0.05j, -0.37 + 0.8j, 0.5 + 0.2j, 2.3 + 1.1j, 0.02j])
def test_eta_against_mpmath(tau):
    # q-product in mpmath, summed directly at 30 digits
    q = mpmath.exp(2j * mpmath.pi * mpmath.mpc(tau))
    ref = mpmath.exp(1j * mpmath.pi * mpmath.mpc(tau) / 12) * mpmath.qp(q)
    assert abs(eta(tau) - complex(ref)) <= 1e-12 * abs(complex(ref))


@pytest.mark.parametrize("x", [0.3, 0.7, 2.5])
def test_eta_inversion(x):
    assert abs(eta(1j * x) * math.sqrt(x) - eta(1j / x)) <= 1e-12


def test_eta_periodicity():
    tau = 0.13 + 0.9j
    assert abs(eta(tau + 1) - eta(tau) * complex(mpmath.expj(mpmath.pi / 12))) <= 1e-14


def test_eta_lower_half_plane():
    with pytest.raises(DomainError):
        eta(-1j)
    with pytest.raises(DomainError):
        x_of_tau(0.5)


def test_x_examples():
    assert_allclose(x_of_tau(0.25j).real, math.sqrt(8), rtol=1e-13)
    assert abs(x_of_tau(0.25j).imag) <= 1e-14
    assert abs(x_of_tau(20j)) <= 1e-50


def test_x_qseries():
    # q = e^{2 pi i tau} = 0.01; x carries only odd powers of q
    tau = 1j * math.log(100) / (2 * math.pi)
    assert abs(x_of_tau(tau) - x_qseries(0.01)) <= 1e-12
    assert x_qseries(0.01, 1) == 16 * 0.01


def test_x_monotone_on_imaginary_axis():
    vals = [x_of_tau(1j / (4 * t)).real for t in (0.2, 0.5, 1.0, 2.0, 4.0)]
    assert all(0 < v < 4 for v in vals)
    assert all(a < b for a, b in zip(vals, vals[1:]))


def test_dx_dtau_finite_difference():
    tau, h = 0.3j, 1e-6
    fd = (x_of_tau(tau + h) - x_of_tau(tau - h)) / (2 * h)
    assert abs(fd - dx_dtau(tau)) <= 1e-6 * max(1, abs(fd))


def test_solve_tk_sqrt8():
    pt = solve_tk(math.sqrt(8))
    assert abs(pt.t_k - 1) <= 1e-10
    assert_allclose(pt.q_k, math.exp(-math.pi), rtol=1e-10)


@pytest.mark.parametrize("k", [1.0, 2.0, 3.0])
def test_solve_tk_roundtrip(k):
    pt = solve_tk(FamilyParamK(k))
    assert abs(x_of_tau(1j / (4 * pt.t_k)).real - k) <= 1e-12
    assert pt.k == k


def test_solve_tk_monotone():
    ts = [solve_tk(k).t_k for k in (0.5, 1.5, 2.5, 3.5, 3.99)]
    assert all(a < b for a, b in zip(ts, ts[1:]))


def test_solve_tk_domain():
    for k in (0.0, 4.0, 5.0):
        with pytest.raises(DomainError):
            solve_tk(k)


def test_modular_types():
    with pytest.raises(DomainError):
        ModularPoint(-1.0, 0.5, 1.0)
    with pytest.raises(DomainError):
        ModularPoint(1.0, 1.5, 1.0)
    with pytest.raises(DomainError):
        ModularPoint(1.0, 0.5, 4.0)
    with pytest.raises(InvalidSpecError):
        LatticeCutoff(2)
    LatticeCutoff(3)


def test_chi4():
    assert [chi4(n) for n in range(8)] == [0, 1, 0, -1, 0, 1, 0, -1]


@pytest.mark.parametrize("k", [1.0, 2.0, math.sqrt(8)])
def test_c0_qseries_matches_quadrature(k):
    assert abs(c0_qseries(solve_tk(k)) - coeff_c(0, k)) <= 1e-10


def test_c0_qseries_against_mpmath_integral():
    # int_{sqrt 8}^4 K(1 - t^2/16)/pi^2 dt in mpmath
    ref = mpmath.quad(lambda t: mpmath.ellipk(1 - t * t / 16) / mpmath.pi**2, [mpmath.sqrt(8), 4])
    assert abs(c0_qseries(solve_tk(math.sqrt(8))) - float(ref)) <= 1e-13


def test_c0_qseries_leading_term():
    pt = ModularPoint(10.0, math.exp(-10 * math.pi), 0.5)
    assert_allclose(c0_qseries(pt), 16 * pt.q_k / math.pi, rtol=1e-12)


def test_c0_qseries_sign_of_d2_term():
    # only d in {1, 2} with f = 1 reach q^2: 16/pi (q - 2 q^2)
    pt = ModularPoint(3.0, 0.01, 1.0)
    with pytest.warns(TruncationWarning):
        val = c0_qseries(pt, terms=2)
    assert_allclose(val, 16 / math.pi * (0.01 - 2e-4), rtol=1e-14)


def test_c0_qseries_truncation_warning():
    pt = solve_tk(1.0)
    with pytest.warns(TruncationWarning):
        c0_qseries(pt, terms=3)
    with pytest.raises(InvalidSpecError):
        c0_qseries(pt, terms=0)


@pytest.mark.parametrize("k", [1.0, 2.0, math.sqrt(8)])
def test_c0_lattice_close_to_qseries(k):
    pt = solve_tk(k)
    val = c0_lattice(pt, LatticeCutoff(200))
    assert abs(val.real - c0_qseries(pt)) <= 1e-4


def test_c0_lattice_bare_truncation_converges_slowly():
    pt = solve_tk(math.sqrt(8))
    ref = c0_qseries(pt)
    errs = [abs(c0_lattice(pt, c, tail_correction=False).real - ref) for c in (50, 100, 200)]
    assert errs[0] > errs[1] > errs[2]
    # roughly halves with each doubling
    assert 0.4 <= errs[2] / errs[1] <= 0.6


def test_c0_lattice_imaginary_part_shrinks():
    pt = solve_tk(1.0)
    ims = [abs(c0_lattice(pt, c).imag) for c in (50, 100, 200)]
    assert ims[0] >= ims[1] >= ims[2]
    assert ims[2] <= 1e-12


def test_eisenstein_examples():
    # direct expansion of the eta quotient by hand
    assert eisenstein_coeffs(8) == [1, -4, 8, -16, 26, -32, 48, -64]
    with pytest.raises(InvalidSpecError):
        eisenstein_coeffs(0)
    with pytest.raises(InvalidSpecError):
        eta_quotient_coeffs(0)


def test_eisenstein_matches_eta_quotient():
    a = eisenstein_coeffs(50)
    assert a == eta_quotient_coeffs(50)
    assert all(isinstance(v, int) for v in a)


@settings(max_examples=25, deadline=None)
@given(st.floats(0.3, 3.0), st.floats(-0.5, 0.5))
def test_eta_quotient_series_matches_eta(y, x):
    # (eta(4tau)^4 eta(tau)^2 / eta(2tau)^3)^2 against its q-expansion
    tau = complex(x, y)
    q = complex(mpmath.exp(2j * mpmath.pi * tau))
    series = sum(c * q ** (n + 1) for n, c in enumerate(eisenstein_coeffs(40)))
    direct = (eta(4 * tau) ** 4 * eta(tau) ** 2 / eta(2 * tau) ** 3) ** 2
    assert abs(series - direct) <= 1e-12 * max(1.0, abs(direct)) + 50 * abs(q) ** 41
