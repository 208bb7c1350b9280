"""Named verification suites: identities, cross-route agreements and oracle checks.

Each suite returns a list of ``Check`` rows (name, residual, tolerance).  The
command line ``verify`` subcommand and the test-suite both run these.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import densities as dens
from . import mahler, modular, specfun, walks, zetamahler
from .densities import CoefficientIndex
from .errors import InvalidSpecError
from .quadrature import QuadratureSpec, integrate, require

PI = math.pi


@dataclass(frozen=True)
class Check:
    name: str
    residual: float
    tol: float

    @property
    def passed(self) -> bool:
        return bool(self.residual <= self.tol)


# ---------------------------------------------------------------------------
# the c, d, c', d' integrals as one vector
# ---------------------------------------------------------------------------

COLUMNS = ("c0", "c1", "c2", "d0", "d1", "c'-1", "c'0", "c'1", "c'2", "d'-1", "d'0", "d'1", "F", "G")


def coefficient_vector(k: float) -> np.ndarray:
    """(c0, c1, c2, d0, d1, c'_-1, c'_0, c'_1, c'_2, d'_-1, d'_0, d'_1, F(k), G(k))."""
    c = [dens.coeff_c(CoefficientIndex(n), k) for n in (0, 1, 2)]
    d = [dens.coeff_d(CoefficientIndex(n), k) for n in (0, 1)]
    cp = [dens.coeff_c(CoefficientIndex(n, True), k) for n in (-1, 0, 1, 2)]
    dp = [dens.coeff_d(CoefficientIndex(n, True), k) for n in (-1, 0, 1)]
    return np.array(c + d + cp + dp + [dens.f_density(k), dens.g_density(k)])


def relation_matrix(k: float) -> np.ndarray:
    """The 10 x 14 matrix of vanishing linear forms in ``COLUMNS`` obtained by integration by parts."""
    L = math.log(k)
    g3 = (32 / k**2 - 1) / 3
    B = np.zeros((10, 14))
    # c_n relations, n = 0, 1, 2
    B[0, [5, 12, 13]] = [-16 / k, -1, 16 / k**2]
    B[1, [1, 6, 12, 13]] = [-2 / k**3, 16 / k**3, -1, 16 / k**2]
    B[2, [2, 7, 12, 13]] = [-4 / k**5, 48 / k**5, -1, 16 / k**2]
    # d_n relations, n = 0, 1
    B[3, [0, 5, 9, 12, 13]] = [-1 / k, 16 / k, -16 / k, -L, 16 * L / k**2]
    B[4, [1, 4, 6, 10, 12, 13]] = [-1 / k**3, -2 / k**3, 16 / k**3, 16 / k**3, -L, 16 * L / k**2]
    # c'_n relations, n = 0, 1, 2
    B[5, [0, 5, 6, 12, 13]] = [1 / (3 * k), -32 / (3 * k), -2 / (3 * k), -1 / 3, g3]
    B[6, [1, 6, 7, 12, 13]] = [-1 / (3 * k**3), 32 / (3 * k**3), -4 / (3 * k**3), -1 / 3, g3]
    B[7, [2, 7, 8, 12, 13]] = [-1 / k**5, 32 / k**5, -2 / k**5, -1 / 3, g3]
    # d'_n relations, n = 0, 1
    B[8, [0, 3, 5, 6, 9, 10, 12, 13]] = [
        -1 / (3 * k),
        1 / (3 * k),
        32 / (3 * k),
        -1 / (3 * k),
        -32 / (3 * k),
        -2 / (3 * k),
        -L / 3,
        L * g3,
    ]
    B[9, [1, 4, 6, 7, 10, 11, 12, 13]] = [
        -1 / (3 * k**3),
        -1 / (3 * k**3),
        32 / (3 * k**3),
        -1 / (3 * k**3),
        32 / (3 * k**3),
        -4 / (3 * k**3),
        -L / 3,
        L * g3,
    ]
    return B


def combination_vectors(k: float) -> list[np.ndarray]:
    """v_1, v_2, v_3 with v_i B equal to the coefficient rows of the three identities."""
    k2 = k * k
    return [
        np.array([-24, 24 + k2, -k2, -16, k2, 36, -36, 0, 24, 0], dtype=float),
        np.array([-240 / k2, 15 * (k2 + 16) / k2, -10, 0, 0, 360 / k2, -360 / k2, 0, 0, 0]),
        np.array([-16, k2, 0, 0, 0, 24, 0, 0, 0, 0], dtype=float),
    ]


def identity_rows(k: float) -> list[np.ndarray]:
    """Coefficient rows (over ``COLUMNS``) of the three c/d/F/G identities."""
    L = math.log(k)
    z = [0.0] * 7
    return [
        np.array([20 / k, -3 * (k * k + 12) / k**3, 4 / k**3, 8 / k, -2 / k] + z + [(8 - k * k) * L, 8 * L]),
        np.array([120 / k**3, -30 * (k * k + 12) / k**5, 40 / k**5, 0, 0] + z + [-5, 80 / k**2]),
        np.array([8 / k, -2 / k, 0, 0, 0] + z + [8 - k * k, 8]),
    ]


def ibp_residuals(k: float, n: int) -> dict[str, float]:
    """The four integration-by-parts relations at index n, as residuals."""
    c = lambda j: dens.coeff_c(CoefficientIndex(j), k)  # noqa: E731
    d = lambda j: dens.coeff_d(CoefficientIndex(j), k)  # noqa: E731
    cp = lambda j: dens.coeff_c(CoefficientIndex(j, True), k)  # noqa: E731
    dp = lambda j: dens.coeff_d(CoefficientIndex(j, True), k)  # noqa: E731
    F, G = dens.f_density(k), dens.g_density(k)
    L = math.log(k)
    p = k ** (2 * n + 1)
    m = 2 * n - 1
    r_c = c(n) / p - (16 / k**2 * G - F - m / p * (c(n) - 16 * cp(n - 1)))
    r_d = d(n) / p - ((16 * cp(n - 1) - c(n)) / p - m / p * (d(n) - 16 * dp(n - 1)) + L * (16 / k**2 * G - F))
    r_cp = cp(n) / p - ((32 / k**2 - 1) * G / 3 - F / 3 - m / (3 * p) * (c(n) + cp(n) - 32 * cp(n - 1)))
    r_dp = dp(n) / p - (
        -(c(n) + cp(n) - 32 * cp(n - 1)) / (3 * p)
        - m / (3 * p) * (d(n) + dp(n) - 32 * dp(n - 1))
        + L / 3 * ((32 / k**2 - 1) * G - F)
    )
    return {"c": r_c, "d": r_d, "c'": r_cp, "d'": r_dp}


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------


def suite_thm11(grid: int = 200, tol: float = 1e-10) -> list[Check]:
    """m - m_D minus the elementary correction, and route agreement, on (0, 2)."""
    ks = np.linspace(0, 2, grid + 2)[1:-1]
    res = []
    agree_hyp = []
    agree_diff = []
    for k in ks:
        m = mahler.m_xyk(k, "cm").value
        dil = mahler.md_xyk(k, "dilog").value
        hyp = mahler.md_xyk(k, "hyp3f2").value
        diff = mahler.md_xyk(k, "difference").value
        res.append(abs(m - hyp - mahler.xyk_correction(k)))
        agree_hyp.append(abs(hyp - dil))
        agree_diff.append(abs(diff - dil))
    return [
        Check("thm11 residual", max(res), tol),
        Check("md_xyk hyp3f2 vs dilog", max(agree_hyp), tol),
        Check("md_xyk difference vs dilog", max(agree_diff), tol),
    ]


def suite_crazymatrix(ks=(0.5, 1.0, 2.0, 3.0), tol: float = 1e-9) -> list[Check]:
    out = []
    for k in ks:
        x = coefficient_vector(k)
        for i, row in enumerate(identity_rows(k), 1):
            out.append(Check(f"identity {i} at k={k:g}", abs(float(np.dot(row, x))), tol))
    return out


def suite_ibp(ks=(0.5, 1.0, 2.0, 3.0), ns=(1, 2), tol: float = 1e-9) -> list[Check]:
    out = []
    for k in ks:
        for n in ns:
            for name, r in ibp_residuals(k, n).items():
                out.append(Check(f"ibp {name}_{n} at k={k:g}", abs(r), tol))
    return out


def suite_bmatrix(ks=(0.5, 1.0, 2.0, 3.0), tol: float = 1e-9) -> list[Check]:
    """Rows of B vanish on the integrals, and v_i B reproduces the identity rows."""
    out = []
    for k in ks:
        B = relation_matrix(k)
        x = coefficient_vector(k)
        out.append(Check(f"B x = 0 at k={k:g}", float(np.max(np.abs(B @ x))), tol))
        for i, (v, row) in enumerate(zip(combination_vectors(k), identity_rows(k)), 1):
            out.append(Check(f"v{i} B at k={k:g}", float(np.max(np.abs(v @ B - row))), 1e-12 * max(1, k**-5)))
    return out


def suite_hypcomb(tol: float = 1e-9) -> list[Check]:
    out = []
    for z in np.round(np.arange(0.1, 1.0, 0.1), 10):
        r = abs(mahler.hyp_combination_lhs(z) - mahler.hyp_combination_rhs(z))
        out.append(Check(f"3F2 combination at z={z:g}", r, tol))
    return out


def suite_csqrt2(tol: float = 1e-9) -> list[Check]:
    return [Check("C_sqrt2 = log 2 / 4", abs(mahler.c_sqrt2_hypergeometric() - math.log(2) / 4), tol)]


def suite_closedforms(tol: float = 1e-11) -> list[Check]:
    return [
        Check("md_xyk(1) closed form", abs(mahler.md_xyk(1.0).value - mahler.md_xyk_at_1_closed_form()), tol),
        Check(
            "md_xyk(sqrt2) closed form",
            abs(mahler.md_xyk(math.sqrt(2)).value - mahler.md_xyk_at_sqrt2_closed_form()),
            tol,
        ),
    ]


def suite_c0triple(ks=(1.0, 2.0, math.sqrt(8)), cutoff: int = 200) -> list[Check]:
    out = []
    for k in ks:
        pt = modular.solve_tk(k)
        qs = modular.c0_qseries(pt)
        out.append(Check(f"c0 quadrature vs q-series k={k:.6g}", abs(dens.coeff_c(0, k) - qs), 1e-10))
        lat = modular.c0_lattice(pt, cutoff)
        out.append(Check(f"c0 lattice({cutoff}) vs q-series k={k:.6g}", abs(lat.real - qs), 1e-4))
    return out


def suite_modular() -> list[Check]:
    g = specfun.gamma(0.25).real
    p34 = PI**0.75
    out = [
        Check("solve_tk(sqrt8) = 1", abs(modular.solve_tk(math.sqrt(8)).t_k - 1), 1e-10),
        Check("eta(i)", abs(modular.eta(1j) - g / (2 * p34)), 1e-12),
        Check("eta(i/2)", abs(modular.eta(0.5j) - g / (2 ** (7 / 8) * p34)), 1e-12),
        Check("eta(2i)", abs(modular.eta(2j) - g / (2 ** (11 / 8) * p34)), 1e-12),
    ]
    for x in (0.3, 0.7, 2.5):
        out.append(
            Check(f"eta functional equation x={x}", abs(modular.eta(1j * x) * math.sqrt(x) - modular.eta(1j / x)), 1e-12)
        )
    return out


def suite_moments(tol: float = 1e-10) -> list[Check]:
    spec = QuadratureSpec(1e-14, 1e-14, endpoint_rule="sqrt-singular")
    out = [Check("int p_T1 = 1", abs(require(integrate(dens.p_t1, 0, 2, spec)) - 1), tol)]
    for n in range(1, 5):
        target = 4**n * specfun.pochhammer(1.5, n).real / ((n + 1) * specfun.pochhammer(3, n).real)
        val = require(integrate(lambda v, n=n: v ** (2 * n) * dens.p_t1(v), 0, 2, spec))
        out.append(Check(f"int v^{2 * n} p_T1", abs(val - target), tol))
    lspec = QuadratureSpec(1e-13, 1e-13, endpoint_rule="log-singular")
    pu = lambda t: dens.p_u(t, 1e-15)  # noqa: E731
    out.append(Check("int p_U = 1", abs(require(integrate(pu, 0, 4, lspec)) - 1), tol))
    out.append(
        Check("int t^2 p_U = 9/4", abs(require(integrate(lambda t: t * t * pu(t), 0, 4, lspec)) - 2.25), tol)
    )
    return out


def suite_derivative(ks=(0.5, 1.0, math.sqrt(2), 1.9, 3.0), tol: float = 1e-8) -> list[Check]:
    out = []
    for k in ks:
        out.append(
            Check(
                f"Z_D'(0) vs m_D k={k:.6g}",
                abs(zetamahler.mahler_from_derivative("zd_xyk", k) - mahler.md_xyk(k).value),
                tol,
            )
        )
        out.append(
            Check(
                f"Z'(0) vs m k={k:.6g}",
                abs(zetamahler.mahler_from_derivative("z_xyk", k) - mahler.m_xyk(k).value),
                tol,
            )
        )
    out.append(Check("Z_D(s, x+y)'(0) = -1/4", abs(zetamahler.mahler_from_derivative("zd_xy") + 0.25), tol))
    return out


def suite_continuity(tol: float = 1e-8) -> list[Check]:
    h = 1e-10
    out = []
    for name, f in (("m_xyk", lambda k: mahler.m_xyk(k).value), ("md_xyk", lambda k: mahler.md_xyk(k).value)):
        out.append(Check(f"{name} at k=2", abs(f(2 - h) - f(2.0)), tol))
    for name, f in (("m_qk", lambda k: mahler.m_qk(k).value), ("md_qk", lambda k: mahler.md_qk(k).value)):
        out.append(Check(f"{name} at k=4", abs(f(4 - h) - f(4.0)), tol))
    return out


def suite_montecarlo(samples: int = 10**6, seed: int = 42, sigmas: float = 4.0) -> list[Check]:
    """Monte Carlo estimates against closed forms; residual is |z-score|, tolerance ``sigmas``."""
    cfg = walks.MCConfig(samples, seed, 64)
    cases = [
        ("m_D(x+y) MC", walks.mc_areal_mahler_xyk(0.0, cfg), -0.25),
        ("m_D(x+y+1) MC", walks.mc_areal_mahler_xyk(1.0, cfg), mahler.md_xyk(1.0).value),
        ("m_D(x+y+5) MC", walks.mc_areal_mahler_xyk(5.0, cfg), math.log(5)),
        ("m_D(Q_1) MC", walks.mc_areal_mahler_qk(1.0, cfg), mahler.md_qk(1.0).value),
        ("m_D(Q_5) MC", walks.mc_areal_mahler_qk(5.0, cfg), 9 / 200 - 0.5 + math.log(5)),
        ("E|(X+1)(Y+1)|^2 MC", walks.mc_moment(2.0, 0.0, "qk-f-part", cfg), 2.25),
    ]
    for s in (1.0, 2.0, 3.0):
        for k in (0.5, 1.0, 1.5, 3.0):
            cases.append((f"Z_D({s:g}, x+y+{k:g}) MC", walks.mc_moment(s, k, "xyk", cfg), zetamahler.zd_xyk(s, k).real))
    return [Check(name, abs(est.mean - target) / est.std_error, sigmas) for name, est, target in cases]


SUITES = {
    "thm11": suite_thm11,
    "crazymatrix": suite_crazymatrix,
    "ibp": suite_ibp,
    "bmatrix": suite_bmatrix,
    "hypcomb": suite_hypcomb,
    "csqrt2": suite_csqrt2,
    "closedforms": suite_closedforms,
    "c0triple": suite_c0triple,
    "modular": suite_modular,
    "moments": suite_moments,
    "derivative": suite_derivative,
    "continuity": suite_continuity,
    "montecarlo": suite_montecarlo,
}


def run_suite(name: str, **kwargs) -> list[Check]:
    if name not in SUITES:
        raise InvalidSpecError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return SUITES[name](**kwargs)
