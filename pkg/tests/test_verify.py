import math

import mpmath
import numpy as np
import pytest

from arealmahler.errors import InvalidSpecError
from arealmahler.verify import (
    COLUMNS,
    SUITES,
    Check,
    coefficient_vector,
    combination_vectors,
    identity_rows,
    relation_matrix,
    run_suite,
)

mpmath.mp.dps = 30


def _coefficients_mpmath(k):
    # the same 14 integrals by mpmath quadrature of K and E
    k = mpmath.mpf(k)
    F = lambda t: mpmath.ellipk(1 - t * t / 16) / mpmath.pi**2  # noqa: E731
    G = lambda t: mpmath.ellipe(1 - t * t / 16) / mpmath.pi**2  # noqa: E731

    def q(f):
        return float(mpmath.quad(f, [k, 4]))

    c = [q(lambda t, n=n: t ** (2 * n) * F(t)) for n in (0, 1, 2)]
    d = [q(lambda t, n=n: t ** (2 * n) * mpmath.log(t) * F(t)) for n in (0, 1)]
    cp = [q(lambda t, n=n: t ** (2 * n) * G(t)) for n in (-1, 0, 1, 2)]
    dp = [q(lambda t, n=n: t ** (2 * n) * mpmath.log(t) * G(t)) for n in (-1, 0, 1)]
    return np.array(c + d + cp + dp + [float(F(k)), float(G(k))])


@pytest.mark.parametrize("k", [0.5, 1.0, 3.0])
def test_coefficient_vector_against_mpmath(k):
    np.testing.assert_allclose(coefficient_vector(k), _coefficients_mpmath(k), rtol=1e-12, atol=1e-14)


@pytest.mark.parametrize("k", [0.7, 2.5])
def test_relations_vanish_on_mpmath_integrals(k):
    x = _coefficients_mpmath(k)
    scale = np.abs(relation_matrix(k)) @ np.abs(x)
    assert np.all(np.abs(relation_matrix(k) @ x) <= 1e-12 * scale)
    for row in identity_rows(k):
        assert abs(row @ x) <= 1e-12 * (np.abs(row) @ np.abs(x))


@pytest.mark.parametrize("k", [0.5, 1.0, 2.0, 3.0])
def test_identities_are_combinations_of_relations(k):
    B = relation_matrix(k)
    assert B.shape == (10, len(COLUMNS))
    for v, row in zip(combination_vectors(k), identity_rows(k)):
        np.testing.assert_allclose(v @ B, row, rtol=1e-12, atol=1e-12 * max(1, k**-5))


@pytest.mark.parametrize("name", [n for n in SUITES if n != "montecarlo"])
def test_deterministic_suites_pass(name):
    checks = run_suite(name)
    assert checks
    failed = [c for c in checks if not c.passed]
    assert not failed, failed


def test_montecarlo_suite_small():
    checks = run_suite("montecarlo", samples=100_000, seed=42)
    assert all(c.passed for c in checks)


def test_check_and_unknown_suite():
    assert Check("a", 1e-12, 1e-10).passed
    assert not Check("a", math.nan, 1e-10).passed
    with pytest.raises(InvalidSpecError):
        run_suite("nope")
