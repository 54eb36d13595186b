"""Brute-force quadrature oracle: self-tests and independence guarantees."""

import math
import pathlib

import numpy as np
import pytest

import hahnium.oracle as oracle
from hahnium.hydrogen_nr import NrState, screening_nr
from hahnium.hydrogen_rel import RelState
from hahnium.oracle import (
    DEFAULT_BUDGET,
    QuadratureError,
    brute_expect_nr,
    brute_expect_rel,
    brute_screening,
    quad_semi_infinite,
    sphere_quad,
)


def test_gamma_self_test():
    for alpha in (0.3, 1.0, 2.5, 7.0):
        def integrand(x, alpha=alpha):
            return x ** (alpha - 1.0) * np.exp(-x)

        res = quad_semi_infinite(integrand, alpha - 1.0, 1.0, 1e-13)
        want = math.gamma(alpha)
        assert abs(res.value - want) <= 1e-12 * want
        assert res.error_estimate <= 1e-12 * want
        assert 0 < res.evaluations <= DEFAULT_BUDGET


def test_decay_rate_rescales_tail():
    # integral of x^(a-1) e^(-3x) = Gamma(a) / 3^a
    def integrand(x):
        return x**1.5 * np.exp(-3.0 * x)

    res = quad_semi_infinite(integrand, 1.5, 3.0, 1e-13)
    want = math.gamma(2.5) / 3.0**2.5
    assert abs(res.value - want) <= 1e-12 * want


def test_budget_exhaustion_raises():
    def noisy(x):
        return np.sin(50.0 * x) ** 2 * np.exp(-x)

    with pytest.raises(QuadratureError):
        quad_semi_infinite(noisy, 0.0, 1.0, 1e-13, budget=500)


def test_invalid_inputs():
    def f(x):
        return np.exp(-x)

    with pytest.raises(ValueError):
        quad_semi_infinite(f, -1.5, 1.0, 1e-10)  # non-integrable at 0
    with pytest.raises(ValueError):
        quad_semi_infinite(f, 0.0, -1.0, 1e-10)  # decay must be positive


def test_brute_expect_nr_reference_values():
    state = NrState(1.0, 1, 0)
    assert brute_expect_nr(state, 1) == pytest.approx(1.5, rel=1e-11)
    assert brute_expect_nr(state, 0) == pytest.approx(1.0, rel=1e-12)
    assert brute_expect_nr(state, -2) == pytest.approx(2.0, rel=1e-11)
    state = NrState(2.0, 3, 1)
    assert brute_expect_nr(state, -1) == pytest.approx(2.0 / 9.0, rel=1e-11)


def test_brute_expect_rel_normalization():
    for state in (RelState(1.0, 0, -1), RelState(92.0, 2, 1)):
        assert brute_expect_rel(state, 0) == pytest.approx(1.0, rel=1e-11)


def test_brute_screening_matches_closed_form_ground_state():
    # V = (Z-1)/r + (1/r + Z) e^(-2Zr) for the 1s electron cloud
    for z in (1.0, 2.0):
        state = NrState(z, 1, 0)

        def density(r, z=z):
            return 4.0 * z**3 * np.exp(-2.0 * z * r)

        for r in (0.1, 1.0, 5.0, 20.0):
            got = brute_screening(density, z, r, 0.0, 2.0 * z)
            want = screening_nr(state, r)
            assert abs(got - want) <= 1e-12 * max(abs(want), 1.0)


def test_sphere_quad_polynomial_exactness():
    assert sphere_quad(lambda t, p: 1.0 + 0j, 0) == pytest.approx(4.0 * math.pi)
    got = sphere_quad(lambda t, p: math.cos(t) ** 2 + 0j, 2)
    assert got == pytest.approx(4.0 * math.pi / 3.0, rel=1e-14)
    got = sphere_quad(lambda t, p: math.sin(t) ** 2 * complex(math.cos(2.0 * p), math.sin(2.0 * p)), 4)
    assert abs(got) <= 1e-14


def test_oracle_imports_no_closed_form_modules():
    # the oracle must stay independent of everything it validates
    source = pathlib.Path(oracle.__file__).read_text()
    for forbidden in ("hydrogen_nr", "hydrogen_rel", "laguerre_integrals", "cli"):
        assert forbidden not in source, forbidden
