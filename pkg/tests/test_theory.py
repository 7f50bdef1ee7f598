import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from pae import oracle, theory
from pae.theory import (
    GAMMA_STAR, P_STAR, TheoryExponents, expected_degree_vertex1, gamma_minimizer,
    numeric_gamma_argmin, phi, phi_asymptotic_check, phi_exact, phi_table,
)

P_GRID = [round(0.1 * k, 1) for k in range(11)]


def direct_phi(t, p):
    c = 1 - p / 2
    out = 1.0
    for s in range(1, t):
        out *= 1 + c / s
    return out


@pytest.mark.parametrize("p", P_GRID)
def test_phi_one_is_one(p):
    assert phi(1, p) == 1.0


def test_phi_two():
    assert phi(2, 0.5) == pytest.approx(1.75, abs=1e-15)


def test_phi_p0_is_identity():
    table = phi_table(1000, 0.0)
    for t in range(1, 1001):
        assert direct_phi(t, 0.0) == pytest.approx(t, rel=1e-12)
        assert table[t] == pytest.approx(t, rel=1e-12)


@pytest.mark.parametrize("p", [0.0, 0.3, 0.5, 1.0])
def test_log_space_matches_direct_product(p):
    table = phi_table(10**4, p)
    for t in (1, 2, 7, 100, 2500, 10**4):
        expect = direct_phi(t, p)
        assert phi(t, p) == pytest.approx(expect, rel=1e-11)
        assert table[t] == pytest.approx(expect, rel=1e-11)


@pytest.mark.parametrize("p", [0.0, 0.25, 0.6, 1.0])
def test_phi_ratio_identity(p):
    table = phi_table(5000, p)
    t = np.arange(1, 5000)
    np.testing.assert_allclose(table[2:] / table[1:-1], 1 + theory.c_p(p) / t, rtol=1e-12)


def test_phi_exact_rational():
    assert phi_exact(2, Fraction(1, 2)) == Fraction(7, 4)
    assert phi_exact(10, Fraction(0)) == 10


def test_phi_large_t_finite():
    value = theory.log_phi(10**7, 0.5)
    assert math.isfinite(value)
    # phi(t) ~ t^c / Gamma(1 + c)
    assert value == pytest.approx(0.75 * math.log(1e7) - math.lgamma(1.75), abs=1e-6)


def test_asymptotic_ratio_p0():
    assert phi_asymptotic_check(0.0, range(1, 1000)) == pytest.approx((1.0, 1.0), rel=1e-12)


def test_asymptotic_ratio_p1_bounded():
    lo, hi = phi_asymptotic_check(1.0, range(1, 10**6 + 1))
    assert 0.5 <= lo <= hi <= 2.0


@pytest.mark.parametrize("p", P_GRID)
def test_asymptotic_ratio_spread(p):
    lo, hi = phi_asymptotic_check(p, np.unique(np.geomspace(1, 10**6, 200).astype(int)))
    assert hi / lo < 4


def test_expected_degree_vertex1():
    assert expected_degree_vertex1(1, 0.3) == 2.0
    for p in (0.0, 0.25, 0.5, 1.0):
        assert expected_degree_vertex1(2, p) == pytest.approx(4 - p, abs=1e-14)
    exact = oracle.exact_expectation(6, Fraction(1, 2), "d1")
    assert expected_degree_vertex1(6, 0.5) == pytest.approx(float(exact), abs=1e-12)


def test_gamma_endpoints_and_optimum():
    assert theory.gamma(0.0) == 0.5
    assert theory.gamma(1.0) == 1.0
    p_star, g_star = gamma_minimizer()
    assert p_star == pytest.approx(0.267949, abs=1e-6)
    assert g_star == pytest.approx(0.464102, abs=1e-6)
    assert g_star == pytest.approx(GAMMA_STAR, abs=1e-15)


def test_numeric_argmin():
    p_num, g_num = numeric_gamma_argmin()
    assert abs(p_num - (2 - math.sqrt(3))) <= 1e-6
    assert abs(g_num - (2 * math.sqrt(3) - 3)) <= 1e-9


def test_gamma_identity_forms():
    for p in np.linspace(0, 1, 1001):
        assert abs(theory.gamma(p) - theory.gamma_alt(p)) <= 1e-12


def test_anchor_values():
    assert theory.alpha(1.0) == 0.0 and theory.alpha(0.0) == 0.5
    assert theory.c_p(1.0) == 0.5 and theory.c_p(0.0) == 1.0


@given(st.floats(0, 1))
def test_exponent_ranges(p):
    e = TheoryExponents.at(p)
    assert 0.5 <= e.c_p <= 1.0
    assert 0.0 <= e.alpha <= 0.5
    assert 2 * math.sqrt(3) - 3 - 1e-12 <= e.gamma <= 1.0 + 1e-12
    assert e.gamma == pytest.approx(e.cherry_exponent - e.triangle_exponent, abs=1e-12)


def test_exponents_reject_bad_p():
    with pytest.raises(ValueError):
        TheoryExponents.at(1.5)


def test_as_dict_keys():
    d = TheoryExponents.at(0.5).as_dict()
    assert set(d) == {"p", "c_p", "alpha", "gamma", "cherry_exponent", "triangle_exponent",
                      "p_star", "gamma_star"}
    assert d["p_star"] == P_STAR
