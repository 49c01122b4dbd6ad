import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from oracles import neg_log_tn, richardson_central, tn_derivative_mp

from circpolar.closedform import (alpha_coeffs, alpha_rational, bernoulli_even, riesz_polarization_closed,
                                  riesz_polarization_direct, riesz_polarization_poly, series_exp,
                                  series_log, tn_derivative_literal, tn_derivative_rational,
                                  tn_derivative_value, tn_derivative_via_pm, zeta_even,
                                  zeta_even_rational, zeta_table)
from circpolar.errors import InvalidInput


def test_series_log_exp_roundtrip():
    a = [Fraction(1), Fraction(1, 3), Fraction(-2, 7), Fraction(5, 11)]
    assert series_exp(series_log(a)) == a
    # log(1 + w) = w - w^2/2 + w^3/3
    assert series_log([Fraction(1), Fraction(1), 0, 0]) == [0, 1, Fraction(-1, 2), Fraction(1, 3)]


def test_alpha_examples():
    for s in (0.5, 1.0, 2.0, 6.0):
        al = alpha_coeffs(s, 4).alphas
        assert al[0] == 1.0
        assert al[1] == pytest.approx(s * math.pi ** 2 / 6, rel=1e-14)
        assert al[2] == pytest.approx(s * (5 * s + 2) * math.pi ** 4 / 360, rel=1e-13)
    assert alpha_coeffs(0.0, 5).alphas == (1.0, 0.0, 0.0, 0.0, 0.0, 0.0)
    assert alpha_coeffs(2.0, 3).J == 3
    with pytest.raises(InvalidInput):
        alpha_coeffs(1.0, -1)


@pytest.mark.parametrize("s", [0.5, 1.0, 3.0, 6.0])
def test_alpha_series_matches_function(s):
    z = 1e-3
    al = alpha_coeffs(s, 6).alphas
    series = sum(a * z ** (2 * j) for j, a in enumerate(al))
    exact = (math.sin(math.pi * z) / (math.pi * z)) ** (-s)
    assert series == pytest.approx(exact, rel=1e-14)
    z = 0.3
    with mpmath.workdps(40):
        exact = float(mpmath.sinc(mpmath.pi * z) ** (-s))
    assert sum(a * z ** (2 * j) for j, a in enumerate(alpha_coeffs(s, 30).alphas)) == pytest.approx(exact, rel=1e-13)


def test_alpha_rational_matches_float():
    al = alpha_coeffs(4.0, 5).alphas
    for j, a in enumerate(alpha_rational(Fraction(4), 5)):
        assert float(a) * math.pi ** (2 * j) == pytest.approx(al[j], rel=1e-13)


def test_bernoulli_and_zeta():
    assert [bernoulli_even(k) for k in range(5)] == [1, Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30)]
    assert zeta_even_rational(1) == Fraction(1, 6)
    assert zeta_even_rational(2) == Fraction(1, 90)
    assert zeta_even_rational(3) == Fraction(1, 945)
    for k in range(1, 16):
        assert zeta_even(k) == pytest.approx(float(mpmath.zeta(2 * k)), rel=1e-14)
        assert zeta_table(16)[k] == zeta_even(k)
    with pytest.raises(InvalidInput):
        zeta_even_rational(0)


def test_zeta_against_partial_sums():
    for k in (1, 2, 3):
        N = 200_000
        tail = 1.0 / ((2 * k - 1) * N ** (2 * k - 1))
        partial = math.fsum(1.0 / j ** (2 * k) for j in range(1, N + 1))
        assert zeta_even(k) == pytest.approx(partial + tail, rel=1e-11)


def test_polarization_polynomials():
    assert riesz_polarization_poly(1) == {2: Fraction(1, 4)}
    assert riesz_polarization_poly(2) == {2: Fraction(1, 24), 4: Fraction(1, 48)}
    assert riesz_polarization_poly(3) == {2: Fraction(1, 120), 4: Fraction(1, 192), 6: Fraction(1, 480)}


def test_polarization_closed_examples():
    assert riesz_polarization_closed(1, 1) == pytest.approx(0.25)
    assert riesz_polarization_closed(2, 1) == pytest.approx(1.0)
    assert riesz_polarization_closed(3, 3) == pytest.approx(2.015625, rel=1e-13)
    assert riesz_polarization_direct(2, 2) == pytest.approx(1.0)
    for bad in (0, -1, 1.5, True):
        with pytest.raises(InvalidInput):
            riesz_polarization_closed(bad, 1)
    with pytest.raises(InvalidInput):
        riesz_polarization_direct(3, 0)


@given(st.integers(1, 200), st.integers(1, 5))
def test_closed_vs_direct(n, m):
    closed = riesz_polarization_closed(n, m)
    assert closed == pytest.approx(riesz_polarization_direct(n, 2 * m), rel=1e-11)
    poly = riesz_polarization_poly(m)
    assert closed == pytest.approx(float(sum(c * n ** p for p, c in poly.items())), rel=1e-12)


def test_tn_values_table():
    table = {2: Fraction(1, 4), 4: Fraction(1, 8), 6: Fraction(1, 4), 8: Fraction(17, 16)}
    for m, c in table.items():
        assert tn_derivative_rational(m) == c
        for n in (1, 2, 7, 20):
            assert tn_derivative_value(n, m) == pytest.approx(float(c) * n ** m, rel=1e-12)
            assert tn_derivative_via_pm(n, m) == pytest.approx(float(c) * n ** m, rel=1e-11)


def test_tn_literal_misses_n_power():
    assert tn_derivative_literal(2, 2) == pytest.approx(0.25, rel=1e-14)
    assert tn_derivative_value(2, 2) / tn_derivative_literal(2, 2) == pytest.approx(4.0, rel=1e-14)
    with pytest.raises(InvalidInput):
        tn_derivative_literal(3, 3)


@pytest.mark.parametrize("n", [2, 3, 5])
@pytest.mark.parametrize("m", [2, 4])
def test_tn_against_finite_differences(n, m):
    fd = richardson_central(neg_log_tn(n), math.pi / n, m, 2e-2 / n)
    assert tn_derivative_value(n, m) == pytest.approx(fd, rel=1e-4)
    assert tn_derivative_value(n, m) == pytest.approx(tn_derivative_mp(n, m), rel=1e-10)


def test_tn_high_order_mpmath():
    for m in (6, 8, 10):
        for n in (1, 3):
            assert tn_derivative_value(n, m) == pytest.approx(tn_derivative_mp(n, m), rel=1e-8)
