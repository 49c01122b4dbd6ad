"""Closed forms for the Riesz polarization constants M_n^{2m} of the circle and
for the equally spaced log-derivative values -(log|T_n|)^{(m)}(pi/n).

Every quantity is homogeneous in pi: zeta(2k) = q_k pi^{2k} and
alpha_j(s) = a_j(s) pi^{2j} with rational q_k, a_j(s) for rational s.  The
exact routes work with those rational parts; the float routes follow the same
recurrences in double precision.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

import numpy as np

from .errors import InvalidInput
from .kernels import pm_polynomial


# power series in w = z^2, coefficient lists starting at w^0 with leading 1

def series_log(a: list) -> list:
    """Formal log of a series with a[0] == 1."""
    n = len(a)
    out = [a[0] * 0] * n
    for k in range(1, n):
        acc = a[k] * k
        for i in range(1, k):
            acc -= i * out[i] * a[k - i]
        out[k] = acc / k
    return out


def series_exp(b: list) -> list:
    """Formal exp of a series with b[0] == 0."""
    n = len(b)
    out = [b[0] * 0 + 1] + [b[0] * 0] * (n - 1)
    for k in range(1, n):
        acc = b[0] * 0
        for i in range(1, k + 1):
            acc += i * b[i] * out[k - i]
        out[k] = acc / k
    return out


def _sinc_series(J: int, pi_sq) -> list:
    """Coefficients of sinc z = sin(pi z)/(pi z) in powers of z^2."""
    return [(-1) ** k * pi_sq ** k / factorial(2 * k + 1) for k in range(J + 1)]


@dataclass(frozen=True)
class SincSeriesCoeffs:
    s: float
    alphas: tuple

    @property
    def J(self) -> int:
        return len(self.alphas) - 1


def alpha_coeffs(s: float, J: int) -> SincSeriesCoeffs:
    """alpha_j(s), j <= J, from (sinc z)^{-s} = sum_j alpha_j(s) z^{2j}."""
    if J < 0:
        raise InvalidInput("J must be >= 0")
    log_sinc = series_log(_sinc_series(J, math.pi ** 2))
    alphas = series_exp([-s * c for c in log_sinc])
    return SincSeriesCoeffs(float(s), tuple(float(a) for a in alphas))


@lru_cache(maxsize=None)
def alpha_rational(s: Fraction, J: int) -> tuple[Fraction, ...]:
    """Rational parts a_j(s) with alpha_j(s) = a_j(s) pi^{2j}."""
    log_sinc = series_log(_sinc_series(J, Fraction(1)))
    return tuple(series_exp([-Fraction(s) * c for c in log_sinc]))


@lru_cache(maxsize=None)
def bernoulli_even(k: int) -> Fraction:
    """B_{2k} by the binomial recurrence sum_{r<=m} C(m+1, r) B_r = 0 (B_1 = -1/2)."""
    if k < 0:
        raise InvalidInput("k must be >= 0")
    if k == 0:
        return Fraction(1)
    m = 2 * k
    acc = Fraction(m + 1) * Fraction(-1, 2)
    for j in range(k):
        acc += comb(m + 1, 2 * j) * bernoulli_even(j)
    return -acc / (m + 1)


def zeta_even_rational(k: int) -> Fraction:
    """q with zeta(2k) = q pi^{2k}."""
    if k < 1:
        raise InvalidInput("k must be >= 1")
    return (-1) ** (k + 1) * bernoulli_even(k) * 2 ** (2 * k - 1) / factorial(2 * k)


def zeta_even(k: int) -> float:
    return float(zeta_even_rational(k)) * math.pi ** (2 * k)


@dataclass(frozen=True)
class ZetaTable:
    values: tuple[float, ...]  # zeta(2), zeta(4), ..., zeta(2K)

    def __getitem__(self, k: int) -> float:
        return self.values[k - 1]


def zeta_table(K: int) -> ZetaTable:
    return ZetaTable(tuple(zeta_even(k) for k in range(1, K + 1)))


def _check_positive(name: str, v: int) -> int:
    if isinstance(v, bool) or not isinstance(v, (int, np.integer)) or v < 1:
        raise InvalidInput(f"{name} must be a positive integer")
    return int(v)


def riesz_polarization_closed(n: int, m: int) -> float:
    """M_n^{2m} = 2/(2pi)^{2m} sum_{k=1}^m n^{2k} zeta(2k) alpha_{m-k}(2m) (2^{2k} - 1)."""
    n = _check_positive("n", n)
    m = _check_positive("m", m)
    alphas = alpha_coeffs(2 * m, m).alphas
    terms = [n ** (2 * k) * zeta_even(k) * alphas[m - k] * (2 ** (2 * k) - 1) for k in range(1, m + 1)]
    return 2.0 / (2.0 * math.pi) ** (2 * m) * math.fsum(terms)


def riesz_polarization_poly(m: int) -> dict[int, Fraction]:
    """Exact coefficients of M_n^{2m} as a polynomial in n: {power: coefficient}."""
    m = _check_positive("m", m)
    a = alpha_rational(Fraction(2 * m), m)
    return {
        2 * k: Fraction(2, 2 ** (2 * m)) * zeta_even_rational(k) * a[m - k] * (2 ** (2 * k) - 1)
        for k in range(1, m + 1)
    }


def riesz_polarization_direct(n: int, s: float) -> float:
    """sum_k |e^{i pi/n} - e^{2k pi i/n}|^{-s}."""
    n = _check_positive("n", n)
    if not s > 0:
        raise InvalidInput("s must be positive")
    k = np.arange(1, n + 1)
    chord = 2.0 * np.abs(np.sin(math.pi * (2 * k - 1) / (2 * n)))
    return math.fsum(chord ** (-float(s)))


def _check_even(m) -> int:
    if isinstance(m, bool) or not isinstance(m, (int, np.integer)) or m < 2 or m % 2:
        raise InvalidInput("m must be an even integer >= 2")
    return int(m)


def tn_derivative_literal(n: int, m: int) -> float:
    """The formula 2/(2pi)^m zeta(m) (m-1)! (2^m - 1) with no n-dependence."""
    _check_positive("n", n)
    m = _check_even(m)
    return 2.0 / (2.0 * math.pi) ** m * zeta_even(m // 2) * factorial(m - 1) * (2 ** m - 1)


def tn_derivative_value(n: int, m: int) -> float:
    """-(log|T_n|)^{(m)}(pi/n) = 2/(2pi)^m zeta(m) (m-1)! (2^m - 1) n^m.

    Each derivative of -log sin(nt/2) brings a factor n, hence n^m.
    """
    return tn_derivative_literal(n, m) * float(n) ** m


def tn_derivative_rational(m: int) -> Fraction:
    """Exact c with -(log|T_n|)^{(m)}(pi/n) = c n^m."""
    m = _check_even(m)
    return Fraction(2, 2 ** m) * zeta_even_rational(m // 2) * factorial(m - 1) * (2 ** m - 1)


def tn_derivative_via_pm(n: int, m: int) -> float:
    """sum_k c_k M_n^{2k}, with c_k the coefficients of p_m."""
    coeffs = pm_polynomial(m).coeffs
    return math.fsum(c * riesz_polarization_closed(n, k) for k, c in enumerate(coeffs) if k > 0 and c)
