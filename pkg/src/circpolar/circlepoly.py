"""Monic polynomials with all zeros on the unit circle, and the inverse
Bernstein-type inequality |P'|^2 >= (n/2)^2 (|P|^2 + (m^2 - |P|^2)_+) >= (nm/2)^2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import TWO_PI, Configuration, canonicalize, gaps
from .errors import InvalidInput, SingularPoint
from .potential import khrushchev_m


@dataclass(frozen=True)
class CirclePolynomial:
    zeros: Configuration

    def __post_init__(self):
        if self.zeros.n > 1 and float(gaps(self.zeros)[:-1].min()) <= 0.0:
            raise InvalidInput("zero angles must be strictly increasing")

    @classmethod
    def from_angles(cls, angles) -> "CirclePolynomial":
        return cls(canonicalize(angles))

    @property
    def n(self) -> int:
        return self.zeros.n

    @property
    def roots(self) -> np.ndarray:
        return np.exp(1j * self.zeros.array)


def modulus(p: CirclePolynomial, t):
    """R(t) = |P(e^{it})| = prod_j 2|sin((t - t_j)/2)|."""
    t = np.asarray(t, dtype=float)
    out = np.prod(2.0 * np.abs(np.sin(0.5 * (t[..., None] - p.zeros.array))), axis=-1)
    return float(out) if t.ndim == 0 else out


def q_product(omega: Configuration, t):
    """Q(t) = prod_j sin|(t - t_j)/2|, i.e. R(t) / 2^n."""
    t = np.asarray(t, dtype=float)
    out = np.prod(np.abs(np.sin(0.5 * (t[..., None] - omega.array))), axis=-1)
    return float(out) if t.ndim == 0 else out


def t_n(n: int, t):
    """T_n(t) = 2^{1-n} |sin(nt/2)|, the product Q for n equally spaced points."""
    return 2.0 ** (1 - n) * np.abs(np.sin(0.5 * n * np.asarray(t, dtype=float)))


def derivative_modulus(p: CirclePolynomial, t):
    """|P'(e^{it})| from the sum of sub-products, valid at the zeros too."""
    t = np.asarray(t, dtype=float)
    z = np.exp(1j * t)[..., None]
    diff = z - p.roots  # (..., n)
    n = p.n
    total = np.zeros(diff.shape[:-1], dtype=complex)
    for j in range(n):
        total = total + np.prod(np.delete(diff, j, axis=-1), axis=-1)
    out = np.abs(total)
    return float(out) if t.ndim == 0 else out


def _distance_to_zeros(p: CirclePolynomial, t) -> np.ndarray:
    d = np.remainder(np.asarray(t, dtype=float)[..., None] - p.zeros.array, TWO_PI)
    return np.minimum(d, TWO_PI - d).min(axis=-1)


def _require_regular(p: CirclePolynomial, t, eps: float = 1e-12):
    if np.any(_distance_to_zeros(p, t) <= eps):
        raise SingularPoint("t coincides with a zero of P")


def phase_derivative_check(p: CirclePolynomial, t: float, atol: float = 1e-10) -> bool:
    """Re sum_j e^{it} / (e^{it} - e^{it_j}) equals n/2."""
    _require_regular(p, t)
    z = np.exp(1j * t)
    val = np.sum(z / (z - p.roots)).real
    return abs(val - 0.5 * p.n) <= atol


def modulus_derivative(p: CirclePolynomial, t):
    """R'(t) = R(t) * (1/2) sum_j cot((t - t_j)/2), away from zeros."""
    t = np.asarray(t, dtype=float)
    half = 0.5 * (t[..., None] - p.zeros.array)
    return modulus(p, t) * 0.5 * np.sum(np.cos(half) / np.sin(half), axis=-1)


def derivative_identity_check(p: CirclePolynomial, t):
    """Relative residual of |P'|^2 = R'^2 + (n/2)^2 R^2 (vectorised over t)."""
    _require_regular(p, t)
    lhs = np.asarray(derivative_modulus(p, t)) ** 2
    R = np.asarray(modulus(p, t))
    Rp = np.asarray(modulus_derivative(p, t))
    res = np.abs(lhs - (Rp ** 2 + (0.5 * p.n) ** 2 * R ** 2)) / lhs
    return float(res) if np.ndim(t) == 0 else res


def khrushchev_inequality_margins(p: CirclePolynomial, t, m: float | None = None):
    """Both inequality margins, each normalised by (nm/2)^2.

    first  = (|P'|^2 - (n/2)^2 max(|P|^2, m^2)) / (nm/2)^2
    second = ((n/2)^2 max(|P|^2, m^2) - (nm/2)^2) / (nm/2)^2
    """
    if m is None:
        m = khrushchev_m(p.zeros)
    n = p.n
    P2 = np.asarray(modulus(p, t)) ** 2
    D2 = np.asarray(derivative_modulus(p, t)) ** 2
    middle = (0.5 * n) ** 2 * (P2 + np.maximum(m * m - P2, 0.0))
    scale = (0.5 * n * m) ** 2
    return (D2 - middle) / scale, (middle - scale) / scale


def khrushchev_inequality_check(p: CirclePolynomial, t, m: float | None = None):
    """Smaller of the two normalised margins; non-negative when the inequality holds."""
    first, second = khrushchev_inequality_margins(p, t, m)
    out = np.minimum(first, second)
    return float(out) if np.ndim(t) == 0 else out


def check_on_grid(p: CirclePolynomial, grid: int = 1024, zero_margin: float = 1e-6,
                  m: float | None = None) -> dict:
    """Worst inequality margin and identity residual on a uniform t-grid."""
    if m is None:
        m = khrushchev_m(p.zeros)
    t = np.arange(grid) * (TWO_PI / grid)
    margin = float(np.min(khrushchev_inequality_check(p, t, m)))
    ok = _distance_to_zeros(p, t) >= zero_margin
    residual = float(np.max(derivative_identity_check(p, t[ok]))) if ok.any() else 0.0
    return {"m": float(m), "worst_margin": margin, "worst_identity_residual": residual}
