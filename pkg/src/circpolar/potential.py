"""Potentials P(t) = sum_j g(t - t_j) of a configuration and their arc-wise extrema."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from . import _arcs
from .config import TWO_PI, Configuration, gaps, rotate
from .errors import DegenerateArc, EmptyDomain
from .kernels import KernelSpec

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def eval_potential(omega: Configuration, k: KernelSpec, t):
    t_arr = np.asarray(t, dtype=float)
    vals = k(t_arr[..., None] - omega.array).sum(axis=-1)
    return float(vals) if t_arr.ndim == 0 else vals


def rotation_identity_check(omega: Configuration, k: KernelSpec, gamma: float, t: float,
                            rtol: float = 1e-10) -> bool:
    lhs = eval_potential(rotate(omega, gamma), k, t)
    rhs = eval_potential(omega, k, t - gamma)
    if math.isinf(lhs) or math.isinf(rhs):
        return lhs == rhs
    return abs(lhs - rhs) <= rtol * max(abs(lhs), abs(rhs), 1.0)


def golden_section(f, a: float, b: float, tol: float = 1e-12, maximize: bool = False):
    """Golden-section search for an extremum of a unimodal ``f`` on [a, b].

    Returns (x, f(x)).
    """
    sign = -1.0 if maximize else 1.0
    h = b - a
    c = b - INV_PHI * h
    d = a + INV_PHI * h
    fc, fd = sign * f(c), sign * f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = sign * f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = sign * f(d)
        if c >= d:  # bracket below float resolution
            break
    x = 0.5 * (a + b)
    return x, f(x)


@dataclass
class ArcReport:
    j: int
    t_lo: float
    t_hi: float
    min_value: float
    min_at: float
    max_value: float
    max_at: float

    def to_dict(self) -> dict:
        return asdict(self)


def _arc_bounds(omega: Configuration, j: int) -> tuple[float, float]:
    return omega.angle(j), omega.angle(j + 1)


def _sample_then_refine(f, lo: float, hi: float, samples: int, maximize: bool):
    xs = lo + (hi - lo) * np.arange(1, samples + 1) / (samples + 1)
    v = np.asarray(f(xs), dtype=float)
    i = int(np.argmax(v) if maximize else np.argmin(v))
    a = xs[i - 1] if i > 0 else lo
    b = xs[i + 1] if i + 1 < samples else hi
    x, fx = golden_section(f, a, b, maximize=maximize)
    if (fx > v[i]) if not maximize else (fx < v[i]):
        return float(xs[i]), float(v[i])
    return float(x), float(fx)


def arc_extrema(omega: Configuration, k: KernelSpec, j: int, samples: int = 2048) -> ArcReport:
    """Minimum and maximum of P over arc j = [t_j, t_{j+1}] (0-based j).

    Dense interior sampling locates the best bracket; golden-section search
    refines the minimum.  The potential is infinite at both endpoints, so the
    reported maximum is the largest interior sample.
    """
    lo, hi = _arc_bounds(omega, j)
    if not hi > lo:
        raise DegenerateArc(f"arc {j} has zero width")

    def f(x):
        return eval_potential(omega, k, x)

    min_at, min_value = _sample_then_refine(f, lo, hi, samples, maximize=False)
    xs = lo + (hi - lo) * np.arange(1, samples + 1) / (samples + 1)
    v = f(xs)
    i = int(np.argmax(v))
    return ArcReport(j % omega.n, lo, hi, min_value, min_at, float(v[i]), float(xs[i]))


def arc_minima(omega: Configuration, k: KernelSpec) -> tuple[np.ndarray, np.ndarray]:
    """(locations, values) of the minimum of P on every arc; zero-width arcs give +inf."""
    return _arcs.arc_minima(omega.array, *k.fast_args())


def khrushchev_arc_maxima(omega: Configuration) -> tuple[np.ndarray, np.ndarray]:
    return _arcs.arc_modulus_maxima(omega.array)


def khrushchev_m(omega: Configuration, method: str = "newton", samples: int = 2048) -> float:
    """min over arcs of max_{t in arc} |prod_k (e^{it} - e^{it_k})|.

    A zero-width arc is a single zero of the polynomial and contributes 0.
    ``method="sample"`` uses dense sampling plus golden-section refinement,
    keeping one sample step away from the endpoints where the modulus vanishes.
    """
    if method == "newton":
        return float(khrushchev_arc_maxima(omega)[1].min())
    tt = omega.array
    best = math.inf
    for j in range(omega.n):
        lo, hi = _arc_bounds(omega, j)
        if not hi > lo:
            return 0.0

        def modulus(x):
            return np.prod(2.0 * np.abs(np.sin(0.5 * (np.asarray(x)[..., None] - tt))), axis=-1)

        _, v = _sample_then_refine(modulus, lo, hi, samples, maximize=True)
        best = min(best, v)
    return float(best)


def minmaxmin_value(omega: Configuration, k: KernelSpec, method: str = "newton",
                    samples: int = 2048) -> float:
    """max over arcs of the arc-wise minimum of P."""
    return float(np.max(_arc_min_values(omega, k, method, samples)))


def polarization_value(omega: Configuration, k: KernelSpec, method: str = "newton",
                       samples: int = 2048) -> float:
    """Global minimum of P over the circle."""
    return float(np.min(_arc_min_values(omega, k, method, samples)))


def _arc_min_values(omega, k, method, samples) -> np.ndarray:
    if method == "newton":
        return arc_minima(omega, k)[1]
    out = np.empty(omega.n)
    for j in range(omega.n):
        lo, hi = _arc_bounds(omega, j)
        out[j] = arc_extrema(omega, k, j, samples).min_value if hi > lo else math.inf
    return out


def restricted_set_E(omega: Configuration, atol: float = 1e-12) -> list[tuple[float, float]]:
    """The circle minus the open arcs of half-width pi/n around each point.

    Returned as closed intervals (lo, hi) with lo in [0, 2pi) sorted ascending;
    hi may exceed 2pi for an interval wrapping through 0.  Intervals that are
    empty by no more than ``atol`` are kept as single points.
    """
    n = omega.n
    half = math.pi / n
    out = []
    for j, d in enumerate(gaps(omega)):
        length = d - 2.0 * half
        if length < -atol:
            continue
        lo = float(np.remainder(omega.angles[j] + half, TWO_PI))
        if lo >= TWO_PI:
            lo = 0.0
        out.append((lo, lo + max(float(length), 0.0)))
    out.sort()
    return out


def restricted_polarization_value(omega: Configuration, k: KernelSpec) -> float:
    """Minimum of P over E(omega)."""
    intervals = restricted_set_E(omega)
    if not intervals:
        raise EmptyDomain("E(omega) is empty")

    def f(x):
        return eval_potential(omega, k, x)

    best = math.inf
    for lo, hi in intervals:
        cand = [f(lo), f(hi)]
        if hi > lo:
            cand.append(golden_section(f, lo, hi)[1])
        best = min(best, *cand)
    return float(best)


def equally_spaced_value(n: int, k: KernelSpec) -> float:
    """P of the n equally spaced points at the arc midpoint pi/n."""
    tk = 2.0 * math.pi * np.arange(n) / n
    return float(math.fsum(np.asarray(k(math.pi / n - tk), dtype=float)))
