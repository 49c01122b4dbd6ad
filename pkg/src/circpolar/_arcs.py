"""Compiled per-arc extremum solvers.

On an open arc (t_j, t_{j+1}) every kernel term g(t - t_k) is strictly convex
(an even, 2pi-periodic g that is convex and non-increasing on (0, pi] is convex
on (0, 2pi)), so the potential has exactly one stationary point there and its
derivative runs from -inf to +inf.  A bracketed Newton iteration on P' finds it.
"""
from __future__ import annotations

import math

import numpy as np
from numba import njit

_TWO_PI = 2.0 * math.pi
_MAXIT = 200


@njit(cache=True)
def _riesz_terms(r, rp, s):
    g = r ** (-s)
    g1 = -s * g / r * rp
    g2 = s * (s + 1.0) * g / (r * r) * rp * rp + 0.25 * s * g
    return g, g1, g2


@njit(cache=True)
def _kernel_terms(u, fam, s, coeffs):
    """g, g', g'' at t - t_k = 2u, using r = 2|sin u|, r' = sign(sin u) cos u."""
    su = math.sin(u)
    r = 2.0 * abs(su)
    rp = math.cos(u) if su > 0 else -math.cos(u)
    if fam == 0:
        g = -math.log(r)
        g1 = -rp / r
        g2 = rp * rp / (r * r) + 0.25
        return g, g1, g2
    if fam == 1:
        return _riesz_terms(r, rp, s)
    g = 0.0
    g1 = 0.0
    g2 = 0.0
    for k in range(1, coeffs.shape[0]):
        c = coeffs[k]
        if c != 0.0:
            a, b, d = _riesz_terms(r, rp, 2.0 * k)
            g += c * a
            g1 += c * b
            g2 += c * d
    return g, g1, g2


@njit(cache=True)
def _potential_d012(x, tt, fam, s, coeffs):
    p = 0.0
    p1 = 0.0
    p2 = 0.0
    for k in range(tt.shape[0]):
        u = 0.5 * (x - tt[k])
        if math.sin(u) == 0.0:
            return math.inf, 0.0, 0.0
        g, g1, g2 = _kernel_terms(u, fam, s, coeffs)
        p += g
        p1 += g1
        p2 += g2
    return p, p1, p2


@njit(cache=True)
def arc_minima(tt, fam, s, coeffs):
    """Locations and values of min P on each arc [t_j, t_{j+1}] of sorted ``tt``.

    A zero-width arc is the single point t_j, where P = +inf.
    """
    n = tt.shape[0]
    xs = np.empty(n)
    vals = np.empty(n)
    for j in range(n):
        lo = tt[j]
        hi = tt[j + 1] if j + 1 < n else tt[0] + _TWO_PI
        if not hi > lo:
            xs[j] = lo
            vals[j] = math.inf
            continue
        a = lo
        b = hi
        x = 0.5 * (a + b)
        for _ in range(_MAXIT):
            p, p1, p2 = _potential_d012(x, tt, fam, s, coeffs)
            if p1 > 0.0:
                b = x
            elif p1 < 0.0:
                a = x
            else:
                break
            xn = x - p1 / p2 if p2 > 0.0 else 0.5 * (a + b)
            if not (a < xn < b):
                xn = 0.5 * (a + b)
            tol = 1e-15 * max(1.0, abs(x))
            if abs(xn - x) <= tol or b - a <= tol:
                x = xn
                break
            x = xn
        xs[j] = x
        vals[j] = _potential_d012(x, tt, fam, s, coeffs)[0]
    return xs, vals


@njit(cache=True)
def modulus_at(x, tt):
    p = 1.0
    for k in range(tt.shape[0]):
        p *= 2.0 * abs(math.sin(0.5 * (x - tt[k])))
    return p


@njit(cache=True)
def arc_modulus_maxima(tt):
    """Locations and values of max |P(e^{it})| on each arc; zero-width arcs give 0."""
    n = tt.shape[0]
    xs = np.empty(n)
    vals = np.empty(n)
    coeffs = np.zeros(1)
    for j in range(n):
        lo = tt[j]
        hi = tt[j + 1] if j + 1 < n else tt[0] + _TWO_PI
        if not hi > lo:
            xs[j] = lo
            vals[j] = 0.0
            continue
        a = lo
        b = hi
        x = 0.5 * (a + b)
        # stationary point of log R = -P_log
        for _ in range(_MAXIT):
            p, p1, p2 = _potential_d012(x, tt, 0, 0.0, coeffs)
            if p1 > 0.0:
                b = x
            elif p1 < 0.0:
                a = x
            else:
                break
            xn = x - p1 / p2 if p2 > 0.0 else 0.5 * (a + b)
            if not (a < xn < b):
                xn = 0.5 * (a + b)
            tol = 1e-15 * max(1.0, abs(x))
            if abs(xn - x) <= tol or b - a <= tol:
                x = xn
                break
            x = xn
        xs[j] = x
        vals[j] = modulus_at(x, tt)
    return xs, vals
