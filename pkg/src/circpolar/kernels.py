"""Kernel families on the circle: logarithmic, Riesz s, and even derivatives of the log kernel.

All kernels are functions of the chordal distance r = 2|sin(t/2)|.  The log
kernel is negative for |t| > pi/3; validation therefore skips the positivity
requirement for it (adding a constant to g shifts every min-max-min and
polarization value by the same amount).
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .config import TWO_PI
from .errors import InvalidInput

LOG, RIESZ, LOGDERIV = 0, 1, 2
_FAMILIES = {"log": LOG, "riesz": RIESZ, "logderiv": LOGDERIV}


def _chord(t):
    """Return (r, singular) with r = 2 sin(|t*|/2), t* = t reduced to [-pi, pi]."""
    t = np.asarray(t, dtype=float)
    tr = t - TWO_PI * np.round(t / TWO_PI)
    singular = tr == 0.0
    r = 2.0 * np.sin(0.5 * np.abs(tr))
    return r, singular


def _scalarize(x, like):
    return float(x) if np.ndim(like) == 0 else x


def eval_log_kernel(t):
    r, singular = _chord(t)
    with np.errstate(divide="ignore"):
        out = np.where(singular, np.inf, -np.log(np.where(singular, 1.0, r)))
    return _scalarize(out, t)


def eval_riesz_kernel(t, s: float):
    if not s > 0:
        raise InvalidInput("Riesz exponent must be positive")
    r, singular = _chord(t)
    out = np.where(singular, np.inf, np.where(singular, 1.0, r) ** (-s))
    return _scalarize(out, t)


@dataclass(frozen=True)
class PmPolynomial:
    """p_m with g_m(t) = p_m(r^-2); ``coeffs[k]`` multiplies x^k."""

    m: int
    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0.0 * np.asarray(x, dtype=float)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


def _check_even_order(m) -> int:
    if isinstance(m, bool) or not isinstance(m, (int, np.integer)) or m < 2 or m % 2:
        raise InvalidInput(f"derivative order must be an even integer >= 2, got {m!r}")
    return int(m)


def pm_polynomial(m: int) -> PmPolynomial:
    """Coefficients of p_m from p_2(x) = x and
    p_{m+2}(x) = (6x^2 - x) p_m'(x) + (4x^3 - x^2) p_m''(x).

    Python integers are unbounded, so no cap on m is needed.
    """
    m = _check_even_order(m)
    p = [0, 1]
    for _ in range(m // 2 - 1):
        d1 = [k * p[k] for k in range(1, len(p))]  # d1[i] multiplies x^i
        d2 = [k * (k - 1) * p[k] for k in range(2, len(p))]
        q = [0] * (len(p) + 1)
        for i, c in enumerate(d1):
            q[i + 2] += 6 * c
            q[i + 1] -= c
        for i, c in enumerate(d2):
            q[i + 3] += 4 * c
            q[i + 2] -= c
        while len(q) > 1 and q[-1] == 0:
            q.pop()
        p = q
    return PmPolynomial(m, tuple(p))


def eval_gm_kernel(t, m: int):
    poly = pm_polynomial(m)
    r, singular = _chord(t)
    x = np.where(singular, 1.0, r) ** -2.0
    out = np.where(singular, np.inf, poly(x))
    return _scalarize(out, t)


@dataclass(frozen=True)
class KernelSpec:
    family: str
    s: float | None = None
    m: int | None = None
    _pm: PmPolynomial | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise InvalidInput(f"unknown kernel family {self.family!r}")
        if self.family == "riesz":
            if self.s is None or not float(self.s) > 0:
                raise InvalidInput("Riesz kernel needs s > 0")
            object.__setattr__(self, "s", float(self.s))
        if self.family == "logderiv":
            object.__setattr__(self, "m", _check_even_order(self.m))
            object.__setattr__(self, "_pm", pm_polynomial(self.m))

    @classmethod
    def log(cls) -> "KernelSpec":
        return cls("log")

    @classmethod
    def riesz(cls, s: float) -> "KernelSpec":
        return cls("riesz", s=s)

    @classmethod
    def logderiv(cls, m: int) -> "KernelSpec":
        return cls("logderiv", m=m)

    @property
    def positive(self) -> bool:
        return self.family != "log"

    def __call__(self, t):
        if self.family == "log":
            return eval_log_kernel(t)
        if self.family == "riesz":
            return eval_riesz_kernel(t, self.s)
        return eval_gm_kernel(t, self.m)

    def to_dict(self) -> dict:
        if self.family == "riesz":
            return {"family": "riesz", "s": self.s}
        if self.family == "logderiv":
            return {"family": "logderiv", "m": self.m}
        return {"family": "log"}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "KernelSpec":
        fam = d.get("family")
        if fam == "riesz":
            return cls.riesz(d.get("s"))
        if fam == "logderiv":
            return cls.logderiv(d.get("m"))
        if fam == "log":
            return cls.log()
        raise InvalidInput(f"unknown kernel family {fam!r}")

    @classmethod
    def from_json(cls, text: str) -> "KernelSpec":
        return cls.from_dict(json.loads(text))

    @classmethod
    def parse(cls, text: str) -> "KernelSpec":
        """Parse ``log``, ``riesz:2``, ``logderiv:4`` or a JSON object."""
        text = text.strip()
        if text.startswith("{"):
            return cls.from_json(text)
        name, _, arg = text.partition(":")
        name = name.lower()
        try:
            if name == "log" and not arg:
                return cls.log()
            if name == "riesz":
                return cls.riesz(float(arg))
            if name == "logderiv":
                return cls.logderiv(int(arg))
        except ValueError as exc:
            raise InvalidInput(f"bad kernel {text!r}") from exc
        raise InvalidInput(f"bad kernel {text!r}")

    def fast_args(self) -> tuple[int, float, np.ndarray]:
        """(family code, exponent, p_m coefficients) for the compiled arc solvers."""
        if self.family == "logderiv":
            return LOGDERIV, 0.0, np.array(self._pm.coeffs, dtype=float)
        return _FAMILIES[self.family], float(self.s or 0.0), np.zeros(1)

    def label(self) -> str:
        if self.family == "riesz":
            return f"riesz:{self.s:g}"
        if self.family == "logderiv":
            return f"logderiv:{self.m}"
        return "log"


@dataclass
class KernelReport:
    passed: bool
    evenness_error: float
    periodicity_error: float
    monotone_margin: float
    convexity_margin: float
    positivity_checked: bool
    min_value: float

    @property
    def worst_margin(self) -> float:
        return min(self.monotone_margin, self.convexity_margin)


def validate_kernel_contract(
    k: KernelSpec | Callable, grid_size: int = 1000, rtol: float = 1e-9
) -> KernelReport:
    """Check evenness, 2pi-periodicity, monotone decrease and strict midpoint
    convexity of a kernel on the uniform grid t_i = i*pi/N, i = 1..N.

    The monotone margin is min_i g(t_i) - g(t_{i+1}); the convexity margin is
    min_i (g(t_{i-1}) + g(t_{i+1}))/2 - g(t_i).  Positivity is only checked for
    kernels that claim it.
    """
    if grid_size < 3:
        raise InvalidInput("grid_size must be >= 3")
    g = k
    t = np.arange(1, grid_size + 1) * (math.pi / grid_size)
    v = np.asarray(g(t), dtype=float)
    scale = np.maximum(np.abs(v), 1e-300)
    even = float(np.max(np.abs(v - np.asarray(g(-t))) / scale))
    period = float(np.max(np.abs(v - np.asarray(g(t + TWO_PI))) / scale))
    mono = float(np.min(v[:-1] - v[1:]))
    conv = float(np.min(0.5 * (v[:-2] + v[2:]) - v[1:-1]))
    check_pos = bool(getattr(k, "positive", True))
    ok = even <= rtol and period <= rtol and mono >= 0.0 and conv > 0.0
    if check_pos:
        ok = ok and bool(np.all(v > 0))
    return KernelReport(ok, even, period, mono, conv, check_pos, float(v.min()))
