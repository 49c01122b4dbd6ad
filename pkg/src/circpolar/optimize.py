"""Numerical search over configurations for the three extremal problems:

* minmaxmin    -- minimise max_j min_{arc j} P
* polarization -- maximise min_t P
* khrushchev   -- maximise min_j max_{arc j} |P(e^{it})|

Configurations are parametrised with t_1 = 0 and gaps 2pi * softmax(z, 0),
z in R^{n-1}.  Each restart runs Nelder-Mead; the best restart is then polished
on the epigraph form (the objective is a max/min of smooth arc functions, so
it has a kink exactly at the optimum, where simplex methods stall).
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from . import _arcs
from .config import TWO_PI, Configuration, max_gap_deviation, random_configuration, rotate
from .errors import InvalidInput
from .kernels import KernelSpec
from .potential import equally_spaced_value, restricted_polarization_value

PROBLEMS = ("minmaxmin", "polarization", "khrushchev")


@dataclass
class OptimReport:
    problem: str
    n: int
    best_config: Configuration
    best_value: float
    predicted_value: float
    gap_deviation: float
    evaluations: int
    seed: int
    restarts: int
    kernel: KernelSpec | None = None
    bound_crossing: float = -math.inf
    restricted_value: float | None = None
    history: list[float] = field(default_factory=list, repr=False)

    @property
    def error(self) -> float:
        return abs(self.best_value - self.predicted_value)

    def to_dict(self) -> dict:
        return {
            "problem": self.problem,
            "n": self.n,
            "kernel": self.kernel.to_dict() if self.kernel else None,
            "best_config": list(self.best_config.angles),
            "best_value": self.best_value,
            "predicted_value": self.predicted_value,
            "gap_deviation": self.gap_deviation,
            "evaluations": self.evaluations,
            "seed": self.seed,
            "restarts": self.restarts,
            "bound_crossing": self.bound_crossing,
            "restricted_value": self.restricted_value,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def angles_from_params(z: np.ndarray) -> np.ndarray:
    w = np.append(z, 0.0)
    w = np.exp(w - w.max())
    g = TWO_PI * w / w.sum()
    return np.concatenate([[0.0], np.cumsum(g[:-1])])


def params_from_config(omega: Configuration) -> np.ndarray:
    t = rotate(omega, -omega.angles[0]).array
    g = np.diff(np.append(t, TWO_PI))
    g = np.maximum(g, 1e-300)
    return np.log(g[:-1] / g[-1])


class _Objective:
    """Arc-wise values of one problem, with an evaluation log for bound checks."""

    def __init__(self, problem: str, kernel: KernelSpec | None, record: bool = False):
        self.problem = problem
        self.maximize = problem != "minmaxmin"
        if problem == "khrushchev":
            self._arcs = lambda t: _arcs.arc_modulus_maxima(t)[1]
        else:
            args = kernel.fast_args()
            self._arcs = lambda t: _arcs.arc_minima(t, *args)[1]
        self.evaluations = 0
        self.worst = math.inf if not self.maximize else -math.inf
        self.record = record
        self.history: list[float] = []

    def arcs(self, z) -> np.ndarray:
        vals = self._arcs(angles_from_params(np.asarray(z, dtype=float)))
        value = self.aggregate(vals)
        self.evaluations += 1
        if self.maximize:
            self.worst = max(self.worst, value)
        else:
            self.worst = min(self.worst, value)
        if self.record:
            self.history.append(value)
        return vals

    def aggregate(self, vals) -> float:
        if self.problem == "minmaxmin":
            return float(np.max(vals))
        return float(np.min(vals))

    def value(self, z) -> float:
        return self.aggregate(self.arcs(z))

    def loss(self, z) -> float:
        v = self.value(z)
        if math.isnan(v):
            return math.inf
        return -v if self.maximize else v


def _nelder_mead(obj: _Objective, z0, xatol: float, maxfev: int):
    res = minimize(obj.loss, z0, method="Nelder-Mead",
                   options={"xatol": xatol, "fatol": 0.0, "maxfev": maxfev, "adaptive": True})
    return res.x, res.fun


def _polish(obj: _Objective, z0, loss0: float):
    """SLSQP on the epigraph: min tau s.t. arcs <= tau (or max tau s.t. arcs >= tau)."""
    scale = max(1.0, abs(loss0))
    sign = 1.0 if obj.maximize else -1.0
    m = len(z0)

    def cons(x):
        a = obj.arcs(x[:m]) / scale
        return sign * (a - x[m])

    x0 = np.append(z0, -loss0 / scale if obj.maximize else loss0 / scale)
    res = minimize(lambda x: -x[m] if obj.maximize else x[m], x0,
                   jac=lambda x: np.append(np.zeros(m), -1.0 if obj.maximize else 1.0),
                   method="SLSQP", constraints=[{"type": "ineq", "fun": cons}],
                   options={"ftol": 1e-16, "maxiter": 200})
    z = res.x[:m]
    loss = obj.loss(z)
    return (z, loss) if loss < loss0 else (np.asarray(z0), loss0)


def _predicted(problem: str, n: int, kernel: KernelSpec | None) -> float:
    if problem == "khrushchev":
        return 2.0
    return equally_spaced_value(n, kernel)


def optimize(problem: str, n: int, kernel: KernelSpec | None = None, restarts: int = 32,
             seed: int = 0, initial: list[Configuration] | None = None, xatol: float = 1e-9,
             maxfev: int | None = None, polish: bool = True, record: bool = False) -> OptimReport:
    if problem not in PROBLEMS:
        raise InvalidInput(f"unknown problem {problem!r}")
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 2:
        raise InvalidInput("n must be an integer >= 2")
    if problem != "khrushchev" and kernel is None:
        raise InvalidInput(f"{problem} needs a kernel")
    if problem == "khrushchev":
        kernel = None
    if restarts < 1:
        raise InvalidInput("restarts must be >= 1")
    n = int(n)
    rng = np.random.default_rng(seed)
    obj = _Objective(problem, kernel, record)
    maxfev = maxfev or 400 * (n - 1)

    starts = [params_from_config(c) for c in (initial or [])]
    while len(starts) < restarts:
        starts.append(params_from_config(random_configuration(n, rng)))

    results = []
    for z0 in starts:
        z, loss = _nelder_mead(obj, z0, xatol, maxfev)
        results.append((loss, tuple(angles_from_params(z)), z))
    results.sort(key=lambda r: (r[0], r[1]))
    loss, _, z = results[0]
    if polish:
        z, loss = _polish(obj, z, loss)
        z, loss = _nelder_mead(obj, z, xatol, maxfev)
    best = Configuration(tuple(float(x) for x in angles_from_params(z)))
    value = -loss if obj.maximize else loss
    predicted = _predicted(problem, n, kernel)
    crossing = obj.worst - predicted if obj.maximize else predicted - obj.worst
    report = OptimReport(problem, n, best, float(value), predicted, max_gap_deviation(best),
                         obj.evaluations, seed, restarts, kernel, float(crossing),
                         history=obj.history)
    if problem == "polarization":
        report.restricted_value = restricted_polarization_value(best, kernel)
    return report


def optimize_minmaxmin(n: int, k: KernelSpec, restarts: int = 32, seed: int = 0, **kw) -> OptimReport:
    return optimize("minmaxmin", n, k, restarts, seed, **kw)


def optimize_polarization(n: int, k: KernelSpec, restarts: int = 32, seed: int = 0, **kw) -> OptimReport:
    return optimize("polarization", n, k, restarts, seed, **kw)


def optimize_khrushchev(n: int, restarts: int = 32, seed: int = 0, **kw) -> OptimReport:
    return optimize("khrushchev", n, None, restarts, seed, **kw)
