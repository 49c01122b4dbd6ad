"""Gap transport between two configurations by symmetric two-point moves.

Given a source omega and a target omega', find Delta >= 0 with a zero entry at
the pivot l such that contracting every gap j of omega by Delta_j (t_j moves up
by Delta_j, t_{j+1} moves down by Delta_j) produces omega' + gamma.  Seen from
the pivot arc [t_l, t_{l+1}], each contraction pushes a pair of points apart
across the complementary arc, so for a strictly convex kernel

    P_{omega'}(t - gamma) <= P_omega(t),   t in [t_l, t_{l+1}],

and [t_l, t_{l+1}] is contained in [t'_l + gamma, t'_{l+1} + gamma].  The gap
equations read

    d'_j = d_j + Delta_{j-1} - 2 Delta_j + Delta_{j+1}   (cyclic),

a singular circulant system solved by discrete Fourier diagonalisation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .config import TWO_PI, Configuration, canonicalize, gaps, separation
from .errors import DegenerateConfiguration, InvalidInput, MoveTooLarge
from .kernels import KernelSpec
from .potential import eval_potential

MAX_DOUBLINGS = 20


@dataclass(frozen=True)
class DeltaPlan:
    delta: tuple[float, ...]
    pivot: int
    gamma: float
    m_split: int
    residual: float

    @property
    def array(self) -> np.ndarray:
        return np.array(self.delta)


def _wrap(x):
    """Reduce to (-pi, pi]."""
    return np.asarray(x) - TWO_PI * np.round(np.asarray(x) / TWO_PI)


def gap_laplacian(delta) -> np.ndarray:
    """(Delta_{j-1} - 2 Delta_j + Delta_{j+1})_j, cyclic."""
    delta = np.asarray(delta, dtype=float)
    return np.roll(delta, 1) - 2.0 * delta + np.roll(delta, -1)


def solve_cyclic_laplacian(rhs) -> np.ndarray:
    """Minimum-norm solution of gap_laplacian(x) = rhs (rhs must sum to zero)."""
    rhs = np.asarray(rhs, dtype=float)
    n = rhs.size
    lam = 2.0 * np.cos(TWO_PI * np.arange(n) / n) - 2.0
    rhs_hat = np.fft.fft(rhs)
    x_hat = np.zeros_like(rhs_hat)
    x_hat[1:] = rhs_hat[1:] / lam[1:]
    return np.fft.ifft(x_hat).real


def displacements(delta) -> np.ndarray:
    """Net shift of each point: t_k moves by Delta_k - Delta_{k-1}."""
    delta = np.asarray(delta, dtype=float)
    return delta - np.roll(delta, 1)


def solve_delta(source: Configuration, target: Configuration) -> DeltaPlan:
    if source.n != target.n:
        raise InvalidInput("source and target must have the same number of points")
    sep = separation(source)
    if sep <= 0.0:
        raise DegenerateConfiguration("source has coincident points")
    d, d2 = gaps(source), gaps(target)
    rhs = d2 - d
    delta = solve_cyclic_laplacian(rhs - rhs.mean())
    delta = delta - delta.min()
    delta[delta < 0.0] = 0.0
    pivot = int(np.argmin(delta))
    delta[pivot] = 0.0
    # identical gap vectors: report the exact identity plan
    if np.max(np.abs(rhs)) == 0.0:
        delta[:] = 0.0
    residual = float(np.max(np.abs(d + gap_laplacian(delta) - d2)))
    gamma = float(np.remainder(source.angles[0] + displacements(delta)[0] - target.angles[0], TWO_PI))
    if gamma >= TWO_PI or abs(_wrap(gamma)) < 1e-15:
        gamma = 0.0
    sep2 = separation(target)
    limit = 0.5 * (min(sep, sep2) if sep2 > 0.0 else sep)
    dmax = float(delta.max())
    m_split = int(math.floor(dmax / limit)) + 1
    return DeltaPlan(tuple(float(x) for x in delta), pivot, gamma, m_split, residual)


def apply_two_point_move(omega: Configuration, j: int, delta: float) -> Configuration:
    """Move t_{j-1} down and t_j up by ``delta`` (0-based, cyclic)."""
    if not 0.0 <= delta < 0.5 * separation(omega):
        raise MoveTooLarge(f"move {delta!r} must lie in [0, sep/2)")
    t = omega.array
    n = omega.n
    j = j % n
    t[(j - 1) % n] -= delta
    t[j] += delta
    return canonicalize(t)


def contract_gap(angles: np.ndarray, j: int, delta: float) -> None:
    """In place: t_j up and t_{j+1} down by ``delta`` on unwrapped labelled angles."""
    n = angles.size
    angles[j] += delta
    angles[(j + 1) % n] -= delta


def two_point_inequality_check(t1: float, t2: float, delta: float, k: KernelSpec, t: float) -> float:
    """P_{(t1,t2)}(t) - P_{(t1-delta, t2+delta)}(t) for t in (t1, t2)."""
    if not t1 < t < t2:
        raise InvalidInput("t must lie strictly between t1 and t2")
    before = k(t - t1) + k(t - t2)
    after = k(t - t1 + delta) + k(t - t2 - delta)
    return float(before - after)


@dataclass
class TransportReport:
    plan: DeltaPlan
    arc: tuple[float, float]
    worst_domination_margin: float
    max_angle_error: float
    arc_inclusion_margin: float
    monotone_violation: float | None = None
    final_angles: tuple[float, ...] = field(default=(), repr=False)

    @property
    def passed(self) -> bool:
        return (self.max_angle_error <= 1e-8 and self.arc_inclusion_margin >= -1e-10
                and self.worst_domination_margin >= -1e-8 and self.plan.residual <= 1e-10)

    def to_dict(self) -> dict:
        return {
            "delta": list(self.plan.delta),
            "pivot": self.plan.pivot,
            "gamma": self.plan.gamma,
            "m_split": self.plan.m_split,
            "residual": self.plan.residual,
            "arc": list(self.arc),
            "worst_domination_margin": self.worst_domination_margin,
            "max_angle_error": self.max_angle_error,
            "arc_inclusion_margin": self.arc_inclusion_margin,
            "passed": self.passed,
        }


def _transport_path(source: Configuration, delta: np.ndarray, m_split: int, on_step=None):
    """Apply m_split rounds of the n gap contractions (order n-1, ..., 0) with step delta/m.

    Returns the final unwrapped labelled angles, or None if an intermediate
    configuration loses its cyclic ordering.
    """
    t = source.array.copy()
    step = delta / m_split
    n = t.size
    for _ in range(m_split):
        for j in range(n - 1, -1, -1):
            if step[j] == 0.0:
                continue
            contract_gap(t, j, step[j])
            g = np.diff(np.append(t, t[0] + TWO_PI))
            if g.min() < 0.0:
                return None
            if on_step is not None:
                on_step(t)
    return t


def run_transport(source: Configuration, target: Configuration, k: KernelSpec,
                  grid: int = 1000, track_steps: bool = False) -> TransportReport:
    plan = solve_delta(source, target)
    delta = plan.array
    n = source.n
    lo = source.angle(plan.pivot)
    hi = source.angle(plan.pivot + 1)
    ts = lo + (hi - lo) * np.arange(1, grid + 1) / (grid + 1)

    worst_step = [-math.inf]
    prev = [eval_potential(source, k, ts)] if track_steps else None

    def on_step(t):
        cur = eval_potential(Configuration(tuple(t)), k, ts)
        worst_step[0] = max(worst_step[0], float(np.max(cur - prev[0])))
        prev[0] = cur

    m_split = plan.m_split
    for _ in range(MAX_DOUBLINGS + 1):
        final = _transport_path(source, delta, m_split, on_step if track_steps else None)
        if final is not None:
            break
        m_split *= 2
    else:
        raise DegenerateConfiguration("transport path collapsed gaps")
    if m_split != plan.m_split:
        plan = DeltaPlan(plan.delta, plan.pivot, plan.gamma, m_split, plan.residual)

    tgt = target.array
    angle_err = float(np.max(np.abs(_wrap(final - tgt - plan.gamma))))
    ext = np.append(final, final[0] + TWO_PI)
    incl = min(lo - ext[plan.pivot], ext[plan.pivot + 1] - hi)
    margin = eval_potential(source, k, ts) - eval_potential(target, k, ts - plan.gamma)
    return TransportReport(
        plan=plan,
        arc=(lo, hi),
        worst_domination_margin=float(np.min(margin)),
        max_angle_error=angle_err,
        arc_inclusion_margin=float(incl),
        monotone_violation=worst_step[0] if track_steps else None,
        final_angles=tuple(float(x) for x in final),
    )
