"""Point configurations on the unit circle, stored as sorted angles in [0, 2pi)."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidInput

TWO_PI = 2.0 * math.pi


def reduce_angle(x):
    """Reduce angle(s) into [0, 2pi); never returns 2pi or -0.0."""
    y = np.remainder(np.asarray(x, dtype=float), TWO_PI)
    y = np.where(y >= TWO_PI, 0.0, y)
    y = np.where(y < 0.0, y + TWO_PI, y)
    return y + 0.0


@dataclass(frozen=True)
class Configuration:
    angles: tuple[float, ...]

    def __post_init__(self):
        if len(self.angles) == 0:
            raise InvalidInput("configuration needs at least one point")

    @property
    def n(self) -> int:
        return len(self.angles)

    @property
    def array(self) -> np.ndarray:
        return np.array(self.angles, dtype=float)

    def angle(self, j: int) -> float:
        """Cyclically extended angle: t_{j+n} = t_j + 2pi."""
        q, r = divmod(j, self.n)
        return self.angles[r] + q * TWO_PI

    def to_json(self) -> str:
        return json.dumps(list(self.angles))

    @classmethod
    def from_json(cls, text: str) -> "Configuration":
        data = json.loads(text)
        if not isinstance(data, list) or not all(isinstance(v, (int, float)) for v in data):
            raise InvalidInput("configuration JSON must be an array of numbers")
        return canonicalize(data)


def canonicalize(raw_angles: Iterable[float]) -> Configuration:
    vals = np.asarray(list(raw_angles), dtype=float)
    if vals.size == 0:
        raise InvalidInput("empty angle list")
    if not np.all(np.isfinite(vals)):
        raise InvalidInput("angles must be finite")
    return Configuration(tuple(float(v) for v in np.sort(reduce_angle(vals))))


def equally_spaced(n: int) -> Configuration:
    if n < 1:
        raise InvalidInput("n must be positive")
    return Configuration(tuple(2.0 * j * math.pi / n for j in range(n)))


def rotate(omega: Configuration, gamma: float) -> Configuration:
    return canonicalize(omega.array + gamma)


def gaps(omega: Configuration) -> np.ndarray:
    t = omega.array
    return np.diff(np.append(t, t[0] + TWO_PI))


def separation(omega: Configuration) -> float:
    return float(gaps(omega).min())


def max_gap_deviation(omega: Configuration) -> float:
    """Largest deviation of a gap from 2pi/n."""
    return float(np.abs(gaps(omega) - TWO_PI / omega.n).max())


def from_gaps(g: Sequence[float], start: float = 0.0) -> Configuration:
    g = np.asarray(g, dtype=float)
    return canonicalize(start + np.concatenate([[0.0], np.cumsum(g[:-1])]))


def random_configuration(n: int, rng: np.random.Generator, min_sep: float = 1e-3) -> Configuration:
    """i.i.d. uniform angles, resampled until the separation reaches ``min_sep``."""
    if n < 1:
        raise InvalidInput("n must be positive")
    while True:
        omega = canonicalize(rng.uniform(0.0, TWO_PI, size=n))
        if n == 1 or separation(omega) >= min_sep:
            return omega
