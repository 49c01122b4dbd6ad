import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from circpolar.config import TWO_PI, canonicalize, equally_spaced, gaps
from circpolar.errors import InvalidInput
from circpolar.kernels import KernelSpec
from circpolar.optimize import (angles_from_params, optimize, optimize_khrushchev, optimize_minmaxmin,
                                optimize_polarization, params_from_config)


@given(st.lists(st.floats(-5, 5), min_size=1, max_size=7))
def test_parametrization_roundtrip(z):
    t = angles_from_params(np.array(z))
    assert t[0] == 0.0 and np.all(np.diff(t) > 0) and t[-1] < TWO_PI
    back = params_from_config(canonicalize(t))
    assert np.allclose(angles_from_params(back), t, atol=1e-12)


def test_khrushchev_small():
    rep = optimize_khrushchev(2, restarts=4, seed=1)
    assert rep.best_value == pytest.approx(2.0, abs=1e-9)
    assert rep.gap_deviation < 1e-6
    assert rep.bound_crossing <= 1e-8
    assert rep.predicted_value == 2.0 and rep.kernel is None


def test_minmaxmin_examples():
    rep = optimize_minmaxmin(2, KernelSpec.logderiv(6), restarts=4)
    assert rep.best_value == pytest.approx(16.0, rel=1e-8)  # n^6/4 at n = 2
    rep = optimize_minmaxmin(3, KernelSpec.riesz(2), restarts=6)
    assert rep.best_value == pytest.approx(9 / 4, rel=1e-7)
    assert rep.bound_crossing <= 1e-8


def test_polarization_restricted_consistency():
    rep = optimize_polarization(4, KernelSpec.riesz(2), restarts=6, seed=3)
    assert rep.best_value == pytest.approx(4.0, rel=1e-7)
    assert rep.restricted_value == pytest.approx(rep.best_value, rel=1e-7)


def test_determinism():
    a = optimize_polarization(3, KernelSpec.log(), restarts=4, seed=7)
    b = optimize_polarization(3, KernelSpec.log(), restarts=4, seed=7)
    assert a.to_json() == b.to_json()


def test_perturbed_start_returns_to_equal_spacing(rng):
    n = 5
    start = canonicalize(equally_spaced(n).array + 1e-2 * rng.normal(size=n))
    rep = optimize("minmaxmin", n, KernelSpec.riesz(1), restarts=1, initial=[start])
    assert np.abs(gaps(rep.best_config) - TWO_PI / n).max() < 1e-4
    assert rep.error / rep.predicted_value < 1e-7


def test_history_respects_bounds():
    rep = optimize_polarization(3, KernelSpec.riesz(4), restarts=3, record=True)
    assert len(rep.history) == rep.evaluations
    assert max(rep.history) <= rep.predicted_value * (1 + 1e-12)
    rep = optimize_minmaxmin(3, KernelSpec.riesz(4), restarts=3, record=True)
    assert min(rep.history) >= rep.predicted_value * (1 - 1e-12)


def test_report_json():
    rep = optimize_khrushchev(3, restarts=2)
    d = json.loads(rep.to_json())
    assert d["problem"] == "khrushchev" and d["n"] == 3 and len(d["best_config"]) == 3


@pytest.mark.parametrize("kw", [
    dict(problem="energy", n=3, kernel=KernelSpec.log()),
    dict(problem="minmaxmin", n=1, kernel=KernelSpec.log()),
    dict(problem="minmaxmin", n=3, kernel=None),
    dict(problem="polarization", n=3, kernel=KernelSpec.log(), restarts=0),
    dict(problem="khrushchev", n=2.5),
])
def test_invalid_inputs(kw):
    with pytest.raises(InvalidInput):
        optimize(**kw)
