import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from circpolar.config import TWO_PI, canonicalize, equally_spaced, gaps, random_configuration, rotate
from circpolar.errors import DegenerateConfiguration, InvalidInput, MoveTooLarge
from circpolar.kernels import KernelSpec
from circpolar.transport import (apply_two_point_move, displacements, gap_laplacian, run_transport,
                                 solve_cyclic_laplacian, solve_delta, two_point_inequality_check)

KERNELS = [KernelSpec.riesz(2), KernelSpec.logderiv(4), KernelSpec.log(), KernelSpec.riesz(1)]


def circulant_oracle(rhs):
    """Least-squares solve of the explicit circulant matrix, shifted to min 0."""
    n = len(rhs)
    L = np.zeros((n, n))
    for j in range(n):
        L[j, j] = -2.0
        L[j, (j - 1) % n] += 1.0
        L[j, (j + 1) % n] += 1.0
    x = np.linalg.lstsq(L, rhs, rcond=None)[0]
    return x - x.min()


def test_two_point_example():
    # contracting gap 0 by pi/4 on each side turns gaps (pi, pi) into (pi/2, 3pi/2)
    src = canonicalize([0.0, math.pi])
    tgt = canonicalize([0.0, math.pi / 2])
    plan = solve_delta(src, tgt)
    assert plan.delta == pytest.approx((math.pi / 4, 0.0), abs=1e-15)
    assert plan.pivot == 1
    assert plan.residual == pytest.approx(0.0, abs=1e-15)
    assert plan.gamma == pytest.approx(math.pi / 4)
    rep = run_transport(src, tgt, KernelSpec.riesz(2))
    assert rep.passed and rep.worst_domination_margin > 0


def test_identity_plan():
    w = equally_spaced(5)
    plan = solve_delta(w, w)
    assert plan.delta == (0.0,) * 5 and plan.gamma == 0.0 and plan.m_split == 1
    rep = run_transport(w, w, KernelSpec.riesz(2))
    assert rep.passed
    assert rep.worst_domination_margin == pytest.approx(0.0, abs=1e-12)
    assert rep.max_angle_error == 0.0


def test_rotated_target_is_pure_rotation():
    w = canonicalize([0.3, 1.0, 2.5, 4.0])
    plan = solve_delta(w, rotate(w, 0.4))
    assert np.abs(plan.array).max() < 1e-12


def test_laplacian_solver_against_oracle(rng):
    for n in range(2, 12):
        rhs = rng.normal(size=n)
        rhs -= rhs.mean()
        x = solve_cyclic_laplacian(rhs)
        assert np.allclose(gap_laplacian(x), rhs, atol=1e-12)
        assert np.allclose(x - x.min(), circulant_oracle(rhs), atol=1e-12)


def test_random_plans(rng):
    for n in range(2, 9):
        for _ in range(20):
            a, b = random_configuration(n, rng), random_configuration(n, rng)
            plan = solve_delta(a, b)
            d = plan.array
            assert d.min() == 0.0 and d[plan.pivot] == 0.0
            assert plan.residual <= 1e-12
            assert np.allclose(gaps(a) + gap_laplacian(d), gaps(b), atol=1e-12)
            assert 0.0 <= plan.gamma < TWO_PI
            assert displacements(d).sum() == pytest.approx(0.0, abs=1e-12)


def test_solve_delta_errors():
    with pytest.raises(InvalidInput):
        solve_delta(equally_spaced(3), equally_spaced(4))
    with pytest.raises(DegenerateConfiguration):
        solve_delta(canonicalize([0.0, 0.0, 1.0]), equally_spaced(3))


def test_two_point_move_examples():
    w = apply_two_point_move(equally_spaced(4), 2, 0.1)
    assert w.angles == pytest.approx((0.0, math.pi / 2 - 0.1, math.pi + 0.1, 1.5 * math.pi))
    w = apply_two_point_move(equally_spaced(2), 1, 0.2)
    assert w.angles == pytest.approx((math.pi + 0.2, TWO_PI - 0.2))
    with pytest.raises(MoveTooLarge):
        apply_two_point_move(equally_spaced(4), 0, math.pi / 4)
    with pytest.raises(MoveTooLarge):
        apply_two_point_move(equally_spaced(4), 0, -0.01)


def test_two_point_inequality():
    for k in KERNELS:
        for t in np.linspace(0.1, 0.9, 9):
            assert two_point_inequality_check(0.0, 1.0, 0.3, k, t) > 0
        assert two_point_inequality_check(0.0, 1.0, 0.0, k, 0.5) == 0.0
    with pytest.raises(InvalidInput):
        two_point_inequality_check(0.0, 1.0, 0.1, KernelSpec.log(), 1.5)


def test_run_transport_from_equally_spaced(rng):
    src = equally_spaced(5)
    for _ in range(10):
        tgt = random_configuration(5, rng)
        rep = run_transport(src, tgt, KernelSpec.logderiv(4))
        assert rep.passed
        assert rep.worst_domination_margin > 1e-10


def test_plan_is_kernel_independent(rng):
    a, b = random_configuration(6, rng), random_configuration(6, rng)
    reps = [run_transport(a, b, k) for k in KERNELS]
    for r in reps[1:]:
        assert r.plan == reps[0].plan
        assert r.final_angles == reps[0].final_angles
    assert all(r.passed for r in reps)


def test_per_step_monotone(rng):
    for n in (3, 5):
        for _ in range(5):
            a, b = random_configuration(n, rng), random_configuration(n, rng)
            rep = run_transport(a, b, KernelSpec.riesz(2), grid=200, track_steps=True)
            assert rep.monotone_violation <= 1e-12


def test_transport_errors():
    with pytest.raises(DegenerateConfiguration):
        run_transport(canonicalize([1.0, 1.0, 2.0]), equally_spaced(3), KernelSpec.riesz(2))


def test_report_serializes():
    rep = run_transport(equally_spaced(3), canonicalize([0, 1, 3]), KernelSpec.riesz(2))
    d = rep.to_dict()
    assert d["passed"] is True and len(d["delta"]) == 3 and len(d["arc"]) == 2


@given(st.integers(3, 8), st.integers(0, 2**32 - 1))
def test_transport_property(n, seed):
    rng = np.random.default_rng(seed)
    a, b = random_configuration(n, rng), random_configuration(n, rng)
    rep = run_transport(a, b, KernelSpec.riesz(2), grid=100)
    assert rep.passed
    # the gap sum is conserved by every contraction
    final = np.array(rep.final_angles)
    assert np.diff(np.append(final, final[0] + TWO_PI)).sum() == pytest.approx(TWO_PI)
