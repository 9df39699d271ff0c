import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rpm_dilation.dilation import dilate
from rpm_dilation.errors import BadDecomposition, MismatchedDilation
from rpm_dilation.evolution import (
    build_dilations,
    diag_populations,
    init_ensemble,
    run_trajectory,
    step_ensemble,
)
from rpm_dilation.kraus import build_kraus_step
from rpm_dilation.model import FieldParams, initial_state
from rpm_dilation.oracle import exact_trajectory

from reference import dense_kraus_iteration

DT = 5e-5


def basis(n, i):
    v = np.zeros(n, dtype=complex)
    v[i] = 1
    return v


def evolve(params, n):
    step = build_kraus_step(params, DT)
    dil = build_dilations(step)
    ens = init_ensemble([(1.0, initial_state())])
    for _ in range(n):
        ens = step_ensemble(ens, step, dil)
    return step, ens


def test_init_single_and_mixed():
    ens = init_ensemble([(1.0, initial_state())])
    assert len(ens.branches) == 1 and ens.branches[0].lineage == ()
    assert ens.padded_dim == 32
    ens = init_ensemble([(0.5, basis(10, 0)), (0.5, basis(10, 1))])
    assert [b.weight for b in ens.branches] == [0.5, 0.5]


@pytest.mark.parametrize("decomp", [
    [(0.3, basis(10, 0)), (0.3, basis(10, 1))],
    [(1.0, 2 * basis(10, 0))],
    [(-0.5, basis(10, 0)), (1.5, basis(10, 1))],
    [],
])
def test_bad_decomposition(decomp):
    with pytest.raises(BadDecomposition):
        init_ensemble(decomp)


def test_step_zero_populations():
    pops = diag_populations(init_ensemble([(1.0, initial_state())]))
    np.testing.assert_allclose(pops, [0.5, 0, 0, 0, 0.5, 0, 0, 0, 0, 0], atol=1e-15)


def test_one_step_nine_branches(table_params):
    _, ens = evolve(table_params.with_angles(math.pi / 2), 1)
    assert len(ens.live_branches) == 9
    assert [b.lineage for b in ens.live_branches] == [(k,) for k in range(9)]


def test_symmetric_field_prunes_below_law(table_params):
    # along z, some spin states are unreachable from the initial state and their jumps vanish
    rec = run_trajectory(table_params.with_angles(0.0))
    assert rec.branch_counts[1] == 7
    assert all(c <= 8 * n + 1 for n, c in enumerate(rec.branch_counts))


def test_three_steps_match_dense(table_params):
    p = table_params.with_angles(0.7)
    step, ens = evolve(p, 3)
    rho0 = np.outer(initial_state(), initial_state().conj())
    want = dense_kraus_iteration(step.operators, rho0, 3).diagonal().real
    np.testing.assert_allclose(diag_populations(ens), want, atol=1e-12)
    assert ens.physical_trace() == pytest.approx(1.0, abs=1e-10)


def test_mixed_initial_state_matches_dense(table_params):
    step = build_kraus_step(table_params.with_angles(1.2), DT)
    dil = build_dilations(step)
    a, b = basis(10, 1), basis(10, 6)
    ens = init_ensemble([(0.25, a), (0.75, b)])
    for _ in range(4):
        ens = step_ensemble(ens, step, dil)
    rho0 = 0.25 * np.outer(a, a) + 0.75 * np.outer(b, b)
    want = dense_kraus_iteration(step.operators, rho0, 4).diagonal().real
    np.testing.assert_allclose(diag_populations(ens), want, atol=1e-12)


def test_mismatched_dilations(table_params):
    step = build_kraus_step(table_params, DT)
    dil = build_dilations(step)
    ens = init_ensemble([(1.0, initial_state())])
    with pytest.raises(MismatchedDilation):
        step_ensemble(ens, step, dil[::-1])
    with pytest.raises(MismatchedDilation):
        step_ensemble(ens, step, dil[:8])


def test_branch_norms_bounded(table_params):
    _, ens = evolve(table_params.with_angles(0.3), 6)
    for b in ens.live_branches:
        assert np.vdot(b.state, b.state).real <= b.weight + 1e-12
        assert len(b.lineage) == 6


def test_branch_order_is_lexicographic(table_params):
    _, ens = evolve(table_params, 4)
    lineages = [b.lineage for b in ens.live_branches]
    assert lineages == sorted(lineages)


def test_no_decay_keeps_shelves_empty():
    p = FieldParams(theta=0.9, kd=0.0)
    rec = run_trajectory(p, n_steps=10, dt=DT)
    assert not rec.singlet_yield.any() and not rec.triplet_yield.any()
    np.testing.assert_allclose(rec.diagonals.sum(axis=1), 1.0, atol=1e-12)
    assert np.ptp(rec.diagonals[:, 0]) > 0.01  # spin populations move coherently


def test_trajectory_shape_and_counts(table_params):
    rec = run_trajectory(table_params.with_angles(math.pi / 2))
    assert rec.times.shape == (16,) and rec.diagonals.shape == (16, 10)
    assert rec.times[-1] == pytest.approx(7.5e-4)
    assert rec.branch_counts == [8 * n + 1 for n in range(16)]
    np.testing.assert_allclose(rec.diagonals.sum(axis=1), 1.0, atol=1e-10)


@settings(max_examples=10, deadline=None)
@given(st.floats(0, math.pi), st.integers(1, 15))
def test_matches_dense_iteration(theta, n):
    p = FieldParams(theta=theta)
    rec = run_trajectory(p, n_steps=n, dt=DT)
    step = build_kraus_step(p, DT)
    rho = np.outer(initial_state(), initial_state().conj())
    for i in range(n + 1):
        np.testing.assert_allclose(rec.diagonals[i], rho.diagonal().real, atol=1e-10)
        rho = step.apply(rho)


@pytest.mark.parametrize("theta", [0.0, 0.8, math.pi / 2, 2.5])
def test_shelves_fill_monotonically(theta):
    rec = run_trajectory(FieldParams(theta=theta))
    assert np.all(np.diff(rec.singlet_yield) >= -1e-12)
    assert np.all(np.diff(rec.triplet_yield) >= -1e-12)


def test_first_order_convergence_at_small_steps():
    # the splitting error halves with dt once dt is well below the coherent period
    p = FieldParams(theta=math.pi / 2)
    horizon = 7.5e-4
    devs = []
    for n in (60, 120, 240):
        rec = run_trajectory(p, n_steps=n, dt=horizon / n)
        ref = exact_trajectory(p, rec.times)
        devs.append(np.abs(rec.diagonals[:, 8:] - ref[:, 8:]).max())
    for a, b in zip(devs, devs[1:]):
        assert 1.7 <= a / b <= 2.3


def test_sampled_reproducible(table_params):
    a = run_trajectory(table_params, n_steps=4, mode="sampled", shots=500, seed=3)
    b = run_trajectory(table_params, n_steps=4, mode="sampled", shots=500, seed=3)
    c = run_trajectory(table_params, n_steps=4, mode="sampled", shots=500, seed=4)
    assert a.diagonals.tobytes() == b.diagonals.tobytes()
    assert a.diagonals.tobytes() != c.diagonals.tobytes()
