import math

import numpy as np
import pytest
import scipy.integrate
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from pseudopauli.circuits import (
    CSV_HEADER,
    CircuitParamsS,
    CircuitParamsT,
    Trajectory,
    build_HS,
    build_HT,
    build_LS,
    derivative_check,
    evolve,
    oscillator_energy,
    read_csv,
    rk4,
    write_csv,
)
from pseudopauli.errors import GridTooCoarse
from pseudopauli.linalg import dagger, max_abs_diff

E1 = np.array([1, 0, 0, 0], dtype=complex)
coef = st.floats(-1, 1)
vec4 = arrays(complex, 4, elements=st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False))


def test_build_LS_examples():
    L = build_LS(CircuitParamsS(1, 0, 0))
    assert np.array_equal(L, [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]])
    L = build_LS(CircuitParamsS(0, 5, 7))
    assert np.array_equal(L[2], [0, 0, 7, 0])
    assert np.array_equal(L[3], [0, 0, 0, -7])
    L = build_LS(CircuitParamsS(2, 3, 0.5))
    assert L[2, 1] == L[3, 0] == 6


def test_params_must_be_finite():
    with pytest.raises(ValueError):
        CircuitParamsS(1, float("inf"), 0)
    with pytest.raises(ValueError):
        CircuitParamsT(float("nan"), 0, 0)


def test_build_HT_examples():
    H = build_HT(CircuitParamsT(1, 1, 0))
    assert np.array_equal(H, np.array([[0, 1, 1, 0], [1, 0, 0, 1], [1, 0, 0, 1], [0, 1, 1, 0]]))
    H = build_HT(CircuitParamsT(2, 0.5, 0.3))
    assert H[2, 3] == 0.5 - 0.3j
    assert H[0, 1] == 2 + 0.3j


@settings(max_examples=50, deadline=None)
@given(coef, coef, coef)
def test_HT_symmetric_not_self_adjoint(b, d, r):
    H = build_HT(CircuitParamsT(b, d, r))
    assert np.array_equal(H, H.T)
    if abs(r) > 1e-6:
        assert max_abs_diff(H, dagger(H)) > 0


@settings(max_examples=50, deadline=None)
@given(coef.filter(lambda a: abs(a) > 1e-6), coef, coef)
def test_HS_never_hermitian(a, m, g):
    H = build_HS(CircuitParamsS(a, m, g))
    assert max_abs_diff(H, dagger(H)) > 0


def test_evolve_examples():
    L = build_LS(CircuitParamsS(1, 0, 0))
    traj = evolve(L, E1, [0.0])
    assert np.array_equal(traj.states[0], E1)
    assert max_abs_diff(evolve(L, E1, [math.pi]).states[0], -E1) < 1e-9
    assert max_abs_diff(evolve(L, E1, [2 * math.pi]).states[0], E1) < 1e-8


def test_evolve_validates_input():
    L = build_LS(CircuitParamsS(1, 0, 0))
    with pytest.raises(ValueError):
        evolve(L, E1, [1.0, 0.5])
    with pytest.raises(ValueError):
        evolve(L, E1, [-1.0])
    with pytest.raises(ValueError):
        evolve(L, E1[:3], [1.0])


def test_evolve_overflow_reports_time():
    L = build_LS(CircuitParamsS(-1, 0.9, 1))
    with pytest.raises(OverflowError, match="t = "):
        evolve(L, E1, np.linspace(0, 1000, 101))


def test_evolve_frozen_trajectory():
    L = build_LS(CircuitParamsS(0.5, 0.2, 0.1))
    s = evolve(L, [1, 0.5j, 0, -1], [3.0]).states[0]
    ref = scipy.integrate.solve_ivp(lambda t, y: L @ y, (0, 3.0), np.array([1, 0.5j, 0, -1], dtype=complex),
                                    method="DOP853", rtol=1e-13, atol=1e-13).y[:, -1]
    assert max_abs_diff(s, ref) < 1e-10


@settings(max_examples=30, deadline=None)
@given(coef, coef, coef, vec4, vec4)
def test_evolve_linear(a, m, g, x, y):
    L = build_LS(CircuitParamsS(a, m, g))
    ts = np.linspace(0, 5, 11)
    lhs = evolve(L, x + 2j * y, ts).states
    rhs = evolve(L, x, ts).states + 2j * evolve(L, y, ts).states
    assert max_abs_diff(lhs, rhs) <= 1e-10 * max(1.0, np.max(np.abs(lhs)))


def test_rk4_agrees_with_exponential():
    L = build_LS(CircuitParamsS(0.7, -0.3, 0.2))
    psi0 = np.array([0.3, -1, 0.5j, 1])
    approx = rk4(L, psi0, 2.0, 1e-3)
    exact = evolve(L, psi0, approx.times)
    assert max_abs_diff(exact.states, approx.states) < 1e-10


@settings(max_examples=20, deadline=None)
@given(st.floats(0.2, 3), vec4)
def test_oscillator_energy_conserved(alpha, psi0):
    L = build_LS(CircuitParamsS(alpha, 0, 0))
    traj = evolve(L, psi0, np.linspace(0, 20, 201))
    E = [oscillator_energy(s, alpha) for s in traj.states]
    assert max(abs(e - E[0]) for e in E) <= 1e-8 * max(1.0, E[0])


def test_derivative_check_examples():
    L = build_LS(CircuitParamsS(1, 0, 0))
    traj = evolve(L, E1, np.arange(0, 10001) * 1e-3)
    assert derivative_check(traj, L) <= 1e-5
    zero = np.zeros((4, 4))
    const = Trajectory(np.arange(5) * 1e-3, np.tile(E1, (5, 1)))
    assert derivative_check(const, zero) == 0
    L = build_LS(CircuitParamsS(1, 0.5, 0.1))
    traj = evolve(L, E1, np.arange(0, 5001) * 1e-3)
    assert derivative_check(traj, L) <= 1e-4


def test_derivative_check_detects_wrong_generator():
    L = build_LS(CircuitParamsS(1, 0, 0))
    traj = evolve(L, E1, np.arange(0, 1001) * 1e-3)
    assert derivative_check(traj, build_LS(CircuitParamsS(1.1, 0, 0))) > 1e-2


def test_derivative_check_errors():
    L = build_LS(CircuitParamsS(1, 0, 0))
    with pytest.raises(GridTooCoarse):
        derivative_check(evolve(L, E1, [0, 1e-3]), L)
    with pytest.raises(GridTooCoarse):
        derivative_check(evolve(L, E1, [0, 0.1, 0.2]), L)
    with pytest.raises(ValueError):
        derivative_check(evolve(L, E1, [0, 1e-3, 3e-3]), L)


def test_derivative_check_relative():
    L = build_LS(CircuitParamsS(-1, 0.8, 0.5))
    traj = evolve(L, E1, np.arange(0, 10001) * 1e-3)
    scale = float(np.max(np.abs(traj.states)))
    assert scale > 1e3
    assert derivative_check(traj, L, relative=True) == pytest.approx(derivative_check(traj, L) / scale)


def test_csv_round_trip(tmp_path):
    L = build_LS(CircuitParamsS(0.9, 0.1, -0.2))
    traj = evolve(L, [1, 1j, -0.25, 1 / 3], np.linspace(0, 2, 7))
    path = tmp_path / "t.csv"
    write_csv(traj, path)
    lines = path.read_text().splitlines()
    assert lines[0] == ",".join(CSV_HEADER)
    assert len(lines) == 8
    back = read_csv(path)
    assert np.array_equal(back.times, traj.times)
    assert np.array_equal(back.states, traj.states)


def test_read_csv_rejects_header(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("t,x\n0,1\n")
    with pytest.raises(ValueError):
        read_csv(path)
