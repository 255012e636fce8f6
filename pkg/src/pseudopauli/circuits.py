"""The two PT-symmetric circuit generators and linear time evolution.

``Psi(t) = (Q1, Q2, dQ1/dt, dQ2/dt)`` evolves as ``dPsi/dt = L_S Psi``,
written formally as ``i dPsi/dt = H_S Psi`` with ``H_S = i L_S``.  Nothing
here treats Psi as a normalised quantum state.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import GridTooCoarse
from .linalg import as_cmatrix, mat_exp_many, max_abs_diff

CSV_HEADER = ["t", "re_Q1", "im_Q1", "re_Q2", "im_Q2", "re_dQ1", "im_dQ1", "re_dQ2", "im_dQ2"]


@dataclass(frozen=True)
class CircuitParamsS:
    alpha: float
    mu: float
    gamma: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.alpha, self.mu, self.gamma)):
            raise ValueError("circuit parameters must be finite")


@dataclass(frozen=True)
class CircuitParamsT:
    b: float
    d: float
    r: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.b, self.d, self.r)):
            raise ValueError("circuit parameters must be finite")


def build_LS(p: CircuitParamsS) -> np.ndarray:
    a, m, g = p.alpha, p.mu, p.gamma
    return np.array([
        [0, 0, 1, 0],
        [0, 0, 0, 1],
        [-a, m * a, g, 0],
        [m * a, -a, 0, -g],
    ], dtype=complex)


def build_HS(p: CircuitParamsS) -> np.ndarray:
    return 1j * build_LS(p)


def build_HT(p: CircuitParamsT) -> np.ndarray:
    """The symmetric (but not self-adjoint) generator of the second circuit.

    Taken verbatim, including entry (3,4) = d - ir.
    """
    b, d, r = p.b, p.d, p.r
    H = np.array([
        [0, b + 1j * r, d + 1j * r, 0],
        [b + 1j * r, 0, 0, d - 1j * r],
        [d + 1j * r, 0, 0, d - 1j * r],
        [0, d - 1j * r, d - 1j * r, 0],
    ], dtype=complex)
    if max_abs_diff(H, H.T) != 0:
        raise AssertionError("H_T must equal its transpose")
    return H


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    states: np.ndarray  # shape (len(times), 4)

    def __post_init__(self):
        if len(self.times) != len(self.states):
            raise ValueError("times and states differ in length")
        if len(self.times) > 1 and np.any(np.diff(self.times) <= 0):
            raise ValueError("times must be strictly increasing")


def _check_times(times) -> np.ndarray:
    ts = np.asarray(times, dtype=float)
    if ts.ndim != 1 or ts.size == 0:
        raise ValueError("need a nonempty 1-d sequence of times")
    if ts[0] < 0:
        raise ValueError("times must start at t >= 0")
    if np.any(np.diff(ts) <= 0):
        raise ValueError("times must be strictly increasing")
    return ts


def evolve(L, psi0: Sequence[complex], times) -> Trajectory:
    """``Psi(t_j) = exp(L t_j) psi0`` for every requested time.

    Raises ``OverflowError`` (carrying the first offending time) if the
    solution leaves double range, which a gain channel can cause.
    """
    L = as_cmatrix(L)
    psi0 = np.asarray(psi0, dtype=complex)
    if L.shape != (4, 4) or psi0.shape != (4,):
        raise ValueError("evolve works on a 4x4 generator and a 4-vector")
    ts = _check_times(times)
    with np.errstate(over="ignore", invalid="ignore"):
        states = mat_exp_many(L, ts) @ psi0
    bad = ~np.all(np.isfinite(states), axis=1)
    if np.any(bad):
        raise OverflowError(f"state overflows double range at t = {ts[np.argmax(bad)]!r}")
    if ts[0] == 0:
        states[0] = psi0
    return Trajectory(ts, states)


def rk4(L, psi0: Sequence[complex], t_end: float, h: float) -> Trajectory:
    """Classical fixed-step Runge-Kutta integration of ``dPsi/dt = L Psi``.

    Independent of the exponential route; used as a cross-check.
    """
    L = as_cmatrix(L)
    steps = int(round(t_end / h))
    y = np.asarray(psi0, dtype=complex).copy()
    out = np.empty((steps + 1, len(y)), dtype=complex)
    out[0] = y
    for n in range(steps):
        k1 = L @ y
        k2 = L @ (y + 0.5 * h * k1)
        k3 = L @ (y + 0.5 * h * k2)
        k4 = L @ (y + h * k3)
        y = y + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        out[n + 1] = y
    return Trajectory(np.arange(steps + 1) * h, out)


def peak(traj: Trajectory) -> float:
    """Scale used for relative errors: ``max(1, max |Psi_k(t)|)``."""
    return max(1.0, float(np.max(np.abs(traj.states))))


def derivative_check(traj: Trajectory, L, relative: bool = False) -> float:
    """Largest central-difference defect ``|(Psi(t+h) - Psi(t-h))/2h - L Psi(t)|``.

    With ``relative=True`` the defect is divided by :func:`peak`, which
    keeps the check meaningful for trajectories that grow by many orders
    of magnitude.
    """
    ts = traj.times
    if len(ts) < 3:
        raise GridTooCoarse("derivative check needs at least 3 grid points")
    steps = np.diff(ts)
    h = float(steps.mean())
    if np.max(np.abs(steps - h)) > 1e-9 * max(1.0, abs(ts[-1])):
        raise ValueError("derivative check needs a uniform grid")
    if h > 1e-2:
        raise GridTooCoarse(f"grid step {h:.3g} exceeds 1e-2")
    L = as_cmatrix(L)
    S = traj.states
    central = (S[2:] - S[:-2]) / (2 * h)
    defect = central - S[1:-1] @ L.T
    worst = float(np.max(np.abs(defect)))
    return worst / peak(traj) if relative else worst


def oscillator_energy(psi, alpha: float) -> float:
    """``alpha (|Q1|^2 + |Q2|^2) + |dQ1|^2 + |dQ2|^2``, conserved when mu = gamma = 0."""
    psi = np.asarray(psi)
    return float(alpha * (abs(psi[0]) ** 2 + abs(psi[1]) ** 2) + abs(psi[2]) ** 2 + abs(psi[3]) ** 2)


def write_csv(traj: Trajectory, path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for t, s in zip(traj.times, traj.states):
            row = [t]
            for z in s:
                row += [z.real, z.imag]
            w.writerow([format(float(v), ".17g") for v in row])


def read_csv(path: str | Path) -> Trajectory:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or rows[0] != CSV_HEADER:
        raise ValueError(f"{path}: unexpected header")
    data = np.array([[float(v) for v in r] for r in rows[1:]])
    states = data[:, 1::2] + 1j * data[:, 2::2]
    return Trajectory(data[:, 0], states)
