"""Pseudofermions of the two-level atom.

Everything is parametrised by ``(theta, delta, |omega|)`` with
``Omega = sqrt(|omega|^2 - delta^2) > 0``.  Each constructor checks the
algebraic identities it is supposed to satisfy before returning, so a
returned object is always a verified one.

The scalar product is antilinear in its first argument (``numpy.vdot``).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import CrossCheckFailure, DegenerateParams, NormalizationFailure
from .linalg import anticommutator, commutator, dagger, max_abs_diff, psd_sqrt

PAIR_TOL = 1e-12
SYSTEM_TOL = 1e-10
I2 = np.eye(2, dtype=complex)


@dataclass(frozen=True)
class PseudofermionParams:
    theta: float
    delta: float
    omega_abs: float

    def __post_init__(self):
        for name in ("theta", "delta", "omega_abs"):
            if not math.isfinite(getattr(self, name)):
                raise DegenerateParams(f"{name} must be finite")
        if self.omega_abs <= abs(self.delta):
            raise DegenerateParams(
                f"need |omega| > |delta| (got {self.omega_abs!r}, {self.delta!r}); "
                "|omega| = |delta| is the exceptional point"
            )

    @property
    def Omega(self) -> float:
        return math.sqrt(self.omega_abs ** 2 - self.delta ** 2)

    @property
    def omega(self) -> complex:
        return self.omega_abs * cmath.exp(1j * self.theta)


def read_sweep(path: str | Path) -> list[PseudofermionParams]:
    """Parse a sweep file: one whitespace-separated ``theta delta omega_abs`` per line."""
    out = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 3:
            raise ValueError(f"{path}:{lineno}: expected 3 numbers, got {len(fields)}")
        out.append(PseudofermionParams(*(float(f) for f in fields)))
    return out


@dataclass(frozen=True)
class PseudofermionPair:
    a: np.ndarray
    b: np.ndarray
    params: PseudofermionParams


def pair_errors(a, b) -> dict[str, float]:
    """Max-entry errors of ``{a,b} = I``, ``a^2 = 0``, ``b^2 = 0``."""
    ident = np.eye(a.shape[0])
    return {
        "anticommutator": max_abs_diff(anticommutator(a, b), ident),
        "a_squared": float(np.max(np.abs(a @ a))),
        "b_squared": float(np.max(np.abs(b @ b))),
    }


def _check_pair(a, b, tol: float) -> None:
    errs = pair_errors(a, b)
    worst = max(errs, key=errs.get)
    if errs[worst] > tol:
        raise CrossCheckFailure(f"pseudofermion relation {worst} off by {errs[worst]:.3e}")


def make_pf_pair(p: PseudofermionParams) -> PseudofermionPair:
    W, d, Om = p.omega_abs, p.delta, p.Omega
    e = cmath.exp(1j * p.theta)
    a = np.array([[-W, -e.conjugate() * (Om + 1j * d)],
                  [e * (Om - 1j * d), W]]) / (2 * Om)
    b = np.array([[-W, e.conjugate() * (Om - 1j * d)],
                  [-e * (Om + 1j * d), W]]) / (2 * Om)
    _check_pair(a, b, PAIR_TOL)
    return PseudofermionPair(a, b, p)


def h_eff(p: PseudofermionParams) -> np.ndarray:
    """Effective Hamiltonian ``1/2 [[-i delta, conj(omega)], [omega, i delta]]``.

    Cross-checked against ``Omega (b a - I/2)`` before returning.
    """
    w = p.omega
    H = 0.5 * np.array([[-1j * p.delta, w.conjugate()], [w, 1j * p.delta]])
    pair = make_pf_pair(p)
    err = max_abs_diff(H, p.Omega * (pair.b @ pair.a - I2 / 2))
    if err > PAIR_TOL:
        raise CrossCheckFailure(f"H_eff differs from Omega(ba - I/2) by {err:.3e}")
    return H


def number_ops(pair: PseudofermionPair) -> tuple[np.ndarray, np.ndarray]:
    N = pair.b @ pair.a
    Nstar = dagger(pair.a) @ dagger(pair.b)
    err = max_abs_diff(Nstar, dagger(N))
    if err > PAIR_TOL:
        raise CrossCheckFailure(f"N* is not the adjoint of N ({err:.3e})")
    return N, Nstar


def mu_closed_forms(p: PseudofermionParams) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """The three mu matrices exactly as they are usually displayed.

    Note: the displayed ``mu2 = i [[0, e^{-i theta}], [e^{i theta}, 0]]`` is
    *not* ``i(b - a)``; the lower-left entry of ``i(b - a)`` has the opposite
    sign.  See :func:`mu2_from_pair_closed_form`.
    """
    W, d, Om = p.omega_abs, p.delta, p.Omega
    e = cmath.exp(1j * p.theta)
    ec = e.conjugate()
    mu1 = np.array([[-W, -1j * d * ec], [-1j * d * e, W]]) / Om
    mu2 = 1j * np.array([[0, ec], [e, 0]])
    mu3 = np.array([[1j * d, -W * ec], [-W * e, -1j * d]]) / Om
    return mu1, mu2, mu3


def mu2_from_pair_closed_form(p: PseudofermionParams) -> np.ndarray:
    """Closed form of ``i(b - a)``: ``i [[0, e^{-i theta}], [-e^{i theta}, 0]]``."""
    e = cmath.exp(1j * p.theta)
    return 1j * np.array([[0, e.conjugate()], [-e, 0]])


def mu_ops(p: PseudofermionParams) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``mu1 = b + a``, ``mu2 = i(b - a)``, ``mu3 = ab - ba``.

    mu1 and mu3 are checked against their displayed closed forms, mu2 against
    the closed form of ``i(b - a)`` (the displayed mu2 disagrees with it).
    """
    pair = make_pf_pair(p)
    a, b = pair.a, pair.b
    mu1 = b + a
    mu2 = 1j * (b - a)
    mu3 = commutator(a, b)
    c1, _, c3 = mu_closed_forms(p)
    for name, got, want in (("mu1", mu1, c1), ("mu2", mu2, mu2_from_pair_closed_form(p)), ("mu3", mu3, c3)):
        err = max_abs_diff(got, want)
        if err > PAIR_TOL:
            raise CrossCheckFailure(f"{name} closed form off by {err:.3e}")
    return mu1, mu2, mu3


@dataclass(frozen=True)
class BiorthogonalSystem:
    phi0: np.ndarray
    phi1: np.ndarray
    psi0: np.ndarray
    psi1: np.ndarray
    k: complex
    kprime: complex
    S_phi: np.ndarray
    S_psi: np.ndarray

    @property
    def phis(self) -> tuple[np.ndarray, np.ndarray]:
        return self.phi0, self.phi1

    @property
    def psis(self) -> tuple[np.ndarray, np.ndarray]:
        return self.psi0, self.psi1

    def gram(self) -> np.ndarray:
        """Matrix of ``<phi_j, psi_l>``; the identity for a biorthonormal pair."""
        return np.array([[np.vdot(f, g) for g in self.psis] for f in self.phis])


def normalization_product(p: PseudofermionParams) -> complex:
    """The value that ``conj(k) k'`` must take for ``<phi0, psi0> = 1``."""
    Om, d = p.Omega, p.delta
    return 1.0 / (1.0 + (Om + 1j * d) ** 2 / p.omega_abs ** 2)


def metric_closed_forms(p: PseudofermionParams, k: complex) -> tuple[np.ndarray, np.ndarray]:
    W, d, Om = p.omega_abs, p.delta, p.Omega
    e = cmath.exp(1j * p.theta)
    ec = e.conjugate()
    k2 = abs(k) ** 2
    S_phi = 2 * k2 * np.array([[1, -1j * d / W * ec], [1j * d / W * e, 1]])
    S_psi = W ** 2 / (2 * k2 * Om ** 2) * np.array([[1, 1j * d / W * ec], [-1j * d / W * e, 1]])
    return S_phi, S_psi


def biorthogonal_system(p: PseudofermionParams) -> BiorthogonalSystem:
    pair = make_pf_pair(p)
    W, d, Om = p.omega_abs, p.delta, p.Omega
    e = cmath.exp(1j * p.theta)

    target = normalization_product(p)
    if not cmath.isfinite(target) or abs(target) == 0:
        raise NormalizationFailure("<phi0, psi0> cannot be scaled to 1")
    # only conj(k) k' is fixed; take k real positive and put the phase on k'
    k = math.sqrt(abs(target))
    kprime = target / k

    phi0 = k * np.array([1, -e * (Om - 1j * d) / W])
    psi0 = kprime * np.array([1, -e * (Om + 1j * d) / W])
    phi1 = pair.b @ phi0
    psi1 = dagger(pair.a) @ psi0

    S_phi = sum(np.outer(f, f.conj()) for f in (phi0, phi1))
    S_psi = sum(np.outer(g, g.conj()) for g in (psi0, psi1))
    c_phi, c_psi = metric_closed_forms(p, k)
    err = max(max_abs_diff(S_phi, c_phi), max_abs_diff(S_psi, c_psi))
    if err > SYSTEM_TOL:
        raise CrossCheckFailure(f"metric operators differ from closed forms by {err:.3e}")

    sys = BiorthogonalSystem(phi0, phi1, psi0, psi1, k, kprime, S_phi, S_psi)
    err = max_abs_diff(sys.gram(), I2)
    if err > SYSTEM_TOL:
        raise NormalizationFailure(f"biorthonormality off by {err:.3e}")
    return sys


def fermionize(pair: PseudofermionPair, sys: BiorthogonalSystem) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(c, T)`` with ``T = S_phi^{1/2}`` and ``c = T^{-1} a T`` fermionic.

    ``a = T c T^{-1}`` and ``b = T c* T^{-1}`` are checked, as is the CAR for ``c``.
    """
    T = psd_sqrt(sys.S_phi)
    Tinv = np.linalg.inv(T)
    c = Tinv @ pair.a @ T
    checks = {
        "{c, c*} = I": max_abs_diff(anticommutator(c, dagger(c)), I2),
        "c^2 = 0": float(np.max(np.abs(c @ c))),
        "a = T c T^-1": max_abs_diff(T @ c @ Tinv, pair.a),
        "b = T c* T^-1": max_abs_diff(T @ dagger(c) @ Tinv, pair.b),
    }
    for name, err in checks.items():
        if err > SYSTEM_TOL:
            raise CrossCheckFailure(f"fermionization: {name} off by {err:.3e}")
    return c, T
