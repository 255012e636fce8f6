"""The twelve 4x4 matrices X1..X12 and what is built on top of them.

Group-theoretic claims are checked on exact data (Gaussian integers or
symbolic Pauli elements); parametrised decompositions use floating point.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import pauli
from .errors import CrossCheckFailure, NonGaussianEntries, WrongParameterPoint
from .linalg import ExactComplex, anticommutator, commutator, kron, max_abs_diff, null_space, span_decompose
from .pseudofermion import PAIR_TOL, PseudofermionParams, make_pf_pair, mu_ops, pair_errors
from .report import Check

I2 = np.eye(2, dtype=complex)
I4 = np.eye(4, dtype=complex)

# entries exactly as displayed, row-major
_X_DATA = {
    1: [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]],
    2: [[0, 0, -1j, 0], [0, 0, 0, -1j], [1j, 0, 0, 0], [0, 1j, 0, 0]],
    3: [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]],
    4: [[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]],
    5: [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]],
    6: [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]],
    7: [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]],
    8: [[0, 0, -1j, 0], [0, 0, 0, 1j], [1j, 0, 0, 0], [0, -1j, 0, 0]],
    9: [[0, 0, 0, -1j], [0, 0, -1j, 0], [0, 1j, 0, 0], [1j, 0, 0, 0]],
    10: [[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, -1, 0], [0, 0, 0, 1]],
    11: [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, -1, 0]],
    12: [[0, 0, 1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, -1, 0, 0]],
}


@dataclass(frozen=True)
class XBasis:
    mats: tuple
    pauli_ids: tuple
    exact: tuple = field(repr=False)

    def __getitem__(self, j: int) -> np.ndarray:
        """One-based access: ``basis[1]`` is X1."""
        return self.mats[j - 1]

    def __len__(self) -> int:
        return len(self.mats)


def to_exact(M) -> list[list[ExactComplex]]:
    """Exact copy of a matrix whose entries are Gaussian integers."""
    out = []
    for row in np.asarray(M, dtype=complex):
        exact_row = []
        for z in row:
            re, im = round(z.real), round(z.imag)
            if abs(z.real - re) > 0 or abs(z.imag - im) > 0:
                raise NonGaussianEntries(f"entry {z!r} is not a Gaussian integer")
            exact_row.append(ExactComplex(re, im))
        out.append(exact_row)
    return out


@functools.lru_cache(maxsize=None)
def x_matrices() -> XBasis:
    mats = tuple(np.array(_X_DATA[j], dtype=complex) for j in range(1, 13))
    for M in mats:
        M.setflags(write=False)
    ids = tuple(pauli.from_matrix(M) for M in mats)
    for M, e in zip(mats, ids):
        if max_abs_diff(pauli.to_matrix(e), M) != 0:
            raise CrossCheckFailure(f"{e} does not reproduce its X matrix")
    rank = 16 - len(null_space([[ExactComplex.coerce(z) for z in M.ravel()] for M in mats]))
    if rank != 12:
        raise CrossCheckFailure(f"X matrices have rank {rank}, expected 12")
    return XBasis(mats, ids, tuple(to_exact(M) for M in mats))


def commutator_map(X) -> list[list[ExactComplex]]:
    """16x16 exact matrix of ``vec(M) -> vec(M X - X M)`` (row-major vec)."""
    Xe = to_exact(X)
    n = len(Xe)
    rows = []
    for i in range(n):
        for j in range(n):
            # (MX - XM)[i, j] = sum_k M[i,k] X[k,j] - X[i,k] M[k,j]
            row = [ExactComplex()] * (n * n)
            for k in range(n):
                row[i * n + k] = row[i * n + k] + Xe[k][j]
                row[k * n + j] = row[k * n + j] - Xe[i][k]
            rows.append(row)
    return rows


def commutant_dimension(mats: Sequence) -> tuple[int, list[list[list[ExactComplex]]]]:
    """Exact dimension and basis of ``{M : [M, X] = 0 for every X in mats}``.

    The commutator maps are stacked into one ``16 len(mats) x 16`` system and
    solved by exact elimination.  Basis vectors come back reshaped to 4x4.
    """
    system = []
    for X in mats:
        system.extend(commutator_map(X))
    basis = null_space(system, cols=16)
    return len(basis), [[vec[4 * r:4 * r + 4] for r in range(4)] for vec in basis]


@dataclass(frozen=True)
class LiftedPair:
    A: np.ndarray
    B: np.ndarray
    Atilde: np.ndarray
    Btilde: np.ndarray
    params: PseudofermionParams


def lifted_pf(p: PseudofermionParams) -> LiftedPair:
    pair = make_pf_pair(p)
    A, B = kron(pair.a, I2), kron(pair.b, I2)
    At, Bt = kron(I2, pair.a), kron(I2, pair.b)
    for name, (x, y) in {"(A, B)": (A, B), "(A~, B~)": (At, Bt)}.items():
        errs = pair_errors(x, y)
        if max(errs.values()) > PAIR_TOL:
            raise CrossCheckFailure(f"{name} is not a pseudofermion pair: {errs}")
    for x in (A, B):
        for y in (At, Bt):
            if np.max(np.abs(commutator(x, y))) > PAIR_TOL:
                raise CrossCheckFailure("lifted operators on different factors do not commute")
    return LiftedPair(A, B, At, Bt, p)


def gamma_sets(p: PseudofermionParams) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """Generating sets ``mu_k (x) I`` and ``I (x) mu_k``, each built two ways."""
    mus = mu_ops(p)
    L = lifted_pf(p)
    gamma_mu = [kron(m, I2) for m in mus]
    gamma_nu = [kron(I2, m) for m in mus]
    via_mu = [L.B + L.A, 1j * (L.B - L.A), L.A @ L.B - L.B @ L.A]
    via_nu = [L.Btilde + L.Atilde, 1j * (L.Btilde - L.Atilde), L.Atilde @ L.Btilde - L.Btilde @ L.Atilde]
    for k in range(3):
        err = max(max_abs_diff(gamma_mu[k], via_mu[k]), max_abs_diff(gamma_nu[k], via_nu[k]))
        if err > PAIR_TOL:
            raise CrossCheckFailure(f"Gamma route mismatch at mu{k + 1}: {err:.3e}")
    return gamma_mu, gamma_nu


def _at_special_point(p: PseudofermionParams) -> None:
    if abs(p.theta - math.pi / 2) > 1e-12 or p.delta != 0:
        raise WrongParameterPoint("X realization is stated at theta = pi/2, delta = 0")


def x_realization_identities(p: PseudofermionParams) -> dict[str, tuple[np.ndarray, np.ndarray]]:
    """The six printed pseudofermionic expressions for X1..X6, as (X_j, expression)."""
    _at_special_point(p)
    X = x_matrices()
    L = lifted_pf(p)
    A, B, At, Bt = L.A, L.B, L.Atilde, L.Btilde
    return {
        "X1 = i(AB-BA)": (X[1], 1j * (A @ B - B @ A)),
        "X2 = BA-AB": (X[2], B @ A - A @ B),
        "X3 = -(B+A)": (X[3], -(B + A)),
        "X4 = -(B~+A~)": (X[4], -(Bt + At)),
        "X5 = i(A~B~-B~A~)": (X[5], 1j * (At @ Bt - Bt @ At)),
        "X6 = i(B~A~-A~B~)": (X[6], 1j * (Bt @ At - At @ Bt)),
    }


def x_realization_derived(p: PseudofermionParams) -> dict[str, tuple[np.ndarray, np.ndarray]]:
    """Working replacements for X1 and X5.

    At theta = pi/2, delta = 0 one has ``i(b - a) = X`` while
    ``i(ab - ba) = -iY``, so X1 and X5 are realised through ``i(B - A)``.
    """
    _at_special_point(p)
    X = x_matrices()
    L = lifted_pf(p)
    return {
        "X1 = i(B-A)": (X[1], 1j * (L.B - L.A)),
        "X5 = i(B~-A~)": (X[5], 1j * (L.Btilde - L.Atilde)),
    }


def verify_x_realization(p: PseudofermionParams | None = None, tol: float = 1e-12) -> list[Check]:
    """PASS/FAIL for each of the six printed identities, in order X1..X6."""
    p = p or PseudofermionParams(math.pi / 2, 0.0, 1.0)
    out = []
    for j, (lhs, rhs) in enumerate(x_realization_identities(p).values(), 1):
        out.append(Check.within(f"x{j}_printed_realization_w{p.omega_abs:g}", max_abs_diff(lhs, rhs), tol))
    return out


def verify_p2_generation() -> list[Check]:
    """Symbolic checks that X1..X6 generate P2 and that P2 = UV centrally."""
    checks = []
    X = x_matrices()
    six = list(X.pauli_ids[:6])
    from_x = pauli.generate_group(six)
    p2 = pauli.pauli_group(2)
    checks.append(Check.boolean("p2_order_64", p2.order == 64, p2.order - 64))
    checks.append(Check.boolean("x1_to_x6_order_64", from_x.order == 64, from_x.order - 64))
    checks.append(Check.boolean("x1_to_x6_equals_p2", from_x.elements == p2.elements,
                                len(from_x.elements ^ p2.elements)))

    gmu, gnu = gamma_sets(PseudofermionParams(math.pi / 2, 0.0, 1.0))
    U = pauli.generate_group(pauli.elements_from_matrices(gmu))
    V = pauli.generate_group(pauli.elements_from_matrices(gnu))
    checks.append(Check.boolean("U_order_16", U.order == 16, U.order - 16))
    checks.append(Check.boolean("V_order_16", V.order == 16, V.order - 16))
    bad = [
        (u, v) for u in U.generators for v in V.generators
        if not pauli.group_commutator(u, v).is_identity()
    ]
    checks.append(Check.boolean("UV_generator_commutators_trivial", not bad, len(bad)))
    ok, _ = pauli.is_central_product(p2, U, V)
    checks.append(Check.boolean("P2_central_product_UV", ok, 0 if ok else 1))
    return checks


# ---------------------------------------------------------------------------
# decompositions against the printed coefficient lists
# ---------------------------------------------------------------------------

@dataclass
class Decomposition:
    coefficients: np.ndarray
    residual: float
    printed: dict = field(default_factory=dict)
    derived: dict = field(default_factory=dict)

    def nonzero_slots(self, tol: float = 1e-12) -> set[int]:
        return {k + 1 for k, c in enumerate(self.coefficients) if abs(c) > tol}

    def slot_diffs(self) -> dict[int, tuple[complex, complex | None, float]]:
        """Per slot: (computed, printed or None, |computed - printed|)."""
        out = {}
        for k, c in enumerate(self.coefficients, 1):
            want = self.printed.get(k, 0.0)
            out[k] = (complex(c), self.printed.get(k), abs(c - want))
        return out


def decompose(target, basis: XBasis | None = None) -> Decomposition:
    basis = basis or x_matrices()
    coeffs, res = span_decompose(list(basis.mats), target)
    return Decomposition(coeffs, res)


def printed_LS_coefficients(alpha: float, mu: float, gamma: float) -> dict[int, complex]:
    return {
        1: (1 - alpha) / 2,
        2: 1j * (1 + alpha) / 2,
        4: gamma / 2,
        7: alpha * mu / 2,
        9: -alpha * mu / 2j,
        10: -gamma / 2,
    }


def derived_LS_coefficients(alpha: float, mu: float, gamma: float) -> dict[int, complex]:
    out = printed_LS_coefficients(alpha, mu, gamma)
    out[9] = alpha * mu / 2j
    return out


def printed_HT_coefficients(b: float, d: float, r: float) -> dict[int, complex]:
    return {1: d, 5: (b + d) / 2, 6: 1j * r, 11: (b - d) / 2 + 1j * r}


def derived_HT_coefficients(b: float, d: float, r: float) -> dict[int, complex]:
    return {1: d, 5: (b + d) / 2, 11: (b - d) / 2 + 1j * r, 12: 1j * r}


def decompose_LS(alpha: float, mu: float, gamma: float) -> Decomposition:
    from .circuits import CircuitParamsS, build_LS

    dec = decompose(build_LS(CircuitParamsS(alpha, mu, gamma)))
    dec.printed = printed_LS_coefficients(alpha, mu, gamma)
    dec.derived = derived_LS_coefficients(alpha, mu, gamma)
    return dec


def decompose_HT(b: float, d: float, r: float) -> Decomposition:
    from .circuits import CircuitParamsT, build_HT

    dec = decompose(build_HT(CircuitParamsT(b, d, r)))
    dec.printed = printed_HT_coefficients(b, d, r)
    dec.derived = derived_HT_coefficients(b, d, r)
    return dec


def mixed_relations() -> dict[str, float]:
    X = x_matrices()
    return {
        "{X1,X2}=0": float(np.max(np.abs(anticommutator(X[1], X[2])))),
        "{X1,X3}=0": float(np.max(np.abs(anticommutator(X[1], X[3])))),
        "[X2,X4]=0": float(np.max(np.abs(commutator(X[2], X[4])))),
        "[X2,X5]=0": float(np.max(np.abs(commutator(X[2], X[5])))),
    }
