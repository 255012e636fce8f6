"""Seeded invariant suites, one per scope, each returning a list of checks.

Printed formulas that disagree with what the operators actually give are
reported as INFO lines carrying the size of the disagreement; only claims
that the computation can establish are PASS/FAIL.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from . import pauli
from .circuits import (
    CircuitParamsS,
    CircuitParamsT,
    build_HS,
    build_HT,
    build_LS,
    derivative_check,
    evolve,
    oscillator_energy,
    peak,
    rk4,
)
from .linalg import anticommutator, dagger, max_abs_diff, mat_exp_many, psd_sqrt
from .pseudofermion import (
    PseudofermionParams,
    biorthogonal_system,
    fermionize,
    h_eff,
    make_pf_pair,
    mu_closed_forms,
    mu_ops,
    number_ops,
    pair_errors,
)
from .report import Check
from .xbasis import (
    commutant_dimension,
    decompose_HT,
    decompose_LS,
    gamma_sets,
    lifted_pf,
    mixed_relations,
    verify_p2_generation,
    x_matrices,
    x_realization_derived,
    x_realization_identities,
)

DEFAULT_SEED = 42
I2 = np.eye(2, dtype=complex)
PX = pauli.LETTER_MATRICES["X"]
PY = pauli.LETTER_MATRICES["Y"]
PZ = pauli.LETTER_MATRICES["Z"]

LS_SLOTS = {1, 2, 4, 7, 9, 10}
HT_SLOTS = {1, 5, 11, 12}


def random_params(rng: np.random.Generator, n: int) -> list[PseudofermionParams]:
    """theta in [0, 2 pi), delta in (-1, 1), |omega| in (|delta| + 0.1, 3)."""
    out = []
    for _ in range(n):
        theta = rng.uniform(0, 2 * math.pi)
        delta = rng.uniform(-1, 1)
        w = rng.uniform(abs(delta) + 0.1, 3)
        out.append(PseudofermionParams(theta, delta, w))
    return out


class _Worst:
    """Running maximum of named errors."""

    def __init__(self):
        self.err: dict[str, float] = {}

    def add(self, name: str, value: float) -> None:
        self.err[name] = max(self.err.get(name, 0.0), float(value))


def pseudofermion_errors(params: list[PseudofermionParams]) -> dict[str, float]:
    """Worst-case error of every pseudofermion identity over ``params``."""
    w = _Worst()
    for p in params:
        pair = make_pf_pair(p)
        a, b = pair.a, pair.b
        for k, v in pair_errors(a, b).items():
            w.add(f"pair_{k}", v)

        L = lifted_pf(p)
        for k, v in pair_errors(L.A, L.B).items():
            w.add(f"lifted_AB_{k}", v)
        for k, v in pair_errors(L.Atilde, L.Btilde).items():
            w.add(f"lifted_AtBt_{k}", v)

        H = h_eff(p)
        Om = p.Omega
        w.add("heff_equals_Omega_ba_minus_half", max_abs_diff(H, Om * (b @ a - I2 / 2)))
        w.add("heff_spectrum", max_abs_diff(np.sort_complex(np.linalg.eigvals(H)), [-Om / 2, Om / 2]))

        N, Nstar = number_ops(pair)
        w.add("N_idempotent", max_abs_diff(N @ N, N))

        mus = mu_ops(p)
        shown = mu_closed_forms(p)
        w.add("mu1_closed_form", max_abs_diff(mus[0], shown[0]))
        w.add("mu3_closed_form", max_abs_diff(mus[2], shown[2]))
        w.add("mu2_displayed_vs_i(b-a)", max_abs_diff(mus[1], shown[1]))

        s = biorthogonal_system(p)
        phis, psis = s.phis, s.psis
        w.add("biorthonormality", max_abs_diff(s.gram(), I2))
        w.add("S_phi_S_psi_identity", max_abs_diff(s.S_phi @ s.S_psi, I2))
        w.add("S_phi_hermitian", max_abs_diff(s.S_phi, dagger(s.S_phi)))
        w.add("S_psi_hermitian", max_abs_diff(s.S_psi, dagger(s.S_psi)))
        w.add("S_phi_positive", max(0.0, -float(np.linalg.eigvalsh(s.S_phi).min())))
        w.add("intertwining_S_psi_N", max_abs_diff(s.S_psi @ N, Nstar @ s.S_psi))
        w.add("intertwining_S_phi_Nstar", max_abs_diff(s.S_phi @ Nstar, N @ s.S_phi))
        w.add("a_phi0_zero", np.max(np.abs(a @ s.phi0)))
        w.add("bstar_psi0_zero", np.max(np.abs(dagger(b) @ s.psi0)))
        w.add("a_phi1_is_phi0", max_abs_diff(a @ s.phi1, s.phi0))
        w.add("bstar_psi1_is_psi0", max_abs_diff(dagger(b) @ s.psi1, s.psi0))
        w.add("b2_phi0_zero", np.max(np.abs(b @ b @ s.phi0)))
        w.add("astar2_psi0_zero", np.max(np.abs(dagger(a) @ dagger(a) @ s.psi0)))
        for n in (0, 1):
            w.add("N_phi_n_eigen", max_abs_diff(N @ phis[n], n * phis[n]))
            w.add("Nstar_psi_n_eigen", max_abs_diff(Nstar @ psis[n], n * psis[n]))
            w.add("S_phi_psi_n_is_phi_n", max_abs_diff(s.S_phi @ psis[n], phis[n]))
            w.add("S_psi_phi_n_is_psi_n", max_abs_diff(s.S_psi @ phis[n], psis[n]))
            sign = -1 if n == 0 else 1
            w.add("heff_phi_n_eigen", max_abs_diff(H @ phis[n], sign * Om / 2 * phis[n]))
            w.add("heffdag_psi_n_eigen", max_abs_diff(dagger(H) @ psis[n], sign * Om / 2 * psis[n]))
        bound_phi = np.linalg.norm(s.S_phi, 2) - sum(np.linalg.norm(f) ** 2 for f in phis)
        bound_psi = np.linalg.norm(s.S_psi, 2) - sum(np.linalg.norm(g) ** 2 for g in psis)
        w.add("S_norm_bounds", max(0.0, bound_phi, bound_psi))

        c, T = fermionize(pair, s)
        Tinv = np.linalg.inv(T)
        w.add("fermion_CAR", max_abs_diff(anticommutator(c, dagger(c)), I2))
        w.add("fermion_c_squared", np.max(np.abs(c @ c)))
        w.add("fermion_similarity_heff",
              max_abs_diff(T @ (Om * (dagger(c) @ c - I2 / 2)) @ Tinv, H))
        w.add("fermion_number_spectrum",
              max_abs_diff(np.sort(np.linalg.eigvalsh(dagger(c) @ c)), [0.0, 1.0]))
        w.add("sqrt_S_phi_vs_half_S_phi", max_abs_diff(psd_sqrt(s.S_phi), s.S_phi / 2))
    return w.err


_PF_TOL = {
    "pair_": 1e-12,
    "lifted_": 1e-12,
    "heff_equals": 1e-12,
    "N_idempotent": 1e-12,
    "mu1_": 1e-12,
    "mu3_": 1e-12,
}
_PF_INFO = {"mu2_displayed_vs_i(b-a)", "sqrt_S_phi_vs_half_S_phi"}


def pseudofermion_suite(seed: int = DEFAULT_SEED, n: int = 1000) -> list[Check]:
    rng = np.random.default_rng(seed)
    errs = pseudofermion_errors(random_params(rng, n))
    checks = []
    for name, err in errs.items():
        if name in _PF_INFO:
            checks.append(Check.info(name, err))
            continue
        tol = next((t for prefix, t in _PF_TOL.items() if name.startswith(prefix)), 1e-9)
        checks.append(Check.within(name, err, tol))

    checks += mu_special_point_checks()
    return checks


def mu_special_point_checks() -> list[Check]:
    """mu1..mu3 at (pi/2, 0) and (0, 0): computed values PASS/FAIL, printed ones INFO."""
    checks = []
    for label, theta in (("pi/2", math.pi / 2), ("0", 0.0)):
        mus = mu_ops(PseudofermionParams(theta, 0.0, 1.0))
        tag = "pi2" if theta else "0"
        computed = {"pi/2": (-PZ, PX, -PY), "0": (-PZ, -PY, -PX)}[label]
        printed = {"pi/2": (-PZ, -1j * PY, -PY), "0": (-PZ, 1j * PX, -PX)}[label]
        for k in range(3):
            checks.append(Check.within(f"mu{k + 1}_at_{tag}_0", max_abs_diff(mus[k], computed[k]), 1e-14))
            if max_abs_diff(computed[k], printed[k]) > 0:
                checks.append(Check.info(f"mu{k + 1}_at_{tag}_0_printed_value", max_abs_diff(mus[k], printed[k])))
    return checks


def x_realization_checks(omegas=(0.5, 1.0, 2.5)) -> list[Check]:
    checks = []
    for w in omegas:
        p = PseudofermionParams(math.pi / 2, 0.0, w)
        derived = list(x_realization_derived(p).values())
        for j, (lhs, rhs) in enumerate(x_realization_identities(p).values(), 1):
            err = max_abs_diff(lhs, rhs)
            if err <= 1e-12:
                checks.append(Check.within(f"x{j}_realization_w{w:g}", err, 1e-12))
            else:
                checks.append(Check.info(f"x{j}_printed_realization_w{w:g}", err))
                lhs2, rhs2 = derived[0 if j == 1 else 1]
                checks.append(Check.within(f"x{j}_realization_via_i(B-A)_w{w:g}", max_abs_diff(lhs2, rhs2), 1e-12))
    return checks


def xbasis_suite(seed: int = DEFAULT_SEED, n: int = 100) -> list[Check]:
    X = x_matrices()
    checks = [
        Check.within("x_pauli_ids_roundtrip",
                     max(max_abs_diff(pauli.to_matrix(e), M) for e, M in zip(X.pauli_ids, X.mats)), 0.0),
        Check.boolean("x_matrices_in_SL4", all(abs(np.linalg.det(M) - 1) < 1e-12 for M in X.mats)),
    ]
    dim, basis = commutant_dimension(X.mats)
    is_identity = dim == 1 and all(
        basis[0][r][c] == (basis[0][0][0] if r == c else 0) for r in range(4) for c in range(4)
    )
    checks.append(Check.boolean("commutant_dimension_1", dim == 1, dim - 1))
    checks.append(Check.boolean("commutant_basis_identity", is_identity))
    dim3, _ = commutant_dimension([X[3]])
    checks.append(Check.boolean("commutant_X3_dimension_8", dim3 == 8, dim3 - 8))
    for name, err in mixed_relations().items():
        checks.append(Check.within(f"mixed_{name}", err, 0.0))

    gmu, gnu = gamma_sets(PseudofermionParams(math.pi / 2, 0.0, 1.0))
    checks.append(Check.within("gamma_mu_first_is_minus_X3", max_abs_diff(gmu[0], -X[3]), 1e-12))
    checks.append(Check.within("gamma_nu_first_is_minus_X4", max_abs_diff(gnu[0], -X[4]), 1e-12))
    checks += x_realization_checks()

    rng = np.random.default_rng(seed)
    res = slot_bad = coef = a9_printed = 0.0
    for _ in range(n):
        alpha, mu, gamma = rng.uniform(-2, 2, size=3)
        dec = decompose_LS(alpha, mu, gamma)
        res = max(res, dec.residual)
        slot_bad += dec.nonzero_slots() != LS_SLOTS
        coef = max(coef, max(abs(dec.coefficients[k - 1] - v) for k, v in dec.derived.items()))
        a9_printed = max(a9_printed, abs(dec.coefficients[8] - dec.printed[9]))
    checks.append(Check.within("LS_decomposition_residual", res, 1e-12))
    checks.append(Check.boolean("LS_nonzero_slots_1_2_4_7_9_10", slot_bad == 0, slot_bad))
    checks.append(Check.within("LS_coefficients_alpha1_2_4_7_9_10", coef, 1e-12))
    checks.append(Check.info("LS_alpha9_printed_sign", a9_printed))

    res = slot_bad = coef = printed = 0.0
    for _ in range(n):
        b, d, r = rng.uniform(-2, 2, size=3)
        dec = decompose_HT(b, d, r)
        res = max(res, dec.residual)
        slot_bad += dec.nonzero_slots() != HT_SLOTS
        coef = max(coef, max(abs(dec.coefficients[k - 1] - v) for k, v in dec.derived.items()))
        printed = max(printed, max(diff for _, _, diff in dec.slot_diffs().values()))
    checks.append(Check.within("HT_decomposition_residual", res, 1e-12))
    checks.append(Check.boolean("HT_nonzero_slots_1_5_11_12", slot_bad == 0, slot_bad))
    checks.append(Check.within("HT_coefficients_beta1_5_11_12", coef, 1e-12))
    checks.append(Check.info("HT_printed_beta_list", printed))
    return checks


def group_suite() -> list[Check]:
    p1 = pauli.pauli_group(1)
    p2 = pauli.pauli_group(2)
    checks = [Check.boolean("p1_order_16", p1.order == 16, p1.order - 16)]
    checks += verify_p2_generation()

    elems = p2.sorted()
    index = {e: i for i, e in enumerate(elems)}
    table = np.array([[index[x * y] for y in elems] for x in elems])
    lhs = table[table[:, :, None], np.arange(64)[None, None, :]]  # (xy)z
    rhs = table[np.arange(64)[:, None, None], table[None, :, :]]  # x(yz)
    checks.append(Check.boolean("p2_associative", bool(np.all(lhs == rhs)), int(np.sum(lhs != rhs))))
    ident = index[pauli.identity(2)]
    checks.append(Check.boolean("p2_identity_unit",
                                bool(np.all(table[ident] == np.arange(64)) and np.all(table[:, ident] == np.arange(64)))))

    mats = [pauli.to_matrix(e) for e in elems]
    hom = max(max_abs_diff(mats[table[i, j]], mats[i] @ mats[j]) for i in range(64) for j in range(64))
    checks.append(Check.within("to_matrix_homomorphism", hom, 0.0))
    roundtrip = sum(pauli.from_matrix(M) != e for M, e in zip(mats, elems))
    checks.append(Check.boolean("from_matrix_roundtrip", roundtrip == 0, roundtrip))
    checks.append(Check.boolean("p2_orders_divide_4", all(4 % pauli.element_order(e) == 0 for e in elems)))
    z = pauli.center(p2)
    checks.append(Check.boolean("p2_center_order_4", z == frozenset(pauli.PauliElement(k, "II") for k in range(4)),
                                len(z) - 4))
    X, Y = pauli.parse_pauli("X"), pauli.parse_pauli("Y")
    ok, witness = pauli.is_central_product(p1, pauli.generate_group([X]), pauli.generate_group([Y]))
    checks.append(Check.boolean("p1_not_central_product_of_X_Y", not ok and witness == (X, Y)))
    return checks


# RK4 oracle step; the trajectories are compared on the 1e-3 output grid
RK4_STEP = 5e-4
RK4_STRIDE = 2


def circuits_suite(seed: int = DEFAULT_SEED, n: int = 20) -> list[Check]:
    rng = np.random.default_rng(seed)
    e1 = np.array([1, 0, 0, 0], dtype=complex)
    L1 = build_LS(CircuitParamsS(1, 0, 0))
    checks = [
        Check.within("LS_half_period", max_abs_diff(evolve(L1, e1, [math.pi]).states[0], -e1), 1e-9),
        Check.within("LS_full_period", max_abs_diff(evolve(L1, e1, [2 * math.pi]).states[0], e1), 1e-8),
    ]
    grid = np.linspace(0, 10, 10001)
    dev = resid = resid_abs = lin = 0.0
    for _ in range(n):
        a, m, g = rng.uniform(-1, 1, size=3)
        L = build_LS(CircuitParamsS(a, m, g))
        psi0 = rng.normal(size=4) + 1j * rng.normal(size=4)
        exact = evolve(L, psi0, grid)
        approx = rk4(L, psi0, 10.0, RK4_STEP)
        dev = max(dev, float(np.max(np.abs(exact.states - approx.states[::RK4_STRIDE]))))
        resid = max(resid, derivative_check(exact, L, relative=True))
        resid_abs = max(resid_abs, derivative_check(exact, L))
        phi0 = rng.normal(size=4) + 1j * rng.normal(size=4)
        pts = grid[::500]
        lin = max(lin, max_abs_diff(evolve(L, psi0 + phi0, pts).states,
                                    evolve(L, psi0, pts).states + evolve(L, phi0, pts).states)
                  / max(1.0, float(np.max(np.abs(evolve(L, psi0, pts).states)))))
    checks.append(Check.within("evolve_vs_rk4", dev, 1e-6))
    checks.append(Check.within("derivative_check_random_relative", resid, 1e-4))
    # truncation error h^2/6 |Psi'''| grows with the trajectory, up to ~1e6 for alpha < 0
    checks.append(Check.info("derivative_check_random_absolute", resid_abs))
    checks.append(Check.within("evolve_linear_in_psi0", lin, 1e-10))

    L = build_LS(CircuitParamsS(1, 0.5, 0.1))
    traj = evolve(L, [1, 0.5, 0, 0.2], np.linspace(0, 5, 5001))
    checks.append(Check.within("derivative_check_generic", derivative_check(traj, L), 1e-4))

    alpha = 1.7
    L = build_LS(CircuitParamsS(alpha, 0, 0))
    psi0 = np.array([0.3, -1.2, 0.8, 0.1], dtype=complex)
    traj = evolve(L, psi0, np.linspace(0, 20, 401))
    e0 = oscillator_energy(psi0, alpha)
    drift = max(abs(oscillator_energy(s, alpha) - e0) for s in traj.states)
    checks.append(Check.within("oscillator_energy_conserved", drift, 1e-8))

    nonherm = min(max_abs_diff(build_HS(CircuitParamsS(a, 0.3, 0.2)), dagger(build_HS(CircuitParamsS(a, 0.3, 0.2))))
                  for a in (-2.0, -0.5, 0.5, 2.0))
    checks.append(Check.boolean("HS_not_hermitian", nonherm > 0, nonherm))
    HT = build_HT(CircuitParamsT(1, 0.5, 0.2))
    checks.append(Check.within("HT_symmetric", max_abs_diff(HT, HT.T), 0.0))
    checks.append(Check.boolean("HT_not_self_adjoint", max_abs_diff(HT, dagger(HT)) > 0))

    A = build_LS(CircuitParamsS(0.7, -0.4, 0.3))
    E = mat_exp_many(A, [1.1, 2.3, 3.4])
    checks.append(Check.within("mat_exp_semigroup", max_abs_diff(E[0] @ E[1], E[2]), 1e-9))
    return checks


SUITES: dict[str, Callable[..., list[Check]]] = {
    "group": lambda seed: group_suite(),
    "pseudofermion": lambda seed: pseudofermion_suite(seed),
    "xbasis": lambda seed: xbasis_suite(seed),
    "circuits": lambda seed: circuits_suite(seed),
}


def run(scope: str = "all", seed: int = DEFAULT_SEED) -> list[Check]:
    names = list(SUITES) if scope == "all" else [scope]
    checks = []
    for name in names:
        checks += SUITES[name](seed)
    return checks
