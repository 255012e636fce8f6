import math

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from pseudopauli.circuits import CircuitParamsS, CircuitParamsT, build_HT, build_LS
from pseudopauli.errors import NonGaussianEntries, WrongParameterPoint
from pseudopauli.linalg import ONE, ZERO, anticommutator, commutator, max_abs_diff
from pseudopauli.pauli import (
    elements_from_matrices,
    format_pauli,
    generate_group,
    is_central_product,
    parse_pauli,
    pauli_group,
    to_matrix,
)
from pseudopauli.pseudofermion import PseudofermionParams, pair_errors
from pseudopauli.xbasis import (
    commutant_dimension,
    commutator_map,
    decompose,
    decompose_HT,
    decompose_LS,
    derived_HT_coefficients,
    derived_LS_coefficients,
    gamma_sets,
    lifted_pf,
    mixed_relations,
    printed_HT_coefficients,
    printed_LS_coefficients,
    to_exact,
    verify_p2_generation,
    verify_x_realization,
    x_matrices,
    x_realization_derived,
    x_realization_identities,
)

SPECIAL = PseudofermionParams(math.pi / 2, 0.0, 1.0)
unit = st.floats(-2, 2)


def test_x_matrices_pauli_words():
    X = x_matrices()
    words = [format_pauli(e) for e in X.pauli_ids]
    assert words == ["+XI", "+YI", "+ZI", "+IZ", "+IX", "+iIY",
                     "+XX", "+YZ", "+YX", "+ZZ", "+ZX", "+XZ"]
    for M, e in zip(X.mats, X.pauli_ids):
        assert np.array_equal(M, to_matrix(e))
    assert np.array_equal(X[3], np.diag([1, 1, -1, -1]))
    assert np.array_equal(X[10], np.diag([1, -1, -1, 1]))
    assert len(X) == 12


def test_x_matrices_read_only():
    with pytest.raises(ValueError):
        x_matrices()[1][0, 0] = 5


def test_x_span_rank_and_complement():
    X = x_matrices()
    design = np.column_stack([M.ravel() for M in X.mats])
    assert np.linalg.matrix_rank(design) == 12
    # words outside the span are exactly II, XY, YY, ZY
    for w in ("II", "XY", "YY", "ZY"):
        assert decompose(to_matrix(parse_pauli(w))).residual == pytest.approx(2.0)


def test_to_exact_rejects_non_gaussian():
    with pytest.raises(NonGaussianEntries):
        to_exact(np.array([[0.5, 0], [0, 1]]))


def test_commutator_map_matches_numeric():
    X = x_matrices()
    rng = np.random.default_rng(0)
    M = rng.integers(-3, 4, (4, 4)) + 1j * rng.integers(-3, 4, (4, 4))
    for j in (1, 6, 9):
        K = np.array([[complex(z.re, z.im) for z in row] for row in commutator_map(X[j])])
        assert np.array_equal(K @ M.ravel(), (M @ X[j] - X[j] @ M).ravel())


def test_commutant_examples():
    X = x_matrices()
    dim, basis = commutant_dimension(list(X.mats))
    assert dim == 1
    B = basis[0]
    assert all(B[r][c] == (ONE if r == c else ZERO) for r in range(4) for c in range(4))
    assert commutant_dimension([])[0] == 16
    assert commutant_dimension([X[3]])[0] == 8


@pytest.mark.parametrize("subset", [[1], [3], [6], [1, 2], [3, 4], [1, 5], [7, 10], [1, 2, 3]])
def test_commutant_dimension_against_sympy(subset):
    X = x_matrices()
    rows = []
    for j in subset:
        rows.extend(commutator_map(X[j]))
    Msym = sympy.Matrix([[sympy.Rational(z.re) + sympy.I * sympy.Rational(z.im) for z in r] for r in rows])
    assert commutant_dimension([X[j] for j in subset])[0] == len(Msym.nullspace())


def test_mixed_relations():
    assert all(v == 0 for v in mixed_relations().values())


@settings(max_examples=50, deadline=None)
@given(st.floats(0, 2 * math.pi), st.floats(-1, 1), st.floats(0.05, 3))
def test_lifted_pairs(theta, delta, gap):
    p = PseudofermionParams(theta, delta, abs(delta) + gap)
    L = lifted_pf(p)
    assert max(pair_errors(L.A, L.B).values()) <= 1e-12
    assert max(pair_errors(L.Atilde, L.Btilde).values()) <= 1e-12
    assert np.max(np.abs(commutator(L.A, L.Btilde))) <= 1e-12
    assert max_abs_diff(anticommutator(L.A, L.B), np.eye(4)) <= 1e-12


def test_gamma_sets_special_point():
    X = x_matrices()
    gmu, gnu = gamma_sets(SPECIAL)
    assert max_abs_diff(gmu[0], -X[3]) < 1e-15
    assert max_abs_diff(gnu[0], -X[4]) < 1e-15
    L = lifted_pf(SPECIAL)
    assert max_abs_diff(L.B + L.A, -X[3]) < 1e-15


def test_gamma_sets_generate_commuting_p1_copies():
    gmu, gnu = gamma_sets(SPECIAL)
    U = generate_group(elements_from_matrices(gmu))
    V = generate_group(elements_from_matrices(gnu))
    assert U.order == V.order == 16
    assert is_central_product(pauli_group(2), U, V) == (True, None)


@pytest.mark.parametrize("w", [0.5, 1.0, 2.5])
def test_x_realization_at_special_point(w):
    p = PseudofermionParams(math.pi / 2, 0.0, w)
    errs = {name: max_abs_diff(lhs, rhs) for name, (lhs, rhs) in x_realization_identities(p).items()}
    # X2, X3, X4, X6 hold exactly; X1 and X5 are off by a factor -i (see README)
    for name in ("X2 = BA-AB", "X3 = -(B+A)", "X4 = -(B~+A~)", "X6 = i(B~A~-A~B~)"):
        assert errs[name] < 1e-14
    assert errs["X1 = i(AB-BA)"] == pytest.approx(2.0, abs=1e-14)
    assert errs["X5 = i(A~B~-B~A~)"] == pytest.approx(2.0, abs=1e-14)
    lhs, rhs = x_realization_identities(p)["X1 = i(AB-BA)"]
    assert max_abs_diff(rhs, -1j * x_matrices()[2]) < 1e-14
    for lhs, rhs in x_realization_derived(p).values():
        assert max_abs_diff(lhs, rhs) < 1e-14


def test_verify_x_realization_statuses():
    status = [c.status for c in verify_x_realization()]
    assert status == ["FAIL", "PASS", "PASS", "PASS", "FAIL", "PASS"]


def test_x_realization_wrong_point():
    with pytest.raises(WrongParameterPoint):
        x_realization_identities(PseudofermionParams(0.0, 0.0, 1.0))
    with pytest.raises(WrongParameterPoint):
        x_realization_derived(PseudofermionParams(math.pi / 2, 0.1, 1.0))


def test_verify_p2_generation():
    checks = verify_p2_generation()
    assert [c.name for c in checks] == [
        "p2_order_64", "x1_to_x6_order_64", "x1_to_x6_equals_p2", "U_order_16",
        "V_order_16", "UV_generator_commutators_trivial", "P2_central_product_UV",
    ]
    assert all(c.status == "PASS" for c in checks)


def test_decompose_LS_examples():
    d = decompose_LS(1, 0, 0)
    assert d.residual <= 1e-12
    assert d.nonzero_slots() == {2}
    assert abs(d.coefficients[1] - 1j) < 1e-15
    d = decompose_LS(1, 1, 1)
    assert d.nonzero_slots() == {2, 4, 7, 9, 10}  # alpha_1 = (1 - alpha)/2 vanishes
    assert abs(d.coefficients[8] - 1 / 2j) < 1e-15


@settings(max_examples=100, deadline=None)
@given(unit, unit, unit)
def test_decompose_LS_random(alpha, mu, gamma):
    d = decompose_LS(alpha, mu, gamma)
    assert d.residual <= 1e-12
    want = derived_LS_coefficients(alpha, mu, gamma)
    for k in range(1, 13):
        assert abs(d.coefficients[k - 1] - want.get(k, 0)) <= 1e-12
    printed = printed_LS_coefficients(alpha, mu, gamma)
    for k in (1, 2, 4, 7, 10):
        assert printed[k] == want[k]
    assert abs(printed[9] - want[9]) == pytest.approx(abs(alpha * mu), abs=1e-15)
    assert d.nonzero_slots() <= {1, 2, 4, 7, 9, 10}


def test_decompose_LS_generic_has_six_slots():
    assert decompose_LS(0.3, -1.2, 0.8).nonzero_slots() == {1, 2, 4, 7, 9, 10}


def test_decompose_HT_example():
    d = decompose_HT(1, 1, 1)
    assert d.residual <= 1e-12
    assert d.nonzero_slots() == {1, 5, 11, 12}
    diffs = d.slot_diffs()
    assert diffs[6][2] == pytest.approx(1.0, abs=1e-12)
    assert diffs[12][2] == pytest.approx(1.0, abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(unit, unit, unit)
def test_decompose_HT_random(b, dd, r):
    d = decompose_HT(b, dd, r)
    assert d.residual <= 1e-12
    want = derived_HT_coefficients(b, dd, r)
    for k in range(1, 13):
        assert abs(d.coefficients[k - 1] - want.get(k, 0)) <= 1e-12
    # the printed list reproduces an antisymmetric term i r X6 instead
    printed = sum(c * x_matrices()[k] for k, c in printed_HT_coefficients(b, dd, r).items())
    H = build_HT(CircuitParamsT(b, dd, r))
    assert max_abs_diff(printed, H) == pytest.approx(abs(r), abs=1e-12)


def test_decompose_identity_not_in_span():
    d = decompose(np.eye(4))
    assert d.residual > 0.5
    assert d.nonzero_slots() == set()


def test_decompose_build_LS_round_trip():
    L = build_LS(CircuitParamsS(0.4, 0.9, -0.6))
    d = decompose(L)
    recon = sum(c * M for c, M in zip(d.coefficients, x_matrices().mats))
    assert max_abs_diff(recon, L) < 1e-14
