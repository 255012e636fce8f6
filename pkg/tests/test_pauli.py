import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pseudopauli import pauli
from pseudopauli.circuits import CircuitParamsS, build_LS
from pseudopauli.errors import NotPauli, NotSubgroup, QubitMismatch
from pseudopauli.pauli import (
    PauliElement,
    all_elements,
    center,
    element_order,
    format_pauli,
    from_matrix,
    generate_group,
    group_commutator,
    identity,
    is_central_product,
    parse_pauli,
    pauli_group,
    pauli_mul,
    read_generators,
    standard_generators,
    to_matrix,
)
from pseudopauli.xbasis import x_matrices


def el(s: str) -> PauliElement:
    return parse_pauli(s)


def elements(n):
    return st.builds(PauliElement, st.integers(0, 3), st.text("IXYZ", min_size=n, max_size=n))


def test_multiplication_examples():
    assert pauli_mul(el("Z"), el("Y")) == el("-iX")
    assert pauli_mul(el("X"), el("X")) == el("I")
    assert pauli_mul(el("iIX"), el("-IX")) == el("-iII")
    assert pauli_mul(el("X"), el("Y")) == el("iZ")
    assert pauli_mul(el("Y"), el("X")) == el("-iZ")


def test_multiplication_qubit_mismatch():
    with pytest.raises(QubitMismatch):
        pauli_mul(el("X"), el("XX"))


def test_to_matrix_examples():
    assert np.array_equal(to_matrix(el("Y")), np.array([[0, -1j], [1j, 0]]))
    assert np.array_equal(to_matrix(el("II")), np.eye(4))
    assert np.array_equal(to_matrix(el("iIY")), x_matrices()[6])


def test_from_matrix_examples():
    assert from_matrix(x_matrices()[10]) == el("ZZ")
    assert from_matrix(np.eye(4)).is_identity()
    with pytest.raises(NotPauli):
        from_matrix(build_LS(CircuitParamsS(1, 1, 1)))
    with pytest.raises(NotPauli):
        from_matrix(np.eye(3))


@settings(max_examples=200, deadline=None)
@given(elements(2), elements(2))
def test_multiplication_is_a_homomorphism(g, h):
    assert np.array_equal(to_matrix(g * h), to_matrix(g) @ to_matrix(h))


@settings(max_examples=100, deadline=None)
@given(elements(2), elements(2), elements(2))
def test_associativity(g, h, k):
    assert (g * h) * k == g * (h * k)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 2).flatmap(elements))
def test_inverse_and_round_trip(g):
    assert (g * g.inverse()).is_identity()
    assert from_matrix(to_matrix(g)) == g
    assert parse_pauli(format_pauli(g)) == g


def test_words_longer_than_two_rejected():
    with pytest.raises(ValueError):
        PauliElement(0, "XII")


def test_all_elements_distinct_matrices():
    mats = {to_matrix(e).tobytes() for e in all_elements(2)}
    assert len(mats) == 64


@pytest.mark.parametrize("text, phase, word", [("X", 0, "X"), ("+iYZ", 1, "YZ"), ("-IX", 2, "IX"), ("-iZZ", 3, "ZZ")])
def test_parse(text, phase, word):
    e = parse_pauli(text)
    assert (e.phase, e.word) == (phase, word)


@pytest.mark.parametrize("text", ["", "iQ", "x", "+-X", "i X"])
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        parse_pauli(text)


def test_read_generators(tmp_path):
    f = tmp_path / "gens.txt"
    f.write_text("# P1\nX\n\n-iY  \nZ\n")
    assert read_generators(f) == [el("X"), el("-iY"), el("Z")]


def test_group_orders():
    assert generate_group([el("X"), el("Y"), el("Z")]).order == 16
    assert generate_group([identity(1)]).order == 1
    P2 = generate_group([el(w) for w in ("XI", "YI", "ZI", "IX", "IY", "IZ")])
    assert P2.order == 64
    assert P2.elements == frozenset(all_elements(2))


def test_group_sorted_is_deterministic():
    G = pauli_group(1)
    assert [e.key for e in G.sorted()] == sorted(e.key for e in G.elements)


def test_x1_to_x6_generate_p2():
    six = list(x_matrices().pauli_ids[:6])
    assert generate_group(six).elements == pauli_group(2).elements


def test_centre_and_orders():
    G = pauli_group(2)
    assert center(G) == {el("II"), el("iII"), el("-II"), el("-iII")}
    assert element_order(el("iXY")) == 4
    assert element_order(el("XY")) == 2
    assert element_order(el("-II")) == 2
    assert max(element_order(e) for e in G.elements) == 4


def test_central_product_examples():
    P1 = pauli_group(1)
    trivial = generate_group([identity(1)])
    assert is_central_product(P1, P1, trivial) == (True, None)

    ok, witness = is_central_product(P1, generate_group([el("X")]), generate_group([el("Y")]))
    assert not ok
    assert witness == (el("X"), el("Y"))

    U = generate_group([el("XI"), el("YI"), el("ZI")])
    V = generate_group([el("IX"), el("IY"), el("IZ")])
    assert U.order == V.order == 16
    assert is_central_product(pauli_group(2), U, V) == (True, None)


def test_central_product_commuting_but_too_small():
    G = pauli_group(2)
    U = generate_group([el("XI")])
    V = generate_group([el("IX")])
    ok, witness = is_central_product(G, U, V)
    assert not ok and witness[1] is None


def test_central_product_rejects_non_subgroup():
    with pytest.raises(NotSubgroup):
        is_central_product(pauli_group(1), pauli_group(1), pauli_group(2))


def test_commutator_of_paulis():
    # XY = -YX
    assert group_commutator(el("X"), el("Y")) == el("-I")
    for g, h in itertools.product(standard_generators(2), repeat=2):
        c = group_commutator(g, h)
        assert c in (el("II"), el("-II"))


def test_pauli_module_exposes_letter_table():
    assert pauli.LETTER_PRODUCTS[("Z", "Y")] == (3, "X")
