"""
Pauli groups from generators
============================

Elements of P1 and P2 are stored symbolically as a phase in {1, i, -1, -i}
times a word over IXYZ, so group closure is exact and cheap.
"""

from pseudopauli.pauli import (
    center,
    format_pauli,
    generate_group,
    is_central_product,
    parse_pauli,
    pauli_group,
    to_matrix,
)

# the single-qubit group from X, Y, Z
P1 = generate_group([parse_pauli(w) for w in "XYZ"])
print("|P1| =", P1.order)
print(" ".join(format_pauli(e) for e in P1.sorted()))

# products follow ZY = -iX, XZ = -iY, YX = -iZ
print("Z*Y =", format_pauli(parse_pauli("Z") * parse_pauli("Y")))
print(to_matrix(parse_pauli("-iX")))

# two qubits: 64 elements, centre {+-1, +-i}
P2 = pauli_group(2)
print("|P2| =", P2.order)
print("centre:", sorted(format_pauli(e) for e in center(P2)))

# P2 is the central product of the two single-qubit copies
U = generate_group([parse_pauli(w) for w in ("XI", "YI", "ZI")])
V = generate_group([parse_pauli(w) for w in ("IX", "IY", "IZ")])
print("P2 = UV centrally:", is_central_product(P2, U, V))

# <X><Y> inside P1 is neither commuting nor large enough
ok, witness = is_central_product(P1, generate_group([parse_pauli("X")]), generate_group([parse_pauli("Y")]))
print("P1 = <X><Y>?", ok, "witness:", [format_pauli(w) for w in witness])
