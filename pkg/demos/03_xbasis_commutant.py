"""
The twelve X matrices
=====================

Twelve two-qubit Pauli words span a 12-dimensional subspace of the 4x4
matrices.  Only multiples of the identity commute with all of them, and
both circuit generators decompose in their span.
"""

import numpy as np

from pseudopauli.pauli import format_pauli
from pseudopauli.xbasis import (
    commutant_dimension,
    decompose,
    decompose_HT,
    decompose_LS,
    verify_p2_generation,
    x_matrices,
)

X = x_matrices()
for j, e in enumerate(X.pauli_ids, 1):
    print(f"X{j:<2} = {format_pauli(e)}")

# exact commutants
print("commutant of all twelve:", commutant_dimension(list(X.mats))[0])
print("commutant of X3 alone:  ", commutant_dimension([X[3]])[0])

# X1..X6 generate P2, split as a central product
for c in verify_p2_generation():
    print(c.line())

# decompositions, compared with the closed-form coefficient lists
d = decompose_LS(0.3, -1.2, 0.8)
print("L_S slots", sorted(d.nonzero_slots()), "residual", d.residual)
for k, (got, printed, diff) in d.slot_diffs().items():
    if printed is not None:
        print(f"  slot {k:2d}: {got:.4f}  closed form {printed:.4f}")

d = decompose_HT(1.0, 0.5, 0.2)
print("H_T slots", sorted(d.nonzero_slots()), "residual", d.residual)

# the identity is orthogonal to the span
print("I4 residual:", decompose(np.eye(4)).residual)
