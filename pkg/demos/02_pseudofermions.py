"""
Pseudofermions of a two-level atom
==================================

a and b satisfy {a, b} = 1 and a^2 = b^2 = 0 without b being the adjoint of
a.  A metric S_phi turns them into an ordinary fermion c = T^-1 a T with
T = S_phi^(1/2).
"""

import math

import numpy as np

from pseudopauli.linalg import anticommutator, dagger, max_abs_diff
from pseudopauli.pseudofermion import (
    PseudofermionParams,
    biorthogonal_system,
    fermionize,
    h_eff,
    make_pf_pair,
    mu_ops,
    number_ops,
)

np.set_printoptions(precision=4, suppress=True)

p = PseudofermionParams(theta=0.7, delta=0.3, omega_abs=1.2)
pair = make_pf_pair(p)
print("Omega =", p.Omega)
print("{a,b} =\n", anticommutator(pair.a, pair.b))
print("b - a* =\n", pair.b - dagger(pair.a))

# the effective Hamiltonian has real spectrum -Omega/2, Omega/2
H = h_eff(p)
print("spectrum of H_eff:", np.sort(np.linalg.eigvals(H).real))

# biorthonormal eigenvectors and the metric operators
sys = biorthogonal_system(p)
print("<phi_j, psi_l> =\n", sys.gram())
print("S_phi S_psi =\n", sys.S_phi @ sys.S_psi)
N, Nstar = number_ops(pair)
print("S_psi N - N* S_psi:", max_abs_diff(sys.S_psi @ N, Nstar @ sys.S_psi))

# fermionization
c, T = fermionize(pair, sys)
print("{c, c*} =\n", anticommutator(c, dagger(c)))
print("T H0 T^-1 - H_eff:", max_abs_diff(T @ (p.Omega * (dagger(c) @ c - np.eye(2) / 2)) @ np.linalg.inv(T), H))

# at theta = pi/2, delta = 0 the mu operators are Pauli matrices
for name, (t, d) in {"(pi/2, 0)": (math.pi / 2, 0.0), "(0, 0)": (0.0, 0.0)}.items():
    m1, m2, m3 = mu_ops(PseudofermionParams(t, d, 1.0))
    print(name, "mu1 =\n", m1.real, "\nmu2 = i(b - a) =\n", m2, "\nmu3 =\n", m3)
