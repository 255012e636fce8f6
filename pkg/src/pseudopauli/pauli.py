"""Exact Pauli-group algebra on one and two qubits.

An element is ``i**phase`` times a tensor word over ``I, X, Y, Z``.  Products
are computed symbolically from the single-letter table, so group orders and
central-product claims are decided without any floating point.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import NotPauli, NotSubgroup, QubitMismatch

LETTERS = "IXYZ"

LETTER_MATRICES = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

_PHASES = (1, 1j, -1, -1j)


def _letter_table() -> dict[tuple[str, str], tuple[int, str]]:
    # X = iZY, Y = iXZ, Z = iYX give ZY = -iX, XZ = -iY, YX = -iZ; the
    # reversed orders pick up the opposite sign because distinct letters anticommute.
    table = {}
    for p in LETTERS:
        table[("I", p)] = (0, p)
        table[(p, "I")] = (0, p)
        table[(p, p)] = (0, "I")
    for (p, q), r in {("Z", "Y"): "X", ("X", "Z"): "Y", ("Y", "X"): "Z"}.items():
        table[(p, q)] = (3, r)
        table[(q, p)] = (1, r)
    return table


LETTER_PRODUCTS = _letter_table()


@dataclass(frozen=True, order=True)
class PauliElement:
    """``i**phase`` times the tensor product of the letters in ``word``."""

    phase: int
    word: str

    def __post_init__(self):
        if not 1 <= len(self.word) <= 2 or any(ch not in LETTERS for ch in self.word):
            raise ValueError(f"word must be 1 or 2 letters from IXYZ, got {self.word!r}")
        object.__setattr__(self, "phase", self.phase % 4)

    @property
    def n(self) -> int:
        return len(self.word)

    @property
    def key(self) -> int:
        """Small integer packing of (phase, word); unique per element."""
        k = 0
        for ch in self.word:
            k = 4 * k + LETTERS.index(ch)
        return (k << 2) | self.phase

    def __mul__(self, other: "PauliElement") -> "PauliElement":
        return pauli_mul(self, other)

    def inverse(self) -> "PauliElement":
        # every word squares to the identity word, so only the phase inverts
        return PauliElement(-self.phase, self.word)

    def is_identity(self) -> bool:
        return self.phase == 0 and set(self.word) == {"I"}

    def __str__(self) -> str:
        return format_pauli(self)


def identity(n: int) -> PauliElement:
    return PauliElement(0, "I" * n)


def pauli_mul(e1: PauliElement, e2: PauliElement) -> PauliElement:
    if e1.n != e2.n:
        raise QubitMismatch(f"cannot multiply {e1.n}-qubit and {e2.n}-qubit elements")
    phase = e1.phase + e2.phase
    letters = []
    for p, q in zip(e1.word, e2.word):
        dp, r = LETTER_PRODUCTS[(p, q)]
        phase += dp
        letters.append(r)
    return PauliElement(phase, "".join(letters))


def to_matrix(e: PauliElement) -> np.ndarray:
    M = np.ones((1, 1), dtype=complex)
    for ch in e.word:
        M = np.kron(M, LETTER_MATRICES[ch])
    return _PHASES[e.phase] * M


def all_elements(n: int) -> list[PauliElement]:
    return [PauliElement(p, "".join(w)) for w in itertools.product(LETTERS, repeat=n) for p in range(4)]


def from_matrix(M, tol: float = 1e-10) -> PauliElement:
    """Recognise ``M`` as a Pauli-group element, or raise :class:`NotPauli`."""
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] not in (2, 4):
        raise NotPauli(f"expected a 2x2 or 4x4 matrix, got shape {M.shape}")
    n = 1 if M.shape[0] == 2 else 2
    for word in itertools.product(LETTERS, repeat=n):
        P = to_matrix(PauliElement(0, "".join(word)))
        coeff = np.trace(P.conj().T @ M) / M.shape[0]
        for phase, z in enumerate(_PHASES):
            if abs(coeff - z) <= tol and np.max(np.abs(z * P - M)) <= tol:
                return PauliElement(phase, "".join(word))
    raise NotPauli("matrix is not i^p times a Pauli word")


_TOKEN = re.compile(r"^([+-]?)(i?)([IXYZ]+)$")


def parse_pauli(text: str) -> PauliElement:
    """Parse ``[+|-][i]LETTERS``, e.g. ``-iYX`` is ``-i (Y (x) X)``."""
    m = _TOKEN.match(text.strip())
    if not m:
        raise ValueError(f"not a Pauli element: {text!r}")
    sign, imag, word = m.groups()
    phase = (2 if sign == "-" else 0) + (1 if imag else 0)
    return PauliElement(phase, word)


def format_pauli(e: PauliElement) -> str:
    return ("+", "+i", "-", "-i")[e.phase] + e.word


def read_generators(path: str | Path) -> list[PauliElement]:
    """Read one element per line; blank lines and ``#`` comments are skipped."""
    out = []
    for line in Path(path).read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(parse_pauli(line))
    return out


@dataclass(frozen=True)
class FiniteMatrixGroup:
    elements: frozenset
    generators: tuple = field(default=())

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def n(self) -> int:
        return next(iter(self.elements)).n

    def __contains__(self, e) -> bool:
        return e in self.elements

    def sorted(self) -> list[PauliElement]:
        return sorted(self.elements, key=lambda e: e.key)


def generate_group(generators: Sequence[PauliElement]) -> FiniteMatrixGroup:
    """Closure of ``generators`` under multiplication (breadth first)."""
    gens = tuple(generators)
    if not gens:
        raise ValueError("need at least one generator")
    n = gens[0].n
    if any(g.n != n for g in gens):
        raise QubitMismatch("generators act on different numbers of qubits")

    seen = {identity(n).key: identity(n)}
    frontier = [identity(n)]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = pauli_mul(x, g)
                if y.key not in seen:
                    seen[y.key] = y
                    nxt.append(y)
        frontier = nxt
    return FiniteMatrixGroup(frozenset(seen.values()), gens)


def group_commutator(u: PauliElement, v: PauliElement) -> PauliElement:
    return u.inverse() * v.inverse() * u * v


def is_central_product(G: FiniteMatrixGroup, U: FiniteMatrixGroup, V: FiniteMatrixGroup):
    """Decide whether ``G = UV`` with ``[U, V] = 1``.

    Returns ``(True, None)`` or ``(False, witness)``.  The witness is a
    non-commuting pair ``(u, v)``, or ``(g, None)`` naming an element of
    ``G`` that is not a product ``uv``.
    """
    if not U.elements <= G.elements or not V.elements <= G.elements:
        raise NotSubgroup("U and V must be contained in G")

    # generators first so the witness is as readable as possible
    pairs = itertools.chain(
        itertools.product(U.generators, V.generators),
        itertools.product(U.sorted(), V.sorted()),
    )
    for u, v in pairs:
        if not group_commutator(u, v).is_identity():
            return False, (u, v)

    products = {u * v for u in U.elements for v in V.elements}
    missing = [g for g in G.sorted() if g not in products]
    if missing:
        return False, (missing[0], None)
    return True, None


def center(G: FiniteMatrixGroup) -> frozenset:
    return frozenset(z for z in G.elements if all(z * g == g * z for g in G.elements))


def element_order(e: PauliElement) -> int:
    x, k = e, 1
    while not x.is_identity():
        x, k = x * e, k + 1
    return k


def standard_generators(n: int) -> list[PauliElement]:
    """Single-site X, Y, Z on each qubit: X, Y, Z for n=1, the six lifts for n=2."""
    out = []
    for site in range(n):
        for ch in "XYZ":
            word = ["I"] * n
            word[site] = ch
            out.append(PauliElement(0, "".join(word)))
    return out


def pauli_group(n: int) -> FiniteMatrixGroup:
    return generate_group(standard_generators(n))


def elements_from_matrices(mats: Iterable) -> list[PauliElement]:
    return [from_matrix(M) for M in mats]
