"""Small dense complex linear algebra (dimension at most 8).

Floating matrices are plain ``numpy`` arrays of dtype ``complex128``; the
helpers here validate shape and finiteness on the way in.  Exact work
(commutant ranks) goes through :class:`ExactComplex`, a Gaussian rational
built on :class:`fractions.Fraction`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    DimensionOverflow,
    NotHermitian,
    NotPositiveDefinite,
)

MAX_DIM = 8
ENTRY_TOL = 1e-12
HERMITIAN_TOL = 1e-10
EIGEN_FLOOR = 1e-12


def as_cmatrix(A) -> np.ndarray:
    """Coerce ``A`` to a finite complex matrix no larger than 8x8."""
    M = np.array(A, dtype=complex)
    if M.ndim != 2 or M.shape[0] < 1 or M.shape[1] < 1:
        raise DimensionMismatch(f"expected a 2-d matrix, got shape {M.shape}")
    if M.shape[0] > MAX_DIM or M.shape[1] > MAX_DIM:
        raise DimensionOverflow(f"shape {M.shape} exceeds {MAX_DIM}x{MAX_DIM}")
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix has non-finite entries")
    return M


def _square_pair(A, B) -> tuple[np.ndarray, np.ndarray]:
    A, B = as_cmatrix(A), as_cmatrix(B)
    if A.shape[0] != A.shape[1] or A.shape != B.shape:
        raise DimensionMismatch(f"need square matrices of equal size, got {A.shape} and {B.shape}")
    return A, B


def max_abs_diff(A, B) -> float:
    A, B = np.asarray(A, dtype=complex), np.asarray(B, dtype=complex)
    if A.shape != B.shape:
        raise DimensionMismatch(f"{A.shape} vs {B.shape}")
    if A.size == 0:
        return 0.0
    return float(np.max(np.abs(A - B)))


def allclose(A, B, tol: float = ENTRY_TOL) -> bool:
    """Entrywise absolute comparison; shapes must agree."""
    return max_abs_diff(A, B) <= tol


def dagger(A) -> np.ndarray:
    return np.conj(np.asarray(A, dtype=complex)).T


def kron(A, B) -> np.ndarray:
    A, B = as_cmatrix(A), as_cmatrix(B)
    rows, cols = A.shape[0] * B.shape[0], A.shape[1] * B.shape[1]
    if rows > MAX_DIM or cols > MAX_DIM:
        raise DimensionOverflow(f"kron result {rows}x{cols} exceeds {MAX_DIM}x{MAX_DIM}")
    return np.kron(A, B)


def commutator(A, B) -> np.ndarray:
    A, B = _square_pair(A, B)
    return A @ B - B @ A


def anticommutator(A, B) -> np.ndarray:
    A, B = _square_pair(A, B)
    return A @ B + B @ A


# ---------------------------------------------------------------------------
# matrix exponential: scaling and squaring around a degree-13 Pade kernel
# ---------------------------------------------------------------------------

_PADE13 = (
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0, 129060195264000.0, 10559470521600.0,
    670442572800.0, 33522128640.0, 1323241920.0, 40840800.0,
    960960.0, 16380.0, 182.0, 1.0,
)
_THETA13 = 5.371920351148152


def _expm_stack(As: np.ndarray) -> np.ndarray:
    """exp of every matrix in a (k, n, n) stack."""
    k, n, _ = As.shape
    norms = np.abs(As).sum(axis=1).max(axis=1)
    with np.errstate(divide="ignore"):
        squarings = np.where(
            norms > _THETA13, np.ceil(np.log2(norms / _THETA13)), 0.0
        ).astype(int)
    As = As / (2.0 ** squarings)[:, None, None]

    b = _PADE13
    ident = np.broadcast_to(np.eye(n, dtype=complex), As.shape)
    A2 = As @ As
    A4 = A2 @ A2
    A6 = A4 @ A2
    U = As @ (A6 @ (b[13] * A6 + b[11] * A4 + b[9] * A2)
              + b[7] * A6 + b[5] * A4 + b[3] * A2 + b[1] * ident)
    V = A6 @ (b[12] * A6 + b[10] * A4 + b[8] * A2) + b[6] * A6 + b[4] * A4 + b[2] * A2 + b[0] * ident
    R = np.linalg.solve(V - U, V + U)
    R[norms == 0] = np.eye(n)

    with np.errstate(over="ignore", invalid="ignore"):
        for step in range(int(squarings.max(initial=0))):
            todo = squarings > step
            R[todo] = R[todo] @ R[todo]
    return R


def mat_exp(A, t: float = 1.0) -> np.ndarray:
    """Return ``exp(A t)``.

    Raises ``OverflowError`` when the result leaves the double range, which
    happens for strongly amplifying generators over long times.
    """
    A = as_cmatrix(A)
    if A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"mat_exp needs a square matrix, got {A.shape}")
    return mat_exp_many(A, [t])[0]


def mat_exp_many(A, times: Iterable[float]) -> np.ndarray:
    """``exp(A t)`` for each ``t`` in ``times``, stacked along axis 0."""
    A = as_cmatrix(A)
    if A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"mat_exp needs a square matrix, got {A.shape}")
    ts = np.asarray(list(times), dtype=float)
    if ts.size == 0:
        return np.zeros((0,) + A.shape, dtype=complex)
    if not np.all(np.isfinite(ts)):
        raise ValueError("times must be finite")
    with np.errstate(over="ignore", invalid="ignore"):
        out = _expm_stack(A[None, :, :] * ts[:, None, None])
    bad = ~np.all(np.isfinite(out), axis=(1, 2))
    if np.any(bad):
        first = float(ts[np.argmax(bad)])
        raise OverflowError(f"exp(A t) overflows double range at t = {first!r}")
    return out


# ---------------------------------------------------------------------------
# exact Gaussian rationals and null spaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExactComplex:
    """Gaussian rational ``re + i im`` with exact arithmetic."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def coerce(cls, z) -> "ExactComplex":
        if isinstance(z, ExactComplex):
            return z
        if isinstance(z, (int, Fraction)):
            return cls(Fraction(z))
        if isinstance(z, (complex, float, np.number)):
            z = complex(z)
            return cls(Fraction(z.real), Fraction(z.imag))
        raise TypeError(f"cannot make an exact complex from {z!r}")

    def __add__(self, other):
        o = ExactComplex.coerce(other)
        return ExactComplex(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = ExactComplex.coerce(other)
        return ExactComplex(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return ExactComplex.coerce(other) - self

    def __mul__(self, other):
        o = ExactComplex.coerce(other)
        return ExactComplex(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = ExactComplex.coerce(other)
        den = o.re * o.re + o.im * o.im
        if den == 0:
            raise ZeroDivisionError("division by exact zero")
        num = self * o.conjugate()
        return ExactComplex(num.re / den, num.im / den)

    def __neg__(self):
        return ExactComplex(-self.re, -self.im)

    def __eq__(self, other):
        try:
            o = ExactComplex.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def conjugate(self) -> "ExactComplex":
        return ExactComplex(self.re, -self.im)

    def is_gaussian_integer(self) -> bool:
        return self.re.denominator == 1 and self.im.denominator == 1

    def __repr__(self):
        if self.im == 0:
            return f"{self.re}"
        return f"({self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}i)"


ZERO = ExactComplex()
ONE = ExactComplex(1)


def _row_to_gaussian_integers(row: list[ExactComplex]) -> list[ExactComplex]:
    dens = [z.re.denominator for z in row] + [z.im.denominator for z in row]
    scale = reduce(math.lcm, dens, 1)
    return [z * scale for z in row]


def _gmul(a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
    return a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0]


def _gdiv_exact(a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
    n = b[0] * b[0] + b[1] * b[1]
    re, re_rem = divmod(a[0] * b[0] + a[1] * b[1], n)
    im, im_rem = divmod(a[1] * b[0] - a[0] * b[1], n)
    if re_rem or im_rem:
        raise ArithmeticError("inexact division in fraction-free elimination")
    return re, im


def echelon(M: Sequence[Sequence]) -> tuple[list[list[ExactComplex]], list[int]]:
    """Fraction-free (Bareiss) row echelon form.

    Rows are first scaled to Gaussian integers, after which every division
    in the elimination is exact, so the work is done on integer pairs.
    Rows that become zero are dropped as they appear.  Returns the echelon
    rows and the pivot column of each nonzero row.
    """
    scaled = [_row_to_gaussian_integers([ExactComplex.coerce(z) for z in r]) for r in M]
    if not scaled:
        return [], []
    ncols = len(scaled[0])
    if any(len(r) != ncols for r in scaled):
        raise DimensionMismatch("ragged exact matrix")
    zero = (0, 0)
    rows = [[(int(z.re), int(z.im)) for z in r] for r in scaled]
    rows = [r for r in rows if any(x != zero for x in r)]

    done: list[list[tuple[int, int]]] = []
    pivots: list[int] = []
    prev = (1, 0)
    for c in range(ncols):
        if not rows:
            break
        p = next((i for i, r in enumerate(rows) if r[c] != zero), None)
        if p is None:
            continue
        prow = rows.pop(p)
        piv = prow[c]
        remaining = []
        for row in rows:
            lead = row[c]
            if lead == zero:
                new = [_gdiv_exact(_gmul(piv, row[j]), prev) for j in range(c + 1, ncols)]
            else:
                new = []
                for j in range(c + 1, ncols):
                    a, b = _gmul(piv, row[j]), _gmul(lead, prow[j])
                    new.append(_gdiv_exact((a[0] - b[0], a[1] - b[1]), prev))
            if any(x != zero for x in new):
                remaining.append([zero] * (c + 1) + new)
        rows = remaining
        prev = piv
        done.append(prow)
        pivots.append(c)
    return [[ExactComplex(re, im) for re, im in r] for r in done], pivots


def null_space(M: Sequence[Sequence], cols: int | None = None) -> list[list[ExactComplex]]:
    """Exact basis of the right null space of ``M``.

    ``cols`` is required when ``M`` has no rows.  One basis vector is
    returned per free column, with that coordinate set to 1 and the other
    free coordinates 0.
    """
    if cols is None:
        if not M:
            raise ValueError("cols must be given for a matrix with no rows")
        cols = len(M[0])
    rows, pivots = echelon(M) if M else ([], [])
    pivot_set = set(pivots)
    basis = []
    for free in (c for c in range(cols) if c not in pivot_set):
        x = [ZERO] * cols
        x[free] = ONE
        for k in range(len(pivots) - 1, -1, -1):
            pc = pivots[k]
            s = ZERO
            for j in range(pc + 1, cols):
                if x[j] and rows[k][j]:
                    s = s + rows[k][j] * x[j]
            x[pc] = -s / rows[k][pc]
        basis.append(x)
    return basis


def exact_matvec(M: Sequence[Sequence], x: Sequence) -> list[ExactComplex]:
    out = []
    for row in M:
        s = ZERO
        for a, b in zip(row, x):
            s = s + ExactComplex.coerce(a) * ExactComplex.coerce(b)
        out.append(s)
    return out


# ---------------------------------------------------------------------------
# least squares in a matrix span, positive square roots
# ---------------------------------------------------------------------------

def span_decompose(basis: Sequence, target) -> tuple[np.ndarray, float]:
    """Least-squares coefficients of ``target`` in the span of ``basis``.

    Returns ``(coefficients, residual)`` with the residual measured in the
    Frobenius norm, ``||sum_k c_k B_k - target||_F``.
    """
    if len(basis) == 0:
        raise ValueError("basis must be nonempty")
    T = as_cmatrix(target)
    mats = [as_cmatrix(B) for B in basis]
    for B in mats:
        if B.shape != T.shape or B.shape[0] != B.shape[1]:
            raise DimensionMismatch(f"basis member {B.shape} vs target {T.shape}")
    design = np.column_stack([B.ravel() for B in mats])
    coeffs, *_ = np.linalg.lstsq(design, T.ravel(), rcond=None)
    residual = float(np.linalg.norm(design @ coeffs - T.ravel()))
    return coeffs, residual


def psd_sqrt(S) -> np.ndarray:
    """Principal square root of a Hermitian positive-definite matrix."""
    S = as_cmatrix(S)
    if S.shape[0] != S.shape[1]:
        raise DimensionMismatch(f"psd_sqrt needs a square matrix, got {S.shape}")
    if max_abs_diff(S, dagger(S)) > HERMITIAN_TOL:
        raise NotHermitian("matrix is not Hermitian within 1e-10")
    S = (S + dagger(S)) / 2
    evals, evecs = np.linalg.eigh(S)
    if evals.min() <= EIGEN_FLOOR:
        raise NotPositiveDefinite(f"smallest eigenvalue {evals.min():.3e} is not positive")
    if S.shape == (2, 2):
        # sqrt(S) = (S + sqrt(det S) I) / sqrt(tr S + 2 sqrt(det S))
        rdet = math.sqrt(float(evals[0] * evals[1]))
        return (S + rdet * np.eye(2)) / math.sqrt(float(evals.sum()) + 2 * rdet)
    return (evecs * np.sqrt(evals)) @ dagger(evecs)
