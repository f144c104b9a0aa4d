"""Dense exact linear algebra over GF(q) or QQ.

Prime-field matrices are int64 numpy arrays with entries in ``[0, q)``;
rational matrices are object arrays of ``Fraction``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .bipoly import Field


@dataclass(frozen=True)
class FieldMatrix:
    field: Field
    data: np.ndarray

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence], cols: int | None = None) -> "FieldMatrix":
        rows = list(rows)
        ncols = cols if cols is not None else (len(rows[0]) if rows else 0)
        arr = zeros(field, len(rows), ncols)
        for i, r in enumerate(rows):
            if len(r) != ncols:
                raise ValueError("ragged rows")
            for j, v in enumerate(r):
                arr[i, j] = field(v)
        return cls(field, arr)

    @classmethod
    def zero(cls, field: Field, rows: int, cols: int) -> "FieldMatrix":
        return cls(field, zeros(field, rows, cols))

    @classmethod
    def identity(cls, field: Field, size: int) -> "FieldMatrix":
        arr = zeros(field, size, size)
        for i in range(size):
            arr[i, i] = field(1)
        return cls(field, arr)

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    def transpose(self) -> "FieldMatrix":
        return FieldMatrix(self.field, self.data.T.copy())

    def __matmul__(self, other: "FieldMatrix") -> "FieldMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        if self.rows == 0 or other.cols == 0 or self.cols == 0:
            return FieldMatrix.zero(self.field, self.rows, other.cols)
        return FieldMatrix(self.field, normalize(self.field, self.data @ other.data))

    def is_zero(self) -> bool:
        return not np.any(self.data != 0)

    def tolist(self) -> list[list]:
        return [[self.field.signed(v) if self.field.is_prime else v for v in row] for row in self.data.tolist()]

    def __eq__(self, other):
        if not isinstance(other, FieldMatrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and bool(np.all(self.data == other.data))


@dataclass(frozen=True)
class EchelonForm:
    """Reduced row echelon form: ``rows`` has one row per pivot."""

    rows: np.ndarray
    pivots: tuple[int, ...]
    cols: int

    @property
    def rank(self) -> int:
        return len(self.pivots)


def zeros(field: Field, rows: int, cols: int) -> np.ndarray:
    if field.is_prime:
        return np.zeros((rows, cols), dtype=np.int64)
    arr = np.empty((rows, cols), dtype=object)
    arr.fill(Fraction(0))
    return arr


def normalize(field: Field, arr: np.ndarray) -> np.ndarray:
    if field.is_prime:
        return arr % field.characteristic
    return arr


def echelon(M: FieldMatrix, reduced: bool = True) -> EchelonForm:
    """Gauss-Jordan elimination. With ``reduced=False`` only rows below a pivot are cleared."""
    f = M.field
    A = M.data.copy()
    nrows, ncols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(A[r:, c] != 0)
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            A[[r, k]] = A[[k, r]]
        lead = A[r, c]
        if lead != 1:
            A[r] = normalize(f, A[r] * f.inv(lead))
        col = A[:, c].copy()
        col[r] = 0
        if not reduced:
            col[:r] = 0
        hit = np.flatnonzero(col != 0)
        if hit.size:
            A[hit] = normalize(f, A[hit] - np.outer(col[hit], A[r]))
        pivots.append(c)
        r += 1
    return EchelonForm(A[:r].copy(), tuple(pivots), ncols)


def rank(M: FieldMatrix) -> int:
    if M.rows == 0 or M.cols == 0:
        return 0
    # Eliminate along the shorter side.
    if M.rows > M.cols:
        M = M.transpose()
    return echelon(M, reduced=False).rank


def kernel_basis(M: FieldMatrix) -> list[list]:
    """Basis of ``{v : M v = 0}``, one vector per non-pivot column."""
    f = M.field
    ech = echelon(M) if M.rows else EchelonForm(zeros(f, 0, M.cols), (), M.cols)
    piv = set(ech.pivots)
    basis = []
    for free in range(M.cols):
        if free in piv:
            continue
        v = [f(0)] * M.cols
        v[free] = f(1)
        for row, pc in zip(ech.rows, ech.pivots):
            if row[free]:
                v[pc] = f(-row[free])
        basis.append(v)
    return basis


def homology_dim(A: FieldMatrix, B: FieldMatrix) -> int:
    """``dim ker A - rank B`` for a composable pair with ``A @ B == 0``."""
    if A.cols != B.rows:
        raise ValueError(f"shapes not composable: {A.shape} after {B.shape}")
    if not (A @ B).is_zero():
        raise ValueError("A @ B is nonzero; not a complex")
    return A.cols - rank(A) - rank(B)


def matvec(M: FieldMatrix, v: Sequence) -> list:
    col = FieldMatrix.from_rows(M.field, [[x] for x in v], cols=1) if len(v) else FieldMatrix.zero(M.field, 0, 1)
    return [row[0] for row in (M @ col).data.tolist()]
