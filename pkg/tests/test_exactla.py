from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from resint.bipoly import Field
from resint.exactla import FieldMatrix, echelon, homology_dim, kernel_basis, matvec, rank

FIELDS = [Field(0), Field(32003), Field(101)]


@pytest.mark.parametrize("field", FIELDS, ids=lambda f: str(f.label()))
class TestRank:
    def test_identity(self, field):
        assert rank(FieldMatrix.identity(field, 3)) == 3

    def test_zero(self, field):
        assert rank(FieldMatrix.zero(field, 3, 4)) == 0

    def test_dependent_rows(self, field):
        assert rank(FieldMatrix.from_rows(field, [[1, 2], [2, 4]])) == 1

    def test_empty(self, field):
        assert rank(FieldMatrix.zero(field, 0, 5)) == 0


def test_char_sensitive_rank():
    rows = [[1, 1], [1, 1 + 101]]
    assert rank(FieldMatrix.from_rows(Field(0), rows)) == 2
    assert rank(FieldMatrix.from_rows(Field(101), rows)) == 1


class TestKernel:
    def test_identity(self):
        assert kernel_basis(FieldMatrix.identity(Field(7), 3)) == []

    def test_zero(self):
        assert len(kernel_basis(FieldMatrix.zero(Field(7), 2, 3))) == 3

    def test_single_row(self):
        F = Field(0)
        M = FieldMatrix.from_rows(F, [[1, 1]])
        (v,) = kernel_basis(M)
        assert all(x == 0 for x in matvec(M, v))
        assert v[0] == -v[1] != 0

    def test_rational_entries(self):
        F = Field(0)
        M = FieldMatrix.from_rows(F, [[Fraction(1, 2), 1, 0], [0, Fraction(1, 3), 1]])
        ker = kernel_basis(M)
        assert len(ker) == 1
        assert matvec(M, ker[0]) == [0, 0]


class TestHomology:
    def test_zero_complex(self):
        F = Field(5)
        Z = FieldMatrix.zero(F, 1, 1)
        assert homology_dim(Z, Z) == 1

    def test_identity_then_zero(self):
        F = Field(5)
        assert homology_dim(FieldMatrix.identity(F, 1), FieldMatrix.zero(F, 1, 1)) == 0

    def test_koszul_degree_two_middle(self):
        # K(x1,x2) in degree 2: S_0 e12 -> S_1 e1 + S_1 e2 -> S_2
        F = Field(32003)
        # e12 -> -x2 e1 + x1 e2 in basis (x1e1, x2e1, x1e2, x2e2)
        d2 = FieldMatrix.from_rows(F, [[0], [-1], [1], [0]])
        d1 = FieldMatrix.from_rows(F, [[1, 0, 0, 0], [0, 1, 1, 0], [0, 0, 0, 1]])  # into (x1^2, x1x2, x2^2)
        assert homology_dim(d1, d2) == 0

    def test_rejects_non_complex(self):
        F = Field(5)
        I = FieldMatrix.identity(F, 2)
        with pytest.raises(ValueError):
            homology_dim(I, I)


def test_reduced_echelon_pivots():
    F = Field(7)
    E = echelon(FieldMatrix.from_rows(F, [[0, 2, 4], [0, 1, 2], [1, 0, 1]]))
    assert E.rank == 2
    assert list(E.pivots) == [0, 1]


def test_arrays_stay_reduced():
    F = Field(11)
    M = FieldMatrix.from_rows(F, [[-1, 23], [5, -6]])
    assert np.all((M.data >= 0) & (M.data < 11))
