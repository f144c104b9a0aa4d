from __future__ import annotations

import pytest

from conftest import load_ideal
from resint.bipoly import RingSpec
from resint.bkm import bkm_betti_table, bkm_shifts
from resint.diagonal import (
    CERTIFIED_CM,
    CERTIFIED_KOSZUL,
    INCONCLUSIVE,
    DiagonalSpec,
    cm_certificate,
    depth_lower_bound,
    koszul_certificate,
    quotient_diag_hilbert,
    shifted_diag_hilbert,
    shifted_diag_is_cm,
    shifted_diag_reg,
)
from resint.oracle import quotient_dim

R35 = RingSpec(3, 5)


class TestShifted:
    def test_hilbert_values(self):
        assert shifted_diag_hilbert(0, 0, DiagonalSpec(2, 3), R35)(0) == 1
        assert shifted_diag_hilbert(2, 4, DiagonalSpec(1, 1), R35)(2) == 0
        assert shifted_diag_hilbert(1, 1, DiagonalSpec(1, 1), R35)(1) == 1

    def test_cm_criterion(self):
        assert shifted_diag_is_cm(2, 4, DiagonalSpec(5, 1), R35)
        for c in range(1, 4):
            for e in range(1, 4):
                assert not shifted_diag_is_cm(3, 0, DiagonalSpec(c, e), R35)
        assert shifted_diag_is_cm(0, 0, DiagonalSpec(1, 1), R35)

    def test_reg(self):
        assert shifted_diag_reg(0, 0, DiagonalSpec(3, 3)) == 0
        assert shifted_diag_reg(2, 4, DiagonalSpec(1, 2)) == 2
        assert shifted_diag_reg(5, 0, DiagonalSpec(2, 1)) == 3

    def test_bad_diagonal(self):
        with pytest.raises(ValueError):
            DiagonalSpec(0, 1)


class TestDepth:
    @pytest.mark.parametrize("c,e", [(1, 1), (5, 1), (1, 2), (3, 7)])
    def test_banded(self, c, e):
        assert depth_lower_bound(bkm_shifts(3, 4), DiagonalSpec(c, e), R35).bound == 3

    def test_small(self):
        assert depth_lower_bound(bkm_shifts(2, 2), DiagonalSpec(2, 1), RingSpec(2, 4)).bound == 3

    def test_withheld(self):
        rep = depth_lower_bound(bkm_shifts(3, 4), DiagonalSpec(1, 1), RingSpec(3, 4))
        assert rep.bound is None
        assert rep.hypotheses["p > m >= n"] is False


class TestCM:
    def test_rees_case(self):
        v = cm_certificate(3, bkm_shifts(3, 4), DiagonalSpec(5, 1), R35)
        assert v.verdict == CERTIFIED_CM

    def test_too_large(self):
        v = cm_certificate(5 + 3 - 4, bkm_shifts(3, 4), DiagonalSpec(5, 1), R35)
        assert v.verdict == INCONCLUSIVE

    def test_hypothesis_gate(self):
        v = cm_certificate(1, bkm_shifts(3, 4), DiagonalSpec(5, 1), RingSpec(3, 4))
        assert v.verdict == INCONCLUSIVE
        assert v.hypotheses["p > m >= n"] is False


class TestKoszul:
    def test_banded(self):
        cert = koszul_certificate(bkm_shifts(3, 4), DiagonalSpec(1, 2))
        assert cert.verdict == CERTIFIED_KOSZUL
        assert cert.threshold

    def test_banded_inconclusive(self):
        cert = koszul_certificate(bkm_shifts(3, 4), DiagonalSpec(1, 1))
        assert cert.verdict == INCONCLUSIVE
        assert cert.reg_bound == 2

    @pytest.mark.parametrize("m", [2, 3, 5])
    def test_two_rows(self, m):
        for c in range(1, 5):
            for e in range(1, 5):
                assert koszul_certificate(bkm_shifts(2, m), DiagonalSpec(c, e)).verdict == CERTIFIED_KOSZUL


class TestQuotientHilbert:
    def test_degree_zero(self):
        assert quotient_diag_hilbert(bkm_shifts(3, 4), DiagonalSpec(2, 3), R35, 0) == [1]

    def test_small_instance(self):
        ring = RingSpec(2, 4)
        h = quotient_diag_hilbert(bkm_shifts(2, 2), DiagonalSpec(1, 1), ring, 3)
        assert h[1] == 8 - 2
        ideal = load_ideal("generic2x2_ideal.json")
        assert h == [quotient_dim(ideal, i, i) for i in range(4)]

    def test_banded_against_oracle(self):
        ideal = load_ideal("banded_ideal.json")
        h = quotient_diag_hilbert(bkm_betti_table(3, 4), DiagonalSpec(1, 1), R35, 4)
        assert h == [quotient_dim(ideal, i, i) for i in range(5)]

    def test_inconsistent_shifts(self):
        from resint.bkm import BettiTable

        bogus = BettiTable({(0, (0, 0)): 1, (1, (0, 0)): 2})
        with pytest.raises(ValueError):
            quotient_diag_hilbert(bogus, DiagonalSpec(1, 1), R35, 1)
