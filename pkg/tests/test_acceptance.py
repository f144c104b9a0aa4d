"""Acceptance gate: ten criteria, one PASS/FAIL line each.

Lines are shown in the "acceptance criteria" section of the pytest summary,
or directly with ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import json
import sys
import time
import timeit
from contextlib import contextmanager
from math import ceil

import pytest

from conftest import ACCEPTANCE_LINES, BANDED_PHI, BANDED_PRESENTATION, load_ideal, matrix
from resint import data_path
from resint.bipoly import Field, RingSpec
from resint.bkm import bkm_betti_table, bkm_shifts, kab_rank
from resint.cli import main as cli_main
from resint.diagonal import CERTIFIED_KOSZUL, DiagonalSpec, koszul_certificate, shifted_diag_is_cm
from resint.en import LinearMatrixY, eagon_northcott, en_exactness, en_h0_dims, en_strand_h0
from resint.freecomplex import compose_zero_check
from resint.oracle import QuotientRing, alternating_hilbert, betti_window, reg_window
from resint.rees import PresentationMatrix, build_J, build_model, power_piece_dim, power_regularity

# the displayed resolution 0 -> F_4 -> ... -> F_0 of the banded example, as {i: {(a, b): mult}}
BANDED_DISPLAY = {
    0: {(0, 0): 1},
    1: {(0, 3): 4, (1, 1): 4},
    2: {(1, 3): 12, (0, 4): 3, (2, 2): 6},
    3: {(2, 3): 12, (1, 4): 8},
    4: {(2, 4): 6},
}


@contextmanager
def criterion(k: int, title: str, budget: float | None = None):
    start = time.perf_counter()
    status = "FAIL"
    try:
        yield
        elapsed = time.perf_counter() - start
        if budget is not None:
            assert elapsed <= budget, f"took {elapsed:.3f}s, budget {budget}s"
        status = "PASS"
    finally:
        elapsed = time.perf_counter() - start
        line = f"[{status}] criterion {k:2d}: {title} ({elapsed:.3f}s)"
        ACCEPTANCE_LINES.append(line)
        print(line)


def test_c01_golden_resolution():
    with criterion(1, "closed-form shifts for n=3, m=4 equal the displayed resolution"):
        s = bkm_shifts(3, 4)
        got = {i: {tuple(ab): v for ab, v in s[i].items()} for i in s.indices()}
        assert got == BANDED_DISPLAY
        best = min(timeit.repeat(lambda: bkm_shifts(3, 4), number=1, repeat=20))
        assert best < 1e-3, f"bkm_shifts took {best * 1e3:.3f} ms"


def test_c02_oracle_banded_two_primes():
    with criterion(2, "Tor oracle on the 8-generator ideal equals the closed form over F_32003 and F_101", 300):
        expected = bkm_betti_table(3, 4).restrict(4, 2, 4)
        tables = []
        for q in (32003, 101):
            ideal = load_ideal("banded_ideal.json", Field(q))
            assert len(ideal.generators) == 8
            t = betti_window(ideal, 4, 2, 4)
            assert t.diff(expected) == []
            tables.append(t)
        assert tables[0] == tables[1]


def test_c03_oracle_small_instance():
    with criterion(3, "Tor oracle on the n=2, m=2, p=4 ideal equals the closed form", 1.0):
        t = betti_window(load_ideal("generic2x2_ideal.json"), 4, 2, 4)
        assert t == bkm_betti_table(2, 2)


def test_c04_kab_ranks():
    with criterion(4, "strand-kernel ranks of K_a^b equal the binomial formula (n<=4, a<=3, b<n)"):
        cases = [(n, a, b) for n in range(1, 5) for a in range(4) for b in range(n)]
        assert len(cases) == 40
        bad = [(n, a, b) for n, a, b in cases if not kab_rank(n, a, b).agrees]
        assert bad == []


def test_c05_regularity():
    with criterion(5, "reg window of the banded ideal is (reg_x, reg_y) = (0, 2)"):
        r = reg_window(load_ideal("banded_ideal.json"), (4, 2, 4))
        assert (r.reg_x, r.reg_y) == (0, 2)


def test_c06_eagon_northcott():
    with criterion(6, "EN complex of the banded phi: d^2 = 0, exact at positions >= 1 through degree 6", 30):
        ring = RingSpec(3, 5)
        phi = LinearMatrixY(ring, matrix(ring, BANDED_PHI))
        en = eagon_northcott(phi)
        assert compose_zero_check(en.complex) == (True, None)
        rep = en_exactness(en, 6)
        assert set(rep.positions) == {1, 2}
        assert rep.clean
        assert en_strand_h0(en, 6) == en_h0_dims(phi, 6)


def test_c07_rees_hilbert():
    with criterion(7, "dim (S/J)_(u,v) = dim (I^v)_(u+4v) = alternating BKM sum for u<=4, v<=2"):
        ring = RingSpec(3, 5)
        model = build_model(PresentationMatrix(ring, matrix(ring, BANDED_PRESENTATION)))
        Q = QuotientRing(build_J(model))
        table = bkm_betti_table(3, 4)
        for u in range(5):
            for v in range(3):
                oracle = Q.piece(u, v).quotient_dim
                assert oracle == power_piece_dim(model, v, u + 4 * v), (u, v)
                assert oracle == alternating_hilbert(table, ring, u, v), (u, v)


def test_c08_linear_powers():
    with criterion(8, "reg(I) = 4 and reg(I^2) = 8 within i<=6, t<=12", 300):
        ring = RingSpec(3, 5)
        model = build_model(PresentationMatrix(ring, matrix(ring, BANDED_PRESENTATION)))
        regs = [power_regularity(model, s, i_max=6, t_max=12)["reg"] for s in (1, 2)]
        assert regs == [4, 8]


def test_c09_criterion_grids():
    with criterion(9, "CM criterion on small shifts, Koszul bound for e >= n/2, and n=2 positivity", 10):
        for n in range(1, 9):
            for p in range(1, 9):
                ring = RingSpec(n, p)
                for c in range(1, 7):
                    for e in range(1, 7):
                        delta = DiagonalSpec(c, e)
                        for a in range(n):
                            for b in range(p):
                                assert shifted_diag_is_cm(a, b, delta, ring), (n, p, c, e, a, b)
        for n in range(1, 9):
            for m in range(n, 9):
                s = bkm_shifts(n, m)
                for c in range(1, 9):
                    for e in range(max(1, ceil(n / 2)), 9):
                        assert koszul_certificate(s, DiagonalSpec(c, e)).reg_bound <= 1, (n, m, c, e)
        for m in range(2, 9):
            s = bkm_shifts(2, m)
            for c in range(1, 9):
                for e in range(1, 9):
                    assert koszul_certificate(s, DiagonalSpec(c, e)).verdict == CERTIFIED_KOSZUL, (m, c, e)


def test_c10_negative_control(tmp_path, capsys):
    with criterion(10, "corrupted generator z1 + x1*y5 makes the oracle command exit 2 with a diff"):
        doc = json.loads(data_path("banded_ideal.json").read_text())
        assert doc["generators"][0] == "x1*y1 + x2*y2 + x3*y3"
        doc["generators"][0] += " + x1*y5"
        path = tmp_path / "corrupted.json"
        path.write_text(json.dumps(doc))
        code = cli_main(["oracle", str(path), "--expect-bkm", "3,4"])
        out = json.loads(capsys.readouterr().out)
        assert code == 2
        assert out["expect_bkm"]["diff"]


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
