from __future__ import annotations

import json

import pytest

from resint import exactla
from resint.bipoly import RingSpec
from resint.freecomplex import (
    FreeComplexDescriptor,
    PolyMatrix,
    ShiftedFreeModule,
    compose_zero_check,
    dualize_y,
    exactness_report,
    koszul_complex,
    scalar_map,
    strand_matrices,
    x_strand,
)


def shifts_of(cx):
    return [sorted(tuple(s) for s in t.shifts) for t in cx.terms]


class TestKoszul:
    def test_bigraded_z_sequence(self, banded_phi):
        z = banded_phi.z_forms()
        cx = koszul_complex(banded_phi.ring, z)
        assert cx.ranks() == [1, 4, 6, 4, 1]
        for k, t in enumerate(cx.terms):
            assert set(t.shifts) == {(k, k)}

    def test_single_element(self, ring35):
        f = ring35.parse("x1*y2")
        cx = koszul_complex(ring35, [f])
        assert shifts_of(cx) == [[(0, 0)], [(1, 1)]]
        assert cx.d(1).entries == ((f,),)

    def test_compose_zero(self, ring35):
        cx = koszul_complex(ring35, [ring35.x(i) for i in (1, 2, 3)])
        assert compose_zero_check(cx) == (True, None)

    def test_zero_entry_needs_degree(self, ring35):
        with pytest.raises(ValueError):
            koszul_complex(ring35, [ring35.zero()])
        cx = koszul_complex(ring35, [ring35.zero()], degrees=[(1, 1)])
        assert cx.ranks() == [1, 1]

    def test_acyclic_on_variables(self):
        ring = RingSpec(3, 1)
        cx = koszul_complex(ring, [ring.x(i) for i in (1, 2, 3)])
        rep = exactness_report(cx, 4)
        assert rep.clean

    def test_not_regular(self):
        ring = RingSpec(3, 1)
        cx = koszul_complex(ring, [ring.parse("x1*x2"), ring.parse("x1*x3")])
        rep = exactness_report(cx, 4, positions=[1])
        assert not rep.clean
        assert rep.first_failure() == (1, 3)


class TestStrand:
    def test_degree_one_strand(self):
        ring = RingSpec(2, 1)
        cx = koszul_complex(ring, [ring.x(1), ring.x(2)])
        st = x_strand(cx, 1)
        assert st.ranks() == [2, 2, 0]
        (d1, d2) = strand_matrices(st, (0, 0))
        assert exactla.rank(d1) == 2

    def test_negative_degree(self):
        ring = RingSpec(2, 1)
        cx = koszul_complex(ring, [ring.x(1), ring.x(2)])
        assert x_strand(cx, -1).ranks() == [0, 0, 0]

    def test_rejects_high_x_degree(self):
        ring = RingSpec(2, 1)
        cx = koszul_complex(ring, [ring.parse("x1^2")])
        with pytest.raises(ValueError):
            x_strand(cx, 2)


class TestDual:
    def test_principal(self):
        ring = RingSpec(1, 1)
        y1 = ring.y(1)
        base = ShiftedFreeModule([(0, 0)])
        top = ShiftedFreeModule([(0, 1)])
        cx = FreeComplexDescriptor(ring, (base, top), (PolyMatrix(ring, top, base, [[y1]]),), y_only=True)
        dual = dualize_y(cx)
        assert shifts_of(dual) == [[(0, -1)], [(0, 0)]]
        assert dual.d(1).entries == ((y1,),)

    def test_double_dual(self, ring35):
        cx = x_strand(koszul_complex(ring35, [ring35.parse("x1*y1 + x2*y2"), ring35.parse("x3*y4")]), 1)
        assert dualize_y(dualize_y(cx)).to_json() == cx.to_json()


class TestChecks:
    def test_non_complex(self):
        ring = RingSpec(1, 1)
        x1 = ring.x(1)
        F0 = ShiftedFreeModule([(0, 0)])
        F1 = ShiftedFreeModule([(1, 0)])
        F2 = ShiftedFreeModule([(2, 0)])
        cx = FreeComplexDescriptor(
            ring, (F0, F1, F2), (PolyMatrix(ring, F1, F0, [[x1]]), PolyMatrix(ring, F2, F1, [[x1]]))
        )
        assert compose_zero_check(cx) == (False, 1)
        with pytest.raises(ValueError):
            exactness_report(cx, 2)

    def test_rejects_wrong_degree_entry(self):
        ring = RingSpec(1, 1)
        F0 = ShiftedFreeModule([(0, 0)])
        F1 = ShiftedFreeModule([(1, 0)])
        with pytest.raises(ValueError):
            PolyMatrix(ring, F1, F0, [[ring.y(1)]])

    def test_scalar_map_shape(self, ring35):
        cx = koszul_complex(ring35, [ring35.x(1), ring35.y(2)])
        M, src, tgt = scalar_map(cx.d(1), (1, 1))
        assert M.shape == (len(tgt), len(src)) == (15, 8)


def test_json_roundtrip(ring35):
    cx = koszul_complex(ring35, [ring35.parse("x1*y1 - 2*x3*y5"), ring35.parse("y2")])
    doc = json.loads(json.dumps(cx.to_json()))
    back = FreeComplexDescriptor.from_json(doc)
    assert back.to_json() == cx.to_json()
