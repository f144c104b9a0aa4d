"""Eagon-Northcott complex of an n x m matrix with y-linear entries."""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass
from typing import Sequence

from .bipoly import BiPoly, Bidegree, Field, RingSpec, poly_det
from .freecomplex import (
    ExactnessReport,
    FreeComplexDescriptor,
    PolyMatrix,
    ShiftedFreeModule,
    compose_zero_check,
    dualize_y,
    exactness_report,
    koszul_complex,
    piece_dim,
    scalar_map,
    x_strand,
)
from . import exactla
from .oracle import IdealSpec, QuotientRing


class LinearMatrixY:
    """n x m matrix over ``ring`` whose entries are y-linear forms or zero."""

    def __init__(self, ring: RingSpec, entries: Sequence[Sequence[BiPoly]]):
        rows = tuple(tuple(r) for r in entries)
        if not rows or not rows[0]:
            raise ValueError("matrix must be nonempty")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged matrix")
        n, m = len(rows), len(rows[0])
        if m < n:
            raise ValueError(f"need m >= n, got a {n}x{m} matrix")
        for i, row in enumerate(rows):
            for j, f in enumerate(row):
                if not f.is_bihomogeneous((0, 1)):
                    raise ValueError(f"entry ({i + 1},{j + 1}) = {f} is not a y-linear form")
        self.ring = ring
        self.entries = rows

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def m(self) -> int:
        return len(self.entries[0])

    def column(self, j: int) -> list[BiPoly]:
        return [row[j] for row in self.entries]

    def z_forms(self) -> list[BiPoly]:
        """``[z_1..z_m] = [x_1..x_n] . phi``."""
        out = []
        for j in range(self.m):
            acc = self.ring.zero()
            for i in range(self.n):
                acc = acc + self.ring.x(i + 1) * self.entries[i][j]
            out.append(acc)
        return out

    def to_json(self) -> dict:
        return {
            "n": self.ring.n,
            "p": self.ring.p,
            "field": self.ring.field.label(),
            "matrix": {"rows": self.n, "cols": self.m, "entries": [[str(f) for f in r] for r in self.entries]},
        }

    @classmethod
    def from_json(cls, doc: dict | str, field: Field | None = None) -> "LinearMatrixY":
        if isinstance(doc, str):
            doc = json.loads(doc)
        ring = RingSpec(int(doc["n"]), int(doc["p"]), field or Field.parse(doc.get("field")))
        mat = doc["matrix"]
        entries = [[ring.parse(s) for s in row] for row in mat["entries"]]
        if len(entries) != mat.get("rows", len(entries)) or any(len(r) != mat.get("cols", len(r)) for r in entries):
            raise ValueError("matrix shape does not match declared rows/cols")
        return cls(ring, entries)

    @classmethod
    def random(cls, ring: RingSpec, n: int, m: int, seed: int = 0, coeff_range: int = 5) -> "LinearMatrixY":
        rng = random.Random(seed)
        rows = []
        for _ in range(n):
            row = []
            for _ in range(m):
                f = ring.zero()
                for j in range(1, ring.p + 1):
                    f = f + ring.y(j).scale(rng.randint(-coeff_range, coeff_range))
                row.append(f)
            rows.append(row)
        return cls(ring, rows)


def shuffle_sign(T: Sequence[int], m: int) -> int:
    """Sign of the permutation listing ``T`` then its complement in ``range(m)``."""
    return -1 if sum(t - k for k, t in enumerate(T)) % 2 else 1


def signed_maximal_minors(phi: LinearMatrixY) -> list[BiPoly]:
    """Signed n x n minors, one per column subset ``C`` in lex order.

    The sign is that of the shuffle ``(complement of C, C)``, which is the
    augmentation coefficient on the dual basis element of the complement.
    """
    n, m = phi.n, phi.m
    out = []
    for C in itertools.combinations(range(m), n):
        sub = [[phi.entries[i][j] for j in C] for i in range(n)]
        T = [j for j in range(m) if j not in C]
        out.append(poly_det(sub, phi.ring).scale(shuffle_sign(T, m)))
    return out


@dataclass(frozen=True)
class ENComplex:
    phi: LinearMatrixY
    complex: FreeComplexDescriptor
    minors: tuple[BiPoly, ...]
    assumptions: tuple[str, ...] = (
        "grade I_n(phi) = m - n + 1 (exactness is assumed, checked only in a finite degree window)",
    )

    @property
    def epsilon(self) -> PolyMatrix:
        return self.complex.differentials[0]

    def ranks(self) -> list[int]:
        return self.complex.ranks()

    def summary(self) -> dict:
        ok, where = compose_zero_check(self.complex)
        return {
            "n": self.phi.n,
            "m": self.phi.m,
            "field": self.phi.ring.field.label(),
            "ranks": self.ranks(),
            "shifts": [[list(s) for s in t.shifts] for t in self.complex.terms],
            "minors": [str(f) for f in self.minors],
            "compose_zero": ok,
            "compose_zero_failure": where,
            "assumptions": list(self.assumptions),
        }


def eagon_northcott(phi: LinearMatrixY) -> ENComplex:
    """Dual of the x-degree ``m - n`` strand of ``K(z; S)``, augmented by the minors.

    Position 0 is ``R_y``, position ``j >= 1`` is the dual of strand term
    ``m - n + 1 - j``, twisted so that the augmentation has degree zero.
    """
    ring = phi.ring
    n, m = phi.n, phi.m
    z = phi.z_forms()
    kz = koszul_complex(ring, z, degrees=[(1, 1)] * m)
    strand = x_strand(kz, m - n).truncate(m - n)
    dual = dualize_y(strand).twist((0, m))

    minor_by_cols = dict(zip(itertools.combinations(range(m), n), signed_maximal_minors(phi)))
    # dual position 0 is dual of strand term m - n: basis (1, e_T), |T| = m - n, in lex order
    eps_row = []
    for T in itertools.combinations(range(m), m - n):
        C = tuple(j for j in range(m) if j not in T)
        eps_row.append(minor_by_cols[C])
    base = ShiftedFreeModule([(0, 0)])
    eps = PolyMatrix(ring, dual.terms[0], base, [eps_row])
    terms = (base,) + dual.terms
    diffs = (eps,) + dual.differentials
    cx = FreeComplexDescriptor(ring, terms, diffs, y_only=True)
    return ENComplex(phi, cx, tuple(signed_maximal_minors(phi)))


def en_h0_dims(phi: LinearMatrixY, through_degree: int) -> list[int]:
    """``dim (R_y / I_n(phi))_t`` for ``t = 0..through_degree`` from the span of minors times monomials."""
    Q = QuotientRing(IdealSpec(phi.ring, signed_maximal_minors(phi)))
    return [Q.piece(0, t).quotient_dim for t in range(through_degree + 1)]


def en_strand_h0(en: ENComplex, through_degree: int) -> list[int]:
    """Zeroth homology of each strand: ``dim (R_y)_t - rank eps_t``."""
    out = []
    for t in range(through_degree + 1):
        deg = Bidegree(0, t)
        total = piece_dim(en.phi.ring, en.complex.terms[0], deg)
        out.append(total - exactla.rank(scalar_map(en.epsilon, deg)[0]))
    return out


def en_euler_characteristic(en: ENComplex, t: int) -> int:
    return sum((-1) ** i * piece_dim(en.phi.ring, term, (0, t)) for i, term in enumerate(en.complex.terms))


def en_exactness(en: ENComplex, through_degree: int) -> ExactnessReport:
    return exactness_report(en.complex, through_degree, range(1, en.complex.length + 1))
