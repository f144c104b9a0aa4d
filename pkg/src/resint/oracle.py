"""Brute-force Betti numbers from bidegreewise linear algebra.

``Tor_i(S/J, k)_(a,b)`` is the homology of the Koszul complex on the
variables tensored with ``S/J``, evaluated one bidegree at a time. Every
piece of ``S/J`` is represented by its standard monomials: the non-pivot
columns of the reduced echelon form of ``J_(u,v)``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import exactla
from .bipoly import (
    BiPoly,
    Bidegree,
    Field,
    Monomial,
    RingSpec,
    basis_index,
    bidegree_piece_dim,
    monomial_basis,
)
from .bkm import BettiTable
from .exactla import EchelonForm, FieldMatrix


@dataclass(frozen=True)
class IdealSpec:
    ring: RingSpec
    generators: tuple[BiPoly, ...]

    def __init__(self, ring: RingSpec, generators: Sequence[BiPoly]):
        gens = tuple(g for g in generators if not g.is_zero())
        for g in gens:
            if g.ring != ring:
                raise ValueError("generator from a different ring")
            if not g.is_bihomogeneous():
                raise ValueError(f"generator {g} is not bihomogeneous")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "generators", gens)

    def to_json(self) -> dict:
        return {
            "ring": {"n": self.ring.n, "p": self.ring.p, "field": self.ring.field.label()},
            "generators": [str(g) for g in self.generators],
        }

    @classmethod
    def from_json(cls, doc: dict | str, field: Field | None = None) -> "IdealSpec":
        if isinstance(doc, str):
            doc = json.loads(doc)
        r = doc["ring"]
        ring = RingSpec(int(r["n"]), int(r["p"]), field or Field.parse(r.get("field")))
        return cls(ring, [ring.parse(s) for s in doc["generators"]])

    def with_field(self, field: Field) -> "IdealSpec":
        ring = RingSpec(self.ring.n, self.ring.p, field)
        return IdealSpec(ring, [ring.parse(str(g)) for g in self.generators])


@dataclass(frozen=True)
class PieceBasis:
    bidegree: Bidegree
    echelon: EchelonForm
    standard: tuple[Monomial, ...]
    # normal_form[j] = coordinates of monomial j of the full piece on ``standard``
    normal_form: np.ndarray

    @property
    def ideal_dim(self) -> int:
        return self.echelon.rank

    @property
    def quotient_dim(self) -> int:
        return len(self.standard)


class QuotientRing:
    """Cached bidegree pieces of ``S/J`` and multiplication-by-variable maps."""

    def __init__(self, ideal: IdealSpec):
        self.ideal = ideal
        self.ring = ideal.ring
        self._pieces: dict[Bidegree, PieceBasis] = {}
        self._mult: dict[tuple[Bidegree, int], np.ndarray] = {}

    def piece(self, u: int, v: int) -> PieceBasis:
        key = Bidegree(u, v)
        hit = self._pieces.get(key)
        if hit is None:
            hit = self._pieces[key] = self._build_piece(key)
        return hit

    def _build_piece(self, deg: Bidegree) -> PieceBasis:
        ring = self.ring
        f = ring.field
        monos = monomial_basis(ring, deg)
        idx = basis_index(ring, deg)
        rows = []
        for g in self.ideal.generators:
            gd = g.bidegree
            for mu in monomial_basis(ring, deg - gd):
                row = {}
                for mono, c in g.terms.items():
                    row[idx[tuple(s + t for s, t in zip(mono, mu))]] = c
                rows.append(row)
        arr = exactla.zeros(f, len(rows), len(monos))
        for r, row in enumerate(rows):
            for j, c in row.items():
                arr[r, j] = c
        ech = exactla.echelon(FieldMatrix(f, arr)) if rows and monos else EchelonForm(
            exactla.zeros(f, 0, len(monos)), (), len(monos)
        )
        piv = set(ech.pivots)
        std_cols = [j for j in range(len(monos)) if j not in piv]
        nf = exactla.zeros(f, len(monos), len(std_cols))
        for k, j in enumerate(std_cols):
            nf[j, k] = f(1)
        if ech.rank and std_cols:
            # pivot monomial = -(rest of its echelon row) modulo J
            nf[list(ech.pivots)] = exactla.normalize(f, -ech.rows[:, std_cols])
        return PieceBasis(deg, ech, tuple(monos[j] for j in std_cols), nf)

    def mult_map(self, deg: Sequence[int], var: int) -> np.ndarray:
        """Matrix of multiplication by variable ``var`` from ``(S/J)_deg`` to the next piece."""
        deg = Bidegree(*deg)
        key = (deg, var)
        hit = self._mult.get(key)
        if hit is not None:
            return hit
        src = self.piece(*deg)
        tdeg = deg + self.ring.var_bidegree(var)
        tgt = self.piece(*tdeg)
        tidx = basis_index(self.ring, tdeg)
        cols = [tidx[mu[:var] + (mu[var] + 1,) + mu[var + 1:]] for mu in src.standard]
        mat = tgt.normal_form[cols].T.copy() if cols else exactla.zeros(self.ring.field, tgt.quotient_dim, 0)
        self._mult[key] = mat
        return mat


class KoszulTor:
    """``Tor(S/J, k)`` via the Koszul complex on a subset of the variables."""

    def __init__(self, ideal: IdealSpec, variables: Sequence[int] | None = None):
        self.Q = QuotientRing(ideal)
        self.ring = ideal.ring
        self.variables = tuple(range(self.ring.nvars)) if variables is None else tuple(variables)
        self._subsets: dict[int, list[tuple[int, ...]]] = {}
        self._ranks: dict[tuple[int, Bidegree], int] = {}

    def subsets(self, i: int) -> list[tuple[int, ...]]:
        if i not in self._subsets:
            self._subsets[i] = list(itertools.combinations(self.variables, i))
        return self._subsets[i]

    def _subset_degree(self, T) -> Bidegree:
        a = sum(1 for t in T if t < self.ring.n)
        return Bidegree(a, len(T) - a)

    def _blocks(self, i: int, deg: Bidegree) -> tuple[dict, int]:
        """Offsets of each subset block in the position-``i`` chain group at ``deg``."""
        offsets = {}
        off = 0
        if i < 0:
            return offsets, 0
        for T in self.subsets(i):
            d = deg - self._subset_degree(T)
            if d.a < 0 or d.b < 0:
                continue
            size = self.Q.piece(*d).quotient_dim
            offsets[T] = (off, size, d)
            off += size
        return offsets, off

    def chain_dim(self, i: int, deg: Sequence[int]) -> int:
        return self._blocks(i, Bidegree(*deg))[1]

    def differential(self, i: int, deg: Sequence[int]) -> FieldMatrix:
        deg = Bidegree(*deg)
        f = self.ring.field
        src, ncols = self._blocks(i, deg)
        tgt, nrows = self._blocks(i - 1, deg)
        arr = exactla.zeros(f, nrows, ncols)
        if i >= 1:
            for T, (c0, csize, d) in src.items():
                if not csize:
                    continue
                for j, t in enumerate(T):
                    U = T[:j] + T[j + 1:]
                    r0, rsize, _ = tgt[U]
                    if not rsize:
                        continue
                    block = self.Q.mult_map(d, t)
                    arr[r0:r0 + rsize, c0:c0 + csize] = block if j % 2 == 0 else exactla.normalize(f, -block)
        return FieldMatrix(f, arr)

    def _rank(self, i: int, deg: Bidegree) -> int:
        key = (i, deg)
        if key not in self._ranks:
            if i < 1 or i > len(self.variables):
                self._ranks[key] = 0
            else:
                self._ranks[key] = exactla.rank(self.differential(i, deg))
        return self._ranks[key]

    def betti(self, i: int, a: int, b: int) -> int:
        deg = Bidegree(a, b)
        if i < 0 or i > len(self.variables) or a < 0 or b < 0:
            return 0
        return self.chain_dim(i, deg) - self._rank(i, deg) - self._rank(i + 1, deg)


def ideal_piece(G: IdealSpec, u: int, v: int) -> PieceBasis:
    return QuotientRing(G).piece(u, v)


def quotient_dim(G: IdealSpec, u: int, v: int) -> int:
    return ideal_piece(G, u, v).quotient_dim


def tor_betti(G: IdealSpec, i: int, a: int, b: int) -> int:
    return KoszulTor(G).betti(i, a, b)


def betti_window(G: IdealSpec, i_max: int, a_max: int, b_max: int, tor: KoszulTor | None = None) -> BettiTable:
    if min(i_max, a_max, b_max) < 0:
        raise ValueError("window bounds must be nonnegative")
    tor = tor or KoszulTor(G)
    entries = {}
    for i in range(i_max + 1):
        for a in range(a_max + 1):
            for b in range(b_max + 1):
                if i > a + b:
                    # no i-subset of variables fits in this bidegree
                    continue
                v = tor.betti(i, a, b)
                if v:
                    entries[(i, (a, b))] = v
    return BettiTable(entries, meta={
        "field": G.ring.field.label(),
        "window": {"i_max": i_max, "a_max": a_max, "b_max": b_max},
    })


@dataclass(frozen=True)
class RegWindow:
    reg_x: int
    reg_y: int
    window_limited: bool = True

    def __iter__(self):
        return iter((self.reg_x, self.reg_y))

    def to_json(self) -> dict:
        return {"reg_x": self.reg_x, "reg_y": self.reg_y, "window_limited": self.window_limited}


def reg_window(G: IdealSpec | BettiTable, window: Sequence[int] | None = None) -> RegWindow:
    """Candidate ``(reg_x, reg_y)`` from the Betti numbers inside ``window = (i_max, a_max, b_max)``."""
    if isinstance(G, BettiTable):
        table = G
    else:
        if window is None:
            raise ValueError("a window is required when passing an ideal")
        table = betti_window(G, *window)
    if not len(table):
        raise ValueError("no nonzero Betti numbers in window")
    return RegWindow(
        max(ab.a - i for i, ab in table.entries),
        max(ab.b - i for i, ab in table.entries),
    )


class XGradedTor:
    """Single-graded Betti numbers over ``R_x`` of ``R_x/G`` for x-only generators."""

    def __init__(self, G: IdealSpec):
        for g in G.generators:
            if g.y_degree_set() != {0}:
                raise ValueError(f"generator {g} involves y-variables")
        self.ideal = G
        self.tor = KoszulTor(G, variables=range(G.ring.n))

    def betti(self, i: int, t: int) -> int:
        return self.tor.betti(i, t, 0)

    def table(self, i_max: int, t_max: int) -> dict[tuple[int, int], int]:
        out = {}
        for i in range(min(i_max, self.ideal.ring.n) + 1):
            for t in range(i, t_max + 1):
                v = self.betti(i, t)
                if v:
                    out[(i, t)] = v
        return out

    def ideal_regularity(self, i_max: int, t_max: int) -> int | None:
        """``reg(G) = max(t - i) + 1`` over nonzero ``beta_{i,t}(R_x/G)``, ``i >= 1``, in the window."""
        tab = self.table(i_max, t_max)
        vals = [t - i for (i, t) in tab if i >= 1]
        return max(vals) + 1 if vals else None


def graded_betti_x(G_x: IdealSpec, i: int, t: int) -> int:
    return XGradedTor(G_x).betti(i, t)


def span_contains(G: IdealSpec, f: BiPoly) -> bool:
    """Whether bihomogeneous ``f`` lies in ``J`` (checked in the bidegree of ``f``)."""
    if f.is_zero():
        return True
    deg = f.bidegree
    if deg is None:
        raise ValueError(f"{f} is not bihomogeneous")
    piece = QuotientRing(G).piece(*deg)
    vec = np.array([f.ring.field(c) for c in f.vector(deg)], dtype=piece.normal_form.dtype)
    reduced = exactla.normalize(f.ring.field, vec @ piece.normal_form) if piece.quotient_dim else vec[:0]
    return not np.any(reduced != 0)


def alternating_hilbert(table: BettiTable, ring: RingSpec, u: int, v: int) -> int:
    """``sum_i (-1)^i sum beta_{i,(a,b)} dim S_(u-a, v-b)``."""
    return sum((-1) ** i * mult * bidegree_piece_dim(ring, (u - ab.a, v - ab.b)) for (i, ab), mult in table.entries.items())

