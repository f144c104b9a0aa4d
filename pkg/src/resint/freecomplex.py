"""Complexes of shifted free bigraded modules with polynomial-matrix differentials.

A complex is stored homologically: ``terms[0]`` is the rightmost module and
``differentials[i - 1]`` is ``d_i: terms[i] -> terms[i - 1]``.

Complexes over ``R_y`` (``y_only=True``) reuse the bigraded ring; their shifts
and entries have x-degree zero and their strands are taken in bidegree (0, t).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import exactla
from .bipoly import (
    BiPoly,
    Bidegree,
    Field,
    RingSpec,
    basis_index,
    bidegree_piece_dim,
    monomial_basis,
    _exponents,
)
from .exactla import FieldMatrix


@dataclass(frozen=True)
class ShiftedFreeModule:
    """Direct sum of ``S(-a, -b)`` over ``shifts``."""

    shifts: tuple[Bidegree, ...]

    def __init__(self, shifts: Iterable[Sequence[int]] = ()):
        object.__setattr__(self, "shifts", tuple(Bidegree(int(a), int(b)) for a, b in shifts))

    @property
    def rank(self) -> int:
        return len(self.shifts)

    def twist(self, by: Sequence[int]) -> "ShiftedFreeModule":
        return ShiftedFreeModule(s + by for s in self.shifts)

    def negate(self) -> "ShiftedFreeModule":
        return ShiftedFreeModule(-s for s in self.shifts)


class PolyMatrix:
    """Degree-(0, 0) map between shifted free modules.

    ``entries[r][c]`` maps summand ``c`` of ``source`` to summand ``r`` of
    ``target`` and must be zero or bihomogeneous of bidegree
    ``source.shifts[c] - target.shifts[r]``.
    """

    __slots__ = ("ring", "source", "target", "entries")

    def __init__(self, ring: RingSpec, source: ShiftedFreeModule, target: ShiftedFreeModule,
                 entries: Sequence[Sequence[BiPoly]]):
        rows = tuple(tuple(r) for r in entries)
        if len(rows) != target.rank or any(len(r) != source.rank for r in rows):
            raise ValueError(
                f"entry matrix must be {target.rank}x{source.rank}, got "
                f"{len(rows)}x{len(rows[0]) if rows else 0}"
            )
        for r, row in enumerate(rows):
            for c, f in enumerate(row):
                if f.ring != ring:
                    raise ValueError("entry from a different ring")
                want = source.shifts[c] - target.shifts[r]
                if not f.is_bihomogeneous(want):
                    raise ValueError(
                        f"entry ({r},{c}) = {f} is not bihomogeneous of bidegree {tuple(want)}"
                    )
        self.ring = ring
        self.source = source
        self.target = target
        self.entries = rows

    @property
    def shape(self) -> tuple[int, int]:
        return self.target.rank, self.source.rank

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if other.target.shifts != self.source.shifts:
            raise ValueError("modules do not match for composition")
        zero = self.ring.zero()
        out = []
        for r in range(self.target.rank):
            row = []
            for c in range(other.source.rank):
                acc = zero
                for k in range(self.source.rank):
                    a, b = self.entries[r][k], other.entries[k][c]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PolyMatrix(self.ring, other.source, self.target, out)

    def is_zero(self) -> bool:
        return all(f.is_zero() for row in self.entries for f in row)

    def transpose(self) -> "PolyMatrix":
        cols = [list(c) for c in zip(*self.entries)] if self.entries else [[] for _ in range(self.source.rank)]
        return PolyMatrix(self.ring, self.target.negate(), self.source.negate(), cols)


@dataclass(frozen=True)
class FreeComplexDescriptor:
    ring: RingSpec
    terms: tuple[ShiftedFreeModule, ...]
    differentials: tuple[PolyMatrix, ...]
    y_only: bool = False

    def __post_init__(self):
        if len(self.differentials) != max(len(self.terms) - 1, 0):
            raise ValueError("need exactly one differential between consecutive terms")
        for i, d in enumerate(self.differentials, start=1):
            if d.source.shifts != self.terms[i].shifts or d.target.shifts != self.terms[i - 1].shifts:
                raise ValueError(f"differential d_{i} does not match terms {i} -> {i - 1}")

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    def ranks(self) -> list[int]:
        return [t.rank for t in self.terms]

    def d(self, i: int) -> PolyMatrix | None:
        """``d_i``, or ``None`` outside the complex."""
        if 1 <= i <= self.length:
            return self.differentials[i - 1]
        return None

    def twist(self, by: Sequence[int]) -> "FreeComplexDescriptor":
        terms = tuple(t.twist(by) for t in self.terms)
        diffs = tuple(
            PolyMatrix(self.ring, terms[i + 1], terms[i], d.entries) for i, d in enumerate(self.differentials)
        )
        return FreeComplexDescriptor(self.ring, terms, diffs, self.y_only)

    def truncate(self, top: int) -> "FreeComplexDescriptor":
        """Keep positions ``0..top``."""
        return FreeComplexDescriptor(self.ring, self.terms[: top + 1], self.differentials[:top], self.y_only)

    def to_json(self) -> dict:
        return {
            "ring": {"n": self.ring.n, "p": self.ring.p, "field": self.ring.field.label()},
            "y_only": self.y_only,
            "terms": [[list(s) for s in t.shifts] for t in self.terms],
            "differentials": [[[str(f) for f in row] for row in d.entries] for d in self.differentials],
        }

    @classmethod
    def from_json(cls, doc: dict | str) -> "FreeComplexDescriptor":
        if isinstance(doc, str):
            doc = json.loads(doc)
        r = doc["ring"]
        ring = RingSpec(int(r["n"]), int(r["p"]), Field.parse(r.get("field")))
        terms = tuple(ShiftedFreeModule(t) for t in doc["terms"])
        diffs = []
        for i, rows in enumerate(doc["differentials"], start=1):
            entries = [[ring.parse(s) for s in row] for row in rows]
            diffs.append(PolyMatrix(ring, terms[i], terms[i - 1], entries))
        return cls(ring, terms, tuple(diffs), bool(doc.get("y_only", False)))


def koszul_complex(ring: RingSpec, seq: Sequence[BiPoly],
                   degrees: Sequence[Sequence[int]] | None = None) -> FreeComplexDescriptor:
    """Koszul complex on ``seq``.

    Basis ``e_T`` for subsets ``T = {t_1 < ... < t_k}`` in lexicographic order;
    ``d(e_T) = sum_j (-1)^(j-1) seq[t_j] e_{T - t_j}``. ``degrees`` is required
    only for zero entries.
    """
    degs = []
    for k, f in enumerate(seq):
        if degrees is not None:
            want = Bidegree(*degrees[k])
            if not f.is_bihomogeneous(want):
                raise ValueError(f"sequence element {f} is not bihomogeneous of bidegree {tuple(want)}")
            degs.append(want)
        else:
            deg = f.bidegree
            if deg is None:
                raise ValueError(f"sequence element {f} is zero or not bihomogeneous")
            degs.append(deg)
    m = len(seq)
    subsets = [list(itertools.combinations(range(m), k)) for k in range(m + 1)]
    terms = []
    for k in range(m + 1):
        terms.append(ShiftedFreeModule(
            sum((degs[t] for t in T), Bidegree(0, 0)) for T in subsets[k]
        ))
    terms = tuple(terms)
    zero = ring.zero()
    diffs = []
    for k in range(1, m + 1):
        index = {T: i for i, T in enumerate(subsets[k - 1])}
        entries = [[zero] * len(subsets[k]) for _ in subsets[k - 1]]
        for c, T in enumerate(subsets[k]):
            for j, t in enumerate(T):
                r = index[T[:j] + T[j + 1:]]
                entries[r][c] = seq[t] if j % 2 == 0 else -seq[t]
        diffs.append(PolyMatrix(ring, terms[k], terms[k - 1], entries))
    return FreeComplexDescriptor(ring, terms, tuple(diffs))


def x_strand(cx: FreeComplexDescriptor, d: int) -> FreeComplexDescriptor:
    """Degree-``d`` component in the x-grading, as a complex of free ``R_y``-modules.

    Summand ``c`` of term ``k`` with shift ``(a, b)`` contributes one ``R_y(-b)``
    per x-monomial of degree ``d - a``. Differential entries must have x-degree 0 or 1.
    """
    ring = cx.ring
    n = ring.n
    for i, dm in enumerate(cx.differentials, start=1):
        for row in dm.entries:
            for f in row:
                if f and not f.x_degree_set() <= {0, 1}:
                    raise ValueError(f"d_{i} has an entry of x-degree outside {{0, 1}}: {f}")

    labels = []
    terms = []
    for t in cx.terms:
        lab = []
        shifts = []
        for c, s in enumerate(t.shifts):
            if d - s.a < 0:
                continue
            for mu in _exponents(n, d - s.a):
                lab.append((mu, c))
                shifts.append((0, s.b))
        labels.append(lab)
        terms.append(ShiftedFreeModule(shifts))

    pad = (0,) * n
    diffs = []
    for k, dm in enumerate(cx.differentials, start=1):
        tgt_index = {lab: i for i, lab in enumerate(labels[k - 1])}
        entries = [[{} for _ in labels[k]] for _ in labels[k - 1]]
        for col, (mu, c) in enumerate(labels[k]):
            for r in range(dm.target.rank):
                f = dm.entries[r][c]
                for mono, coeff in f.terms.items():
                    nu = tuple(u + v for u, v in zip(mu, mono[:n]))
                    row = tgt_index[(nu, r)]
                    cell = entries[row][col]
                    ymono = pad + mono[n:]
                    cell[ymono] = cell.get(ymono, 0) + coeff
        entries = [[BiPoly(ring, cell) for cell in row] for row in entries]
        diffs.append(PolyMatrix(ring, terms[k], terms[k - 1], entries))
    return FreeComplexDescriptor(ring, tuple(terms), tuple(diffs), y_only=True)


def dualize_y(cx: FreeComplexDescriptor) -> FreeComplexDescriptor:
    """``Hom(-, R_y)``: arrows reversed, matrices transposed, shifts negated."""
    L = cx.length
    terms = tuple(cx.terms[L - j].negate() for j in range(L + 1))
    diffs = []
    for j in range(1, L + 1):
        old = cx.differentials[L - j]  # d_{L-j+1}: old_{L-j+1} -> old_{L-j}
        diffs.append(old.transpose())
    return FreeComplexDescriptor(cx.ring, terms, tuple(diffs), cx.y_only)


def compose_zero_check(cx: FreeComplexDescriptor) -> tuple[bool, int | None]:
    """``(True, None)`` if every ``d_i d_{i+1}`` vanishes, else ``(False, i)`` for the first failure."""
    for i in range(1, cx.length):
        if not (cx.differentials[i - 1] @ cx.differentials[i]).is_zero():
            return False, i
    return True, None


def scalar_map(dm: PolyMatrix, degree: Sequence[int]) -> tuple[FieldMatrix, list, list]:
    """Matrix of ``dm`` on bidegree-``degree`` pieces, with (summand, monomial) labels."""
    ring = dm.ring
    f = ring.field
    deg = Bidegree(*degree)
    src_labels, tgt_labels, tgt_offset = [], [], []
    for c, s in enumerate(dm.source.shifts):
        src_labels.extend((c, mu) for mu in monomial_basis(ring, deg - s))
    off = 0
    for r, s in enumerate(dm.target.shifts):
        tgt_offset.append(off)
        basis = monomial_basis(ring, deg - s)
        tgt_labels.extend((r, mu) for mu in basis)
        off += len(basis)
    arr = exactla.zeros(f, len(tgt_labels), len(src_labels))
    for col, (c, mu) in enumerate(src_labels):
        for r in range(dm.target.rank):
            g = dm.entries[r][c]
            if not g:
                continue
            idx = basis_index(ring, deg - dm.target.shifts[r])
            base = tgt_offset[r]
            for mono, coeff in g.terms.items():
                row = base + idx[tuple(u + v for u, v in zip(mu, mono))]
                arr[row, col] = f(arr[row, col] + coeff)
    return FieldMatrix(f, arr), src_labels, tgt_labels


def piece_dim(ring: RingSpec, module: ShiftedFreeModule, degree: Sequence[int]) -> int:
    return sum(bidegree_piece_dim(ring, Bidegree(*degree) - s) for s in module.shifts)


def strand_matrices(cx: FreeComplexDescriptor, degree: Sequence[int]) -> list[FieldMatrix]:
    """Scalar differentials ``[d_1, ..., d_L]`` of the bidegree-``degree`` strand."""
    return [scalar_map(dm, degree)[0] for dm in cx.differentials]


def _strand_homology(cx: FreeComplexDescriptor, degree: Sequence[int], positions: Iterable[int]) -> dict[int, int]:
    ranks: dict[int, int] = {}

    def rank_of(i: int) -> int:
        if i not in ranks:
            dm = cx.d(i)
            ranks[i] = 0 if dm is None else exactla.rank(scalar_map(dm, degree)[0])
        return ranks[i]

    out = {}
    for i in positions:
        if 0 <= i <= cx.length:
            out[i] = piece_dim(cx.ring, cx.terms[i], degree) - rank_of(i) - rank_of(i + 1)
    return out


def _degrees_for(cx: FreeComplexDescriptor, t: int) -> list[Bidegree]:
    if cx.y_only:
        return [Bidegree(0, t)]
    return [Bidegree(u, t - u) for u in range(t + 1)]


@dataclass(frozen=True)
class ExactnessReport:
    """Homology dimensions per (position, internal degree) inside a finite degree window."""

    through_degree: int
    positions: tuple[int, ...]
    homology: dict[tuple[int, int], int]

    @property
    def clean(self) -> bool:
        return all(v == 0 for v in self.homology.values())

    def first_failure(self) -> tuple[int, int] | None:
        """``(position, degree)`` of the lowest-degree nonzero homology."""
        bad = [k for k, v in self.homology.items() if v]
        return min(bad, key=lambda k: (k[1], k[0])) if bad else None

    def to_json(self) -> dict:
        return {
            "through_degree": self.through_degree,
            "positions": list(self.positions),
            "clean": self.clean,
            "first_failure": (
                None if self.first_failure() is None
                else {"position": self.first_failure()[0], "degree": self.first_failure()[1]}
            ),
            "homology": [
                {"position": i, "degree": t, "dim": v} for (i, t), v in sorted(self.homology.items())
            ],
        }


def exactness_report(cx: FreeComplexDescriptor, through_degree: int,
                     positions: Iterable[int] | None = None) -> ExactnessReport:
    """Strand homology for every internal degree ``t <= through_degree``.

    Internal degree is the y-degree for ``R_y``-complexes and the total degree
    otherwise (summing over bidegrees ``(u, t - u)``). A clean report is evidence
    of exactness inside the window only.
    """
    ok, where = compose_zero_check(cx)
    if not ok:
        raise ValueError(f"not a complex: d_{where} d_{where + 1} != 0")
    pos = tuple(sorted(positions)) if positions is not None else tuple(range(1, cx.length + 1))
    homology = {}
    for t in range(through_degree + 1):
        totals = dict.fromkeys(pos, 0)
        for deg in _degrees_for(cx, t):
            for i, h in _strand_homology(cx, deg, pos).items():
                totals[i] += h
        for i in pos:
            if 0 <= i <= cx.length:
                homology[(i, t)] = totals[i]
    return ExactnessReport(through_degree, pos, homology)


def scalar_entries(dm: PolyMatrix) -> FieldMatrix:
    """Constant matrix of a map whose entries are all scalars."""
    f = dm.ring.field
    arr = exactla.zeros(f, *dm.shape)
    for r, row in enumerate(dm.entries):
        for c, g in enumerate(row):
            if not g:
                continue
            if any(any(m) for m in g.terms):
                raise ValueError(f"entry ({r},{c}) = {g} is not a scalar")
            arr[r, c] = next(iter(g.terms.values()))
    return FieldMatrix(f, arr)

