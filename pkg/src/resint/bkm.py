"""Closed-form bigraded resolution data for S/J, J = <z> + I_n(phi).

The shift table, Betti numbers and regularities here are pure combinatorics
in ``(n, m)``; no polynomial arithmetic is involved. ``kab_rank`` also
computes each kernel rank from the Koszul strand on ``x`` so the closed form
can be checked against linear algebra.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Mapping

from . import exactla
from .bipoly import Bidegree, Field, RingSpec
from .freecomplex import koszul_complex, scalar_entries, x_strand


class BettiTable:
    """Nonzero bigraded Betti numbers ``beta_{i,(a,b)}`` keyed by ``(i, Bidegree)``."""

    def __init__(self, entries: Mapping[tuple[int, tuple[int, int]], int] | None = None, *,
                 n: int | None = None, m: int | None = None, field_independent: bool = False,
                 meta: dict | None = None):
        clean: dict[tuple[int, Bidegree], int] = {}
        for (i, ab), mult in (entries or {}).items():
            if mult < 0:
                raise ValueError(f"negative multiplicity at {(i, ab)}")
            if mult:
                key = (int(i), Bidegree(*ab))
                if key in clean:
                    raise ValueError(f"duplicate Betti key {key}")
                clean[key] = int(mult)
        self.entries = clean
        self.n = n
        self.m = m
        self.field_independent = field_independent
        self.meta = dict(meta or {})

    def __getitem__(self, key) -> int:
        i, ab = key
        return self.entries.get((i, Bidegree(*ab)), 0)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(sorted(self.entries))

    def __eq__(self, other):
        if not isinstance(other, BettiTable):
            return NotImplemented
        return self.entries == other.entries

    def __repr__(self):
        body = ", ".join(f"{i}:{tuple(ab)}^{v}" for (i, ab), v in sorted(self.entries.items()))
        return f"BettiTable({body})"

    def restrict(self, i_max: int, a_max: int, b_max: int) -> "BettiTable":
        keep = {k: v for k, v in self.entries.items() if k[0] <= i_max and k[1].a <= a_max and k[1].b <= b_max}
        return BettiTable(keep, n=self.n, m=self.m, field_independent=self.field_independent, meta=self.meta)

    def diff(self, other: "BettiTable") -> list[dict]:
        """Entries where the two tables disagree, sorted by (i, a, b)."""
        keys = sorted(set(self.entries) | set(other.entries))
        return [
            {"i": i, "a": ab.a, "b": ab.b, "left": self.entries.get((i, ab), 0), "right": other.entries.get((i, ab), 0)}
            for i, ab in keys
            if self.entries.get((i, ab), 0) != other.entries.get((i, ab), 0)
        ]

    def rows(self) -> list[dict]:
        return [{"i": i, "a": ab.a, "b": ab.b, "mult": v} for (i, ab), v in sorted(self.entries.items())]

    def to_json(self) -> dict:
        doc = {"rows": self.rows()}
        if self.n is not None:
            doc["n"] = self.n
        if self.m is not None:
            doc["m"] = self.m
        doc["field_independent"] = self.field_independent
        doc.update(self.meta)
        return doc

    @classmethod
    def from_json(cls, doc: dict | str) -> "BettiTable":
        if isinstance(doc, str):
            doc = json.loads(doc)
        entries = {(r["i"], (r["a"], r["b"])): r["mult"] for r in doc["rows"]}
        return cls(entries, n=doc.get("n"), m=doc.get("m"), field_independent=doc.get("field_independent", False))

    def total_ranks(self) -> list[int]:
        top = max((i for i, _ in self.entries), default=-1)
        return [sum(v for (i, _), v in self.entries.items() if i == k) for k in range(top + 1)]


@dataclass
class ShiftMultiset:
    """Shifts ``(a, b)`` (meaning ``S(-a, -b)``) of each free module ``F_i``."""

    n: int
    m: int
    by_index: dict[int, Counter] = field(default_factory=dict)

    def __getitem__(self, i: int) -> Counter:
        return self.by_index.get(i, Counter())

    def indices(self) -> list[int]:
        return sorted(self.by_index)

    def items(self) -> Iterable[tuple[int, Bidegree, int]]:
        for i in self.indices():
            for ab, mult in sorted(self.by_index[i].items()):
                yield i, ab, mult

    def rank(self, i: int) -> int:
        return sum(self[i].values())

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "modules": [
                {"i": i, "shifts": [{"a": ab.a, "b": ab.b, "mult": v} for ab, v in sorted(self.by_index[i].items())]}
                for i in self.indices()
            ],
        }


@dataclass(frozen=True)
class KabSpec:
    n: int
    a: int
    b: int
    rank: int
    formula_rank: int

    @property
    def agrees(self) -> bool:
        return self.rank == self.formula_rank


def _check_nm(n: int, m: int):
    if n < 1:
        raise ValueError(f"need n >= 1, got n={n}")
    if m < n:
        raise ValueError(f"need m >= n, got n={n}, m={m}")


def kab_formula(n: int, a: int, b: int) -> int:
    return comb(n + a - 1 - b, a) * comb(n + a, b)


def kab_rank(n: int, a: int, b: int, field: Field | None = None) -> KabSpec:
    """Rank of ``K_a^b``, the kernel of the dual of the Koszul-on-x strand map.

    The map is ``psi: S_{a-1} (x) L^{n-b+1} -> S_a (x) L^{n-b}`` in x-degree
    ``a + n - b``; its dual has scalar matrix ``psi^T`` and the kernel of
    ``psi^T`` has dimension ``rows(psi) - rank(psi)``.
    """
    if not 0 <= b <= n - 1:
        raise ValueError(f"need 0 <= b <= n-1, got b={b} with n={n}")
    if a < 0:
        raise ValueError(f"need a >= 0, got a={a}")
    ring = RingSpec(n, 1, field or Field())
    kx = koszul_complex(ring, [ring.x(i) for i in range(1, n + 1)])
    strand = x_strand(kx, a + n - b)
    target_rank = strand.terms[n - b].rank
    d = strand.d(n - b + 1)
    psi = scalar_entries(d) if d is not None else exactla.FieldMatrix.zero(ring.field, target_rank, 0)
    dual = psi.transpose()
    kernel = exactla.kernel_basis(dual) if dual.cols else []
    return KabSpec(n, a, b, len(kernel), kab_formula(n, a, b))


def _j_range(i: int, n: int, m: int) -> range:
    return range(max(0, i - (m - n + 1)), min(i - 1, n - 1) + 1)


def r_multiplicity(i: int, j: int, n: int, m: int) -> int:
    """Multiplicity of ``S(-j, -(n+i-1-j))`` in ``P_i``."""
    _check_nm(n, m)
    if not 1 <= i <= m or j not in _j_range(i, n, m):
        raise ValueError(f"(i, j) = ({i}, {j}) outside the admissible range for n={n}, m={m}")
    return comb(n + i - 2 * j - 2, i - 1 - j) * comb(n + i - 1 - j, j) * comb(m, n + i - 1 - j)


def bkm_shifts(n: int, m: int) -> ShiftMultiset:
    _check_nm(n, m)
    out: dict[int, Counter] = {0: Counter({Bidegree(0, 0): 1})}
    for i in range(1, m + 1):
        F = Counter()
        if i <= n - 1:
            F[Bidegree(i, i)] += comb(m, i)
        for j in _j_range(i, n, m):
            key = Bidegree(j, n + i - 1 - j)
            if key in F:
                raise AssertionError(f"shift families collide at i={i}, {key}")
            F[key] += r_multiplicity(i, j, n, m)
        out[i] = F
    return ShiftMultiset(n, m, out)


def bkm_betti_table(n: int, m: int) -> BettiTable:
    s = bkm_shifts(n, m)
    return BettiTable({(i, ab): v for i, ab, v in s.items()}, n=n, m=m, field_independent=True)


def reg_xy_from_table(t: BettiTable) -> tuple[int, int]:
    """``(max(a - i), max(b - i))`` over the nonzero entries."""
    if not len(t):
        raise ValueError("empty Betti table")
    return (
        max(ab.a - i for i, ab in t.entries),
        max(ab.b - i for i, ab in t.entries),
    )


def ab_max_sequences(s: ShiftMultiset) -> tuple[list[int], list[int]]:
    top = max(s.indices(), default=-1)
    a_max, b_max = [], []
    for i in range(top + 1):
        shifts = list(s[i])
        a_max.append(max((ab.a for ab in shifts), default=0))
        b_max.append(max((ab.b for ab in shifts), default=0))
    return a_max, b_max
