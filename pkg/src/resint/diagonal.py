"""Diagonal subalgebras (S/J)_Delta: Hilbert functions, depth, CM and Koszul certificates.

All certificates are one-sided. A failed sufficient criterion is reported as
``"inconclusive"``, never as a negative answer.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .bipoly import RingSpec, bidegree_piece_dim
from .bkm import BettiTable, ShiftMultiset, ab_max_sequences

CERTIFIED_CM = "certified-CM"
CERTIFIED_KOSZUL = "certified-Koszul"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class DiagonalSpec:
    c: int
    e: int

    def __post_init__(self):
        if self.c < 1 or self.e < 1:
            raise ValueError(f"diagonal needs c >= 1 and e >= 1, got ({self.c}, {self.e})")


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


@dataclass(frozen=True)
class ShiftedDiagonalHilbert:
    """Hilbert function ``i -> dim S_(ci - a, ei - b)`` of ``S(-a,-b)_Delta``."""

    a: int
    b: int
    delta: DiagonalSpec
    ring: RingSpec

    @property
    def krull_dim(self) -> int:
        return self.ring.p + self.ring.n - 1

    def __call__(self, i: int) -> int:
        return bidegree_piece_dim(self.ring, (self.delta.c * i - self.a, self.delta.e * i - self.b))


def shifted_diag_hilbert(a: int, b: int, delta: DiagonalSpec, ring: RingSpec) -> ShiftedDiagonalHilbert:
    return ShiftedDiagonalHilbert(a, b, delta, ring)


def shifted_diag_is_cm(a: int, b: int, delta: DiagonalSpec, ring: RingSpec) -> bool:
    """``floor((a-n)/c) < b/e`` and ``floor((b-p)/e) < a/c``, in integer arithmetic."""
    c, e = delta.c, delta.e
    first = ((a - ring.n) // c) * e < b
    second = ((b - ring.p) // e) * c < a
    return first and second


def shifted_diag_reg(a: int, b: int, delta: DiagonalSpec) -> int:
    return max(_ceil_div(a, delta.c), _ceil_div(b, delta.e))


@dataclass
class DepthBoundReport:
    bound: int | None
    per_shift: list[dict]
    hypotheses: dict

    def to_json(self) -> dict:
        return {"bound": self.bound, "hypotheses": self.hypotheses, "per_shift": self.per_shift}


def _hypothesis(s: ShiftMultiset, ring: RingSpec) -> dict:
    holds = ring.p > s.m >= s.n
    return {"p > m >= n": holds, "n": s.n, "m": s.m, "p": ring.p}


def depth_lower_bound(s: ShiftMultiset, delta: DiagonalSpec, ring: RingSpec) -> DepthBoundReport:
    """``depth (S/J)_Delta >= p + n - (m + 1)`` when ``p > m >= n`` and every shift passes the CM test."""
    per_shift = []
    all_cm = True
    for i, ab, mult in s.items():
        ok = shifted_diag_is_cm(ab.a, ab.b, delta, ring)
        all_cm &= ok
        per_shift.append({"i": i, "a": ab.a, "b": ab.b, "mult": mult, "cm": ok})
    hyp = _hypothesis(s, ring)
    bound = ring.p + ring.n - (s.m + 1) if hyp["p > m >= n"] and all_cm else None
    return DepthBoundReport(bound, per_shift, hyp)


@dataclass
class Verdict:
    verdict: str
    bound: int | None
    hypotheses: dict
    per_shift: list[dict] = field(default_factory=list)
    detail: dict = field(default_factory=dict)

    @property
    def certified(self) -> bool:
        return self.verdict != INCONCLUSIVE

    def to_json(self) -> dict:
        doc = {"verdict": self.verdict, "bound": self.bound, "hypotheses": self.hypotheses, "per_shift": self.per_shift}
        doc.update(self.detail)
        return doc


def cm_certificate(dim_value: int, s: ShiftMultiset, delta: DiagonalSpec, ring: RingSpec) -> Verdict:
    """Certified CM iff a depth bound exists and the supplied dimension does not exceed it."""
    rep = depth_lower_bound(s, delta, ring)
    ok = rep.bound is not None and dim_value <= rep.bound
    return Verdict(
        CERTIFIED_CM if ok else INCONCLUSIVE,
        rep.bound,
        dict(rep.hypotheses, dim=dim_value),
        rep.per_shift,
    )


@dataclass
class KoszulCertificate:
    reg_bound: int
    verdict: str
    threshold: bool
    terms: list[dict]

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "bound": self.reg_bound,
            "hypotheses": {"e >= ceil(n/2)": self.threshold},
            "per_shift": self.terms,
        }


def koszul_reg_bound(s: ShiftMultiset, delta: DiagonalSpec) -> tuple[int, list[dict]]:
    a_max, b_max = ab_max_sequences(s)
    terms = []
    for i, (a, b) in enumerate(zip(a_max, b_max)):
        terms.append({
            "i": i, "a_max": a, "b_max": b,
            "x_term": _ceil_div(a, delta.c) - i,
            "y_term": _ceil_div(b, delta.e) - i,
        })
    bound = max(max(t["x_term"], t["y_term"]) for t in terms)
    return bound, terms


def koszul_certificate(s: ShiftMultiset, delta: DiagonalSpec) -> KoszulCertificate:
    """Koszul when the regularity bound from the shift maxima is at most 1."""
    bound, terms = koszul_reg_bound(s, delta)
    return KoszulCertificate(
        bound,
        CERTIFIED_KOSZUL if bound <= 1 else INCONCLUSIVE,
        delta.e >= _ceil_div(s.n, 2),
        terms,
    )


def _shift_items(source: BettiTable | ShiftMultiset):
    if isinstance(source, ShiftMultiset):
        return list(source.items())
    return [(i, ab, mult) for (i, ab), mult in source.entries.items()]


def quotient_diag_hilbert(source: BettiTable | ShiftMultiset, delta: DiagonalSpec, ring: RingSpec,
                          through: int) -> list[int]:
    """``dim (S/J)_(ci, ei)`` for ``i = 0..through`` by the alternating sum over the resolution."""
    items = _shift_items(source)
    out = []
    for i in range(through + 1):
        u, v = delta.c * i, delta.e * i
        val = sum((-1) ** j * mult * bidegree_piece_dim(ring, (u - ab.a, v - ab.b)) for j, ab, mult in items)
        if val < 0:
            raise ValueError(f"negative Hilbert value {val} at i={i}; the shift data is inconsistent")
        out.append(val)
    return out
