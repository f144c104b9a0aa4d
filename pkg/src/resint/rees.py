"""Rees algebras of linearly presented height-two perfect ideals.

A ``p x (p-1)`` x-linear presentation matrix ``Phi`` determines the ideal
``I = (f_1..f_p)`` of signed maximal minors, the forms
``[z] = [y] Phi = [x] phi`` and the ideal ``J = <z> + I_n(phi)`` with
``R(I) = S/J``. Most height conditions cannot be decided here; they are carried
through every output as an explicit assumption list.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Sequence

from .bipoly import BiPoly, Field, RingSpec, bidegree_piece_dim, coeff_of_variable, poly_det
from .bkm import bkm_shifts
from .diagonal import (
    INCONCLUSIVE,
    DiagonalSpec,
    Verdict,
    cm_certificate,
    depth_lower_bound,
    koszul_certificate,
)
from .en import LinearMatrixY, eagon_northcott, en_exactness, signed_maximal_minors
from .oracle import IdealSpec, QuotientRing, XGradedTor, span_contains


class SetupError(ValueError):
    """A hard violation of the presentation-matrix hypotheses."""


VALIDATED = "validated"
EVIDENCE = "assumed-with-evidence"
ASSUMED = "assumed"


@dataclass
class AssumptionLedger:
    items: list[dict] = field(default_factory=list)

    def add(self, name: str, status: str, detail: str = "", evidence: dict | None = None):
        item = {"hypothesis": name, "status": status}
        if detail:
            item["detail"] = detail
        if evidence is not None:
            item["evidence"] = evidence
        self.items.append(item)

    def unverified(self) -> list[str]:
        return [it["hypothesis"] for it in self.items if it["status"] != VALIDATED]

    def to_json(self) -> list[dict]:
        return list(self.items)


class PresentationMatrix:
    def __init__(self, ring: RingSpec, entries: Sequence[Sequence[BiPoly]]):
        self.ring = ring
        self.entries = tuple(tuple(r) for r in entries)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def to_json(self) -> dict:
        return {
            "n": self.ring.n,
            "p": self.ring.p,
            "field": self.ring.field.label(),
            "matrix": {"rows": self.rows, "cols": self.cols, "entries": [[str(f) for f in r] for r in self.entries]},
        }

    @classmethod
    def from_json(cls, doc: dict | str, field: Field | None = None) -> "PresentationMatrix":
        if isinstance(doc, str):
            doc = json.loads(doc)
        try:
            ring = RingSpec(int(doc["n"]), int(doc["p"]), field or Field.parse(doc.get("field")))
            mat = doc["matrix"]
            entries = [[ring.parse(s) for s in row] for row in mat["entries"]]
        except (KeyError, TypeError) as exc:
            raise SetupError(f"malformed presentation document: {exc}") from exc
        if len(entries) != mat.get("rows", len(entries)) or any(len(r) != mat.get("cols", len(r)) for r in entries):
            raise SetupError("matrix shape does not match declared rows/cols")
        return cls(ring, entries)


def _check_shape_and_linearity(Phi: PresentationMatrix):
    ring = Phi.ring
    p = ring.p
    if Phi.rows != p or Phi.cols != p - 1 or any(len(r) != p - 1 for r in Phi.entries):
        raise SetupError(f"presentation matrix must be {p}x{p - 1}, got {Phi.rows}x{Phi.cols}")
    for i, row in enumerate(Phi.entries):
        for j, f in enumerate(row):
            if f.ring != ring:
                raise SetupError("entry from a different ring")
            if not f.is_bihomogeneous((1, 0)):
                raise SetupError(f"entry ({i + 1},{j + 1}) = {f} is not an x-linear form")
    if not p > ring.n:
        raise SetupError(f"need mu(I) = p > n, got p={p}, n={ring.n}")


def transpose_to_phi(Phi: PresentationMatrix) -> LinearMatrixY:
    """``phi_{ik} = sum_j coeff(Phi_{jk}, x_i) y_j``; checks ``[y] Phi == [x] phi``.

    Works for any ``p x m`` x-linear matrix; the Hilbert-Burch shape is enforced by ``validate_setup``.
    """
    ring = Phi.ring
    n, p = ring.n, ring.p
    m = Phi.cols
    rows = []
    for i in range(n):
        row = []
        for k in range(m):
            acc = ring.zero()
            for j in range(p):
                entry = Phi.entries[j][k]
                if entry:
                    acc = acc + coeff_of_variable(entry, i) * ring.y(j + 1)
            row.append(acc)
        rows.append(row)
    phi = LinearMatrixY(ring, rows)
    if z_from_presentation(Phi) != phi.z_forms():
        raise AssertionError("[y] Phi != [x] phi")
    return phi


def z_from_presentation(Phi: PresentationMatrix) -> list[BiPoly]:
    ring = Phi.ring
    out = []
    for k in range(Phi.cols):
        acc = ring.zero()
        for j in range(Phi.rows):
            acc = acc + ring.y(j + 1) * Phi.entries[j][k]
        out.append(acc)
    return out


def hilbert_burch_generators(Phi: PresentationMatrix) -> list[BiPoly]:
    """``f_j = (-1)^(j+1) det(Phi without row j)`` (1-based); checks ``[f] Phi == 0``."""
    ring = Phi.ring
    p = Phi.rows
    gens = []
    for j in range(p):
        sub = [Phi.entries[r] for r in range(p) if r != j]
        f = poly_det(sub, ring)
        gens.append(-f if j % 2 else f)
    for k in range(Phi.cols):
        acc = ring.zero()
        for j in range(p):
            acc = acc + gens[j] * Phi.entries[j][k]
        if not acc.is_zero():
            raise AssertionError(f"Hilbert-Burch syzygy fails in column {k + 1}")
    return gens


@dataclass
class ReesModel:
    Phi: PresentationMatrix
    phi: LinearMatrixY
    z: list[BiPoly]
    f: list[BiPoly]
    minors: list[BiPoly]
    ledger: AssumptionLedger

    @property
    def ring(self) -> RingSpec:
        return self.Phi.ring

    @property
    def n(self) -> int:
        return self.ring.n

    @property
    def p(self) -> int:
        return self.ring.p

    @property
    def m(self) -> int:
        return self.p - 1

    @property
    def d(self) -> int:
        return self.p - 1

    def summary(self) -> dict:
        return {
            "n": self.n,
            "p": self.p,
            "m": self.m,
            "d": self.d,
            "field": self.ring.field.label(),
            "phi": [[str(g) for g in row] for row in self.phi.entries],
            "z": [str(g) for g in self.z],
            "f": [str(g) for g in self.f],
            "J": [str(g) for g in build_J(self).generators],
        }


def validate_setup(Phi: PresentationMatrix, check_through: int = 4) -> AssumptionLedger:
    """Hard-check shape, linearity and ``p > n``; record height conditions with EN evidence."""
    _check_shape_and_linearity(Phi)
    ring = Phi.ring
    n, p = ring.n, ring.p
    m = p - 1
    ledger = AssumptionLedger()
    ledger.add("Phi is p x (p-1)", VALIDATED)
    ledger.add("Phi is linear in x", VALIDATED)
    ledger.add("mu(I) = p > n", VALIDATED, f"p={p}, n={n}")
    ledger.add("m = p - 1 >= n", VALIDATED if m >= n else ASSUMED, f"m={m}, n={n}")
    for i in range(1, n):
        _record_minor_height(ledger, Phi, i, check_through)
    ledger.add("I is perfect of height two", ASSUMED, "Hilbert-Burch shape is checked, height is not")
    if m >= n:
        phi = transpose_to_phi(Phi)
        rep = en_exactness(eagon_northcott(phi), check_through)
        ledger.add(f"hgt I_n(phi) >= m - n + 1 = {m - n + 1}", EVIDENCE,
                   f"Eagon-Northcott complex of phi exact in degrees <= {check_through}"
                   if rep.clean else "Eagon-Northcott complex has homology in the checked window",
                   rep.to_json())
    return ledger


def minors_of_size(Phi: PresentationMatrix, k: int) -> list[BiPoly]:
    """All nonzero ``k x k`` minors of ``Phi``."""
    out = []
    for rows in itertools.combinations(range(Phi.rows), k):
        for cols in itertools.combinations(range(Phi.cols), k):
            f = poly_det([[Phi.entries[r][c] for c in cols] for r in rows], Phi.ring)
            if not f.is_zero():
                out.append(f)
    return out


def _record_minor_height(ledger: AssumptionLedger, Phi: PresentationMatrix, i: int, check_through: int):
    """Ledger entry for ``hgt I_{p-i}(Phi) > i``.

    Evidence is the Hilbert function of ``R_x / I_{p-i}(Phi)`` on a window. When
    ``i = n - 1`` and that function reaches zero the quotient is Artinian, so the
    height is ``n`` and the item counts as validated.
    """
    ring = Phi.ring
    k = ring.p - i
    name = f"hgt I_{k}(Phi) > {i}"
    gens = minors_of_size(Phi, k)
    if not gens:
        ledger.add(name, ASSUMED, f"I_{k}(Phi) = 0, so the condition fails")
        return
    Q = QuotientRing(IdealSpec(ring, gens))
    hf = []
    for t in range(k + check_through + 1):
        hf.append(Q.piece(t, 0).quotient_dim)
        if hf[-1] == 0:
            break
    evidence = {"hilbert_function": hf, "through_degree": len(hf) - 1}
    if i == ring.n - 1 and hf[-1] == 0:
        ledger.add(name, VALIDATED, f"R_x/I_{k}(Phi) is Artinian (zero in degree {len(hf) - 1})", evidence)
    else:
        ledger.add(name, EVIDENCE, f"Hilbert function of R_x/I_{k}(Phi) on degrees <= {len(hf) - 1}", evidence)


def build_model(Phi: PresentationMatrix, check_through: int = 4) -> ReesModel:
    ledger = validate_setup(Phi, check_through)
    if Phi.cols < Phi.ring.n:
        raise SetupError(f"need p - 1 >= n for an n x (p-1) matrix phi, got p={Phi.ring.p}, n={Phi.ring.n}")
    phi = transpose_to_phi(Phi)
    f = hilbert_burch_generators(Phi)
    return ReesModel(Phi, phi, phi.z_forms(), f, signed_maximal_minors(phi), ledger)


def build_J(model: ReesModel) -> IdealSpec:
    return IdealSpec(model.ring, list(model.z) + list(model.minors))


def check_witnesses(model: ReesModel, witnesses: Sequence[BiPoly]) -> list[dict]:
    """Membership of each witness in ``I``. Membership alone does not establish a height bound."""
    I = IdealSpec(model.ring, model.f)
    return [
        {"witness": str(w), "in_ideal": span_contains(I, w), "label": "membership only; height not concluded"}
        for w in witnesses
    ]


def power_generators(model: ReesModel, s: int) -> list[BiPoly]:
    out = []
    for combo in itertools.combinations_with_replacement(range(model.p), s):
        g = model.ring.one()
        for j in combo:
            g = g * model.f[j]
        out.append(g)
    return out


def power_piece_dim(model: ReesModel, s: int, t: int) -> int:
    """``dim (I^s)_t``."""
    if s < 0 or t < 0:
        raise ValueError("need s, t >= 0")
    G = IdealSpec(model.ring, power_generators(model, s))
    piece = QuotientRing(G).piece(t, 0)
    return bidegree_piece_dim(model.ring, (t, 0)) - piece.quotient_dim


@dataclass
class RomerBound:
    s: int
    bound: int
    verdict: str
    assumptions: list[str]

    def to_json(self) -> dict:
        return {"s": self.s, "reg_bound": self.bound, "verdict": self.verdict, "assumptions": self.assumptions}


def romer_bound(model: ReesModel, s: int) -> RomerBound:
    """``reg(I^s) <= s*d + reg_x(R(I))`` with ``reg_x = 0``, so ``I^s`` is linear for every ``s``."""
    return RomerBound(s, s * model.d, "linear resolution for all s (conditional on assumptions)",
                      model.ledger.unverified())


def power_regularity(model: ReesModel, s: int, i_max: int = 6, t_max: int | None = None) -> dict:
    """Window check of ``reg(I^s)`` via single-graded Betti numbers over ``R_x``."""
    if t_max is None:
        t_max = s * model.d + model.n + 1
    tor = XGradedTor(IdealSpec(model.ring, power_generators(model, s)))
    table = tor.table(i_max, t_max)
    reg = tor.ideal_regularity(i_max, t_max)
    return {
        "s": s,
        "window": {"i_max": i_max, "t_max": t_max},
        "betti": [{"i": i, "t": t, "mult": v} for (i, t), v in sorted(table.items())],
        "reg": reg,
        "expected": s * model.d,
        "linear_in_window": reg == s * model.d,
    }


def rees_certificates(model: ReesModel, delta: DiagonalSpec) -> dict:
    """CM and Koszul certificates for ``R(I)_Delta``, conditional on the ledger."""
    s = bkm_shifts(model.n, model.m)
    c, e = delta.c, delta.e
    dim_known = c > model.d * e or (c == 1 and e == 1)
    depth = depth_lower_bound(s, delta, model.ring)
    if dim_known:
        cm = cm_certificate(model.n, s, delta, model.ring)
        cm.detail["branch"] = "c > (p-1)e" if c > model.d * e else "c = e = 1"
    else:
        cm = Verdict(INCONCLUSIVE, depth.bound, dict(depth.hypotheses, dim=None),
                     depth.per_shift, {"reason": "dim R(I)_Delta = n is only known for c > (p-1)e or c = e = 1"})
    kz = koszul_certificate(s, delta)
    return {
        "delta": {"c": c, "e": e},
        "dim": model.n if dim_known else None,
        "depth_bound": depth.bound,
        "cm": cm.to_json(),
        "koszul": kz.to_json(),
        "assumptions": model.ledger.unverified(),
    }


def rees_hilbert_match(model: ReesModel, u_max: int, v_max: int) -> list[dict]:
    """``dim (S/J)_(u,v)`` against ``dim (I^v)_(u + v d)`` on a window."""
    Q = QuotientRing(build_J(model))
    out = []
    for v in range(v_max + 1):
        for u in range(u_max + 1):
            left = Q.piece(u, v).quotient_dim
            right = power_piece_dim(model, v, u + v * model.d)
            out.append({"u": u, "v": v, "quotient": left, "power": right, "match": left == right})
    return out

