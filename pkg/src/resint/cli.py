"""Command-line front end.

Exit codes: 0 success, 1 bad input or violated hypothesis, 2 mathematical
mismatch (nonzero homology in a checked window, oracle disagreement).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bipoly import Field, RingSpec
from .bkm import bkm_betti_table, bkm_shifts, reg_xy_from_table
from .diagonal import (
    DiagonalSpec,
    cm_certificate,
    depth_lower_bound,
    koszul_certificate,
    quotient_diag_hilbert,
    shifted_diag_hilbert,
    shifted_diag_is_cm,
    shifted_diag_reg,
)
from .en import LinearMatrixY, eagon_northcott, en_exactness, en_h0_dims, en_strand_h0
from .freecomplex import dualize_y, exactness_report, koszul_complex, x_strand
from .oracle import IdealSpec, betti_window, reg_window
from .rees import (
    PresentationMatrix,
    build_model,
    check_witnesses,
    power_regularity,
    rees_certificates,
    romer_bound,
)

DEFAULT_SEED = 0


class UsageError(Exception):
    pass


class Mismatch(Exception):
    def __init__(self, message: str, payload: dict):
        super().__init__(message)
        self.payload = payload


def _field(args) -> Field | None:
    return Field.parse(args.field) if args.field is not None else None


def _load(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError as exc:
        raise UsageError(f"no such file: {path}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc})") from exc


def _pair(text: str, what: str) -> tuple[int, int]:
    try:
        a, b = (int(t) for t in text.split(","))
    except ValueError as exc:
        raise UsageError(f"{what} must look like 'N,M', got {text!r}") from exc
    return a, b


def _shift_table(shifts) -> str:
    lines = []
    for i in shifts.indices():
        parts = [f"S({-ab.a},{-ab.b})^{v}" for ab, v in sorted(shifts[i].items())]
        lines.append(f"F_{i}: " + " + ".join(parts))
    return "\n".join(lines)


def cmd_bkm(args) -> tuple[dict, str]:
    n, m = args.n, args.m
    if n < 1:
        raise UsageError(f"hypothesis n >= 1 violated (n={n})")
    if m < n:
        raise UsageError(f"hypothesis m >= n violated (n={n}, m={m})")
    shifts = bkm_shifts(n, m)
    table = bkm_betti_table(n, m)
    reg_x, reg_y = reg_xy_from_table(table)
    out = {"n": n, "m": m, "shifts": shifts.to_json()["modules"], "betti": table.rows(),
           "reg_x": reg_x, "reg_y": reg_y}
    text = _shift_table(shifts) + f"\nreg_x = {reg_x}, reg_y = {reg_y}"
    wanted = [args.p, args.c, args.e]
    if any(v is not None for v in wanted):
        if any(v is None for v in wanted):
            raise UsageError("certificates need all of --p, --c, --e")
        if not args.p > m:
            raise UsageError(f"hypothesis p > m violated (p={args.p}, m={m})")
        ring = RingSpec(n, args.p)
        delta = DiagonalSpec(args.c, args.e)
        depth = depth_lower_bound(shifts, delta, ring)
        kz = koszul_certificate(shifts, delta)
        out["diagonal"] = {"c": args.c, "e": args.e, "p": args.p,
                           "depth": depth.to_json(), "koszul": kz.to_json()}
        text += f"\ndepth bound = {depth.bound}\nkoszul: {kz.verdict} (reg bound {kz.reg_bound})"
    return out, text


def _read_phi(args) -> LinearMatrixY:
    if args.random_phi:
        n, m = _pair(args.random_phi, "--random-phi")
        if args.p is None:
            raise UsageError("--random-phi needs --p")
        ring = RingSpec(max(n, 1), args.p, _field(args) or Field())
        return LinearMatrixY.random(ring, n, m, seed=args.seed)
    if not args.phi_file:
        raise UsageError("need a matrix file or --random-phi")
    return LinearMatrixY.from_json(_load(args.phi_file), _field(args))


def cmd_en(args) -> tuple[dict, str]:
    phi = _read_phi(args)
    en = eagon_northcott(phi)
    D = args.check_through
    out = en.summary()
    if not out["compose_zero"]:
        raise Mismatch(f"d_{out['compose_zero_failure']} d_{out['compose_zero_failure'] + 1} != 0", out)
    rep = en_exactness(en, D)
    out["exactness"] = rep.to_json()
    out["h0_dims"] = en_h0_dims(phi, D)
    out["h0_from_strands"] = en_strand_h0(en, D)
    text = (f"EN ranks {out['ranks']}, compose-zero {out['compose_zero']}\n"
            f"exact through degree {D}: {rep.clean}\nH_0 dims {out['h0_dims']}")
    if not rep.clean:
        fail = rep.first_failure()
        msg = "nonzero homology" + (f" at position {fail[0]}, degree {fail[1]}" if fail else "")
        raise Mismatch(msg, out)
    return out, text


def cmd_oracle(args) -> tuple[dict, str]:
    ideal = IdealSpec.from_json(_load(args.ideal_file), _field(args))
    table = betti_window(ideal, args.i_max, args.a_max, args.b_max)
    out = {"field": ideal.ring.field.label(), "betti": table.to_json()}
    out["reg_window"] = reg_window(table).to_json() if len(table) else None
    text = "\n".join(f"beta_{r['i']},({r['a']},{r['b']}) = {r['mult']}" for r in table.rows())
    if args.expect_bkm:
        n, m = _pair(args.expect_bkm, "--expect-bkm")
        expected = bkm_betti_table(n, m).restrict(args.i_max, args.a_max, args.b_max)
        diff = table.diff(expected)
        rows = [{"i": d["i"], "a": d["a"], "b": d["b"], "oracle": d["left"], "bkm": d["right"]} for d in diff]
        out["expect_bkm"] = {"n": n, "m": m, "match": not diff, "diff": rows}
        if diff:
            first = out["expect_bkm"]["diff"][0]
            raise Mismatch(
                f"oracle differs from closed form at i={first['i']}, (a,b)=({first['a']},{first['b']}): "
                f"oracle {first['oracle']} vs bkm {first['bkm']}", out)
        text += f"\nmatches bkm({n},{m}) in window"
    return out, text


def cmd_rees(args) -> tuple[dict, str]:
    Phi = PresentationMatrix.from_json(_load(args.presentation_file), _field(args))
    model = build_model(Phi, args.check_through)
    delta = DiagonalSpec(args.c, args.e)
    out = {"model": model.summary(), "assumptions": model.ledger.to_json(),
           "certificates": rees_certificates(model, delta)}
    out["romer"] = [romer_bound(model, s).to_json() for s in range(0, max(args.powers, 1) + 1)]
    if args.witness:
        out["witnesses"] = check_witnesses(model, [model.ring.parse(w) for w in args.witness])
    checks = [power_regularity(model, s) for s in range(1, args.powers + 1)]
    if checks:
        out["power_checks"] = checks
    cert = out["certificates"]
    text = (f"n={model.n} p={model.p} m={model.m}\n"
            f"CM: {cert['cm']['verdict']}\nKoszul: {cert['koszul']['verdict']}\n"
            + "\n".join(f"reg(I^{c['s']}) = {c['reg']} (expected {c['expected']})" for c in checks))
    bad = [c for c in checks if not c["linear_in_window"]]
    if bad:
        raise Mismatch(f"reg(I^{bad[0]['s']}) = {bad[0]['reg']} differs from {bad[0]['expected']}", out)
    return out, text


def cmd_diag(args) -> tuple[dict, str]:
    if args.m < args.n or args.n < 1:
        raise UsageError(f"hypothesis m >= n >= 1 violated (n={args.n}, m={args.m})")
    ring = RingSpec(args.n, args.p)
    delta = DiagonalSpec(args.c, args.e)
    shifts = bkm_shifts(args.n, args.m)
    out = {"n": args.n, "m": args.m, "p": args.p, "c": args.c, "e": args.e}
    if args.a is not None or args.b is not None:
        a, b = args.a or 0, args.b or 0
        h = shifted_diag_hilbert(a, b, delta, ring)
        out["shifted"] = {"a": a, "b": b, "cm": shifted_diag_is_cm(a, b, delta, ring),
                          "reg": shifted_diag_reg(a, b, delta), "krull_dim": h.krull_dim,
                          "hilbert": [h(i) for i in range(args.through + 1)]}
    out["depth"] = depth_lower_bound(shifts, delta, ring).to_json()
    out["koszul"] = koszul_certificate(shifts, delta).to_json()
    if args.dim is not None:
        out["cm"] = cm_certificate(args.dim, shifts, delta, ring).to_json()
    out["hilbert"] = quotient_diag_hilbert(shifts, delta, ring, args.through)
    text = (f"depth bound {out['depth']['bound']}\nkoszul {out['koszul']['verdict']} "
            f"(bound {out['koszul']['bound']})\nHF {out['hilbert']}")
    return out, text


def cmd_strand(args) -> tuple[dict, str]:
    ring = RingSpec(args.n, args.p, _field(args) or Field())
    seq = [ring.parse(s) for s in args.seq.split(",")]
    cx = koszul_complex(ring, seq)
    st = x_strand(cx, args.degree)
    if args.dual:
        st = dualize_y(st)
    out = {"complex": st.to_json(), "ranks": st.ranks()}
    if args.check_through is not None:
        out["exactness"] = exactness_report(st, args.check_through).to_json()
    return out, f"strand ranks {st.ranks()}"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default=argparse.SUPPRESS, help="prime q or 'Q' for the rationals")
    common.add_argument("--format", choices=["json", "table"], default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)

    ap = argparse.ArgumentParser(prog="resint", parents=[common],
                                 description="Bigraded resolutions of residual intersections and their diagonals.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bkm", parents=[common], help="closed-form shifts, Betti table, regularity")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--p", type=int)
    p.add_argument("--c", type=int)
    p.add_argument("--e", type=int)
    p.set_defaults(func=cmd_bkm)

    p = sub.add_parser("en", parents=[common], help="Eagon-Northcott complex of a y-linear matrix")
    p.add_argument("phi_file", nargs="?")
    p.add_argument("--check-through", type=int, default=6)
    p.add_argument("--random-phi", metavar="N,M")
    p.add_argument("--p", type=int, help="number of y-variables for --random-phi")
    p.set_defaults(func=cmd_en)

    p = sub.add_parser("oracle", parents=[common], help="brute-force Betti numbers of S/J")
    p.add_argument("ideal_file")
    p.add_argument("--i-max", type=int, default=4)
    p.add_argument("--a-max", type=int, default=2)
    p.add_argument("--b-max", type=int, default=4)
    p.add_argument("--expect-bkm", metavar="N,M")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("rees", parents=[common], help="Rees algebra pipeline from a presentation matrix")
    p.add_argument("presentation_file")
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--powers", type=int, default=0)
    p.add_argument("--check-through", type=int, default=4)
    p.add_argument("--witness", action="append", help="polynomial to test for membership in I")
    p.set_defaults(func=cmd_rees)

    p = sub.add_parser("diag", parents=[common], help="diagonal-subalgebra numerics")
    for name in ("n", "m", "p", "c", "e"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--dim", type=int, help="dimension of (S/J)_Delta for the CM certificate")
    p.add_argument("--through", type=int, default=4)
    p.set_defaults(func=cmd_diag)

    p = sub.add_parser("strand", parents=[common], help="x-strand of a Koszul complex (debugging)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, default=1)
    p.add_argument("--seq", required=True, help="comma-separated polynomials")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--dual", action="store_true")
    p.add_argument("--check-through", type=int)
    p.set_defaults(func=cmd_strand)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    for name, default in (("field", None), ("format", "json"), ("seed", DEFAULT_SEED)):
        if not hasattr(args, name):
            setattr(args, name, default)
    code = 0
    try:
        out, text = args.func(args)
    except Mismatch as exc:
        out, text, code = exc.payload, str(exc), 2
        print(f"mismatch: {exc}", file=sys.stderr)
    except (UsageError, ValueError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.format == "json":
        print(json.dumps(out, indent=2, default=str))
    else:
        print(text)
    return code


def main_exit() -> None:
    sys.exit(main())
