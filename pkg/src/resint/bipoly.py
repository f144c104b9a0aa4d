"""Exact arithmetic in the bigraded polynomial ring k[x_1..x_n, y_1..y_p].

Variables ``x_i`` have bidegree (1, 0) and ``y_j`` have bidegree (0, 1).
Monomials are plain exponent tuples of length ``n + p`` (x-block first).
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping, NamedTuple, Sequence

DEFAULT_PRIME = 32003

Monomial = tuple[int, ...]


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    i = 2
    while i * i <= q:
        if q % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class Field:
    """Coefficient field: GF(q) for a prime ``q``, or the rationals when ``characteristic == 0``."""

    characteristic: int = DEFAULT_PRIME

    def __post_init__(self):
        if self.characteristic < 0 or (self.characteristic and not _is_prime(self.characteristic)):
            raise ValueError(f"field characteristic must be 0 or a prime, got {self.characteristic}")

    @classmethod
    def parse(cls, spec: str | int | None) -> "Field":
        if spec is None:
            return cls()
        if isinstance(spec, int):
            return cls(spec)
        s = str(spec).strip()
        if s.upper() in ("Q", "QQ", "0"):
            return cls(0)
        return cls(int(s))

    @property
    def is_prime(self) -> bool:
        return self.characteristic > 0

    def __call__(self, c) -> int | Fraction:
        if self.characteristic:
            if isinstance(c, Fraction):
                q = self.characteristic
                return c.numerator % q * pow(c.denominator, -1, q) % q
            return int(c) % self.characteristic
        return Fraction(c)

    def inv(self, c):
        if not c:
            raise ZeroDivisionError("inverse of zero")
        if self.characteristic:
            return pow(int(c), -1, self.characteristic)
        return 1 / Fraction(c)

    def signed(self, c) -> int | Fraction:
        """Symmetric representative, used for printing."""
        if self.characteristic and c > self.characteristic // 2:
            return c - self.characteristic
        return c

    def label(self) -> str | int:
        return self.characteristic if self.characteristic else "Q"

    def __str__(self):
        return f"GF({self.characteristic})" if self.characteristic else "QQ"


class Bidegree(NamedTuple):
    a: int
    b: int

    def __add__(self, other):  # type: ignore[override]
        return Bidegree(self.a + other[0], self.b + other[1])

    def __sub__(self, other):
        return Bidegree(self.a - other[0], self.b - other[1])

    def __neg__(self):
        return Bidegree(-self.a, -self.b)


@dataclass(frozen=True)
class RingSpec:
    n: int
    p: int
    field: Field = dc_field(default_factory=Field)

    def __post_init__(self):
        if self.n < 1 or self.p < 1:
            raise ValueError(f"need n >= 1 and p >= 1, got n={self.n}, p={self.p}")

    @property
    def nvars(self) -> int:
        return self.n + self.p

    def var_index(self, name: str) -> int:
        """Position of ``x<i>``/``y<j>`` (1-based names) in the exponent tuple."""
        block, idx = name[0], int(name[1:])
        if block == "x" and 1 <= idx <= self.n:
            return idx - 1
        if block == "y" and 1 <= idx <= self.p:
            return self.n + idx - 1
        raise ValueError(f"variable {name!r} not in ring with n={self.n}, p={self.p}")

    def var_name(self, k: int) -> str:
        return f"x{k + 1}" if k < self.n else f"y{k - self.n + 1}"

    def var_bidegree(self, k: int) -> Bidegree:
        return Bidegree(1, 0) if k < self.n else Bidegree(0, 1)

    def x(self, i: int) -> "BiPoly":
        return BiPoly.monomial(self, _unit(self.nvars, i - 1))

    def y(self, j: int) -> "BiPoly":
        return BiPoly.monomial(self, _unit(self.nvars, self.n + j - 1))

    def one(self) -> "BiPoly":
        return BiPoly.monomial(self, (0,) * self.nvars)

    def zero(self) -> "BiPoly":
        return BiPoly(self, {})

    def parse(self, text: str) -> "BiPoly":
        return parse_poly(self, text)


def _unit(length: int, k: int) -> Monomial:
    return tuple(1 if i == k else 0 for i in range(length))


def monomial_bidegree(mono: Monomial, n: int) -> Bidegree:
    return Bidegree(sum(mono[:n]), sum(mono[n:]))


@lru_cache(maxsize=None)
def _exponents(nvars: int, degree: int) -> tuple[Monomial, ...]:
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for k in combo:
            e[k] += 1
        out.append(tuple(e))
    return tuple(out)


def _grevlex_key(mono: Monomial):
    # Ascending order of the reversed exponent vector lists monomials of equal
    # total degree from largest to smallest in degree-reverse-lex.
    return tuple(reversed(mono))


@lru_cache(maxsize=None)
def _basis(n: int, p: int, a: int, b: int) -> tuple[Monomial, ...]:
    if a < 0 or b < 0:
        return ()
    monos = [xe + ye for xe in _exponents(n, a) for ye in _exponents(p, b)]
    monos.sort(key=_grevlex_key)
    return tuple(monos)


def monomial_basis(ring: RingSpec, d: Sequence[int]) -> tuple[Monomial, ...]:
    """All monomials of bidegree ``d``, in degree-reverse-lex order (largest first)."""
    return _basis(ring.n, ring.p, int(d[0]), int(d[1]))


@lru_cache(maxsize=None)
def _basis_index(n: int, p: int, a: int, b: int) -> dict[Monomial, int]:
    return {m: i for i, m in enumerate(_basis(n, p, a, b))}


def basis_index(ring: RingSpec, d: Sequence[int]) -> dict[Monomial, int]:
    return _basis_index(ring.n, ring.p, int(d[0]), int(d[1]))


def bidegree_piece_dim(ring: RingSpec, d: Sequence[int]) -> int:
    a, b = d
    if a < 0 or b < 0:
        return 0
    return comb(a + ring.n - 1, ring.n - 1) * comb(b + ring.p - 1, ring.p - 1)


class BiPoly:
    """Sparse polynomial over ``ring``; immutable once built.

    ``terms`` maps exponent tuples to nonzero normalized coefficients.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring: RingSpec, terms: Mapping[Monomial, object] | None = None):
        f = ring.field
        clean: dict[Monomial, object] = {}
        for mono, c in (terms or {}).items():
            if len(mono) != ring.nvars:
                raise ValueError(f"exponent vector {mono} has wrong length for ring")
            c = f(c)
            if c:
                clean[tuple(mono)] = c
        self.ring = ring
        self.terms = clean

    @classmethod
    def _raw(cls, ring: RingSpec, terms: dict) -> "BiPoly":
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        return obj

    @classmethod
    def monomial(cls, ring: RingSpec, mono: Monomial, coeff=1) -> "BiPoly":
        return cls(ring, {tuple(mono): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    @property
    def bidegree(self) -> Bidegree | None:
        """Common bidegree of all terms; ``None`` for zero or inhomogeneous polynomials."""
        degs = {monomial_bidegree(m, self.ring.n) for m in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def is_bihomogeneous(self, d: Sequence[int] | None = None) -> bool:
        if not self.terms:
            return True
        deg = self.bidegree
        if deg is None:
            return False
        return d is None or deg == tuple(d)

    def _check(self, other: "BiPoly"):
        if other.ring != self.ring:
            raise ValueError("ring mismatch")

    def _lift(self, other):
        if isinstance(other, BiPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return BiPoly(self.ring, {(0,) * self.ring.nvars: other})
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        f = self.ring.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = f(out.get(m, 0) + c)
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return BiPoly._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        f = self.ring.field
        return BiPoly._raw(self.ring, {m: f(-c) for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, BiPoly):
            return NotImplemented
        return poly_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def scale(self, c) -> "BiPoly":
        f = self.ring.field
        c = f(c)
        if not c:
            return self.ring.zero()
        return BiPoly._raw(self.ring, {m: f(v * c) for m, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self._lift(other)
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def x_degree_set(self) -> set[int]:
        return {sum(m[: self.ring.n]) for m in self.terms}

    def y_degree_set(self) -> set[int]:
        return {sum(m[self.ring.n :]) for m in self.terms}

    def vector(self, d: Sequence[int]) -> list:
        """Dense coefficient list on ``monomial_basis(ring, d)``."""
        idx = basis_index(self.ring, d)
        out = [0] * len(idx)
        for m, c in self.terms.items():
            out[idx[m]] = c
        return out

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"BiPoly({format_poly(self)!r})"


def poly_mul(f: BiPoly, g: BiPoly) -> BiPoly:
    if f.ring != g.ring:
        raise ValueError("ring mismatch")
    fld = f.ring.field
    out: dict[Monomial, object] = {}
    for m1, c1 in f.terms.items():
        for m2, c2 in g.terms.items():
            m = tuple(u + v for u, v in zip(m1, m2))
            out[m] = out.get(m, 0) + c1 * c2
    return BiPoly(f.ring, out) if not fld.is_prime else BiPoly._raw(
        f.ring, {m: c % fld.characteristic for m, c in out.items() if c % fld.characteristic}
    )


def coeff_of_variable(f: BiPoly, which: str | int) -> BiPoly:
    """Coefficient of a variable in ``f``, which must be linear in that variable's block.

    ``f == sum(var * coeff_of_variable(f, var))`` over the block's variables.
    """
    ring = f.ring
    k = ring.var_index(which) if isinstance(which, str) else which
    lo, hi = (0, ring.n) if k < ring.n else (ring.n, ring.nvars)
    out = {}
    for mono, c in f.terms.items():
        if sum(mono[lo:hi]) != 1:
            raise ValueError(f"{format_poly(f)} is not linear in the {'x' if lo == 0 else 'y'}-block")
        if mono[k] == 1:
            out[mono[:k] + (0,) + mono[k + 1 :]] = c
    return BiPoly._raw(ring, out)


def poly_det(rows: Sequence[Sequence[BiPoly]], ring: RingSpec) -> BiPoly:
    """Determinant by Laplace expansion along rows, memoized on column subsets."""
    k = len(rows)
    if k == 0:
        return ring.one()
    memo: dict[tuple[int, ...], BiPoly] = {}

    def rec(r: int, cols: tuple[int, ...]) -> BiPoly:
        if r == k:
            return ring.one()
        hit = memo.get(cols)
        if hit is not None:
            return hit
        acc = ring.zero()
        for pos, c in enumerate(cols):
            entry = rows[r][c]
            if entry.is_zero():
                continue
            sub = rec(r + 1, cols[:pos] + cols[pos + 1 :])
            term = entry * sub
            acc = acc - term if pos % 2 else acc + term
        memo[cols] = acc
        return acc

    return rec(0, tuple(range(len(rows[0]))))


_TOKEN = re.compile(r"\s*(?:(\d+)|([xy])(\d+)|(\^)|(\*)|([+-]))")


def parse_poly(ring: RingSpec, text: str) -> BiPoly:
    """Parse e.g. ``"x1*y1 + 2*x2^2*y3 - y4"``; a bare integer is a constant."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt or mt.end() == pos:
            raise ValueError(f"cannot parse polynomial {text!r} at position {pos}")
        pos = mt.end()
        if mt.group(1):
            tokens.append(("int", int(mt.group(1))))
        elif mt.group(2):
            tokens.append(("var", f"{mt.group(2)}{mt.group(3)}"))
        elif mt.group(4):
            tokens.append(("^", None))
        elif mt.group(5):
            tokens.append(("*", None))
        else:
            tokens.append(("sign", mt.group(6)))
    if not tokens:
        raise ValueError("empty polynomial")

    acc = ring.zero()
    i = 0
    first = True
    while i < len(tokens):
        sign = 1
        if tokens[i][0] == "sign":
            sign = -1 if tokens[i][1] == "-" else 1
            i += 1
        elif not first:
            raise ValueError(f"expected '+' or '-' in {text!r}")
        first = False
        coeff = 1
        exps = [0] * ring.nvars
        expect_factor = True
        if i < len(tokens) and tokens[i][0] == "int":
            coeff = tokens[i][1]
            i += 1
            if i < len(tokens) and tokens[i][0] == "*":
                i += 1
            else:
                expect_factor = False
        while expect_factor:
            if i >= len(tokens) or tokens[i][0] != "var":
                raise ValueError(f"expected a variable in {text!r}")
            k = ring.var_index(tokens[i][1])
            i += 1
            power = 1
            if i < len(tokens) and tokens[i][0] == "^":
                if i + 1 >= len(tokens) or tokens[i + 1][0] != "int" or tokens[i + 1][1] < 1:
                    raise ValueError(f"bad exponent in {text!r}")
                power = tokens[i + 1][1]
                i += 2
            exps[k] += power
            if i < len(tokens) and tokens[i][0] == "*":
                i += 1
            else:
                expect_factor = False
        acc = acc + BiPoly.monomial(ring, tuple(exps), sign * coeff)
    return acc


def format_poly(f: BiPoly) -> str:
    if f.is_zero():
        return "0"
    ring = f.ring
    parts = []
    for mono in sorted(f.terms, key=lambda m: (-sum(m), _grevlex_key(m))):
        c = ring.field.signed(f.terms[mono])
        factors = []
        for k, e in enumerate(mono):
            if e:
                factors.append(ring.var_name(k) + (f"^{e}" if e > 1 else ""))
        neg = c < 0
        c = -c if neg else c
        if not factors:
            body = str(c)
        elif c == 1:
            body = "*".join(factors)
        else:
            body = f"{c}*" + "*".join(factors)
        parts.append(("-" if neg else "+", body))
    head_sign, head = parts[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def linear_form(ring: RingSpec, coeffs: Iterable, block: str = "x") -> BiPoly:
    """``sum(c_i * x_i)`` (or the y-block)."""
    acc = ring.zero()
    for i, c in enumerate(coeffs, start=1):
        if c:
            acc = acc + (ring.x(i) if block == "x" else ring.y(i)).scale(c)
    return acc
