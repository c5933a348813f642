"""Sparse polynomials over Q(z_n) in variables X_1..X_d, W_1..W_m."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

from invar.cyclotomic import CycNum
from invar.errors import ValidationError
from invar.matrix import CycMatrix

Monomial = tuple[int, ...]


def grevlex_key(e: Monomial):
    """Sort key: larger key means larger monomial (graded reverse lexicographic)."""
    return (sum(e), tuple(-x for x in reversed(e)))


def monomials(nvars: int, degree: int) -> list[Monomial]:
    """All exponent vectors of the given total degree, largest (grevlex) first."""
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for v in combo:
            e[v] += 1
        out.append(tuple(e))
    out.sort(key=grevlex_key, reverse=True)
    return out


def bimonomials(d: int, m: int, a: int, b: int) -> list[Monomial]:
    xs = monomials(d, a) if d else ([()] if a == 0 else [])
    ws = monomials(m, b) if m else ([()] if b == 0 else [])
    out = [x + w for x in xs for w in ws]
    out.sort(key=grevlex_key, reverse=True)
    return out


@dataclass(frozen=True)
class PolySpace:
    x_vars: tuple[str, ...]
    w_vars: tuple[str, ...] = ()
    level: int = 1

    def __post_init__(self):
        names = self.x_vars + self.w_vars
        if len(set(names)) != len(names):
            raise ValidationError("variable names must be distinct")

    @staticmethod
    def standard(d: int, m: int = 0, level: int = 1) -> PolySpace:
        if d <= 3 and m <= 1:
            xs = ("X", "Y", "Z")[:d]
        else:
            xs = tuple(f"X{i + 1}" for i in range(d))
        ws = ("W",) if m == 1 else tuple(f"W{j + 1}" for j in range(m))
        return PolySpace(xs, ws, level)

    @property
    def d(self) -> int:
        return len(self.x_vars)

    @property
    def m(self) -> int:
        return len(self.w_vars)

    @property
    def nvars(self) -> int:
        return self.d + self.m

    @property
    def names(self) -> tuple[str, ...]:
        return self.x_vars + self.w_vars

    def bidegree(self, e: Monomial) -> tuple[int, int]:
        return sum(e[: self.d]), sum(e[self.d:])


class Poly:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to nonzero CycNum."""

    __slots__ = ("space", "terms")

    def __init__(self, space: PolySpace, terms: dict | None = None):
        self.space = space
        self.terms: dict[Monomial, CycNum] = {e: c for e, c in (terms or {}).items() if c}

    # -- construction -------------------------------------------------
    @staticmethod
    def constant(space: PolySpace, c) -> Poly:
        c = _scalar(c, space.level)
        return Poly(space, {(0,) * space.nvars: c})

    @staticmethod
    def monomial(space: PolySpace, e: Monomial, c=1) -> Poly:
        if len(e) != space.nvars:
            raise ValidationError("exponent length does not match the space")
        return Poly(space, {tuple(e): _scalar(c, space.level)})

    @staticmethod
    def var(space: PolySpace, i: int) -> Poly:
        e = [0] * space.nvars
        e[i] = 1
        return Poly.monomial(space, tuple(e))

    @staticmethod
    def linear(space: PolySpace, coeffs: Sequence) -> Poly:
        """sum coeffs[i] * (i-th variable)."""
        terms = {}
        for i, c in enumerate(coeffs):
            c = _scalar(c, space.level)
            if c:
                e = [0] * space.nvars
                e[i] = 1
                terms[tuple(e)] = c
        return Poly(space, terms)

    # -- arithmetic ---------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: Poly) -> Poly:
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            out[e] = c if v is None else v + c
        return Poly(self.space, out)

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __neg__(self) -> Poly:
        return Poly(self.space, {e: -c for e, c in self.terms.items()})

    def scale(self, c) -> Poly:
        c = _scalar(c, self.space.level)
        if not c:
            return Poly(self.space)
        return Poly(self.space, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        out: dict[Monomial, CycNum] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = c1 * c2
                w = out.get(e)
                out[e] = v if w is None else w + v
        return Poly(self.space, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int) -> Poly:
        out = Poly.constant(self.space, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- inspection ---------------------------------------------------
    def sorted_terms(self) -> list[tuple[Monomial, CycNum]]:
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def leading(self) -> tuple[Monomial, CycNum]:
        e = max(self.terms, key=grevlex_key)
        return e, self.terms[e]

    def monic(self) -> Poly:
        _, c = self.leading()
        return self.scale(c.inv())

    def bidegrees(self) -> set[tuple[int, int]]:
        return {self.space.bidegree(e) for e in self.terms}

    def evaluate(self, point: Sequence) -> CycNum:
        pt = [_scalar(p, self.space.level) for p in point]
        acc = CycNum.zero(self.space.level)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(pt, e):
                if k:
                    v = v * x ** k
            acc = acc + v
        return acc

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        return format_poly(self)


def _scalar(c, level: int) -> CycNum:
    if isinstance(c, CycNum):
        return c.lift(level) if c.level != level else c
    return CycNum.from_rational(Fraction(c), level)


def format_monomial(e: Monomial, names: Sequence[str]) -> str:
    parts = []
    for n, k in zip(names, e):
        if k == 1:
            parts.append(n)
        elif k > 1:
            parts.append(f"{n}^{k}")
    return "*".join(parts)


def format_poly(p: Poly, names: Sequence[str] | None = None) -> str:
    names = names or p.space.names
    if not p.terms:
        return "0"
    out = ""
    for i, (e, c) in enumerate(p.sorted_terms()):
        mono = format_monomial(e, names)
        neg = c.is_rational() and c.coeffs[0] < 0
        mag = -c if neg else c
        if not mono:
            body = str(mag) if mag.is_rational() else f"({mag})"
        elif mag.is_one():
            body = mono
        elif mag.is_rational():
            body = f"{mag}*{mono}"
        else:
            body = f"({mag})*{mono}"
        if i == 0:
            out = ("-" if neg else "") + body
        else:
            out += (" - " if neg else " + ") + body
    return out


class SpanTracker:
    """Incremental echelon basis of sparse vectors (dicts keyed by sortable columns).

    Each stored row has a distinct leading column (its largest key under
    ``key``) with coefficient 1.  With ``track=True`` every row also records
    its expression in terms of the labels of the inserted vectors, which
    yields kernel vectors for dependent insertions.
    """

    def __init__(self, level: int, key=grevlex_key, track: bool = False):
        self.level = level
        self.key = key
        self.track = track
        self.rows: dict = {}
        self.combos: dict = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec: dict, combo: dict | None = None):
        v = dict(vec)
        cmb = dict(combo or {})
        while v:
            lead = max(v, key=self.key)
            row = self.rows.get(lead)
            if row is None:
                break
            f = v[lead]
            for col, c in row.items():
                nv = v.get(col)
                nv = -(f * c) if nv is None else nv - f * c
                if nv:
                    v[col] = nv
                else:
                    v.pop(col, None)
            if self.track:
                for lab, c in self.combos[lead].items():
                    nv = cmb.get(lab)
                    nv = -(f * c) if nv is None else nv - f * c
                    if nv:
                        cmb[lab] = nv
                    else:
                        cmb.pop(lab, None)
        return v, cmb

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)[0]

    def add(self, vec: dict, label=None):
        """Insert; returns (True, None) if independent, else (False, kernel combination)."""
        start = {label: CycNum.one(self.level)} if self.track else None
        v, cmb = self.reduce(vec, start)
        if not v:
            return False, cmb
        lead = max(v, key=self.key)
        inv = v[lead].inv()
        self.rows[lead] = {c: x * inv for c, x in v.items()}
        if self.track:
            self.combos[lead] = {lab: x * inv for lab, x in cmb.items()}
        return True, None


class Action:
    """Right action f -> f o g of a representation on polynomials: X_i -> sum_j M_ij X_j."""

    def __init__(self, space: PolySpace, images: Sequence[CycMatrix]):
        if any(m.rows != space.nvars for m in images):
            raise ValidationError("representation dimension does not match the number of variables")
        self.space = space
        self.images = [m.lift(space.level) for m in images]
        self._monomial = [m.is_monomial() for m in self.images]
        self._linear: dict = {}
        self._powers: dict = {}

    def _lin(self, g: int, i: int) -> Poly:
        key = (g, i)
        p = self._linear.get(key)
        if p is None:
            p = Poly.linear(self.space, self.images[g].row(i))
            self._linear[key] = p
        return p

    def _pow(self, g: int, i: int, k: int) -> Poly:
        key = (g, i, k)
        p = self._powers.get(key)
        if p is None:
            p = self._lin(g, i) if k == 1 else self._pow(g, i, k - 1) * self._lin(g, i)
            self._powers[key] = p
        return p

    def apply_monomial(self, e: Monomial, g: int) -> dict[Monomial, CycNum]:
        M = self.images[g]
        n = len(e)
        if self._monomial[g]:
            coeff = CycNum.one(self.space.level)
            out = [0] * n
            for i, k in enumerate(e):
                if k:
                    row = M.row(i)
                    j = next(t for t, x in enumerate(row) if x)
                    out[j] += k
                    c = row[j]
                    if not c.is_one():
                        coeff = coeff * c ** k
            return {tuple(out): coeff}
        acc = Poly.constant(self.space, 1)
        for i, k in enumerate(e):
            if k:
                acc = acc * self._pow(g, i, k)
        return acc.terms

    def apply(self, f: Poly, g: int) -> Poly:
        out: dict[Monomial, CycNum] = {}
        for e, c in f.terms.items():
            for e2, c2 in self.apply_monomial(e, g).items():
                v = c * c2
                w = out.get(e2)
                out[e2] = v if w is None else w + v
        return Poly(self.space, out)

    def is_invariant(self, f: Poly, chi: Sequence[CycNum] | None = None) -> bool:
        for g in range(len(self.images)):
            target = f if chi is None else f.scale(chi[g])
            if self.apply(f, g) != target:
                return False
        return True


def iter_exponents(bound: Sequence[int]) -> Iterable[Monomial]:
    """All vectors 0 <= e <= bound componentwise."""
    if not bound:
        yield ()
        return
    for head in range(bound[0] + 1):
        for tail in iter_exponents(bound[1:]):
            yield (head,) + tail
