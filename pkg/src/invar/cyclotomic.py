"""Exact arithmetic in the cyclotomic field Q(z), z a primitive n-th root of unity.

Elements are stored in the power basis 1, z, ..., z^(phi(n)-1) modulo the n-th
cyclotomic polynomial, so equal values have equal coefficient tuples.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

from invar.errors import ValidationError

Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b) if a and b else 0


def _poly_exact_div(num: list[int], den: tuple[int, ...]) -> list[int]:
    # den is monic; division must be exact
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            out[i - dd] = c
            for j in range(dd + 1):
                num[i - dd + j] -= c * den[j]
    if any(num[:dd]):
        raise ArithmeticError("non-exact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValidationError(f"cyclotomic level must be positive, got {n}")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_exact_div(poly, cyclotomic_poly(d))
    return tuple(poly)


class _Field:
    __slots__ = ("n", "deg", "powers", "zero", "one")

    def __init__(self, n: int):
        phi = cyclotomic_poly(n)
        deg = len(phi) - 1
        self.n = n
        self.deg = deg
        # powers[j] = x^j mod Phi_n, enough for products and conjugation
        powers = []
        cur = [0] * deg
        cur[0] = 1
        for _ in range(max(n, 2 * deg - 1)):
            powers.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for i in range(deg):
                    cur[i] -= top * phi[i]
        self.powers = powers
        self.zero = CycNum(n, (_ZERO,) * deg)
        self.one = CycNum(n, (_ONE,) + (_ZERO,) * (deg - 1))

    def reduce(self, coeffs) -> tuple[Fraction, ...]:
        deg = self.deg
        out = [Fraction(c) for c in coeffs[:deg]] + [_ZERO] * max(0, deg - len(coeffs))
        n = self.n
        for j in range(deg, len(coeffs)):
            c = coeffs[j]
            if c:
                row = self.powers[j % n] if j >= len(self.powers) else self.powers[j]
                for i, r in enumerate(row):
                    if r:
                        out[i] += c * r
        return tuple(out)


@lru_cache(maxsize=None)
def _field(n: int) -> _Field:
    return _Field(n)


class CycNum:
    """An element of Q(z_n).  Immutable and hashable."""

    __slots__ = ("level", "coeffs", "_hash")

    def __init__(self, level: int, coeffs: tuple[Fraction, ...]):
        # trusted constructor: coeffs must already be reduced
        self.level = level
        self.coeffs = coeffs
        self._hash = None

    # -- construction -------------------------------------------------
    @staticmethod
    def from_rational(q, level: int = 1) -> CycNum:
        f = _field(level)
        return CycNum(level, (Fraction(q),) + (_ZERO,) * (f.deg - 1))

    @staticmethod
    def from_poly(coeffs, level: int) -> CycNum:
        """Reduce sum(coeffs[i] * z^i) modulo Phi_level."""
        return CycNum(level, _field(level).reduce(list(coeffs)))

    @staticmethod
    def zeta(level: int, power: int = 1) -> CycNum:
        f = _field(level)
        return CycNum(level, tuple(Fraction(c) for c in f.powers[power % level]))

    @staticmethod
    def zero(level: int) -> CycNum:
        return _field(level).zero

    @staticmethod
    def one(level: int) -> CycNum:
        return _field(level).one

    # -- predicates ---------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and self.is_rational()

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValidationError(f"{self} is not rational")
        return self.coeffs[0]

    # -- arithmetic ---------------------------------------------------
    def _coerce(self, other) -> CycNum:
        if isinstance(other, CycNum):
            if other.level != self.level:
                raise ValidationError(f"level mismatch: {self.level} vs {other.level}")
            return other
        if isinstance(other, (int, Fraction)):
            return CycNum.from_rational(other, self.level)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycNum(self.level, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycNum(self.level, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return CycNum(self.level, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not any(b[1:]):
            s = b[0]
            return CycNum(self.level, tuple(x * s for x in a))
        if not any(a[1:]):
            s = a[0]
            return CycNum(self.level, tuple(x * s for x in b))
        deg = len(a)
        conv = [_ZERO] * (2 * deg - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        conv[i + j] += x * y
        return CycNum(self.level, _field(self.level).reduce(conv))

    __rmul__ = __mul__

    def inv(self) -> CycNum:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if self.is_rational():
            return CycNum.from_rational(1 / self.coeffs[0], self.level)
        phi = [Fraction(c) for c in cyclotomic_poly(self.level)]
        s = _poly_inverse_mod(list(self.coeffs), phi)
        return CycNum(self.level, _field(self.level).reduce(s))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inv()

    def __pow__(self, e: int) -> CycNum:
        base = self if e >= 0 else self.inv()
        e = abs(e)
        result = CycNum.one(self.level)
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conj(self) -> CycNum:
        """Complex conjugation, z -> z^-1."""
        if self.is_rational():
            return self
        f = _field(self.level)
        n = self.level
        out = [_ZERO] * f.deg
        for i, c in enumerate(self.coeffs):
            if c:
                for t, r in enumerate(f.powers[(n - i) % n]):
                    if r:
                        out[t] += c * r
        return CycNum(n, tuple(out))

    def lift(self, level: int) -> CycNum:
        """Embed into Q(z_level); requires self.level | level."""
        if level == self.level:
            return self
        if level % self.level:
            raise ValidationError(f"cannot embed level {self.level} into level {level}")
        step = level // self.level
        coeffs = [_ZERO] * ((len(self.coeffs) - 1) * step + 1)
        for i, c in enumerate(self.coeffs):
            coeffs[i * step] = c
        return CycNum.from_poly(coeffs, level)

    # -- comparison and display ---------------------------------------
    def __eq__(self, other):
        if isinstance(other, CycNum):
            return self.level == other.level and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.level, self.coeffs))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"CycNum({self.level}, {self})"

    def __str__(self):
        return format_cyc(self)


def format_cyc(x: CycNum, var: str = "z") -> str:
    parts = []
    for i, c in enumerate(x.coeffs):
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mono:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    if not parts:
        return "0"
    head_sign, head = parts[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def _poly_trim(p: list) -> list:
    while p and not p[-1]:
        p.pop()
    return p


def _poly_divmod(a: list, b: list) -> tuple[list, list]:
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    q = [_ZERO] * max(1, len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            c = c / lead
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] -= c * b[j]
    return _poly_trim(q), _poly_trim(a[:db] if db else [])


def _poly_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _poly_trim(out)


def _poly_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    a = a + [_ZERO] * (n - len(a))
    b = b + [_ZERO] * (n - len(b))
    return _poly_trim([x - y for x, y in zip(a, b)])


def _poly_inverse_mod(a: list, m: list) -> list:
    # extended Euclid: find s with s*a = 1 mod m
    r0, r1 = _poly_trim(list(m)), _poly_trim(list(a))
    s0, s1 = [], [_ONE]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
    if not r1:
        raise ZeroDivisionError("element is not invertible modulo the cyclotomic polynomial")
    c = r1[0]
    return [x / c for x in s1]


def cyc_arith(a: CycNum, b: CycNum, op: str) -> CycNum:
    if a.level != b.level:
        raise ValidationError(f"level mismatch: {a.level} vs {b.level}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValidationError(f"unknown operation {op!r}")


def cyc_inv(a: CycNum) -> CycNum:
    return a.inv()
