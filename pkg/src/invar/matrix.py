"""Dense matrices over Q(z_n) with exact Gaussian elimination."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from invar.cyclotomic import CycNum
from invar.errors import BudgetExceeded, ValidationError


def _as_cyc(x, level: int) -> CycNum:
    if isinstance(x, CycNum):
        return x.lift(level)
    return CycNum.from_rational(Fraction(x), level)


class CycMatrix:
    """Immutable rows x cols matrix with CycNum entries, stored row-major."""

    __slots__ = ("rows", "cols", "entries", "level", "_hash")

    def __init__(self, rows: int, cols: int, entries: Sequence[CycNum], level: int | None = None):
        if len(entries) != rows * cols:
            raise ValidationError("entry count does not match shape")
        if level is None:
            if not entries:
                raise ValidationError("level required for an empty matrix")
            level = entries[0].level
        self.rows = rows
        self.cols = cols
        self.entries = tuple(entries)
        self.level = level
        self._hash = None

    @staticmethod
    def from_rows(rows, level: int = 1) -> CycMatrix:
        rows = [list(r) for r in rows]
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise ValidationError("ragged or empty matrix")
        ents = [_as_cyc(x, level) for r in rows for x in r]
        return CycMatrix(len(rows), len(rows[0]), ents, level)

    @staticmethod
    def identity(n: int, level: int = 1) -> CycMatrix:
        z, o = CycNum.zero(level), CycNum.one(level)
        return CycMatrix(n, n, [o if i == j else z for i in range(n) for j in range(n)], level)

    @staticmethod
    def zeros(rows: int, cols: int, level: int = 1) -> CycMatrix:
        return CycMatrix(rows, cols, [CycNum.zero(level)] * (rows * cols), level)

    @staticmethod
    def diag(values, level: int = 1) -> CycMatrix:
        vals = [_as_cyc(v, level) for v in values]
        n = len(vals)
        z = CycNum.zero(level)
        return CycMatrix(n, n, [vals[i] if i == j else z for i in range(n) for j in range(n)], level)

    @staticmethod
    def block_diag(a: CycMatrix, b: CycMatrix) -> CycMatrix:
        if a.level != b.level:
            raise ValidationError("level mismatch in block_diag")
        n = a.rows + b.rows
        m = a.cols + b.cols
        z = CycNum.zero(a.level)
        ents = []
        for i in range(n):
            for j in range(m):
                if i < a.rows and j < a.cols:
                    ents.append(a[i, j])
                elif i >= a.rows and j >= a.cols:
                    ents.append(b[i - a.rows, j - a.cols])
                else:
                    ents.append(z)
        return CycMatrix(n, m, ents, a.level)

    def __getitem__(self, ij) -> CycNum:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[CycNum, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def tolist(self) -> list[list[CycNum]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def lift(self, level: int) -> CycMatrix:
        if level == self.level:
            return self
        return CycMatrix(self.rows, self.cols, [e.lift(level) for e in self.entries], level)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    # -- arithmetic ---------------------------------------------------
    def _check_same_shape(self, other: CycMatrix):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValidationError("shape mismatch")
        if self.level != other.level:
            raise ValidationError("level mismatch")

    def __add__(self, other: CycMatrix) -> CycMatrix:
        self._check_same_shape(other)
        return CycMatrix(self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)], self.level)

    def __sub__(self, other: CycMatrix) -> CycMatrix:
        self._check_same_shape(other)
        return CycMatrix(self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)], self.level)

    def __neg__(self) -> CycMatrix:
        return CycMatrix(self.rows, self.cols, [-a for a in self.entries], self.level)

    def __mul__(self, other):
        if isinstance(other, CycMatrix):
            if self.cols != other.rows:
                raise ValidationError("shape mismatch in product")
            if self.level != other.level:
                raise ValidationError("level mismatch")
            n, k, m = self.rows, self.cols, other.cols
            a, b = self.entries, other.entries
            z = CycNum.zero(self.level)
            out = []
            for i in range(n):
                arow = a[i * k:(i + 1) * k]
                nz = [(t, x) for t, x in enumerate(arow) if x]
                for j in range(m):
                    acc = z
                    for t, x in nz:
                        y = b[t * m + j]
                        if y:
                            acc = acc + x * y
                    out.append(acc)
            return CycMatrix(n, m, out, self.level)
        if isinstance(other, (CycNum, int, Fraction)):
            return CycMatrix(self.rows, self.cols, [e * other for e in self.entries], self.level)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (CycNum, int, Fraction)):
            return self * other
        return NotImplemented

    def apply(self, v: Sequence[CycNum]) -> tuple[CycNum, ...]:
        if len(v) != self.cols:
            raise ValidationError("dimension mismatch")
        z = CycNum.zero(self.level)
        out = []
        for i in range(self.rows):
            acc = z
            for x, y in zip(self.row(i), v):
                if x and y:
                    acc = acc + x * y
            out.append(acc)
        return tuple(out)

    def transpose(self) -> CycMatrix:
        return CycMatrix(self.cols, self.rows, [self[i, j] for j in range(self.cols) for i in range(self.rows)], self.level)

    def trace(self) -> CycNum:
        if not self.is_square:
            raise ValidationError("trace of non-square matrix")
        acc = CycNum.zero(self.level)
        for i in range(self.rows):
            acc = acc + self[i, i]
        return acc

    def is_identity(self) -> bool:
        for i in range(self.rows):
            for j in range(self.cols):
                e = self[i, j]
                if (i == j and not e.is_one()) or (i != j and e):
                    return False
        return self.is_square

    def power(self, e: int) -> CycMatrix:
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        result = CycMatrix.identity(self.rows, self.level)
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- elimination --------------------------------------------------
    def echelon(self) -> tuple[list[list[CycNum]], list[int], CycNum]:
        """Row echelon form, pivot columns and determinant factor (for square input)."""
        m = [list(self.row(i)) for i in range(self.rows)]
        pivots = []
        det = CycNum.one(self.level)
        r = 0
        for c in range(self.cols):
            p = next((i for i in range(r, self.rows) if m[i][c]), None)
            if p is None:
                continue
            if p != r:
                m[r], m[p] = m[p], m[r]
                det = -det
            piv = m[r][c]
            det = det * piv
            inv = piv.inv()
            m[r] = [x * inv for x in m[r]]
            for i in range(self.rows):
                if i != r and m[i][c]:
                    f = m[i][c]
                    m[i] = [x - f * y for x, y in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return m, pivots, det

    def rank(self) -> int:
        return len(self.echelon()[1])

    def det(self) -> CycNum:
        if not self.is_square:
            raise ValidationError("determinant of non-square matrix")
        _, pivots, det = self.echelon()
        return det if len(pivots) == self.rows else CycNum.zero(self.level)

    def nullspace(self) -> list[tuple[CycNum, ...]]:
        """Basis of {v : M v = 0}, one vector per free column."""
        m, pivots, _ = self.echelon()
        z, o = CycNum.zero(self.level), CycNum.one(self.level)
        free = [c for c in range(self.cols) if c not in pivots]
        basis = []
        for f in free:
            v = [z] * self.cols
            v[f] = o
            for r, c in enumerate(pivots):
                v[c] = -m[r][f]
            basis.append(tuple(v))
        return basis

    def inverse(self) -> CycMatrix:
        if not self.is_square:
            raise ValidationError("inverse of non-square matrix")
        n = self.rows
        aug = CycMatrix(
            n, 2 * n,
            [x for i in range(n) for x in self.row(i) + CycMatrix.identity(n, self.level).row(i)],
            self.level,
        )
        m, pivots, _ = aug.echelon()
        if pivots[:n] != list(range(n)):
            raise ZeroDivisionError("singular matrix")
        return CycMatrix(n, n, [x for i in range(n) for x in m[i][n:]], self.level)

    def order(self, cap: int) -> int:
        if not self.is_square:
            raise ValidationError("order of non-square matrix")
        cur = self
        for t in range(1, cap + 1):
            if cur.is_identity():
                return t
            cur = cur * self
        raise BudgetExceeded(f"matrix order exceeds cap {cap}")

    def is_monomial(self) -> bool:
        """Exactly one nonzero entry in each row (and hence column, if invertible)."""
        return all(sum(1 for x in self.row(i) if x) == 1 for i in range(self.rows))

    # -- comparison and display ---------------------------------------
    def __eq__(self, other):
        if not isinstance(other, CycMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.entries))
        return self._hash

    def __repr__(self):
        return f"CycMatrix({self.tolist_str()})"

    def tolist_str(self) -> list[list[str]]:
        return [[str(x) for x in self.row(i)] for i in range(self.rows)]


def mat_ops(M: CycMatrix, N: CycMatrix | None, op: str):
    if op == "mul":
        return M * N
    if op == "sub":
        return M - N
    if op == "inverse":
        return M.inverse()
    if op == "det":
        return M.det()
    if op == "rank":
        return M.rank()
    raise ValidationError(f"unknown matrix operation {op!r}")


def mat_order(M: CycMatrix, cap: int) -> int:
    return M.order(cap)
