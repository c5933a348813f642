"""Plain-text session files.

Grammar (one ``key = value`` per line, ``#`` starts a comment)::

    level = 4                     # cyclotomic level n, entries live in Q(z_n)
    beta  = [-1, 0; 0, z]         # one generator per line, rows split by ';'
    beta  = [1, 0; 0, -1]
    rho   = [z^2]                 # either one matrix per beta generator ...
    rho   = det                   # ... or a named construction
    x_names = X1, X2              # optional variable names
    w_names = W

Entries are sums of terms ``c``, ``c*z^i``, ``z^i`` or ``zN^i`` with ``c`` an
integer or ``a/b``.  ``z`` is the primitive root of the declared level;
``zN`` is a primitive N-th root, which must divide the level.  Named
representations: ``trivial(m)``, ``det``, ``sign``, ``regular``,
``defining``, ``product(A, B)``, ``none``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from invar.cyclotomic import CycNum
from invar.errors import ValidationError
from invar.matrix import CycMatrix

_TERM = re.compile(r"^(?:(?P<c>\d+(?:/\d+)?)\s*\*?\s*)?(?P<z>z(?P<n>\d+)?(?:\^(?P<e>-?\d+))?)?$")


def parse_entry(text: str, level: int) -> CycNum:
    s = text.replace(" ", "")
    if not s:
        raise ValidationError("empty matrix entry")
    pieces = re.findall(r"[+-]?(?:\^[+-]?\d+|[^+\-])+", s)
    if "".join(pieces) != s:
        raise ValidationError(f"cannot parse entry {text!r}")
    acc = CycNum.zero(level)
    for p in pieces:
        sign = -1 if p.startswith("-") else 1
        body = p.lstrip("+-")
        m = _TERM.match(body)
        if not m or not body or (m.group("c") is None and m.group("z") is None):
            raise ValidationError(f"cannot parse term {p!r} in {text!r}")
        c = Fraction(m.group("c")) if m.group("c") else Fraction(1)
        term = CycNum.from_rational(sign * c, level)
        if m.group("z"):
            n = int(m.group("n")) if m.group("n") else level
            if n <= 0 or level % n:
                raise ValidationError(f"root of unity order {n} does not divide level {level}")
            e = int(m.group("e")) if m.group("e") else 1
            term = term * CycNum.zeta(level, e * (level // n))
        acc = acc + term
    return acc


def parse_matrix(text: str, level: int) -> CycMatrix:
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ValidationError(f"matrix must be written in brackets: {text!r}")
    rows = [r for r in s[1:-1].split(";")]
    data = [[parse_entry(x, level) for x in r.split(",")] for r in rows]
    if len({len(r) for r in data}) != 1:
        raise ValidationError("ragged matrix rows")
    if len(data) != len(data[0]):
        raise ValidationError("generators must be square matrices")
    return CycMatrix.from_rows(data, level)


def parse_vector(text: str, level: int) -> tuple[CycNum, ...]:
    return tuple(parse_entry(x, level) for x in text.split(","))


@dataclass
class SessionFile:
    level: int
    beta: list[CycMatrix]
    rho: list[CycMatrix] | None = None
    rho_name: str | None = None
    x_names: tuple[str, ...] | None = None
    w_names: tuple[str, ...] | None = None
    extra: dict = field(default_factory=dict)


def parse_session(text: str) -> SessionFile:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValidationError(f"expected key = value: {raw!r}")
        k, v = line.split("=", 1)
        lines.append((k.strip(), v.strip()))
    levels = [v for k, v in lines if k == "level"]
    if len(levels) != 1:
        raise ValidationError("declare the level exactly once")
    try:
        level = int(levels[0])
    except ValueError:
        raise ValidationError(f"bad level {levels[0]!r}") from None
    if level < 1:
        raise ValidationError("level must be positive")
    beta, rho, rho_name, extra = [], [], None, {}
    xn = wn = None
    for k, v in lines:
        if k == "level":
            continue
        if k == "beta":
            beta.append(parse_matrix(v, level))
        elif k == "rho":
            if v.startswith("["):
                rho.append(parse_matrix(v, level))
            else:
                if rho_name is not None:
                    raise ValidationError("rho named twice")
                rho_name = v
        elif k == "x_names":
            xn = tuple(s.strip() for s in v.split(","))
        elif k == "w_names":
            wn = tuple(s.strip() for s in v.split(","))
        else:
            raise ValidationError(f"unknown key {k!r}")
    if not beta:
        raise ValidationError("no beta generators given")
    if len({M.rows for M in beta}) != 1:
        raise ValidationError("beta generators have different sizes")
    if rho and rho_name:
        raise ValidationError("rho given both as matrices and by name")
    if rho and len(rho) != len(beta):
        raise ValidationError("need one rho matrix per beta generator")
    if rho and len({M.rows for M in rho}) != 1:
        raise ValidationError("rho generators have different sizes")
    return SessionFile(level, beta, rho or None, rho_name, xn, wn, extra)
