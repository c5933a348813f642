"""Named example actions: groups, basic actions beta, extra representations rho."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from invar.cyclotomic import CycNum
from invar.errors import ValidationError
from invar.groups import (
    MatrixGroup,
    Representation,
    close_group,
    defining_rep,
    det_rep,
    product_rep,
    regular_rep,
    trivial_rep,
)
from invar.matrix import CycMatrix
from invar.toric import AbelianGrading


@dataclass
class Setting:
    name: str
    group: MatrixGroup
    beta: Representation
    rho: Representation | None = None
    grading: AbelianGrading | None = None
    irreducibles: list[Representation] = field(default_factory=list)
    params: dict = field(default_factory=dict)

    @property
    def level(self) -> int:
        return self.group.level


def _perm(p: list[int]) -> CycMatrix:
    n = len(p)
    return CycMatrix.from_rows([[int(p[i] == j) for j in range(n)] for i in range(n)])


def _abelian_characters(grading: AbelianGrading, G: MatrixGroup) -> list[Representation]:
    level = G.level
    out = []
    for lam in grading.elements():
        imgs = [CycMatrix.diag([CycNum.zeta(level, lam[t] * (level // k))], level)
                for t, k in enumerate(grading.factors)]
        out.append(Representation.from_generators(G, imgs, "chi" + ",".join(map(str, lam))))
    return out


def toric_setting(name: str, grading: AbelianGrading, params=None) -> Setting:
    G, beta, rho = grading.representations()
    irr = _abelian_characters(grading, G) if len(G) == grading.order else []
    return Setting(name, G, beta, rho if grading.m else None, grading, irr, params or {})


def cyclic(k: int, weights: list[int], rho: list[int] | None = None) -> Setting:
    g = AbelianGrading.cyclic(k, weights, rho or [])
    return toric_setting("cyclic", g, {"k": k, "weights": weights, "rho": rho})


def cyclicone(k: int, l: int) -> Setting:
    s = cyclic(k, [1], [l])
    s.name, s.params = "cyclicone", {"k": k, "l": l}
    return s


def asingularity(k: int, l: int) -> Setting:
    s = cyclic(k, [1, -1], [l])
    s.name, s.params = "asingularity", {"k": k, "l": l}
    return s


def toric11() -> Setting:
    s = cyclic(2, [1, 1], [1])
    s.name, s.params = "toric11.1", {}
    return s


def klein(variant: int) -> Setting:
    if variant not in (1, 2):
        raise ValidationError("klein variant must be 1 or 2")
    w = (1, 0) if variant == 1 else (1, 1)
    g = AbelianGrading((2, 2), ((1, 0), (0, 1)), (w,))
    return toric_setting(f"klein-{variant}", g, {"variant": variant})


def cyclic4reflection() -> Setting:
    s = cyclic(4, [2, 1], [1])
    s.name, s.params = "cyclic4reflection", {}
    return s


def _sym3_group() -> MatrixGroup:
    return close_group([_perm([1, 0, 2]), _perm([0, 2, 1])])


def _s3_standard(G: MatrixGroup) -> Representation:
    return Representation.from_generators(
        G, [CycMatrix.from_rows([[0, 1], [1, 0]]), CycMatrix.from_rows([[1, -1], [0, -1]])], "standard")


def sym3(rho: str = "none") -> Setting:
    G = _sym3_group()
    beta = defining_rep(G)
    sign = det_rep(beta)
    sign.name = "sign"
    choices = {
        "none": None,
        "sign": sign,
        "natural": defining_rep(G),
        "trivial": trivial_rep(G, 1),
        "standard": _s3_standard(G),
        "regular": regular_rep(G),
    }
    if rho not in choices:
        raise ValidationError(f"unknown rho {rho!r} for sym3")
    irr = [trivial_rep(G, 1), sign, _s3_standard(G)]
    return Setting("sym3", G, beta, choices[rho], None, irr, {"rho": rho})


S3_SIX = [
    [[1, 0], [0, 1]],
    [[0, 1], [1, 0]],
    [[-1, 0], [-1, 1]],
    [[1, -1], [0, -1]],
    [[-1, 1], [-1, 0]],
    [[0, -1], [1, -1]],
]


def s3_reflection(rho: str = "none") -> Setting:
    G = close_group([CycMatrix.from_rows(m) for m in S3_SIX])
    beta = defining_rep(G)
    det = det_rep(beta)
    det.name = "det"
    choices = {"none": None, "det": det, "sign": det, "natural": defining_rep(G), "trivial": trivial_rep(G, 1)}
    if rho not in choices:
        raise ValidationError(f"unknown rho {rho!r} for s3-reflection")
    irr = [trivial_rep(G, 1), det, defining_rep(G)]
    return Setting("s3-reflection", G, beta, choices[rho], None, irr, {"rho": rho})


def regular_cyclic(k: int) -> Setting:
    """Z/k acting on one variable by z, with the regular representation on W_0..W_{k-1}."""
    base = cyclic(k, [1])
    G = base.group
    s = Setting("regular", G, base.beta, regular_rep(G), None, base.irreducibles, {"k": k})
    return s


BUILTINS: dict[str, Callable[..., Setting]] = {
    "cyclic": cyclic,
    "cyclicone": cyclicone,
    "asingularity": asingularity,
    "toric11.1": toric11,
    "klein": klein,
    "cyclic4reflection": cyclic4reflection,
    "sym3": sym3,
    "s3-reflection": s3_reflection,
    "regular": regular_cyclic,
}


def named_rep(G: MatrixGroup, beta: Representation, text: str) -> Representation | None:
    """trivial(m), det, sign, regular, defining, none, product(a, b)."""
    text = text.strip()
    if text in ("none", ""):
        return None
    if text in ("det", "sign"):
        return det_rep(beta)
    if text == "regular":
        return regular_rep(G)
    if text in ("defining", "natural", "beta"):
        return defining_rep(G)
    if text.startswith("trivial"):
        inner = text[len("trivial"):].strip("() ")
        return trivial_rep(G, int(inner) if inner else 1)
    if text.startswith("product(") and text.endswith(")"):
        body = text[len("product("):-1]
        depth, cut = 0, None
        for i, ch in enumerate(body):
            depth += ch == "("
            depth -= ch == ")"
            if ch == "," and depth == 0:
                cut = i
                break
        if cut is None:
            raise ValidationError(f"product needs two arguments: {text!r}")
        a = named_rep(G, beta, body[:cut])
        b = named_rep(G, beta, body[cut + 1:])
        if a is None or b is None:
            raise ValidationError("product of an empty representation")
        return product_rep(a, b)
    raise ValidationError(f"unknown representation {text!r}")
