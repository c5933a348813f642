"""Pseudo-reflections, reflection subgroups, mirrors and fundamental groups of regular loci."""

from __future__ import annotations

from dataclasses import dataclass, field

from invar.cyclotomic import CycNum
from invar.errors import ValidationError
from invar.groups import (
    AbstractQuotient,
    Representation,
    Subgroup,
    generated_subgroup,
    product_rep,
    quotient,
)
from invar.matrix import CycMatrix

OVER_C_NOTICE = "criterion proven for K = C; applied verbatim over Q(z_n)"


def is_reflection(g: CycMatrix) -> bool:
    """g != I and g - I has rank one (a pseudo-reflection of any order)."""
    if not g.is_square:
        raise ValidationError("reflection test needs a square matrix")
    if g.is_identity():
        return False
    return (g - CycMatrix.identity(g.rows, g.level)).rank() == 1


@dataclass(frozen=True)
class ReflectionReport:
    reflections: tuple[int, ...]
    refl_subgroup: Subgroup = field(repr=False)
    is_small: bool
    is_reflection_group: bool
    faithful: bool


def reflection_elements(r: Representation, among=None) -> tuple[int, ...]:
    idx = range(r.group.order) if among is None else among
    return tuple(i for i in idx if is_reflection(r.images[i]))


def reflection_report(r: Representation) -> ReflectionReport:
    """Reflections of the image and the subgroup they generate (preimage in G)."""
    G = r.group
    refl = reflection_elements(r)
    # preimage of the reflection-generated image subgroup: include the kernel
    sub = generated_subgroup(G, list(refl) + list(r.kernel.indices))
    if not sub.is_normal():
        raise AssertionError("reflection subgroup is not normal")
    return ReflectionReport(
        reflections=refl,
        refl_subgroup=sub,
        is_small=not refl,
        is_reflection_group=sub.is_whole(),
        faithful=r.is_faithful(),
    )


def is_reflection_group(mats: list[CycMatrix]) -> bool:
    """Whether a finite matrix group (given as its full element list) is generated by its reflections."""
    elems = set(mats)
    refl = [m for m in mats if is_reflection(m)]
    if not refl:
        return len(elems) == 1
    n = mats[0].rows
    found = {CycMatrix.identity(n, mats[0].level)}
    frontier = list(found)
    while frontier:
        nxt = []
        for x in frontier:
            for s in refl:
                y = x * s
                if y not in found:
                    found.add(y)
                    nxt.append(y)
        frontier = nxt
    return found == elems


def fundamental_group(r: Representation) -> AbstractQuotient:
    """G / G_refl for a faithful representation."""
    if not r.is_faithful():
        raise ValidationError("fundamental group needs a faithful representation")
    return quotient(r.group, reflection_report(r).refl_subgroup)


@dataclass(frozen=True)
class Pi1Surjection:
    total: AbstractQuotient
    base: AbstractQuotient
    coset_map: tuple[int, ...]
    notice: str = OVER_C_NOTICE


def pi1_surjection(beta: Representation, rho: Representation) -> Pi1Surjection:
    """G/G_{beta x rho refl} -> G/G_{beta refl}, checked to be a surjective homomorphism."""
    if not beta.is_faithful():
        raise ValidationError("beta must be faithful")
    G = beta.group
    big = reflection_report(product_rep(beta, rho)).refl_subgroup
    small = reflection_report(beta).refl_subgroup
    if not big.issubset(small):
        raise AssertionError("reflection subgroup of the product is not contained in that of beta")
    q1, q2 = quotient(G, big), quotient(G, small)
    cmap = [-1] * q1.order
    for g in range(G.order):
        a, b = q1.coset_of[g], q2.coset_of[g]
        if cmap[a] not in (-1, b):
            raise AssertionError("coset map is not well defined")
        cmap[a] = b
    for a in range(q1.order):
        for b in range(q1.order):
            if cmap[q1.table[a][b]] != q2.table[cmap[a]][cmap[b]]:
                raise AssertionError("coset map is not a homomorphism")
    if set(cmap) != set(range(q2.order)):
        raise AssertionError("coset map is not surjective")
    return Pi1Surjection(q1, q2, tuple(cmap))


@dataclass(frozen=True)
class MirrorData:
    mirrors: tuple[tuple[tuple[CycNum, ...], int], ...]

    @property
    def discriminant_exponents(self) -> tuple[int, ...]:
        return tuple(nu for _, nu in self.mirrors)


def _normalize(v) -> tuple[CycNum, ...]:
    lead = next(x for x in v if x)
    inv = lead.inv()
    return tuple(x * inv for x in v)


def mirror_form(g: CycMatrix) -> tuple[CycNum, ...]:
    """Linear form cutting out the fixed hyperplane of a reflection, first nonzero coefficient 1."""
    diff = g - CycMatrix.identity(g.rows, g.level)
    # ker(g - I) is the hyperplane; any nonzero row of g - I is a defining form
    row = next(diff.row(i) for i in range(diff.rows) if any(diff.row(i)))
    return _normalize(row)


def mirror_data(r: Representation) -> MirrorData:
    if not r.is_faithful():
        raise ValidationError("mirror data needs a faithful representation")
    counts: dict[tuple[CycNum, ...], int] = {}
    for i in reflection_elements(r):
        L = mirror_form(r.images[i])
        counts[L] = counts.get(L, 1) + 1
    return MirrorData(tuple(counts.items()))


def discriminant(md: MirrorData, space):
    """Expanded product of L_i^nu_i as a polynomial in the X variables of ``space``."""
    from invar.poly import Poly

    out = Poly.constant(space, 1)
    for L, nu in md.mirrors:
        lin = Poly.linear(space, L)
        out = out * lin ** nu
    return out


def fixed_space(g: CycMatrix) -> list[tuple[CycNum, ...]]:
    return (g - CycMatrix.identity(g.rows, g.level)).nullspace()


