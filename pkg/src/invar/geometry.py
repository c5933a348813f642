"""Pointwise diagnostics of Spec B^rho -> Spec R: fibres, singularities, fixed spaces."""

from __future__ import annotations

from dataclasses import dataclass, field

from invar.cyclotomic import CycNum, lcm
from invar.errors import ValidationError
from invar.groups import Representation, Subgroup, _as_point, stabilizer
from invar.matrix import CycMatrix
from invar.reflections import OVER_C_NOTICE, fixed_space, is_reflection_group, reflection_report


@dataclass
class FiberReport:
    point: tuple[CycNum, ...]
    stabilizer: tuple[int, ...]
    stabilizer_order: int
    rho_restricted_trivial: bool
    reduced: bool
    fiber_dim: int
    restricted_kernel_order: int
    restricted_image_order: int


def _require_faithful(beta: Representation):
    if not beta.is_faithful():
        raise ValidationError("beta must be faithful")


def fiber_report(beta: Representation, rho: Representation, Q) -> FiberReport:
    """Fibre over Q: reduced iff rho restricted to Stab(Q) is trivial; geometrically A^m / rho|H."""
    _require_faithful(beta)
    pt = _as_point(Q, beta.dim, beta.level)
    H = stabilizer(beta, pt)
    ker = [h for h in H.indices if rho.images[h].is_identity()]
    image = {rho.images[h] for h in H.indices}
    trivial = len(ker) == H.order
    return FiberReport(
        point=pt,
        stabilizer=H.indices,
        stabilizer_order=H.order,
        rho_restricted_trivial=trivial,
        reduced=trivial,
        fiber_dim=rho.dim,
        restricted_kernel_order=len(ker),
        restricted_image_order=len(image),
    )


@dataclass
class SingularityReport:
    contains_singular: bool
    all_singular: bool
    zero_section_singular: bool
    stabilizer: tuple[int, ...]
    stab_ker_rho: tuple[int, ...]
    notice: str = OVER_C_NOTICE


def _product_images(beta: Representation, rho: Representation, idx) -> list[CycMatrix]:
    return [CycMatrix.block_diag(beta.images[i], rho.images[i]) for i in idx]


def _lift_pair(beta: Representation, rho: Representation):
    L = lcm(beta.level, rho.level)
    return beta.lift(L), rho.lift(L)


def singularity_report(beta: Representation, rho: Representation, Q) -> SingularityReport:
    """Singular points of the fibre over Q, by the reflection-group test on stabilizers."""
    _require_faithful(beta)
    beta, rho = _lift_pair(beta, rho)
    pt = _as_point(Q, beta.dim, beta.level)
    H = stabilizer(beta, pt)
    contains = not is_reflection_group(_product_images(beta, rho, H.indices))
    hk = tuple(h for h in H.indices if rho.images[h].is_identity())
    all_sing = not is_reflection_group([beta.images[h] for h in hk])
    return SingularityReport(
        contains_singular=contains,
        all_singular=all_sing,
        zero_section_singular=contains,
        stabilizer=H.indices,
        stab_ker_rho=hk,
    )


def point_singular(beta: Representation, rho: Representation, Q, v) -> bool:
    """Whether the point (Q, v) of the product is singular: Stab(Q) cap Stab(v) is no reflection group."""
    _require_faithful(beta)
    beta, rho = _lift_pair(beta, rho)
    pt = _as_point(Q, beta.dim, beta.level)
    vv = _as_point(v, rho.dim, rho.level)
    H = stabilizer(beta, pt)
    Hv = [h for h in H.indices if rho.images[h].apply(vv) == vv]
    return not is_reflection_group(_product_images(beta, rho, Hv))


@dataclass
class FixedSpaceEntry:
    element: int
    basis: list[tuple[CycNum, ...]]


@dataclass
class FixedSpaceAtlas:
    entries: list[FixedSpaceEntry]
    small: bool
    note: str = ""


def fixed_space_atlas(beta: Representation) -> FixedSpaceAtlas:
    _require_faithful(beta)
    entries = [FixedSpaceEntry(g, fixed_space(beta.images[g])) for g in range(1, beta.group.order)]
    small = reflection_report(beta).is_small
    note = ("beta is small: the images of these fixed spaces form the singular locus of X"
            if small else "beta contains reflections")
    return FixedSpaceAtlas(entries, small, note)


@dataclass
class FiberflatVerdict:
    verdict: str
    rank: int
    mu: int
    d: int
    flags: dict = field(default_factory=dict)


def fiberflat_diagnostic(r: int, mu: int, d: int, isolated_nonfree_locus: bool = False,
                         sym_irreducible: bool = False) -> FiberflatVerdict:
    """Generator-count test: not fiberflat when d >= 3, r < mu <= r + d - 2 and both hypotheses hold."""
    if r < 1 or d < 1:
        raise ValidationError("rank and dimension must be positive")
    if mu < r:
        raise ValidationError("generator count below the rank is inconsistent")
    flags = {"isolated_nonfree_locus": isolated_nonfree_locus, "sym_irreducible": sym_irreducible}
    hit = d >= 3 and r < mu <= r + d - 2 and isolated_nonfree_locus and sym_irreducible
    return FiberflatVerdict("not fiberflat" if hit else "criterion inapplicable", r, mu, d, flags)


def stabilizer_subgroup(beta: Representation, Q) -> Subgroup:
    return stabilizer(beta, _as_point(Q, beta.dim, beta.level))
