"""Finite matrix groups, representations, characters and subgroup tools."""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import prod
from typing import Sequence

from invar.cyclotomic import CycNum, lcm
from invar.errors import BudgetExceeded, ValidationError
from invar.matrix import CycMatrix
from invar.snf import invariant_factors as _snf_factors

DEFAULT_GROUP_CAP = 10_000


class MatrixGroup:
    """A finite matrix group with its Cayley table.

    Element 0 is the identity; the order of the elements is the BFS order
    produced by :func:`close_group`.  ``parent[i] = (p, g)`` records that
    ``elements[i] = elements[p] * generators[g]``.
    """

    def __init__(self, elements, cayley, generator_indices, parent, rmul):
        self.elements: tuple[CycMatrix, ...] = tuple(elements)
        self.cayley: tuple[tuple[int, ...], ...] = cayley
        self.generator_indices: tuple[int, ...] = tuple(generator_indices)
        self.parent = parent
        self.rmul = rmul
        self.degree = self.elements[0].rows
        self.level = self.elements[0].level
        self.index = {m: i for i, m in enumerate(self.elements)}

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def mul(self, i: int, j: int) -> int:
        return self.cayley[i][j]

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        inv = [0] * self.order
        for i, row in enumerate(self.cayley):
            inv[i] = row.index(0)
        return tuple(inv)

    def conjugate(self, h: int, g: int) -> int:
        """Index of h g h^-1."""
        return self.cayley[self.cayley[h][g]][self.inverses[h]]

    def element_order(self, i: int) -> int:
        t, cur = 1, i
        while cur != 0:
            cur = self.cayley[cur][i]
            t += 1
        return t

    @cached_property
    def is_abelian(self) -> bool:
        c = self.cayley
        return all(c[i][j] == c[j][i] for i in range(self.order) for j in range(i))

    @cached_property
    def conjugacy_classes(self) -> tuple[tuple[int, ...], ...]:
        seen = set()
        classes = []
        for g in range(self.order):
            if g in seen:
                continue
            cls = sorted({self.conjugate(h, g) for h in range(self.order)})
            seen.update(cls)
            classes.append(tuple(cls))
        return tuple(classes)

    def words(self) -> list[tuple[int, ...]]:
        """For each element, a word in generator positions producing it."""
        out: list[tuple[int, ...]] = [()] * self.order
        for i in range(1, self.order):
            p, g = self.parent[i]
            out[i] = out[p] + (g,)
        return out

    def whole(self) -> Subgroup:
        return Subgroup(self, tuple(range(self.order)))

    def trivial_subgroup(self) -> Subgroup:
        return Subgroup(self, (0,))


def close_group(generators: Sequence[CycMatrix], cap: int = DEFAULT_GROUP_CAP) -> MatrixGroup:
    """The group generated by ``generators``, with a deterministic BFS element order."""
    gens = list(generators)
    if not gens:
        raise ValidationError("at least one generator is required")
    n = gens[0].rows
    level = 1
    for g in gens:
        if not g.is_square or g.rows != n:
            raise ValidationError("generators must be square matrices of equal size")
        level = lcm(level, g.level)
    gens = [g.lift(level) for g in gens]
    for g in gens:
        if not g.det():
            raise ValidationError("generator is not invertible")
    ident = CycMatrix.identity(n, level)
    elements = [ident]
    index = {ident: 0}
    parent: list[tuple[int, int] | None] = [None]
    rmul: list[list[int]] = []
    i = 0
    while i < len(elements):
        row = []
        for gi, s in enumerate(gens):
            p = elements[i] * s
            j = index.get(p)
            if j is None:
                if len(elements) >= cap:
                    raise BudgetExceeded(f"group order exceeds cap {cap}")
                j = len(elements)
                index[p] = j
                elements.append(p)
                parent.append((i, gi))
            row.append(j)
        rmul.append(row)
        i += 1
    # cayley[i][j] from cayley[i][parent(j)] and a right multiplication
    order = len(elements)
    cayley = []
    for i in range(order):
        row = [0] * order
        row[0] = i
        for j in range(1, order):
            p, g = parent[j]
            row[j] = rmul[row[p]][g]
        cayley.append(tuple(row))
    gen_idx = [index[s] for s in gens]
    return MatrixGroup(elements, tuple(cayley), gen_idx, tuple(parent), tuple(tuple(r) for r in rmul))


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of a MatrixGroup, stored as sorted parent indices."""

    parent: MatrixGroup = field(repr=False)
    indices: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(sorted(set(self.indices))))

    @property
    def order(self) -> int:
        return len(self.indices)

    def __contains__(self, i: int) -> bool:
        return i in self._set

    @cached_property
    def _set(self) -> frozenset:
        return frozenset(self.indices)

    @property
    def elements(self) -> tuple[CycMatrix, ...]:
        return tuple(self.parent.elements[i] for i in self.indices)

    @cached_property
    def cayley(self) -> tuple[tuple[int, ...], ...]:
        loc = {g: t for t, g in enumerate(self.indices)}
        c = self.parent.cayley
        return tuple(tuple(loc[c[a][b]] for b in self.indices) for a in self.indices)

    def is_normal(self) -> bool:
        G = self.parent
        return all(G.conjugate(h, g) in self._set for g in self.indices for h in G.generator_indices)

    def is_whole(self) -> bool:
        return self.order == self.parent.order

    def is_trivial(self) -> bool:
        return self.indices == (0,)

    def issubset(self, other: Subgroup) -> bool:
        return self._set <= other._set


class Representation:
    """A homomorphism from a MatrixGroup to GL_dim(Q(z_n)), stored by images."""

    def __init__(self, group: MatrixGroup, images: Sequence[CycMatrix], name: str = "", check: bool = True):
        if len(images) != group.order:
            raise ValidationError("one image per group element is required")
        level = 1
        for m in images:
            level = lcm(level, m.level)
        self.group = group
        self.images = tuple(m.lift(level) for m in images)
        self.dim = self.images[0].rows
        self.level = level
        self.name = name
        if check:
            self._check()

    def _check(self):
        G = self.group
        if not self.images[0].is_identity():
            raise ValidationError("identity must map to the identity matrix")
        for m in self.images:
            if not m.is_square or m.rows != self.dim:
                raise ValidationError("images must be square of the representation dimension")
        gens = [self.images[j] for j in G.generator_indices]
        for i in range(G.order):
            for g, s in enumerate(gens):
                if self.images[G.rmul[i][g]] != self.images[i] * s:
                    raise ValidationError("images do not respect the group multiplication")

    @staticmethod
    def from_generators(group: MatrixGroup, gen_images: Sequence[CycMatrix], name: str = "") -> Representation:
        if len(gen_images) != len(group.generator_indices):
            raise ValidationError("one image per generator is required")
        level = 1
        for m in gen_images:
            level = lcm(level, m.level)
        gen_images = [m.lift(level) for m in gen_images]
        dim = gen_images[0].rows
        images: list[CycMatrix] = [CycMatrix.identity(dim, level)]
        for i in range(1, group.order):
            p, g = group.parent[i]
            images.append(images[p] * gen_images[g])
        return Representation(group, images, name)

    def __call__(self, i: int) -> CycMatrix:
        return self.images[i]

    def lift(self, level: int) -> Representation:
        if level == self.level:
            return self
        return Representation(self.group, [m.lift(level) for m in self.images], self.name, check=False)

    @cached_property
    def kernel(self) -> Subgroup:
        return Subgroup(self.group, tuple(i for i, m in enumerate(self.images) if m.is_identity()))

    def is_faithful(self) -> bool:
        return self.kernel.is_trivial()

    def is_trivial(self) -> bool:
        return self.kernel.is_whole()

    @cached_property
    def character(self) -> Character:
        return Character(self.group, tuple(m.trace() for m in self.images))


def trivial_rep(G: MatrixGroup, m: int = 1) -> Representation:
    ident = CycMatrix.identity(m, G.level)
    return Representation(G, [ident] * G.order, f"trivial({m})", check=False)


def defining_rep(G: MatrixGroup) -> Representation:
    return Representation(G, G.elements, "defining", check=False)


def det_rep(r: Representation) -> Representation:
    return Representation(r.group, [CycMatrix.diag([m.det()], r.level) for m in r.images], f"det({r.name})", check=False)


def product_rep(r1: Representation, r2: Representation) -> Representation:
    if r1.group is not r2.group:
        raise ValidationError("representations live on different groups")
    level = lcm(r1.level, r2.level)
    imgs = [CycMatrix.block_diag(a.lift(level), b.lift(level)) for a, b in zip(r1.images, r2.images)]
    return Representation(r1.group, imgs, f"{r1.name}x{r2.name}", check=False)


def regular_rep(G: MatrixGroup) -> Representation:
    """Permutation matrices with e_h -> e_{gh}."""
    n = G.order
    z, o = CycNum.zero(G.level), CycNum.one(G.level)
    imgs = []
    for g in range(n):
        ents = [z] * (n * n)
        for h in range(n):
            ents[G.cayley[g][h] * n + h] = o
        imgs.append(CycMatrix(n, n, ents, G.level))
    return Representation(G, imgs, "regular", check=False)


def restrict(r: Representation, H: Subgroup) -> list[CycMatrix]:
    return [r.images[i] for i in H.indices]


# -- characters ---------------------------------------------------------


@dataclass(frozen=True)
class Character:
    group: MatrixGroup = field(repr=False)
    values: tuple[CycNum, ...]

    @property
    def degree(self) -> CycNum:
        return self.values[0]


def _as_character(x) -> Character:
    return x.character if isinstance(x, Representation) else x


def inner_product(a, b) -> Fraction | CycNum:
    """<chi_a, chi_b> = (1/|G|) sum chi_a(g) conj(chi_b(g))."""
    ca, cb = _as_character(a), _as_character(b)
    if ca.group is not cb.group:
        raise ValidationError("characters live on different groups")
    level = lcm(ca.values[0].level, cb.values[0].level)
    acc = CycNum.zero(level)
    for x, y in zip(ca.values, cb.values):
        acc = acc + x.lift(level) * y.lift(level).conj()
    acc = acc * Fraction(1, len(ca.values))
    return acc.to_rational() if acc.is_rational() else acc


def is_irreducible(r) -> bool:
    return inner_product(r, r) == 1


def multiplicity(irr, r) -> int:
    v = inner_product(r, irr)
    if not isinstance(v, Fraction) or v.denominator != 1 or v < 0:
        raise AssertionError(f"character multiplicity is not a nonnegative integer: {v}")
    return int(v)


def char_tools(r, op: str, other=None):
    if op == "character":
        return _as_character(r)
    if op == "inner_product":
        return inner_product(r, other)
    if op == "is_irreducible":
        return is_irreducible(r)
    if op == "multiplicity":
        return multiplicity(other, r)
    raise ValidationError(f"unknown character operation {op!r}")


# -- subgroups ----------------------------------------------------------


def _as_point(Q, dim: int, level: int) -> tuple[CycNum, ...]:
    if len(Q) != dim:
        raise ValidationError(f"point has {len(Q)} coordinates, expected {dim}")
    out = []
    for q in Q:
        if isinstance(q, CycNum):
            if level % q.level:
                raise ValidationError(f"coordinate {q} needs level {q.level}, session level is {level}")
            out.append(q.lift(level))
        else:
            out.append(CycNum.from_rational(Fraction(q), level))
    return tuple(out)


def stabilizer(r: Representation, Q) -> Subgroup:
    """{g : r(g) Q = Q}."""
    pt = _as_point(Q, r.dim, r.level)
    return Subgroup(r.group, tuple(i for i, m in enumerate(r.images) if m.apply(pt) == pt))


def kernel(r: Representation) -> Subgroup:
    return r.kernel


def generated_subgroup(G: MatrixGroup, gens: Sequence[int]) -> Subgroup:
    found = {0}
    queue = deque([0])
    gens = list(dict.fromkeys(gens))
    while queue:
        x = queue.popleft()
        for s in gens:
            y = G.cayley[x][s]
            if y not in found:
                found.add(y)
                queue.append(y)
    return Subgroup(G, tuple(found))


def normal_closure(G: MatrixGroup, gens: Sequence[int]) -> Subgroup:
    conj = {G.conjugate(h, g) for g in gens for h in range(G.order)}
    return generated_subgroup(G, sorted(conj))


@dataclass(frozen=True)
class AbstractQuotient:
    """G/N as a coset multiplication table (coset 0 is N)."""

    order: int
    table: tuple[tuple[int, ...], ...]
    invariant_factors: tuple[int, ...]
    coset_of: tuple[int, ...] = field(repr=False)

    @property
    def is_abelian(self) -> bool:
        t = self.table
        return all(t[i][j] == t[j][i] for i in range(self.order) for j in range(i))

    def describe(self) -> str:
        if self.order == 1:
            return "trivial"
        if self.invariant_factors:
            return " x ".join(f"Z/{k}" for k in self.invariant_factors)
        return f"nonabelian of order {self.order}"


def quotient(G: MatrixGroup, N: Subgroup) -> AbstractQuotient:
    if N.parent is not G:
        raise ValidationError("subgroup belongs to a different group")
    if not N.is_normal():
        raise ValidationError("quotient by a non-normal subgroup")
    coset = [-1] * G.order
    reps = []
    for g in range(G.order):
        if coset[g] >= 0:
            continue
        c = len(reps)
        reps.append(g)
        for n in N.indices:
            coset[G.cayley[g][n]] = c
    q = len(reps)
    table = tuple(tuple(coset[G.cayley[reps[a]][reps[b]]] for b in range(q)) for a in range(q))
    factors: tuple[int, ...] = ()
    if q > 1 and all(table[i][j] == table[j][i] for i in range(q) for j in range(i)):
        factors = _abelian_invariant_factors(table, [coset[s] for s in G.generator_indices])
    return AbstractQuotient(q, table, factors, tuple(coset))


def _abelian_invariant_factors(table, gens: list[int]) -> tuple[int, ...]:
    # coordinates c(x) along a BFS tree; every Cayley edge x -> x*s gives the
    # relation c(x) + e_s - c(x*s), and these span the relation lattice
    gens = [s for s in dict.fromkeys(gens) if s != 0]
    k = len(gens)
    coords = {0: [0] * k}
    queue = deque([0])
    rels = []
    while queue:
        x = queue.popleft()
        for t, s in enumerate(gens):
            y = table[x][s]
            step = list(coords[x])
            step[t] += 1
            if y not in coords:
                coords[y] = step
                queue.append(y)
            else:
                rel = [a - b for a, b in zip(step, coords[y])]
                if any(rel):
                    rels.append(rel)
    factors = _snf_factors(rels, k)
    if any(f == 0 for f in factors) or prod(factors) != len(table):
        raise AssertionError("invariant factors inconsistent with the quotient order")
    return tuple(factors)


def subgroup_tools(G: MatrixGroup, data, op: str):
    if op == "kernel":
        return kernel(data)
    if op == "generated_subgroup":
        return generated_subgroup(G, data)
    if op == "normal_closure":
        return normal_closure(G, data)
    if op == "quotient":
        return quotient(G, data)
    raise ValidationError(f"unknown subgroup operation {op!r}")


def generic_point(r: Representation, seed: int = 0, tries: int = 8, bound: int = 97) -> tuple[CycNum, ...]:
    """A random rational point whose stabilizer equals ker r; resampled up to ``tries`` times."""
    rng = random.Random(seed)
    target = r.kernel
    for _ in range(tries):
        pt = tuple(CycNum.from_rational(rng.randint(-bound, bound), r.level) for _ in range(r.dim))
        if stabilizer(r, pt).indices == target.indices:
            return pt
    raise BudgetExceeded(f"no generic point found in {tries} samples")
