"""Diagonal (toric) actions: a finite abelian group D grading K[X, W] by weights.

A monomial X^a W^b is invariant iff its D-degree sum a_i delta_i + sum b_j eps_j
vanishes, so the invariant algebra is the monoid algebra of the degree-zero
exponent vectors and most questions become integer combinatorics.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import product
from math import prod
from typing import Sequence

from invar.cyclotomic import CycNum, lcm
from invar.errors import BudgetExceeded, ValidationError
from invar.groups import MatrixGroup, Representation, close_group
from invar.matrix import CycMatrix
from invar.snf import lattice_coefficients, smith_normal_form

Vec = tuple[int, ...]

MAX_ORDER = 64
MAX_VARS = 8


@dataclass(frozen=True)
class AbelianGrading:
    factors: tuple[int, ...]
    x_weights: tuple[Vec, ...]
    w_weights: tuple[Vec, ...] = ()

    def __post_init__(self):
        factors = tuple(int(k) for k in self.factors)
        if not factors or any(k < 1 for k in factors):
            raise ValidationError("invariant factors must be positive integers")
        r = len(factors)

        def red(ws):
            out = []
            for w in ws:
                w = (w,) if isinstance(w, int) else tuple(w)
                if len(w) != r:
                    raise ValidationError(f"weight {w} does not have {r} components")
                out.append(tuple(x % k for x, k in zip(w, factors)))
            return tuple(out)

        object.__setattr__(self, "factors", factors)
        object.__setattr__(self, "x_weights", red(self.x_weights))
        object.__setattr__(self, "w_weights", red(self.w_weights))

    @staticmethod
    def cyclic(k: int, x_weights: Sequence[int], w_weights: Sequence[int] = ()) -> AbelianGrading:
        return AbelianGrading((k,), tuple((x,) for x in x_weights), tuple((w,) for w in w_weights))

    @property
    def order(self) -> int:
        return prod(self.factors)

    @property
    def d(self) -> int:
        return len(self.x_weights)

    @property
    def m(self) -> int:
        return len(self.w_weights)

    @property
    def weights(self) -> tuple[Vec, ...]:
        return self.x_weights + self.w_weights

    @property
    def level(self) -> int:
        out = 1
        for k in self.factors:
            out = lcm(out, k)
        return out

    def add(self, a: Vec, b: Vec) -> Vec:
        return tuple((x + y) % k for x, y, k in zip(a, b, self.factors))

    def zero(self) -> Vec:
        return (0,) * len(self.factors)

    def degree(self, v: Sequence[int]) -> Vec:
        out = [0] * len(self.factors)
        for c, w in zip(v, self.weights):
            if c:
                for t, x in enumerate(w):
                    out[t] += c * x
        return tuple(x % k for x, k in zip(out, self.factors))

    def elements(self) -> list[Vec]:
        return list(product(*(range(k) for k in self.factors)))

    def neg(self, a: Vec) -> Vec:
        return tuple((-x) % k for x, k in zip(a, self.factors))

    def subgroup(self, gens: Sequence[Vec]) -> set[Vec]:
        seen = {self.zero()}
        queue = deque(seen)
        while queue:
            x = queue.popleft()
            for g in gens:
                y = self.add(x, g)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return seen

    def x_faithful(self) -> bool:
        return len(self.subgroup(self.x_weights)) == self.order

    def with_w(self, w_weights: Sequence[Vec]) -> AbelianGrading:
        return AbelianGrading(self.factors, self.x_weights, tuple(w_weights))

    def representations(self) -> tuple[MatrixGroup, Representation, Representation]:
        """The diagonal action of the dual group on X (beta) and on W (rho)."""
        level = self.level
        n = self.d + self.m
        gens = []
        for t, k in enumerate(self.factors):
            step = level // k
            gens.append(CycMatrix.diag([CycNum.zeta(level, w[t] * step) for w in self.weights], level))
        if n == 0:
            raise ValidationError("grading without variables")
        G = close_group(gens)
        beta = Representation(G, [_block(M, 0, self.d) for M in G.elements], "beta", check=False)
        rho_imgs = [_block(M, self.d, n) for M in G.elements] if self.m else [CycMatrix.identity(1, level)] * G.order
        rho = Representation(G, rho_imgs, "rho", check=False)
        return G, beta, rho


def _block(M: CycMatrix, lo: int, hi: int) -> CycMatrix:
    return CycMatrix(hi - lo, hi - lo, [M[i, j] for i in range(lo, hi) for j in range(lo, hi)], M.level)


def total(v: Vec) -> int:
    return sum(v)


def sort_key(v: Vec):
    return (sum(v), tuple(-x for x in v))


def presentation_key(v: Vec, d: int):
    """Pure X first, then pure W, then mixed; pure powers lead within each block."""
    block = 2 if any(v[:d]) and any(v[d:]) else (0 if any(v[:d]) else 1)
    support = [i for i, x in enumerate(v) if x]
    if len(support) == 1:
        return (block, 0, (support[0],))
    return (block, 1, tuple(-x for x in v))


def leq(a: Vec, b: Vec) -> bool:
    return all(x <= y for x, y in zip(a, b))


def vsub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def vadd(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


# -- Hilbert basis --------------------------------------------------------


@dataclass(frozen=True)
class HilbertBasis:
    grading: AbelianGrading
    generators: tuple[Vec, ...]
    degree_bound_used: int

    def pure_x(self) -> list[Vec]:
        d = self.grading.d
        return [v for v in self.generators if not any(v[d:])]

    def pure_w(self) -> list[Vec]:
        d = self.grading.d
        return [v for v in self.generators if not any(v[:d])]

    def mixed(self) -> list[Vec]:
        d = self.grading.d
        return [v for v in self.generators if any(v[:d]) and any(v[d:])]


def hilbert_basis(g: AbelianGrading, max_order: int = MAX_ORDER, max_vars: int = MAX_VARS) -> HilbertBasis:
    """Minimal generators of the monoid of degree-zero exponent vectors.

    A degree-zero vector of total degree n is a sequence of n weights summing
    to 0.  If n > |D|, two of the n+1 prefix sums coincide and the sequence
    splits into two nonempty zero-sum pieces, so generators have total degree
    at most |D|.  The search grows zero-sum-free vectors one unit at a time;
    a zero-sum extension of a zero-sum-free vector is automatically minimal.
    """
    n = g.d + g.m
    if g.order > max_order or n > max_vars:
        raise BudgetExceeded(f"toric budget exceeded: |D| = {g.order}, variables = {n}")
    zero = g.zero()
    gens: list[Vec] = []
    layer: dict[Vec, Vec] = {(0,) * n: zero}
    for t in range(1, g.order + 1):
        nxt: dict[Vec, Vec] = {}
        found: list[Vec] = []
        for v, deg in layer.items():
            # extend only at or after the last nonzero slot, so each vector arises once
            last = max((i for i, x in enumerate(v) if x), default=0)
            for i in range(last, n):
                w = v[:i] + (v[i] + 1,) + v[i + 1:]
                dw = g.add(deg, g.weights[i])
                if dw == zero:
                    found.append(w)
                elif not any(leq(h, w) for h in gens):
                    nxt[w] = dw
        gens.extend(found)
        layer = nxt
        if not layer:
            break
    gens.sort(key=lambda v: presentation_key(v, g.d))
    return HilbertBasis(g, tuple(gens), g.order)


# -- binomial relations ----------------------------------------------------


@dataclass(frozen=True)
class Binomial:
    lhs: Vec
    rhs: Vec

    @property
    def degree(self) -> int:
        return max(sum(self.lhs), sum(self.rhs))


def _fiber(target: Vec, gens: Sequence[Vec]) -> list[Vec]:
    r = len(gens)
    out = []

    def rec(i, rest, cur):
        if i == r:
            if not any(rest):
                out.append(tuple(cur))
            return
        h = gens[i]
        k = 0
        while True:
            cur.append(k)
            rec(i + 1, rest, cur)
            cur.pop()
            if not leq(h, rest):
                break
            rest = vsub(rest, h)
            k += 1

    rec(0, target, [])
    return out


def _symbol_monomials(r: int, max_deg: int):
    def rec(i, left, cur):
        if i == r:
            yield tuple(cur)
            return
        for k in range(left + 1):
            cur.append(k)
            yield from rec(i + 1, left - k, cur)
            cur.pop()

    yield from rec(0, max_deg, [])


def fine_degree(u: Vec, gens: Sequence[Vec]) -> Vec:
    out = [0] * len(gens[0])
    for k, h in zip(u, gens):
        if k:
            for t, x in enumerate(h):
                out[t] += k * x
    return tuple(out)


def _components(fiber: list[Vec]) -> list[list[Vec]]:
    parent = list(range(len(fiber)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    r = len(fiber[0])
    for i in range(r):
        owners = [t for t, u in enumerate(fiber) if u[i]]
        for t in owners[1:]:
            a, b = find(owners[0]), find(t)
            if a != b:
                parent[b] = a
    comps: dict[int, list[Vec]] = {}
    for t, u in enumerate(fiber):
        comps.setdefault(find(t), []).append(u)
    return list(comps.values())


def _symbol_key(u: Vec):
    # smaller is preferred: low degree first, then larger grevlex
    return (sum(u), tuple(x for x in reversed(u)))


def binomial_relations(hb: HilbertBasis, cap: int = 4) -> list[Binomial]:
    """Minimal binomial generators of the toric ideal of degree <= cap in generator symbols.

    Two monomials of one fibre are congruent modulo lower-degree relations
    exactly when they are joined by a chain of monomials sharing a variable,
    so each fibre with c such components contributes c - 1 minimal relations.
    """
    if cap < 2:
        raise ValidationError("relation cap must be at least 2")
    gens = list(hb.generators)
    r = len(gens)
    if r < 2:
        return []
    seen = set()
    rels: list[tuple[tuple, Binomial]] = []
    for u in _symbol_monomials(r, cap):
        if sum(u) < 2:
            continue
        b = fine_degree(u, gens)
        if b in seen:
            continue
        seen.add(b)
        fib = _fiber(b, gens)
        if len(fib) < 2:
            continue
        comps = _components(fib)
        if len(comps) < 2:
            continue
        reps = sorted((min(c, key=_symbol_key) for c in comps), key=_symbol_key)
        for other in reps[1:]:
            lhs, rhs = reps[0], other
            if max(sum(lhs), sum(rhs)) > cap:
                continue
            if _symbol_key(lhs) < _symbol_key(rhs):
                lhs, rhs = rhs, lhs
            rels.append(((max(sum(lhs), sum(rhs)), sum(b), b, lhs), Binomial(lhs, rhs)))
    rels.sort(key=lambda t: t[0])
    return [bn for _, bn in rels]


def binomial_in_ideal(lhs: Vec, rhs: Vec, relations: Sequence[Binomial], gens: Sequence[Vec]) -> bool:
    """Whether lhs - rhs lies in the ideal generated by ``relations`` (fibre connectivity)."""
    if fine_degree(lhs, gens) != fine_degree(rhs, gens):
        return False
    seen = {lhs}
    queue = deque([lhs])
    while queue:
        u = queue.popleft()
        if u == rhs:
            return True
        for rel in relations:
            for p, q in ((rel.lhs, rel.rhs), (rel.rhs, rel.lhs)):
                if leq(p, u):
                    w = vadd(vsub(u, p), q)
                    if w not in seen:
                        seen.add(w)
                        queue.append(w)
    return False


# -- character decomposition --------------------------------------------


def _vectors_upto(n: int, cap: int):
    for v in _symbol_monomials(n, cap):
        yield v


@dataclass
class CharacterPiece:
    x_monomials: list[Vec]
    w_monomials: list[Vec]


def character_decomposition(g: AbelianGrading, caps: tuple[int, int]) -> dict[Vec, CharacterPiece]:
    """For each lambda in D: X-monomials of degree -lambda and W-monomials of degree lambda, up to caps."""
    cap_x, cap_w = caps
    out = {lam: CharacterPiece([], []) for lam in g.elements()}
    xg = AbelianGrading(g.factors, g.x_weights)
    wg = AbelianGrading(g.factors, g.w_weights) if g.m else None
    for a in _vectors_upto(g.d, cap_x):
        out[g.neg(xg.degree(a))].x_monomials.append(a)
    if wg is not None:
        for b in _vectors_upto(g.m, cap_w):
            out[wg.degree(b)].w_monomials.append(b)
    else:
        out[g.zero()].w_monomials.append(())
    for piece in out.values():
        piece.x_monomials.sort(key=sort_key)
        piece.w_monomials.sort(key=sort_key)
    return out


def invariant_monomial_count(g: AbelianGrading, a: int, b: int) -> int:
    """Direct count of degree-zero monomials of bidegree (a, b)."""
    count = 0
    for x in _symbol_monomials(g.d, a):
        if sum(x) != a:
            continue
        if g.m:
            for w in _symbol_monomials(g.m, b):
                if sum(w) == b and g.degree(x + w) == g.zero():
                    count += 1
        elif b == 0 and g.degree(x) == g.zero():
            count += 1
    return count


# -- the fibre over the vertex ---------------------------------------------


@dataclass
class VertexFiberReport:
    assoc_graded_dims: list[int]
    trunc_dims: list[int]
    reduction_generators: list[Vec]
    nilpotent_witnesses: list[tuple[Vec, int]]
    cap: int


def _in_vertex_ideal(mu: Vec, pure_x: Sequence[Vec]) -> bool:
    return any(leq(h, mu) for h in pure_x)


def vertex_fiber(g: AbelianGrading, cap: int = 3, hb: HilbertBasis | None = None) -> VertexFiberReport:
    """Fibre ring B/(R_+ B) at the vertex, filtered by powers of its maximal ideal.

    B/(R_+ B) has the monomials outside R_+B as a basis, and such a monomial
    lies in m^i exactly when it factors into at least i generators.
    """
    if cap < 1:
        raise ValidationError("cap must be at least 1")
    hb = hb or hilbert_basis(g)
    px = hb.pure_x()
    others = [h for h in hb.generators if h not in px]
    maxlen: dict[Vec, int] = {}

    def length(mu: Vec) -> int:
        v = maxlen.get(mu)
        if v is None:
            v = 0
            for h in others:
                if leq(h, mu):
                    v = max(v, 1 + length(vsub(mu, h)))
            maxlen[mu] = v
        return v

    n = g.d + g.m
    level_set = {(0,) * n}
    elems = set(level_set)
    for _ in range(cap - 1):
        nxt = set()
        for mu in level_set:
            for h in others:
                w = vadd(mu, h)
                if w not in elems and not _in_vertex_ideal(w, px):
                    nxt.add(w)
        elems |= nxt
        level_set = nxt
    assoc = [0] * cap
    for mu in elems:
        L = length(mu)
        if L < cap:
            assoc[L] += 1
    trunc = [sum(assoc[:i]) for i in range(cap + 1)]
    witnesses = []
    for h in hb.mixed():
        t = 1
        while not _in_vertex_ideal(tuple(t * x for x in h), px):
            t += 1
        witnesses.append((h, t))
    return VertexFiberReport(assoc, trunc, hb.pure_w(), witnesses, cap)


def localize(g: AbelianGrading, support: Sequence[int]) -> tuple[AbelianGrading, list[int]]:
    """Grading of the stabilizer of a point whose nonzero X-coordinates are ``support``.

    The stabilizer's character group is D / <delta_i : i in support>; the
    result keeps only the zero X-coordinates (returned as the second value).
    """
    r = len(g.factors)
    cols = [[k if t == s else 0 for t in range(r)] for s, k in enumerate(g.factors)]
    cols += [list(g.x_weights[i]) for i in support]
    A = [[c[t] for c in cols] for t in range(r)]
    U, D, _ = smith_normal_form(A)
    diag = [D[i][i] if i < len(D[0]) else 0 for i in range(r)]
    keep_rows = [i for i, dd in enumerate(diag) if dd != 1]
    factors = tuple(diag[i] for i in keep_rows)

    def image(w):
        return tuple(sum(U[i][t] * w[t] for t in range(r)) % diag[i] for i in keep_rows)

    zero_coords = [i for i in range(g.d) if i not in set(support)]
    if not factors:
        factors, image_fn = (1,), (lambda w: (0,))
    else:
        image_fn = image
    return (
        AbelianGrading(factors, tuple(image_fn(g.x_weights[i]) for i in zero_coords),
                       tuple(image_fn(w) for w in g.w_weights)),
        zero_coords,
    )


# -- normalization and pullback ------------------------------------------


def decompose(target: Vec, gens: Sequence[Vec]) -> tuple[int, ...] | None:
    """Multiplicities expressing target as a sum of gens, or None."""
    r = len(gens)
    memo: dict = {}

    def rec(i, rest):
        if not any(rest):
            return ()
        if i == r:
            return None
        key = (i, rest)
        if key in memo:
            return memo[key]
        h = gens[i]
        res = None
        # try the largest multiple of gens[i] first
        mult = 0
        cur = rest
        while leq(h, cur) and any(h):
            cur = vsub(cur, h)
            mult += 1
        while mult >= 0:
            sub = rec(i + 1, tuple(x - mult * y for x, y in zip(rest, h)))
            if sub is not None:
                res = (mult,) + sub
                break
            mult -= 1
        memo[key] = res
        return res

    out = rec(0, tuple(target))
    if out is None:
        return None
    return out + (0,) * (r - len(out))


def lattice_witness(target: Vec, gens: Sequence[Vec], max_l1: int = 4) -> tuple[int, ...] | None:
    """Integer coefficients c with sum c_i gens_i = target, preferring small |c|_1."""
    r = len(gens)
    for norm in range(1, max_l1 + 1):
        for c in _signed_vectors(r, norm):
            if fine_degree_signed(c, gens) == tuple(target):
                return c
    sol = lattice_coefficients([list(h) for h in gens], list(target))
    return None if sol is None else tuple(sol)


def fine_degree_signed(c: Sequence[int], gens: Sequence[Vec]) -> Vec:
    out = [0] * len(gens[0])
    for k, h in zip(c, gens):
        if k:
            for t, x in enumerate(h):
                out[t] += k * x
    return tuple(out)


def _signed_vectors(r: int, norm: int):
    for mags in _compositions(r, norm):
        nz = [i for i, x in enumerate(mags) if x]
        for signs in product((1, -1), repeat=len(nz)):
            c = list(mags)
            for i, s in zip(nz, signs):
                c[i] *= s
            yield tuple(c)


def _compositions(r: int, n: int):
    if r == 0:
        if n == 0:
            yield ()
        return
    for k in range(n, -1, -1):
        for rest in _compositions(r - 1, n - k):
            yield (k,) + rest


@dataclass
class IntegralityCertificate:
    generator: Vec
    multiple: int
    decomposition: tuple[int, ...]


@dataclass
class NormalizationVerdict:
    is_normalization: bool
    tensor_generators: list[Vec]
    product_generators: list[Vec]
    integrality: list[IntegralityCertificate]
    lattice_witnesses: list[tuple[Vec, tuple[int, ...] | None]]
    non_surjective: list[Vec]
    search_bound: int
    notes: list[str] = field(default_factory=list)


def normalization_check(g1: AbelianGrading, g2: AbelianGrading, search_bound: int | None = None) -> NormalizationVerdict:
    """Is B^{rho1 x rho2} the normalization of the tensor product B^rho1 (x)_R B^rho2?"""
    if g1.factors != g2.factors or g1.x_weights != g2.x_weights:
        raise ValidationError("gradings must share D and the X weights")
    d, m1, m2 = g1.d, g1.m, g2.m
    g12 = AbelianGrading(g1.factors, g1.x_weights, g1.w_weights + g2.w_weights)
    hb1, hb2, hb12 = hilbert_basis(g1), hilbert_basis(g2), hilbert_basis(g12)
    tensor: list[Vec] = []
    for h in hb1.generators:
        v = h[:d] + h[d:] + (0,) * m2
        if v not in tensor:
            tensor.append(v)
    for h in hb2.generators:
        v = h[:d] + (0,) * m1 + h[d:]
        if v not in tensor:
            tensor.append(v)
    for v in tensor:
        if g12.degree(v) != g12.zero():
            raise AssertionError("tensor generator is not invariant")
    bound = search_bound if search_bound is not None else g1.level ** 2
    certs = []
    witnesses = []
    missing = []
    ok = True
    for h in hb12.generators:
        cert = None
        for t in range(1, bound + 1):
            dec = decompose(tuple(t * x for x in h), tensor)
            if dec is not None:
                cert = IntegralityCertificate(h, t, dec)
                break
        if cert is None:
            raise BudgetExceeded(f"no integrality certificate for {h} up to multiple {bound}")
        certs.append(cert)
        if cert.multiple > 1:
            missing.append(h)
        wit = lattice_witness(h, tensor)
        witnesses.append((h, wit))
        ok = ok and wit is not None
    return NormalizationVerdict(ok, tensor, list(hb12.generators), certs, witnesses, missing, bound)


@dataclass
class PullbackVerdict:
    is_normalization: bool
    image_generators: list[Vec]
    integrality: list[IntegralityCertificate]
    lattice_witnesses: list[tuple[Vec, tuple[int, ...] | None]]
    notes: list[str] = field(default_factory=list)


def pullback_check(g: AbelianGrading) -> PullbackVerdict:
    """S (x)_R B^rho -> S[W]: integrality and birationality of each W_j over the image."""
    if not g.x_faithful():
        raise ValidationError("pullback check needs the X weights to generate D")
    n = g.d + g.m
    hb = hilbert_basis(g)
    units = [tuple(int(t == i) for t in range(n)) for i in range(g.d)]
    image = units + [h for h in hb.generators if h not in units]
    certs = []
    witnesses = []
    ok = True
    for j in range(g.m):
        e = tuple(int(t == g.d + j) for t in range(n))
        cert = None
        for t in range(1, g.level + 1):
            dec = decompose(tuple(t * x for x in e), image)
            if dec is not None:
                cert = IntegralityCertificate(e, t, dec)
                break
        if cert is None:
            raise AssertionError(f"W_{j + 1} is not integral over the image")
        certs.append(cert)
        wit = lattice_witness(e, image)
        witnesses.append((e, wit))
        ok = ok and wit is not None
    return PullbackVerdict(ok, image, certs, witnesses)


def nilpotency_oracle(g: AbelianGrading, support: Sequence[int], cap: int = 3) -> list[tuple[Vec, int]]:
    """Nilpotent elements of the fibre ring over a point with nonzero X-coordinates ``support``.

    Works on the localized grading at the point's stabilizer; an empty
    result means the truncated fibre ring shows no nilpotents.
    """
    local, _ = localize(g, support)
    return vertex_fiber(local, cap).nilpotent_witnesses
