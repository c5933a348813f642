"""Invariants of finite matrix groups by exact linear algebra.

The group acts on polynomials from the right, ``(f o g)(x) = f(M_g x)``.  All
bases are built from Reynolds images of monomials taken in decreasing grevlex
order, so every result is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from invar.cyclotomic import CycNum, lcm
from invar.errors import ValidationError
from invar.groups import Representation, product_rep
from invar.matrix import CycMatrix
from invar.poly import (
    Action,
    Monomial,
    Poly,
    PolySpace,
    SpanTracker,
    bimonomials,
    grevlex_key,
    monomials,
)

BiDeg = tuple[int, int]


@dataclass
class GradedPresentation:
    space: PolySpace
    generators: list[tuple[Poly, BiDeg]]
    relations: list[Poly]
    relation_bidegrees: list[BiDeg]
    relation_cap: int
    generator_cap: BiDeg
    complete_generators: bool
    symbol_space: PolySpace | None = None

    @property
    def degrees(self) -> list[BiDeg]:
        return [b for _, b in self.generators]

    def substitute(self, rel: Poly) -> Poly:
        """Evaluate a polynomial in generator symbols at the generators."""
        return substitute(rel, [g for g, _ in self.generators], self.space)


@dataclass
class CovariantModule:
    space: PolySpace
    generators: list[tuple[Poly, ...]]
    degrees: list[int]
    rank: int


@dataclass
class PowerSeries:
    coefficients: dict[tuple[int, ...], Fraction]
    trunc: int
    bigraded: bool

    def __getitem__(self, key) -> Fraction:
        if not isinstance(key, tuple):
            key = (key,)
        return self.coefficients.get(key, Fraction(0))

    def as_list(self) -> list[Fraction]:
        return [self[i] for i in range(self.trunc + 1)]


@dataclass
class DegreeComparison:
    n: int
    mu: int
    surjective: bool
    expected_mu: int | None = None


@dataclass
class ComparisonReport:
    per_degree: list[DegreeComparison]
    first_failure: int | None
    witness: Poly | None
    witness_bidegree: BiDeg | None
    covariant_degrees: list[int]
    reflection_beta: bool
    caps: BiDeg
    hilbert_ok: bool | None = None
    notes: list[str] = field(default_factory=list)


def symbol_names(r: int) -> tuple[str, ...]:
    letters = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"
    if r <= 26:
        return tuple(letters[:r])
    return tuple(f"Y{i + 1}" for i in range(r))


def substitute(rel: Poly, values: Sequence[Poly], space: PolySpace) -> Poly:
    cache: dict[tuple[int, int], Poly] = {}

    def power(i, k):
        key = (i, k)
        if key not in cache:
            cache[key] = values[i] ** k
        return cache[key]

    out = Poly(space)
    for e, c in rel.terms.items():
        term = Poly.constant(space, c)
        for i, k in enumerate(e):
            if k:
                term = term * power(i, k)
        out = out + term
    return out


class InvariantEngine:
    """Caches Reynolds images and graded bases for one action of G on K[X, W].

    ``beta`` acts on the X variables and the optional ``rho`` on the W variables.
    """

    def __init__(self, beta: Representation, rho: Representation | None = None, names=None):
        act = product_rep(beta, rho) if rho is not None else beta
        self.beta = beta
        self.rho = rho
        self.act = act
        self.order = beta.group.order
        self.d = beta.dim
        self.m = rho.dim if rho is not None else 0
        self.level = act.level
        self.space = names or PolySpace.standard(self.d, self.m, self.level)
        if self.space.level != self.level:
            self.space = PolySpace(self.space.x_vars, self.space.w_vars, self.level)
        self.action = Action(self.space, act.images)
        self.monomial_action = all(m.is_monomial() for m in act.images)
        self._bases: dict[BiDeg, list[Poly]] = {}
        self._inv_order = Fraction(1, self.order)

    # -- Reynolds ------------------------------------------------------
    def reynolds_terms(self, e: Monomial, chi: Sequence[CycNum] | None = None) -> dict:
        out: dict[Monomial, CycNum] = {}
        for g in range(self.order):
            w = None if chi is None else chi[g].inv()
            for e2, c in self.action.apply_monomial(e, g).items():
                if w is not None:
                    c = c * w
                v = out.get(e2)
                out[e2] = c if v is None else v + c
        return {k: v * self._inv_order for k, v in out.items() if v}

    def reynolds(self, f: Poly, chi: Sequence[CycNum] | None = None) -> Poly:
        out: dict[Monomial, CycNum] = {}
        for e, c in f.terms.items():
            for e2, v in self.reynolds_terms(e, chi).items():
                w = out.get(e2)
                out[e2] = v * c if w is None else w + v * c
        return Poly(self.space, out)

    # -- graded bases --------------------------------------------------
    def _basis_from(self, monos: list[Monomial], chi=None) -> list[Poly]:
        tracker = SpanTracker(self.level)
        covered: set[Monomial] = set()
        out = []
        for e in monos:
            if e in covered:
                continue
            r = self.reynolds_terms(e, chi)
            if self.monomial_action:
                # Reynolds images of monomials in one orbit are proportional
                for g in range(self.order):
                    covered.update(self.action.apply_monomial(e, g))
            if not r:
                continue
            ok, _ = tracker.add(r)
            if ok:
                out.append(Poly(self.space, r).monic())
        return out

    def basis(self, a: int, b: int = 0) -> list[Poly]:
        key = (a, b)
        if key not in self._bases:
            if a < 0 or b < 0 or (b and not self.m):
                self._bases[key] = []
            else:
                self._bases[key] = self._basis_from(bimonomials(self.d, self.m, a, b))
        return self._bases[key]

    def total_basis(self, n: int) -> list[Poly]:
        return self._basis_from(monomials(self.d + self.m, n))

    def semi_basis(self, chi: Sequence[CycNum], n: int) -> list[Poly]:
        return self._basis_from(monomials(self.d + self.m, n), chi)

    # -- generators ----------------------------------------------------
    def _bidegrees(self, cap_x: int, cap_w: int) -> list[BiDeg]:
        cap_w = cap_w if self.m else 0
        top = max(cap_x, cap_w)
        out = [(a, b) for a in range(cap_x + 1) for b in range(cap_w + 1) if 0 < a + b <= top]
        out.sort(key=lambda t: (t[0] + t[1], t[1]))
        return out

    def generators(self, cap_x: int, cap_w: int) -> list[tuple[Poly, BiDeg]]:
        gens: list[tuple[Poly, BiDeg]] = []
        for a, b in self._bidegrees(cap_x, cap_w):
            basis = self.basis(a, b)
            if not basis:
                continue
            tracker = SpanTracker(self.level)
            for p, (a1, b1) in gens:
                if a1 <= a and b1 <= b:
                    for q in self.basis(a - a1, b - b1):
                        tracker.add((p * q).terms)
            for f in basis:
                ok, _ = tracker.add(f.terms)
                if ok:
                    gens.append((f, (a, b)))
        return gens

    def min_generators(self, caps: BiDeg | int | None = None, relation_cap: int | None = None) -> GradedPresentation:
        if caps is None:
            caps = (self.order, self.order if self.m else 0)
        if isinstance(caps, int):
            caps = (caps, caps if self.m else 0)
        cap_x, cap_w = caps
        if cap_x < 1 or (self.m and cap_w < 1):
            raise ValidationError("generator caps must be at least 1")
        gens = self.generators(cap_x, cap_w)
        complete = cap_x >= self.order and (not self.m or cap_w >= self.order)
        if relation_cap is None:
            relation_cap = 2 * self.order
        rels, rel_deg, sym = self.relations(gens, relation_cap)
        return GradedPresentation(
            space=self.space,
            generators=gens,
            relations=rels,
            relation_bidegrees=rel_deg,
            relation_cap=relation_cap,
            generator_cap=(cap_x, cap_w),
            complete_generators=complete,
            symbol_space=sym,
        )

    def relations(self, gens, relation_cap: int):
        """Minimal relations among ``gens`` whose bidegree has total degree <= relation_cap."""
        r = len(gens)
        sym = PolySpace(symbol_names(r), (), self.level)
        if r == 0 or relation_cap < 2:
            return [], [], sym
        degs = [b for _, b in gens]
        found: list[tuple[Poly, BiDeg]] = []
        by_deg = _symbol_monomials_by_bidegree(degs, relation_cap)
        values: dict[Monomial, Poly] = {(0,) * r: Poly.constant(self.space, 1)}

        def evaluate(s: Monomial) -> Poly:
            v = values.get(s)
            if v is None:
                i = next(t for t, k in enumerate(s) if k)
                prev = list(s)
                prev[i] -= 1
                v = evaluate(tuple(prev)) * gens[i][0]
                values[s] = v
            return v

        for bideg in sorted(by_deg, key=lambda t: (t[0] + t[1], t[1], t[0])):
            monos = sorted(by_deg[bideg], key=grevlex_key, reverse=True)
            if len(monos) < 2:
                continue
            kernel = []
            tracker = SpanTracker(self.level, track=True)
            for s in monos:
                ok, combo = tracker.add(evaluate(s).terms, label=s)
                if not ok:
                    kernel.append(combo)
            if not kernel:
                continue
            span = SpanTracker(self.level)
            for rel, (a1, b1) in found:
                rest = (bideg[0] - a1, bideg[1] - b1)
                for s in by_deg.get(rest, []) if rest != (0, 0) else [(0,) * r]:
                    span.add((rel * Poly.monomial(sym, s)).terms)
            for combo in kernel:
                ok, _ = span.add(combo)
                if ok:
                    found.append((Poly(sym, combo).monic(), bideg))
        return [p for p, _ in found], [b for _, b in found], sym

    # -- module structure over R ----------------------------------------
    def ring_generators(self, cap: int | None = None) -> list[tuple[Poly, BiDeg]]:
        cap = self.order if cap is None else cap
        return [(p, b) for p, b in self.generators(cap, 0)]

    def module_generators(self, n: int, cap_x: int, ring_gens=None) -> list[tuple[Poly, int]]:
        """Minimal R-module generators of the W-degree n part, up to X-degree cap_x (graded Nakayama)."""
        ring_gens = self.ring_generators() if ring_gens is None else ring_gens
        out = []
        for a in range(cap_x + 1):
            basis = self.basis(a, n)
            if not basis:
                continue
            tracker = SpanTracker(self.level)
            for p, (ar, _) in ring_gens:
                if ar <= a:
                    for q in self.basis(a - ar, n):
                        tracker.add((p * q).terms)
            for f in basis:
                ok, _ = tracker.add(f.terms)
                if ok:
                    out.append((f, a))
        return out

    def mu(self, n: int, cap_x: int | None = None, ring_gens=None) -> int:
        cap_x = self.order if cap_x is None else cap_x
        return len(self.module_generators(n, cap_x, ring_gens))


def _symbol_monomials_by_bidegree(degs: list[BiDeg], cap: int) -> dict[BiDeg, list[Monomial]]:
    r = len(degs)
    out: dict[BiDeg, list[Monomial]] = {}

    def rec(i, cur, a, b):
        if i == r:
            if a + b > 0:
                out.setdefault((a, b), []).append(tuple(cur))
            return
        da, db = degs[i]
        k = 0
        while a + b + k * (da + db) <= cap:
            cur.append(k)
            rec(i + 1, cur, a + k * da, b + k * db)
            cur.pop()
            k += 1
            if da + db == 0:
                break

    rec(0, [], 0, 0)
    return out


# -- functional API -------------------------------------------------------


def _engine_for(act: Representation, split: int | None) -> InvariantEngine:
    """Engine for ``act`` where the first ``split`` coordinates are X (default: all)."""
    if split is None or split == act.dim:
        return InvariantEngine(act)
    beta = _block(act, 0, split)
    rho = _block(act, split, act.dim)
    return InvariantEngine(beta, rho)


def _block(r: Representation, lo: int, hi: int) -> Representation:
    imgs = []
    for M in r.images:
        ents = [M[i, j] for i in range(lo, hi) for j in range(lo, hi)]
        for i in range(lo, hi):
            for j in range(M.cols):
                if not lo <= j < hi and M[i, j]:
                    raise ValidationError("representation is not block diagonal at the split")
        imgs.append(CycMatrix(hi - lo, hi - lo, ents, M.level))
    return Representation(r.group, imgs, check=False)


def reynolds(f: Poly, act: Representation, chi: Representation | None = None) -> Poly:
    eng = InvariantEngine(act, names=f.space)
    values = None if chi is None else [m[0, 0].lift(eng.level) for m in chi.lift(lcm(chi.level, eng.level)).images]
    return eng.reynolds(Poly(eng.space, f.terms), values)


def invariant_basis(act: Representation, degree, split: int | None = None) -> list[Poly]:
    """Basis of invariants of total degree n, or of bidegree (a, b) when ``split`` = d is given."""
    eng = _engine_for(act, split)
    if isinstance(degree, tuple):
        return eng.basis(*degree)
    return eng.total_basis(degree)


def chi_values(chi: Representation, level: int) -> list[CycNum]:
    if chi.dim != 1:
        raise ValidationError("a character must be one-dimensional")
    L = lcm(chi.level, level)
    return [m[0, 0].lift(L) for m in chi.images]


def semi_invariant_basis(act: Representation, chi: Representation, n: int) -> list[Poly]:
    level = lcm(act.level, chi.level)
    eng = InvariantEngine(act.lift(level))
    return eng.semi_basis(chi_values(chi, level), n)


def min_generators(beta: Representation, rho: Representation | None = None, caps=None, relation_cap=None) -> GradedPresentation:
    return InvariantEngine(beta, rho).min_generators(caps, relation_cap)


# -- Molien series --------------------------------------------------------


def _inverse_charpoly_series(M: CycMatrix, trunc: int) -> list[CycNum]:
    """Coefficients of 1/det(I - tM) up to t^trunc."""
    n = M.rows
    level = M.level
    # power sums of eigenvalues, then elementary symmetric functions (Newton)
    p = []
    P = M
    for _ in range(n):
        p.append(P.trace())
        P = P * M
    e = [CycNum.one(level)]
    for k in range(1, n + 1):
        acc = CycNum.zero(level)
        for i in range(1, k + 1):
            term = e[k - i] * p[i - 1]
            acc = acc + term if i % 2 else acc - term
        e.append(acc * Fraction(1, k))
    # det(I - tM) = sum (-1)^k e_k t^k
    c = [ek if k % 2 == 0 else -ek for k, ek in enumerate(e)]
    q = [CycNum.one(level)]
    for j in range(1, trunc + 1):
        acc = CycNum.zero(level)
        for i in range(1, min(j, n) + 1):
            acc = acc - c[i] * q[j - i]
        q.append(acc)
    return q


def _nonneg_int(x: CycNum) -> Fraction:
    v = x.to_rational()
    if v.denominator != 1 or v < 0:
        raise AssertionError(f"Molien coefficient {v} is not a nonnegative integer")
    return v


def molien(act: Representation, trunc: int, bigraded: bool = False, split: int | None = None) -> PowerSeries:
    """Truncated Molien series; bigraded over the X/W split when requested."""
    if trunc < 0:
        raise ValidationError("truncation order must be nonnegative")
    G = act.group
    inv = Fraction(1, G.order)
    level = act.level
    if not bigraded:
        total = [CycNum.zero(level)] * (trunc + 1)
        cache: dict[CycMatrix, list[CycNum]] = {}
        for M in act.images:
            s = cache.get(M) or cache.setdefault(M, _inverse_charpoly_series(M, trunc))
            total = [a + b for a, b in zip(total, s)]
        coeffs = {(i,): _nonneg_int(c * inv) for i, c in enumerate(total)}
        return PowerSeries(coeffs, trunc, False)
    if split is None:
        raise ValidationError("bigraded Molien series needs the X/W split")
    beta = _block(act, 0, split)
    rho = _block(act, split, act.dim)
    acc: dict[tuple[int, int], CycNum] = {}
    for g in range(G.order):
        sb = _inverse_charpoly_series(beta.images[g], trunc)
        sr = _inverse_charpoly_series(rho.images[g], trunc)
        for i in range(trunc + 1):
            for j in range(trunc + 1 - i):
                v = sb[i] * sr[j]
                acc[(i, j)] = acc[(i, j)] + v if (i, j) in acc else v
    coeffs = {k: _nonneg_int(v * inv) for k, v in acc.items()}
    return PowerSeries(coeffs, trunc, True)


# -- covariants and the Sym(M) comparison ----------------------------------


def _x_space(eng: InvariantEngine) -> PolySpace:
    return PolySpace(eng.space.x_vars, (), eng.level)


def _split_w_linear(f: Poly, eng: InvariantEngine) -> tuple[Poly, ...]:
    xs = _x_space(eng)
    comps = [dict() for _ in range(eng.m)]
    for e, c in f.terms.items():
        j = next(t for t in range(eng.m) if e[eng.d + t])
        comps[j][e[: eng.d]] = c
    return tuple(Poly(xs, t) for t in comps)


def _generic_rank(vectors: list[tuple[Poly, ...]], m: int, level: int, tries: int = 6) -> int:
    """Rank over the fraction field, certified from below by evaluation at sample points."""
    if not vectors:
        return 0
    best = 0
    d = vectors[0][0].space.nvars
    for t in range(tries):
        pt = [CycNum.from_rational(((i + 2) * (t + 3)) ** (i + 1) % 101 + 1, level) for i in range(d)]
        rows = [[comp.evaluate(pt) for comp in v] for v in vectors]
        best = max(best, CycMatrix.from_rows(rows, level).rank())
        if best == m:
            break
    return best


def covariant_generators(beta: Representation, rho: Representation, cap: int | None = None,
                         engine: InvariantEngine | None = None) -> CovariantModule:
    """Minimal R-module generators of (S (x) V)^G, as coefficient vectors of W_1..W_m."""
    eng = engine or InvariantEngine(beta, rho)
    cap = eng.order if cap is None else cap
    if cap < 0:
        raise ValidationError("cap must be nonnegative")
    gens = eng.module_generators(1, cap)
    vecs = [_split_w_linear(f, eng) for f, _ in gens]
    rank = _generic_rank(vecs, eng.m, eng.level)
    return CovariantModule(_x_space(eng), vecs, [a for _, a in gens], rank)


def _multisets(k: int, n: int):
    if n == 0:
        yield ()
        return
    if k == 0:
        return

    def rec(start, left):
        if left == 0:
            yield ()
            return
        for i in range(start, k):
            for rest in rec(i, left - 1):
                yield (i,) + rest

    yield from rec(0, n)


def sym_vs_invariant(beta: Representation, rho: Representation, caps: BiDeg | None = None) -> ComparisonReport:
    """Compare B_n with the R-span of products of n degree-one covariants, degree by degree."""
    from invar.reflections import reflection_report

    eng = InvariantEngine(beta, rho)
    cap_x, cap_w = caps if caps is not None else (eng.order, eng.order)
    if cap_w < 2:
        raise ValidationError("W-degree cap must be at least 2")
    ring_gens = eng.ring_generators()
    cov = eng.module_generators(1, cap_x, ring_gens)
    refl = reflection_report(beta).is_reflection_group
    per = []
    first = None
    witness = None
    witness_deg = None
    products: dict[tuple[int, ...], Poly] = {(): Poly.constant(eng.space, 1)}

    def product(ms):
        p = products.get(ms)
        if p is None:
            p = products[ms] = product(ms[:-1]) * cov[ms[-1]][0]
        return p

    for n in range(cap_w + 1):
        surj = True
        for a in range(cap_x + 1):
            basis = eng.basis(a, n)
            if not basis:
                continue
            tracker = SpanTracker(eng.level)
            for ms in _multisets(len(cov), n):
                deg = sum(cov[i][1] for i in ms)
                if deg > a:
                    continue
                prod = product(ms)
                for q in eng.basis(a - deg, 0):
                    tracker.add((prod * q).terms)
            missing = [f for f in basis if not tracker.contains(f.terms)]
            if missing:
                surj = False
                if first is None:
                    first, witness, witness_deg = n, missing[0], (a, n)
                break
        mu = eng.mu(n, cap_x, ring_gens)
        expected = comb(n + eng.m - 1, eng.m - 1) if refl else None
        per.append(DegreeComparison(n, mu, surj, expected))
    if not (per[0].surjective and per[1].surjective):
        raise AssertionError("Sym(M) -> B fails in degree 0 or 1")
    report = ComparisonReport(
        per_degree=per,
        first_failure=first,
        witness=witness,
        witness_bidegree=witness_deg,
        covariant_degrees=[a for _, a in cov],
        reflection_beta=refl,
        caps=(cap_x, cap_w),
    )
    if refl:
        report.hilbert_ok = all(p.mu == p.expected_mu for p in per)
    else:
        report.notes.append("beta is not a reflection group; mu values reported without a closed form")
    return report
