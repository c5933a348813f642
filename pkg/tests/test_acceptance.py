"""Acceptance suite: one test per criterion, summarized as PASS/FAIL lines at the end of the run."""

import subprocess
import sys
from math import comb, gcd
from pathlib import Path

import pytest

from invar.builtins import (
    asingularity,
    cyclic,
    cyclic4reflection,
    cyclicone,
    klein,
    regular_cyclic,
    s3_reflection,
    sym3,
    toric11,
)
from invar.geometry import fiber_report, point_singular, singularity_report
from invar.groups import product_rep
from invar.invariants import InvariantEngine, min_generators, molien, sym_vs_invariant
from invar.poly import Poly
from invar.reflections import fundamental_group, pi1_surjection
from invar.toric import (
    AbelianGrading,
    binomial_in_ideal,
    binomial_relations,
    fine_degree,
    hilbert_basis,
    nilpotency_oracle,
    normalization_check,
    pullback_check,
    vertex_fiber,
)

HERE = Path(__file__).parent


# -- 1: toric generators and relations ------------------------------------

def _mono(text, names):
    """Exponent vector of a monomial such as 'X^2*W' over the variables ``names``."""
    e = [0] * len(names)
    for f in text.split("*"):
        v, _, p = f.partition("^")
        e[names.index(v)] += int(p or 1)
    return tuple(e)


def _product(word, letters):
    """Exponent vector in X, W of a product of lettered generators, e.g. 'CD^2'."""
    out = None
    i = 0
    while i < len(word):
        sym = word[i]
        i += 1
        p = 1
        if i < len(word) and word[i] == "^":
            j = i + 1
            while j < len(word) and word[j].isdigit():
                j += 1
            p = int(word[i + 1:j])
            i = j
        v = tuple(p * x for x in letters[sym])
        out = v if out is None else tuple(a + b for a, b in zip(out, v))
    return out


def _relation_set(pairs, letters):
    return {frozenset((_product(a, letters), _product(b, letters))) for a, b in pairs}


def _our_relation_set(hb, rels):
    gens = hb.generators
    return {frozenset((fine_degree(r.lhs, gens), fine_degree(r.rhs, gens))) for r in rels}


# letters -> monomials, and the expected binomials in those letters
TORIC_EXAMPLES = {
    "cyclicone(2,1)": (
        AbelianGrading.cyclic(2, [1], [1]), ("X", "W"),
        {"A": "X^2", "B": "W^2", "C": "X*W"},
        [("AB", "C^2")],
    ),
    "cyclicone(3,2)": (
        AbelianGrading.cyclic(3, [1], [2]), ("X", "W"),
        {"A": "X^3", "B": "W^3", "C": "X*W"},
        [("AB", "C^3")],
    ),
    "cyclicone(5,2)": (
        AbelianGrading.cyclic(5, [1], [2]), ("X", "W"),
        {"A": "X^5", "C": "X^3*W", "D": "X*W^2", "B": "W^5"},
        [("C^2", "AD"), ("CD^2", "AB"), ("D^3", "BC")],
    ),
    "cyclicone(5,3)": (
        AbelianGrading.cyclic(5, [1], [3]), ("X", "W"),
        {"A": "X^5", "E": "X^2*W", "F": "X*W^3", "B": "W^5"},
        [("F^2", "BE"), ("FE^2", "AB"), ("E^3", "AF")],
    ),
    "klein-1": (
        AbelianGrading((2, 2), ((1, 0), (0, 1)), ((1, 0),)), ("X", "Y", "W"),
        {"A": "X^2", "B": "Y^2", "C": "W^2", "D": "X*W"},
        [("D^2", "AC")],
    ),
    "klein-2": (
        AbelianGrading((2, 2), ((1, 0), (0, 1)), ((1, 1),)), ("X", "Y", "W"),
        {"A": "X^2", "B": "Y^2", "C": "W^2", "D": "X*Y*W"},
        [("D^2", "ABC")],
    ),
}

VERONESE_3 = (
    AbelianGrading.cyclic(3, [1], [1]), ("X", "W"),
    {"A": "X^3", "B": "X^2*W", "C": "X*W^2", "D": "W^3"},
    [("AD", "CB"), ("B^2", "AC"), ("C^2", "BD")],
    [("C^3", "AD^2"), ("B^3", "A^2D")],
)

TORIC11 = (
    AbelianGrading.cyclic(2, [1, 1], [1]), ("X", "Y", "W"),
    {"A": "X^2", "B": "Y^2", "C": "X*Y", "D": "W^2", "E": "X*W", "F": "Y*W"},
    [("AB", "C^2"), ("AD", "E^2"), ("BD", "F^2")],
    # the same algebra presented over its invariant ring, letters D, E, F for XW, YW, W^2
    {"A": "X^2", "B": "Y^2", "C": "X*Y", "D": "X*W", "E": "Y*W", "F": "W^2"},
    [("CF", "DE"), ("CD", "AE"), ("BD", "CE"), ("AF", "D^2"), ("BF", "E^2")],
)


def _letters(names, table):
    return {s: _mono(m, names) for s, m in table.items()}


def test_criterion_01_toric_generators_and_relations():
    for name, (g, names, table, listed) in TORIC_EXAMPLES.items():
        letters = _letters(names, table)
        hb = hilbert_basis(g)
        assert set(hb.generators) == set(letters.values()), name
        assert _our_relation_set(hb, binomial_relations(hb)) == _relation_set(listed, letters), name

    # Veronese k = 3: the five listed binomials generate the ideal; the two cubics
    # are redundant, so the minimal set equals the three quadrics.
    g, names, table, quadrics, cubics = VERONESE_3
    letters = _letters(names, table)
    hb = hilbert_basis(g)
    rels = binomial_relations(hb)
    assert set(hb.generators) == set(letters.values())
    assert _our_relation_set(hb, rels) == _relation_set(quadrics, letters)
    index = {v: i for i, v in enumerate(hb.generators)}

    def gen_exponents(word):
        e = [0] * len(hb.generators)
        i = 0
        while i < len(word):
            p = 1
            if i + 1 < len(word) and word[i + 1] == "^":
                p = int(word[i + 2])
                e[index[letters[word[i]]]] += p
                i += 3
            else:
                e[index[letters[word[i]]]] += 1
                i += 1
        return tuple(e)

    for a, b in cubics:
        assert binomial_in_ideal(gen_exponents(a), gen_exponents(b), rels, hb.generators)
    assert all(r.degree == 2 for r in rels)

    # toric11.1: the three listed relations, and all six from the presentation over R
    g, names, table, listed, table2, listed2 = TORIC11
    hb = hilbert_basis(g)
    ours = _our_relation_set(hb, binomial_relations(hb))
    first = _relation_set(listed, _letters(names, table))
    over_r = _relation_set(listed2, _letters(names, table2))
    ring = _relation_set([("AB", "C^2")], _letters(names, table2))
    assert set(hb.generators) == set(_letters(names, table).values())
    assert first <= ours
    assert ours == over_r | ring


# -- 2: vertex fibre fingerprint ------------------------------------------

def _truncated_dim(nvars, relations, power):
    """dim K[vars] / (m^power + (relations)), by linear algebra in the truncated ring.

    A relation is a list of (coefficient, monomial) with monomials as sorted
    tuples of variable indices.  The ideal in K[vars]/m^power is spanned by
    monomial multiples of the relations with terms of degree >= power dropped.
    """
    from itertools import combinations_with_replacement

    import sympy

    mons = [m for deg in range(power) for m in combinations_with_replacement(range(nvars), deg)]
    index = {m: i for i, m in enumerate(mons)}
    rows = []
    for rel in relations:
        for mult in mons:
            row = [0] * len(mons)
            for c, mon in rel:
                full = tuple(sorted(mult + mon))
                if full in index:
                    row[index[full]] += c
            if any(row):
                rows.append(row)
    rank = sympy.Matrix(rows).rank() if rows else 0
    return len(mons) - rank


def test_criterion_02_vertex_fiber_dimensions():
    ours = [vertex_fiber(AbelianGrading.cyclic(5, [1], [l]), 3).trunc_dims[-1] for l in (2, 3)]
    # expected presentations of the two fibre rings, variables (B, C, D) and (B, E, F)
    b2 = [[(1, (1, 1))], [(1, (1, 2, 2))], [(1, (2, 2, 2)), (-1, (0, 1))]]
    b3 = [[(1, (1, 1, 2))], [(1, (1, 1, 1))], [(1, (2, 2)), (-1, (0, 1))]]
    assert ours == [_truncated_dim(3, b2, 3), _truncated_dim(3, b3, 3)] == [8, 9]


# -- 3: S3 invariant ring and the sign algebra ----------------------------

def _span_rank(polys):
    from invar.poly import SpanTracker

    t = SpanTracker(1)
    return sum(1 for p in polys if t.add(p.terms)[0])


def _products(gens, n, space):
    out = []

    def rec(i, left, acc):
        if left == 0:
            out.append(acc)
            return
        if i == len(gens):
            return
        cur = acc
        k = 0
        while k * gens[i][1] <= left:
            rec(i + 1, left - k * gens[i][1], cur)
            cur = cur * gens[i][0]
            k += 1

    rec(0, n, Poly.constant(space, 1))
    return out


def test_criterion_03_symmetric_group_generators():
    s = sym3()
    pres = min_generators(s.beta)
    assert pres.degrees == [(1, 0), (2, 0), (3, 0)]
    assert pres.relations == []
    space = pres.space
    X, Y, Z = (Poly.var(space, i) for i in range(3))
    E = [(X + Y + Z, 1), (X * Y + X * Z + Y * Z, 2), (X * Y * Z, 3)]
    ours = [(p, b[0]) for p, b in pres.generators]
    for n in range(1, 7):
        a, b = _products(ours, n, space), _products(E, n, space)
        assert _span_rank(a) == _span_rank(b) == _span_rank(a + b)

    s = sym3("sign")
    pres = min_generators(s.beta, s.rho)
    degs = pres.degrees
    assert sorted(degs) == [(0, 2), (1, 0), (2, 0), (3, 0), (3, 1)]
    assert pres.complete_generators
    assert pres.relation_bidegrees == [(6, 2)]
    (rel,) = pres.relations
    u, v = degs.index((0, 2)), degs.index((3, 1))
    base = [degs.index(b) for b in ((1, 0), (2, 0), (3, 0))]
    # rel = c V^2 + U * Delta'(A, B, C)
    sq = tuple(2 * (i == v) for i in range(5))
    assert sq in rel.terms
    delta_terms = {}
    for e, c in rel.terms.items():
        if e == sq:
            continue
        assert e[u] == 1 and e[v] == 0
        delta_terms[tuple(x - (i == u) for i, x in enumerate(e))] = c
    assert all(e[u] == 0 for e in delta_terms)
    delta = pres.substitute(Poly(rel.space, delta_terms))
    space = pres.space
    X, Y, Z = (Poly.var(space, i) for i in range(3))
    vandermonde_sq = ((X - Y) * (X - Z) * (Y - Z)) ** 2
    assert delta.monic() == vandermonde_sq.monic()
    assert not pres.substitute(rel)


# -- 4: generator counts for reflection groups -----------------------------

def test_criterion_04_hilbert_function_reflection_beta():
    for rho, m in (("sign", 1), ("natural", 3)):
        s = sym3(rho)
        eng = InvariantEngine(s.beta, s.rho)
        for n in range(5):
            assert eng.mu(n) == comb(n + m - 1, m - 1), (rho, n)


# -- 5: Molien series against basis dimensions ------------------------------

def _all_builtins():
    out = [
        cyclic(3, [1, 2], [1]), cyclic(6, [2, 3], [1]),
        cyclicone(2, 1), cyclicone(3, 1), cyclicone(3, 2), cyclicone(5, 2), cyclicone(4, 2),
        asingularity(3, 1), toric11(), klein(1), klein(2), cyclic4reflection(),
        regular_cyclic(3),
    ]
    out += [sym3(r) for r in ("none", "sign", "natural", "trivial", "standard")]
    out += [s3_reflection(r) for r in ("none", "det", "natural")]
    return out


def test_criterion_05_molien_matches_basis_dimensions():
    for s in _all_builtins():
        eng = InvariantEngine(s.beta, s.rho)
        if s.rho is None:
            ser = molien(s.beta, 6)
            for n in range(7):
                assert ser[n] == len(eng.basis(n, 0)), (s.name, n)
        else:
            ser = molien(product_rep(s.beta, s.rho), 6, bigraded=True, split=s.beta.dim)
            for a in range(7):
                for b in range(7 - a):
                    assert ser[(a, b)] == len(eng.basis(a, b)), (s.name, s.params, a, b)


# -- 6: Sym_R(M) against B^rho ----------------------------------------------

def test_criterion_06_symmetric_algebra_comparison():
    for s in _all_builtins():
        if s.rho is None:
            continue
        rep = sym_vs_invariant(s.beta, s.rho, (3, 2))
        assert rep.per_degree[0].surjective and rep.per_degree[1].surjective, s.name
    for k in range(2, 7):
        for l in range(1, k):
            s = cyclicone(k, l)
            rep = sym_vs_invariant(s.beta, s.rho, (k, k))
            j = next(j for j in range(1, k + 1) if j * (k - l) >= k)
            assert rep.first_failure == j, (k, l)
            witness = Poly.monomial(rep.witness.space, (j * (k - l) - k, j))
            assert rep.witness.monic() == witness, (k, l)
    for k in range(2, 5):
        s = cyclicone(k, 0)
        rep = sym_vs_invariant(s.beta, s.rho, (k, k))
        assert rep.first_failure is None


# -- 7: fundamental groups ------------------------------------------------------

def test_criterion_07_fundamental_groups():
    for k in range(2, 9):
        for l in range(k):
            s = cyclicone(k, l)
            q = fundamental_group(product_rep(s.beta, s.rho))
            assert q.order == k // gcd(k, l), (k, l)
            assert fundamental_group(s.beta).order == 1
    faithful = [sym3("natural"), sym3("regular"), s3_reflection("natural"), cyclicone(5, 2),
                cyclicone(7, 3), regular_cyclic(4)]
    for s in faithful:
        assert s.rho.is_faithful()
        assert fundamental_group(product_rep(s.beta, s.rho)).order == len(s.group)
    k1, k2 = klein(1), klein(2)
    assert fundamental_group(product_rep(k1.beta, k1.rho)).invariant_factors == (2,)
    assert fundamental_group(product_rep(k2.beta, k2.rho)).invariant_factors == (2, 2)
    assert fundamental_group(k1.beta).order == 1
    s = cyclic4reflection()
    surj = pi1_surjection(s.beta, s.rho)
    assert (surj.total.order, surj.base.order) == (4, 2)
    assert (surj.total.invariant_factors, surj.base.invariant_factors) == ((4,), (2,))


# -- 8: stabilizer criterion against the nilpotency oracle ------------------

def _toric_cases():
    cases = []
    for k in range(2, 6):
        for l in range(k):
            s = cyclicone(k, l)
            cases += [(s, (0,)), (s, (1,))]
    for s in (toric11(), klein(1), klein(2), asingularity(3, 1), asingularity(4, 2), cyclic4reflection(),
              cyclic(6, [2, 3], [1])):
        cases += [(s, (0, 0)), (s, (1, 0)), (s, (0, 1)), (s, (2, 3))]
    return cases


def test_criterion_08_nonreduced_fibers_cross_oracle():
    cases = _toric_cases()
    assert len(cases) >= 20
    verdicts = []
    for s, pt in cases:
        stab = fiber_report(s.beta, s.rho, pt).reduced
        support = [i for i, x in enumerate(pt) if x]
        oracle = not nilpotency_oracle(s.grading, support)
        assert stab == oracle, (s.name, s.params, pt)
        verdicts.append(stab)
    assert True in verdicts and False in verdicts


# -- 9: normalization and pullback certificates -----------------------------

def test_criterion_09_normalization_and_pullback():
    g = AbelianGrading.cyclic(2, [1], [1])
    v = normalization_check(g, g)
    assert v.is_normalization
    assert v.non_surjective == [(0, 1, 1)]
    cert = next(c for c in v.integrality if c.generator == (0, 1, 1))
    # (W W~)^2 = B B~ in the tensor product
    assert cert.multiple == 2
    assert fine_degree(cert.decomposition, v.tensor_generators) == (0, 2, 2)
    assert [v.tensor_generators[i] for i, e in enumerate(cert.decomposition) if e] == [(0, 2, 0), (0, 0, 2)]
    wit = dict(v.lattice_witnesses)[(0, 1, 1)]
    assert fine_degree(wit, v.tensor_generators) == (0, 1, 1)
    for k in (2, 3, 4):
        p = pullback_check(AbelianGrading.cyclic(k, [1], [k - 1]))
        assert p.is_normalization
        (c,) = p.integrality
        assert (c.generator, c.multiple) == ((0, 1), k)
        assert fine_degree(c.decomposition, p.image_generators) == (0, k)
        w = dict(p.lattice_witnesses)[(0, 1)]
        assert fine_degree(w, p.image_generators) == (0, 1)


# -- 10: singularities ------------------------------------------------------------

def test_criterion_10_singularity_classification():
    s = cyclic4reflection()
    on_line = [((0, 0), 0), ((1, 0), 0), ((2, 0), 0), ((-3, 0), 0), (("1/2", 0), 0)]
    off_line = [((0, 1), 0), ((0, 0), 1), ((1, 1), 0), ((1, 0), 1), ((0, 1), 1), ((1, 1), 1), ((2, -1), 3)]
    assert len(on_line) + len(off_line) == 12
    for q, w in on_line:
        assert point_singular(s.beta, s.rho, q, (w,)), q
    for q, w in off_line:
        assert not point_singular(s.beta, s.rho, q, (w,)), (q, w)

    s = sym3("sign")
    for q in [(1, 2, 3), (0, 1, -1)]:
        r = singularity_report(s.beta, s.rho, q)
        assert not r.contains_singular
    for q in [(1, 1, 2), (0, 0, 5), (3, -1, 3)]:
        r = singularity_report(s.beta, s.rho, q)
        assert r.contains_singular and r.zero_section_singular and not r.all_singular
        assert point_singular(s.beta, s.rho, q, (0,))
        assert not point_singular(s.beta, s.rho, q, (1,))
    for q in [(0, 0, 0), (2, 2, 2)]:
        r = singularity_report(s.beta, s.rho, q)
        assert r.all_singular
        assert point_singular(s.beta, s.rho, q, (7,))


# -- 11: property suites ----------------------------------------------------------

PROPERTY_SUITES = [
    "test_cyclotomic.py::test_field_axioms",
    "test_cyclotomic.py::test_complex_embedding_is_a_ring_map",
    "test_groups.py::test_generator_images_define_homomorphisms",
    "test_groups.py::test_lagrange",
    "test_reflections.py::test_reflections_closed_under_conjugation",
    "test_reflections.py::test_product_reflection_subgroup_contained",
    "test_invariants.py::test_reynolds_idempotent_and_invariant",
    "test_toric.py::test_hilbert_basis_brute_force",
]


def test_criterion_11_property_suites():
    ids = [str(HERE / p) for p in PROPERTY_SUITES]
    res = subprocess.run([sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider", *ids],
                         capture_output=True, text=True, cwd=HERE.parent)
    assert res.returncode == 0, res.stdout[-2000:]


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
