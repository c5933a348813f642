import pytest
from hypothesis import given
from hypothesis import strategies as st

from groupzoo import perm, zoo
from invar.builtins import s3_reflection, sym3
from invar.cyclotomic import CycNum
from invar.errors import BudgetExceeded, ValidationError
from invar.groups import (
    Representation,
    close_group,
    defining_rep,
    det_rep,
    generated_subgroup,
    inner_product,
    is_irreducible,
    multiplicity,
    normal_closure,
    product_rep,
    quotient,
    regular_rep,
    stabilizer,
    trivial_rep,
)
from invar.matrix import CycMatrix

ZOO = zoo()
names = st.sampled_from(sorted(ZOO))


@pytest.mark.parametrize("name", sorted(ZOO))
def test_known_orders(name):
    gens, order = ZOO[name]
    G = close_group(gens)
    assert G.order == order
    assert G.elements[0].is_identity()


@pytest.mark.parametrize("name", sorted(ZOO))
def test_cayley_table_is_matrix_multiplication(name):
    G = close_group(ZOO[name][0])
    for a in range(G.order):
        for b in range(G.order):
            assert G.elements[G.mul(a, b)] == G.elements[a] * G.elements[b]
        assert (G.elements[a] * G.elements[G.inverses[a]]).is_identity()


@given(names, st.data())
def test_lagrange(name, data):
    G = close_group(ZOO[name][0])
    picks = data.draw(st.lists(st.integers(0, G.order - 1), max_size=3))
    H = generated_subgroup(G, picks)
    assert G.order % H.order == 0
    for a in H.indices:
        for b in H.indices:
            assert G.mul(a, b) in H
    for g in range(G.order):
        assert G.order % G.element_order(g) == 0


@given(names, st.data())
def test_normal_closure_quotient(name, data):
    G = close_group(ZOO[name][0])
    picks = data.draw(st.lists(st.integers(0, G.order - 1), max_size=2))
    N = normal_closure(G, picks)
    assert N.is_normal()
    Q = quotient(G, N)
    assert Q.order * N.order == G.order
    if Q.is_abelian and Q.order > 1:
        prod = 1
        for k in Q.invariant_factors:
            prod *= k
        assert prod == Q.order
        assert all(b % a == 0 for a, b in zip(Q.invariant_factors, Q.invariant_factors[1:]))


def test_quotient_rejects_non_normal():
    G = close_group(ZOO["S3"][0])
    H = generated_subgroup(G, [G.generator_indices[0]])
    with pytest.raises(ValidationError):
        quotient(G, H)


def test_quotient_descriptions():
    G = close_group(ZOO["Z3xZ3"][0])
    assert quotient(G, G.trivial_subgroup()).describe() == "Z/3 x Z/3"
    G = close_group(ZOO["Z6"][0])
    assert quotient(G, G.trivial_subgroup()).describe() == "Z/6"
    assert quotient(G, G.whole()).describe() == "trivial"


@given(names, st.data())
def test_generator_images_define_homomorphisms(name, data):
    # a character of the abelianization, pushed through generators
    G = close_group(ZOO[name][0])
    r = det_rep(defining_rep(G))
    built = Representation.from_generators(G, [r.images[j] for j in G.generator_indices])
    a = data.draw(st.integers(0, G.order - 1))
    b = data.draw(st.integers(0, G.order - 1))
    assert built.images[G.mul(a, b)] == built.images[a] * built.images[b]
    assert built.images == r.images


def test_bad_generator_images_rejected():
    G = close_group(ZOO["S3"][0])
    # (12) -> -1, (23) -> 1 does not respect (12)(23) having order 3
    with pytest.raises(ValidationError):
        Representation.from_generators(G, [CycMatrix.diag([-1]), CycMatrix.diag([1])])


@pytest.mark.parametrize("name", sorted(ZOO))
def test_regular_representation(name):
    G = close_group(ZOO[name][0])
    reg = regular_rep(G)
    vals = reg.character.values
    assert vals[0] == G.order and all(v == 0 for v in vals[1:])
    for a in range(G.order):
        for b in range(G.order):
            assert reg.images[G.mul(a, b)] == reg.images[a] * reg.images[b]
    assert reg.is_faithful()


@pytest.mark.parametrize("setting", [sym3(), s3_reflection()])
def test_character_orthogonality_and_regular_multiplicities(setting):
    irr = setting.irreducibles
    G = setting.group
    assert sum(int(r.dim) ** 2 for r in irr) == G.order
    assert len(irr) == len(G.conjugacy_classes)
    for a in irr:
        for b in irr:
            assert inner_product(a, b) == (1 if a is b else 0)
    reg = regular_rep(G)
    for r in irr:
        assert multiplicity(r, reg) == r.dim
    assert all(is_irreducible(r) for r in irr)


def test_natural_permutation_decomposes():
    s = sym3()
    nat = defining_rep(s.group)
    mult = [multiplicity(r, nat) for r in s.irreducibles]
    assert mult == [1, 0, 1]


def test_product_and_stabilizer():
    G = close_group(ZOO["S3"][0])
    beta = defining_rep(G)
    prod = product_rep(beta, trivial_rep(G, 2))
    assert prod.dim == 5
    assert stabilizer(beta, (1, 1, 2)).order == 2
    assert stabilizer(beta, (1, 1, 1)).order == 6
    assert stabilizer(beta, (1, 2, 3)).order == 1


def test_group_cap():
    M = CycMatrix.from_rows([[1, 1], [0, 1]])
    with pytest.raises(BudgetExceeded):
        close_group([M], cap=50)


@pytest.mark.parametrize("name", sorted(ZOO))
def test_class_equation(name):
    G = close_group(ZOO[name][0])
    classes = G.conjugacy_classes
    assert sum(len(c) for c in classes) == G.order
    assert all(G.order % len(c) == 0 for c in classes)
    assert (len(classes) == G.order) == G.is_abelian


def test_cyclotomic_levels_mix():
    G = close_group([CycMatrix.diag([CycNum.zeta(3)], 3)])
    r = Representation.from_generators(G, [CycMatrix.diag([CycNum.zeta(6, 2)], 6)])
    assert r.level == 6
    assert r.is_faithful()
    assert perm([0]).is_identity()
