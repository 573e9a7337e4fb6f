import itertools

import pytest

from quildeg import grpcat as gc
from quildeg.errors import BadPermutation, GroupTooLarge


def brute_elementary_abelians(G, p):
    """Every subset closed under products, abelian, of exponent p (or trivial)."""
    elems = G.sorted_elements
    e = G.identity
    out = set()
    others = [g for g in elems if g != e and gc.order(g) == p]
    for k in range(0, 4):
        for gens in itertools.combinations(others, k):
            if all(gc.mul(a, b) == gc.mul(b, a) for a in gens for b in gens):
                out.add(gc.closure(gens, G.degree) | {e})
    return {frozenset(H) for H in out}


@pytest.mark.parametrize("make,order", [
    (gc.symmetric3, 6), (gc.dihedral8, 8), (gc.alternating4, 12),
    (gc.klein_four, 4), (lambda: gc.cyclic(5), 5),
    (lambda: gc.elementary_abelian_group(2, 3), 8),
])
def test_orders(make, order):
    assert make().order == order


def test_permutation_helpers():
    g = gc.parse_cycles("(0 1 2)", 3)
    h = gc.parse_cycles("(0 1)", 3)
    assert gc.mul(g, h) == (2, 1, 0)  # h first, then g
    assert gc.mul(g, gc.inverse(g)) == gc.identity(3)
    assert gc.order(g) == 3
    assert gc.format_cycles(g) == "(0 1 2)"
    assert gc.format_cycles(gc.identity(3)) == "()"


def test_bad_permutation():
    with pytest.raises(BadPermutation):
        gc.parse_cycles("(0 1 1)", 3)
    with pytest.raises(BadPermutation):
        gc.check_perm((0, 0, 1))


def test_group_bound():
    with pytest.raises(GroupTooLarge):
        gc.PermGroup.from_cycles(["(0 1 2 3 4 5 6)", "(0 1)"], bound=100).elements


@pytest.mark.parametrize("make,p", [
    (gc.dihedral8, 2), (gc.symmetric3, 2), (gc.symmetric3, 3), (gc.alternating4, 2),
    (gc.klein_four, 2),
])
def test_elementary_abelians_match_brute_force(make, p):
    G = make()
    assert set(gc.elementary_abelians(G, p)) == brute_elementary_abelians(G, p)


def test_d4_rank_two_classes():
    G = gc.dihedral8()
    X = gc.point(G)
    top = gc.q_prime_max(G, 2, X)
    assert len(top) == 2
    assert all(cl.rank == 2 for cl in top)
    assert [gc.weyl_order(G, X, cl.rep) for cl in top] == [2, 2]


def test_s3_p3_weyl():
    G = gc.symmetric3()
    X = gc.point(G)
    (cl,) = gc.q_prime_max(G, 3, X)
    assert cl.rank == 1 and gc.weyl_order(G, X, cl.rep) == 2


def test_a4_weyl():
    G = gc.alternating4()
    X = gc.point(G)
    (cl,) = gc.q_prime_max(G, 2, X)
    assert cl.rank == 2 and gc.weyl_order(G, X, cl.rep) == 3


def test_cosets_plus_free_orbit():
    G = gc.symmetric3()
    A3 = gc.generated(G, [gc.parse_cycles("(0 1 2)", 3)])
    X = gc.coset_space(G, A3) + gc.free_orbits(G, 1)
    assert X.size == 8
    qp = gc.q_prime(G, 3, X)
    assert sorted(cl.rank for cl in qp) == [0, 1]
    (top,) = gc.q_prime_max(G, 3, X)
    assert top.rank == 1 and gc.weyl_order(G, X, top.rep) == 1
    assert gc.max_rank(G, 3, X) == 1


def test_gset_action_is_homomorphism():
    G = gc.dihedral8()
    X = gc.coset_space(G, gc.generated(G, [gc.parse_cycles("(0 2)", 4)]))
    for g in G.sorted_elements:
        for h in G.sorted_elements:
            for x in range(X.size):
                assert X.act(gc.mul(g, h), x) == X.act(g, X.act(h, x))


FIXTURE_GROUPS = [
    (gc.symmetric3, 3, "pt"), (gc.symmetric3, 2, "pt"), (gc.dihedral8, 2, "pt"),
    (gc.alternating4, 2, "pt"), (gc.klein_four, 2, "pt"),
    (lambda: gc.elementary_abelian_group(2, 3), 2, "pt"),
    (lambda: gc.elementary_abelian_group(3, 2), 3, "pt"),
    (lambda: gc.cyclic(2), 3, "pt"),
    (gc.symmetric3, 3, "cosets+free"), (gc.dihedral8, 2, "cosets"),
]


def make_gset(G, kind):
    if kind == "pt":
        return gc.point(G)
    if kind == "cosets":
        return gc.coset_space(G, gc.generated(G, [gc.parse_cycles("(0 2)", 4)]))
    A3 = gc.generated(G, [gc.parse_cycles("(0 1 2)", 3)])
    return gc.coset_space(G, A3) + gc.free_orbits(G, 1)


@pytest.mark.parametrize("make,p,kind", FIXTURE_GROUPS)
def test_maximality_criteria_agree(make, p, kind):
    G = make()
    X = make_gset(G, kind)
    pairs = gc.quillen_pairs(G, p, X)
    for q in pairs:
        # raises CriterionMismatch on disagreement
        gc.is_maximal_pair(G, p, X, q, pairs)


@pytest.mark.parametrize("make,p,kind", FIXTURE_GROUPS)
def test_class_structure(make, p, kind):
    G = make()
    X = make_gset(G, kind)
    classes = gc.pair_classes(G, p, X)
    assert sum(len(cl) for cl in classes) == len(gc.quillen_pairs(G, p, X))
    for cl in classes:
        sizes = set()
        for q in cl.members:
            N = gc.pair_normalizer(G, X, q)
            C = gc.pair_centralizer(G, X, q)
            assert C <= N
            assert len(N) % len(C) == 0 and G.order % len(N) == 0
            assert len(cl) == G.order // len(N)
            sizes.add(gc.weyl_order(G, X, q))
        assert len(sizes) == 1


def test_subconjugacy_is_reflexive():
    G = gc.dihedral8()
    X = gc.point(G)
    for q in gc.quillen_pairs(G, 2, X):
        assert gc.is_subconjugate(G, X, q, q)


def test_no_pairs_gives_rank_zero():
    G = gc.cyclic(2)
    assert gc.max_rank(G, 3, gc.point(G)) == 0
