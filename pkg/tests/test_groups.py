import itertools

import pytest

from realpgonal.groups import (
    GroupError,
    FiniteGroup,
    automorphisms,
    centralizer,
    conjugacy_classes,
    element_order,
    invariants,
    is_isomorphic,
    is_normal,
    minimal_generators,
    normalizer,
    quotient_by_normal,
    subgroup_generated,
)
from realpgonal.recipes import cyclic, dihedral, direct, named


def perm_group(perms):
    """Brute-force closure of permutation tuples, used as an independent oracle."""
    elems = {tuple(range(len(perms[0])))}
    frontier = list(elems)
    while frontier:
        nxt = []
        for a in frontier:
            for b in perms:
                c = tuple(a[i] for i in b)
                if c not in elems:
                    elems.add(c)
                    nxt.append(c)
        frontier = nxt
    elems = sorted(elems)
    index = {e: i for i, e in enumerate(elems)}
    table = [[index[tuple(a[i] for i in b)] for b in elems] for a in elems]
    return FiniteGroup(table)


def test_table_validation():
    with pytest.raises(GroupError):
        FiniteGroup([[0, 1], [1, 1]])
    with pytest.raises(GroupError):
        FiniteGroup([[0, 1, 2]])


def test_orders_and_classes_of_s3():
    S3 = dihedral(3)
    assert sorted(S3.orders) == [1, 2, 2, 2, 3, 3]
    assert sorted(len(c) for c in conjugacy_classes(S3)) == [1, 2, 3]
    assert not S3.is_abelian


def test_normalizer_and_centralizer():
    D4 = dihedral(4)
    s = D4.names["s"]
    H = subgroup_generated(D4, [s])
    assert normalizer(D4, H).order == 4
    assert centralizer(D4, [s]).order == 4
    rot = subgroup_generated(D4, [D4.names["r"]])
    assert is_normal(D4, rot) and not is_normal(D4, H)


def test_quotient():
    D6 = dihedral(6)
    Z = subgroup_generated(D6, [D6.power(D6.names["r"], 3)])
    Q = quotient_by_normal(D6, Z)
    assert Q.n == 6 and is_isomorphic(Q, dihedral(3))[0]


def test_isomorphism_against_permutation_oracles():
    S4 = perm_group([(1, 0, 2, 3), (1, 2, 3, 0)])
    assert S4.n == 24
    assert is_isomorphic(named("S4"), S4)[0]
    assert not is_isomorphic(named("S4"), direct(named("A4"), cyclic(2)))[0]
    assert is_isomorphic(direct(cyclic(3), cyclic(2)), cyclic(6))[0]
    assert not is_isomorphic(dihedral(4), direct(cyclic(4), cyclic(2)))[0]


def test_invariants_distinguish_small_groups():
    assert invariants(cyclic(8)) != invariants(direct(cyclic(4), cyclic(2)))


def test_automorphism_counts():
    assert len(automorphisms(cyclic(7))) == 6
    assert len(automorphisms(dihedral(3))) == 6
    assert len(automorphisms(direct(cyclic(2), cyclic(2)))) == 6


@pytest.mark.parametrize("G", [cyclic(12), dihedral(5), named("A4"), named("A5")])
def test_group_axioms_and_generators(G):
    assert G.is_associative()
    assert subgroup_generated(G, minimal_generators(G)).order == G.n
    for g in range(G.n):
        assert G.mul(g, G.inv(g)) == G.identity
        assert element_order(G, g) == G.orders[g]


def test_word_round_trip():
    D5 = dihedral(5)
    for g in range(D5.n):
        assert D5.word(D5.word_of(g)) == g
    assert D5.word("r^{k} s", {"k": 2}) == D5.mul(D5.power(D5.names["r"], 2), D5.names["s"])
    with pytest.raises(GroupError):
        D5.word("t")


def test_conjugacy_classes_partition():
    G = named("S4")
    classes = conjugacy_classes(G)
    flat = list(itertools.chain.from_iterable(classes))
    assert sorted(flat) == list(range(G.n))
    assert sorted(map(len, classes)) == [1, 3, 6, 6, 8]
