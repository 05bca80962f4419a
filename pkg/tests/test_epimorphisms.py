import itertools

import pytest

from realpgonal.epimorphisms import (
    EnumerationBudgetError,
    EpiError,
    check_surface_kernel,
    coset_action,
    enumerate_surface_kernel_epis,
    kernel_genus,
    right_cosets,
    target_group,
    theta1,
    theta2,
    theta3,
)
from realpgonal.groups import subgroup_generated
from realpgonal.signatures import canonical_presentation, parse_signature


def brute_force(sig, G):
    """Every image tuple accepted by check_surface_kernel (exhaustive oracle)."""
    n = len(canonical_presentation(sig).generators)
    return [imgs for imgs in itertools.product(range(G.n), repeat=n)
            if check_surface_kernel(sig, G, imgs) is None]


@pytest.mark.parametrize("text", ["(0,+,[3],{(3,3)})", "(0,+,[3,3],{(3)})", "(0,+,[-],{(3,3,3)})",
                                  "(0,+,[3,3],{(-)})"])
@pytest.mark.parametrize("kind", ["D", "C"])
def test_enumeration_matches_brute_force(text, kind):
    sig, G = parse_signature(text), target_group(kind, 3)
    got = [e.images for e in enumerate_surface_kernel_epis(sig, G)]
    assert got == brute_force(sig, G)


def test_sharded_enumeration_is_identical():
    sig, G = parse_signature("(0,+,[3,3],{(3,3,3)})"), target_group("D", 3)
    one = enumerate_surface_kernel_epis(sig, G)
    assert one and enumerate_surface_kernel_epis(sig, G, jobs=3) == one


def test_budgets():
    sig, G = parse_signature("(0,+,[3,3],{(3,3,3)})"), target_group("D", 3)
    with pytest.raises(EnumerationBudgetError):
        enumerate_surface_kernel_epis(sig, G, max_nodes=10)
    with pytest.raises(EnumerationBudgetError):
        enumerate_surface_kernel_epis(sig, G, max_results=1)


def test_failure_messages():
    sig, G = parse_signature("(0,+,[3],{(3)})"), target_group("D", 3)
    r, s, e = G.names["r"], G.names["s"], G.identity
    assert check_surface_kernel(sig, G, [r, e, s, s]).startswith("relator")
    assert check_surface_kernel(sig, G, [e, e, s, s]).startswith("torsion")
    assert "no image" in check_surface_kernel(sig, G, {})


@pytest.mark.parametrize("make, genus", [(lambda: theta1(3, 5), 5), (lambda: theta2(3, 4), 4),
                                         (lambda: theta3(3, 4, "D"), 4),
                                         (lambda: theta3(3, 4, "C"), 4),
                                         (lambda: theta3(3, 4, "C", "r"), 4),
                                         (lambda: theta1(5, 18), 18),
                                         (lambda: theta3(5, 16, "D"), 16)])
def test_constructions(make, genus):
    epi = make()
    assert check_surface_kernel(epi.signature, epi.target, epi.images) is None
    assert kernel_genus(epi) == genus


def test_construction_domains():
    with pytest.raises(EpiError):
        theta2(3, 5)
    with pytest.raises(EpiError):
        theta3(3, 5)


def test_cosets_and_action():
    epi = theta1(3, 5)
    G = epi.target
    H = subgroup_generated(G, [G.names["s"]])
    cosets = right_cosets(G, H)
    assert len(cosets) == 3 and sorted(x for c in cosets for x in c) == list(range(G.n))
    for perm in coset_action(epi, H).values():
        assert sorted(perm) == [0, 1, 2]


def test_record_round_trip():
    epi = theta1(3, 5)
    rec = epi.to_record()
    G = epi.target
    assert [G.word(w) for w in rec["images"].values()] == list(epi.images)
