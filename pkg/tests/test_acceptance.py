"""Acceptance criteria 1-9; conftest prints one PASS/FAIL line per criterion."""

from fractions import Fraction

import pytest

from realpgonal.classifier import (
    Budget,
    classify_symmetries,
    dumps_report,
    ledger_entries,
    pair_type,
    spherical_quotient,
    verify_all,
    verify_case,
)
from realpgonal.epimorphisms import (
    check_surface_kernel,
    enumerate_surface_kernel_epis,
    kernel_genus,
    target_group,
    theta1,
    theta2,
    theta3,
)
from realpgonal.groups import is_normal, subgroup_generated
from realpgonal.recipes import realize
from realpgonal.signatures import (
    area,
    cyclic_p_gonal_signature,
    format_signature,
    kernel_surface_genus,
    parse_signature,
    real_cyclic_signatures,
)
from realpgonal.species import schreier_sign_test, three_condition_sign, verify_theorem2

criterion = pytest.mark.criterion


@pytest.fixture(scope="module")
def sweeps():
    return {pg: verify_theorem2(*pg) for pg in ((3, 5), (3, 6))}


@pytest.fixture(scope="module")
def full_report():
    return verify_all(Budget())


@criterion(1, "exact signature areas")
def test_criterion_1_areas():
    assert area(parse_signature("(0,+,[3,3],{(3,3,3,3)})")) == Fraction(5, 3)
    assert area(parse_signature("(0,[3,3,3,3])")) == Fraction(2, 3)
    assert area(parse_signature("(2,[-])")) == 2


@criterion(2, "genus relations and round trips")
def test_criterion_2_genus_relations():
    sigs = real_cyclic_signatures(3, 5)
    one_cycle = [s for s, tag in sigs if s.period_cycles[0]]
    assert len(one_cycle) == 4
    assert all(2 * s.r + len(s.period_cycles[0]) == 7 for s in one_cycle)
    empty = [s for s, _ in real_cyclic_signatures(3, 4) if not s.period_cycles[0]]
    assert [format_signature(s) for s in empty] == ["(0,+,[3,3,3],{(-)})"]
    assert cyclic_p_gonal_signature(5, 16).r == 10
    for p, g in ((3, 5), (3, 4), (5, 16)):
        assert kernel_surface_genus(cyclic_p_gonal_signature(p, g), p) == g
        for s, _ in real_cyclic_signatures(p, g):
            assert kernel_surface_genus(s, 2 * p) == g


@criterion(3, "explicit constructions are surface-kernel epimorphisms")
def test_criterion_3_constructions():
    for epi, g in ((theta1(3, 5), 5), (theta2(3, 4), 4), (theta3(3, 4, "D"), 4),
                   (theta3(3, 4, "C"), 4), (theta3(3, 4, "C", "r"), 4)):
        assert check_surface_kernel(epi.signature, epi.target, epi.images) is None
        assert kernel_genus(epi) == g


@criterion(4, "species of the constructions")
def test_criterion_4_species():
    from realpgonal.species import species

    assert species(theta1(3, 5)).value == -1
    assert species(theta2(3, 4)).value == 1
    assert species(theta3(3, 4, "D")).value == -3
    assert species(theta3(3, 4, "C")).value == 3
    assert species(theta3(3, 4, "C", "r")).value == 1


@criterion(5, "species sweep over all epimorphisms at (3,5) and (3,6)")
def test_criterion_5_sweep(sweeps):
    for (p, g), rep in sweeps.items():
        allowed = set(rep["allowed_species"])
        assert rep["epimorphisms"] > 0
        for r in rep["records"]:
            if r["flag"] == "FINDING":
                assert r["problems"]  # evidence attached
                continue
            assert r["species"] in allowed
            if r["target"] == "C_6":
                assert r["species"] > 0
        assert rep["findings"] == 0


@criterion(6, "three-condition sign equals the coset-graph sign")
def test_criterion_6_sign_rules(sweeps):
    D = target_group("D", 3)
    checked = 0
    for p, g in sweeps:
        for sig, _ in real_cyclic_signatures(p, g):
            for epi in enumerate_surface_kernel_epis(sig, D):
                assert three_condition_sign(epi) == schreier_sign_test(epi)
                checked += 1
    recorded = sum(r["target"] == "D_3" for rep in sweeps.values() for r in rep["records"])
    assert checked == recorded > 0
    assert all(r.get("schreier_sign") in ("+", "-") for rep in sweeps.values()
               for r in rep["records"] if r["target"] == "D_3")


def _by_claim(frag):
    return {c["claim"]: c for c in frag["claims"]}


@criterion(7, "hand-verified ledger cases")
def test_criterion_7_hand_cases():
    expected = [("1a", 2, 2, "G"), ("1a", 5, 1, "G"), ("1b", 5, 1, "D_3")]
    for case, q, classes, norm in expected:
        frag = verify_case(case, {"p": 3, "q": q})
        assert all(c["status"] == "MATCH" for c in frag["claims"]), frag
        claims = _by_claim(frag)
        assert claims["number of symmetry classes"]["computed"] == classes
        n = claims["normalizer for sigma"]
        assert n["computed"]["N(<phi,sigma>)"] == norm
    assert _by_claim(verify_case("1b", {"p": 3, "q": 5}))["normalizer for sigma"]["matched_via"] \
        == "N(<phi,sigma>)"

    frag = verify_case("2a", {"p": 3, "q": 3})
    claims = _by_claim(frag)
    assert claims["number of symmetry classes"]["status"] == "MATCH"
    bad = [c for c in frag["claims"] if c["status"] == "MISMATCH"]
    assert len(bad) == 1 and bad[0]["claim"].startswith("normalizer")
    assert bad[0]["witness"]["N(<phi,sigma>)"]["order"] == 12


@criterion(8, "full ledger run at the default budget")
def test_criterion_8_full_run(full_report):
    s = full_report["summary"]
    assert s["entries"] == [e.id for e in ledger_entries()]
    assert s["errors"] == 0 and s["match"] + s["mismatch"] == s["claims"] > 0
    for r in full_report["results"]:
        assert "error" not in r
        for c in r["claims"]:
            assert c["status"] in ("MATCH", "MISMATCH")
            if c["status"] == "MISMATCH":
                assert c["witness"]
    assert dumps_report(verify_all(Budget())) == dumps_report(full_report)


@criterion(9, "structural properties of every ledger group")
def test_criterion_9_structure(full_report):
    budget = Budget()
    groups = 0
    for e in ledger_entries():
        for params in e.domain(budget):
            G = realize(e.recipe_for(params), params, name=e.id)
            groups += 1
            assert G.check() == [], (e.id, params)
            phi = subgroup_generated(G, [G.phi])
            assert phi.order == G.p and is_normal(G, phi)
            assert spherical_quotient(G) is not None, (e.id, params)
            for c in classify_symmetries(G, identify=False):
                assert {pair_type(G, m) for m in c.members} == {c.pair_type}
    assert groups == full_report["summary"]["tuples"]
    assert dumps_report(verify_all(budget, jobs=4)) == dumps_report(full_report)
