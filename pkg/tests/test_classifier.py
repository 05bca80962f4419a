import json

import pytest

from realpgonal.classifier import (
    Budget,
    ClassifierError,
    classify_symmetries,
    dumps_report,
    get_entry,
    ledger_entries,
    pair_type,
    render_table,
    verify_all,
    verify_case,
)
from realpgonal.epimorphisms import target_group
from realpgonal.groups import anticonformal_involutions, normalizer, subgroup_generated


def statuses(frag):
    return {c["claim"]: c["status"] for c in frag["claims"]}


def test_pair_types_of_targets():
    D, C = target_group("D", 5), target_group("C", 5)
    assert pair_type(D, D.names["s"]) == "D_p"
    assert pair_type(C, C.names["s"]) == "C_2p"
    with pytest.raises(ClassifierError):
        pair_type(D, D.names["r"])


def test_classes_partition_the_symmetries():
    G = target_group("D", 7)
    classes = classify_symmetries(G)
    members = sorted(m for c in classes for m in c.members)
    assert members == sorted(anticonformal_involutions(G))
    for c in classes:
        assert c.representative == min(c.members)
        H = subgroup_generated(G, [c.representative])
        assert c.n_sigma.elements == normalizer(G, H).elements


def test_ledger_has_every_case():
    ids = [e.id for e in ledger_entries()]
    assert len(ids) == len(set(ids)) == 24
    assert {"1a", "1b", "2a", "E1", "E3"} <= set(ids)


def test_case_1a_even_q():
    frag = verify_case("1a", {"p": 3, "q": 2})
    assert all(c["status"] == "MATCH" for c in frag["claims"])
    assert frag["group_order"] == 12


def test_mismatch_has_witness():
    frag = verify_case("2a", {"p": 3, "q": 3})
    bad = [c for c in frag["claims"] if c["status"] == "MISMATCH"]
    assert bad and all("witness" in c for c in bad)


def test_bad_parameters():
    with pytest.raises(ClassifierError):
        verify_case("1a", {"p": 3})
    with pytest.raises(ClassifierError):
        verify_case("1a", {"p": 4, "q": 2})
    with pytest.raises(ClassifierError):
        get_entry("9z")


def test_domain_respects_budget():
    e = get_entry("1a")
    dom = e.domain(Budget(primes=(3,), q_values=(2, 3)))
    assert dom == [{"p": 3, "q": 2}, {"p": 3, "q": 3}]


def test_fallback_only_when_empty():
    e = get_entry("E2")
    assert e.domain(Budget(primes=(3, 5))) and all(d["p"] == 7 for d in e.domain(Budget(primes=(3, 5))))
    assert e.domain(Budget(primes=(3, 5), use_fallback=False)) == []


def test_report_rendering():
    report = verify_all(Budget(primes=(3,), q_values=(2, 3)), cases=["1a", "1b"])
    assert report["summary"]["tuples"] == 4 and report["summary"]["errors"] == 0
    assert json.loads(dumps_report(report)) == report
    table = render_table(report)
    assert table.count("\n") >= report["summary"]["claims"]


def test_custom_ledger_file(tmp_path):
    data = {"schema": 1, "entries": [{
        "id": "X", "source": "test", "clause": "dihedral target", "params": ["p"],
        "recipe": {"group": {"kind": "dihedral", "n": "p", "rotation": "phi", "reflection": "sigma"},
                   "anticonformal": ["sigma"], "phi": "phi"},
        "expect": {"classes": "1", "representatives": [{"word": "sigma", "normalizer": "C_2"}]}}]}
    path = tmp_path / "ledger.json"
    path.write_text(json.dumps(data))
    frag = verify_case("X", {"p": 5}, str(path))
    assert all(c["status"] == "MATCH" for c in frag["claims"]), frag
