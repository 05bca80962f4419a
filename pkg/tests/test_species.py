import pytest

from realpgonal.epimorphisms import enumerate_surface_kernel_epis, target_group, theta1, theta2, theta3
from realpgonal.signatures import real_cyclic_signatures
from realpgonal.species import (
    SpeciesError,
    SpeciesResult,
    allowed_species,
    schreier_graph,
    schreier_sign_test,
    species,
    three_condition_sign,
    verify_theorem2,
)


@pytest.mark.parametrize("epi, value", [
    (theta1(3, 5), -1),
    (theta2(3, 4), 1),
    (theta3(3, 4, "D"), -3),
    (theta3(3, 4, "C"), 3),
    (theta3(3, 4, "C", "r"), 1),
    (theta1(5, 18), -1),
])
def test_construction_species(epi, value):
    assert species(epi).value == value


def test_result_formatting():
    assert str(SpeciesResult(3, "-")) == "-3"
    assert str(SpeciesResult(0, None)) == "0"
    with pytest.raises(SpeciesError):
        SpeciesResult(2, None)


def test_sigma_must_be_an_anticonformal_involution():
    epi = theta1(3, 5)
    with pytest.raises(SpeciesError):
        species(epi, sigma=epi.target.names["r"])


def test_schreier_graph_of_theta1():
    epi = theta1(3, 5)
    graph = schreier_graph(epi)
    assert graph.vertices == 3
    assert schreier_sign_test(epi) == three_condition_sign(epi) == "-"


def test_schreier_rejects_cyclic_target():
    with pytest.raises(SpeciesError):
        schreier_sign_test(theta3(3, 4, "C"))


@pytest.mark.parametrize("p, g", [(3, 5), (3, 6), (5, 4), (5, 8), (7, 6)])
def test_sign_rules_agree_on_all_epis(p, g):
    D = target_group("D", p)
    for sig, _ in real_cyclic_signatures(p, g):
        if not sig.period_cycles[0]:
            continue
        for epi in enumerate_surface_kernel_epis(sig, D):
            assert schreier_sign_test(epi) == three_condition_sign(epi), epi.to_record()


def test_reflection_only_reading_is_weaker():
    # dropping the colour-preserving edges can only remove conflicts
    D = target_group("D", 3)
    for sig, _ in real_cyclic_signatures(3, 5):
        for epi in enumerate_surface_kernel_epis(sig, D):
            if schreier_sign_test(epi, reflections_only=True) == "-":
                assert schreier_sign_test(epi) == "-"


def test_allowed_species():
    assert allowed_species(3, 5) == {-1, -3}
    assert allowed_species(3, 6) == {1, -1, 3, -3}
    with pytest.raises(SpeciesError):
        allowed_species(5, 16)


def test_theorem2_report_shape():
    report = verify_theorem2(3, 5)
    assert report["findings"] == 0
    assert report["epimorphisms"] == len(report["records"]) > 0
    assert set(report["computed_species"]) <= set(report["allowed_species"])
