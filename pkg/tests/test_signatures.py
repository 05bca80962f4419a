from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from realpgonal.signatures import (
    NecSignature,
    SignatureError,
    SignatureSyntaxError,
    area,
    canonical_presentation,
    cyclic_p_gonal_signature,
    format_signature,
    kernel_surface_genus,
    parse_signature,
    real_cyclic_signatures,
    validate,
)


@pytest.mark.parametrize("text, expected", [
    ("(0,+,[3,3],{(3,3,3,3)})", Fraction(5, 3)),
    ("(0,[3,3,3,3])", Fraction(2, 3)),
    ("(2,[-])", Fraction(2)),
    ("(0,+,[3,3,3],{(-)})", Fraction(1)),
    ("(1,-,[-],{(2,2)})", Fraction(1, 2)),
])
def test_area(text, expected):
    assert area(parse_signature(text)) == expected


def test_whitespace_is_ignored():
    a = parse_signature(" ( 0 , + , [ 3 , 3 ] , { ( 3 , 3 ) } ) ")
    assert format_signature(a) == "(0,+,[3,3],{(3,3)})"


@pytest.mark.parametrize("text", [
    "", "(0)", "(0,+,[3,3]", "(0,*,[3],{(2)})", "(0,[3],{(2)})", "(0,+,[a],{(2)})",
    "(0,+,[3],{(2)}) trailing", "(0,+,[],{(2)})",
])
def test_syntax_errors(text):
    with pytest.raises(SignatureError):
        parse_signature(text)


def test_syntax_error_carries_position():
    with pytest.raises(SignatureSyntaxError) as info:
        parse_signature("(0,+,[3,x],{(2)})")
    assert info.value.pos > 0


def test_validate_flags_bad_periods():
    assert validate(NecSignature(0, True, (1,), ((3,),)))
    assert validate(parse_signature("(0,+,[3],{(3)})")) == ["non-positive area 0"]
    assert validate(parse_signature("(0,+,[3,3],{(3)})")) == []


periods = st.lists(st.integers(2, 9), max_size=4)
cycles = st.lists(st.lists(st.integers(2, 9), max_size=4), max_size=3)


@given(st.integers(0, 4), st.booleans(), periods, cycles)
def test_format_parse_round_trip(g, orientable, mi, cs):
    sig = NecSignature(g, orientable, tuple(mi), tuple(tuple(c) for c in cs))
    assert parse_signature(format_signature(sig)) == sig


@given(st.integers(0, 3), periods)
def test_fuchsian_round_trip(g, mi):
    sig = NecSignature.make_fuchsian(g, mi)
    again = parse_signature(format_signature(sig))
    assert again.fuchsian and again == sig


def test_presentation_shape():
    pres = canonical_presentation(parse_signature("(0,+,[3,3],{(3,3,3)})"))
    kinds = [g.kind for g in pres.generators]
    assert kinds == ["x", "x", "e", "c", "c", "c", "c"]
    assert len(pres.relators) == len(pres.relator_labels)


def test_cyclic_p_gonal_signature():
    assert format_signature(cyclic_p_gonal_signature(3, 5)) == "(0,[3,3,3,3,3,3,3])"
    assert cyclic_p_gonal_signature(5, 16).r == 10
    with pytest.raises(SignatureError):
        cyclic_p_gonal_signature(5, 3)
    with pytest.raises(SignatureError):
        cyclic_p_gonal_signature(9, 10)


def test_real_signatures_p3_g5():
    sigs = real_cyclic_signatures(3, 5)
    pairs = sorted((s.r, len(s.period_cycles[0])) for s, _ in sigs)
    assert pairs == [(0, 7), (1, 5), (2, 3), (3, 1)]
    assert all(tag == "D_p|C_2p" for _, tag in sigs)


def test_empty_cycle_signature_needs_even_genus():
    tags = dict((format_signature(s), t) for s, t in real_cyclic_signatures(3, 4))
    assert tags["(0,+,[3,3,3],{(-)})"] == "C_2p"
    assert all(t != "C_2p" for _, t in real_cyclic_signatures(3, 5))


@pytest.mark.parametrize("p, g", [(3, 4), (3, 5), (3, 6), (5, 16), (7, 37)])
def test_genus_round_trip(p, g):
    for sig, _ in real_cyclic_signatures(p, g):
        assert kernel_surface_genus(sig, 2 * p) == g
    if (2 * g) % (p - 1) == 0:
        assert kernel_surface_genus(cyclic_p_gonal_signature(p, g), p) == g


def test_kernel_genus_rejects_impossible_order():
    with pytest.raises(SignatureError):
        kernel_surface_genus(parse_signature("(0,+,[3],{(3)})"), 4)
    with pytest.raises(SignatureError):
        kernel_surface_genus(parse_signature("(0,[2,3,6])"), 6)
