import itertools

import pytest
from hypothesis import given, strategies as st

from dtseq.design import (
    Block,
    Dts,
    Permutation,
    TransitiveTriple,
    Tts,
    apply_permutation,
    arcs_of,
    format_design,
    make_transitive_triple,
    parse_design,
    underlying_tts,
    validate_dts,
    validate_tts,
)
from dtseq.errors import BadPermutation, DuplicatePoint, InvalidInput, OutOfRange, ParseError

from conftest import D4_1, D4_3, T4_BLOCKS

T71_BLOCKS = [(2, 4, 5), (2, 4, 5), (2, 3, 6), (2, 3, 6), (1, 4, 6), (1, 4, 6), (1, 3, 5),
              (1, 3, 5), (0, 5, 6), (0, 5, 6), (0, 3, 4), (0, 3, 4), (0, 1, 2), (0, 1, 2)]
D711 = [(1, 0, 2), (2, 0, 1), (3, 0, 4), (3, 1, 5), (3, 2, 6), (4, 0, 3), (4, 1, 6),
        (4, 2, 5), (5, 0, 6), (5, 1, 3), (5, 2, 4), (6, 0, 5), (6, 1, 4), (6, 2, 3)]


def test_make_transitive_triple():
    t = make_transitive_triple(0, 3, 2, v=4)
    assert (t.source, t.middle, t.sink) == (0, 3, 2)
    assert arcs_of(t) == {(0, 3), (3, 2), (0, 2)}
    assert arcs_of(make_transitive_triple(0, 1, 2)) == {(0, 1), (1, 2), (0, 2)}
    with pytest.raises(DuplicatePoint):
        make_transitive_triple(1, 1, 2)
    with pytest.raises(OutOfRange):
        make_transitive_triple(0, 1, 4, v=4)


def test_arcs_of_reversal_complement():
    assert arcs_of(TransitiveTriple(2, 1, 0)) == {(2, 1), (1, 0), (2, 0)}
    fwd, rev = arcs_of(TransitiveTriple(3, 5, 4)), arcs_of(TransitiveTriple(4, 5, 3))
    assert not fwd & rev
    assert fwd | rev == {(a, b) for a in (3, 4, 5) for b in (3, 4, 5) if a != b}


def test_arcs_over_all_orderings():
    # every ordered pair of {0,1,2} lies in exactly 3 of the 6 transitive orderings
    orderings = list(itertools.permutations(range(3)))
    for pair in itertools.permutations(range(3), 2):
        assert sum(pair in arcs_of(TransitiveTriple(*o)) for o in orderings) == 3


def test_validate_dts():
    rep = validate_dts(Dts(4, D4_1))
    assert rep.valid
    assert set(rep.coverage.values()) == {1} and len(rep.coverage) == 12

    broken = [t if t != (2, 1, 0) else (0, 1, 2) for t in D4_1]
    rep = validate_dts(Dts(4, broken))
    assert not rep.valid
    # hand count: (0,1) from (0,1,2) and (3,0,1); nothing covers (2,1), (1,0), (2,0)
    assert rep.coverage[(0, 1)] == 2 and rep.coverage[(2, 1)] == 0
    assert rep.bad_pairs == {(0, 1): 2, (0, 2): 2, (1, 2): 2, (1, 0): 0, (2, 0): 0, (2, 1): 0}

    rep = validate_dts(Dts(4, ()))
    assert not rep.valid and set(rep.coverage.values()) == {0}


def test_validate_tts():
    assert validate_tts(Tts(4, T4_BLOCKS)).valid
    t71 = Tts(7, T71_BLOCKS)
    assert validate_tts(t71).valid
    assert t71.multiplicities()[Block(2, 4, 5)] == 2
    rep = validate_tts(Tts(3, [(0, 1, 2)] * 3))
    assert not rep.valid and rep.coverage[(0, 1)] == 3


def test_underlying_tts():
    assert underlying_tts(Dts(4, D4_1)) == Tts(4, T4_BLOCKS)
    assert underlying_tts(Dts(7, D711)) == Tts(7, T71_BLOCKS)
    with pytest.raises(InvalidInput):
        underlying_tts(Dts(4, D4_1[:3]))


def test_apply_permutation():
    d = Dts(4, D4_3)
    assert apply_permutation(d, Permutation.identity(4)) == d
    swapped = apply_permutation(d, Permutation.from_cycles(4, "(0,1)"))
    assert validate_dts(swapped).valid
    assert underlying_tts(swapped) == Tts(4, T4_BLOCKS)
    with pytest.raises(BadPermutation):
        apply_permutation(d, [0, 0, 1, 2])
    with pytest.raises(BadPermutation):
        apply_permutation(d, [0, 1, 2])


perms7 = st.permutations(range(7)).map(Permutation)


@given(perms7, perms7)
def test_action_law_and_validity(g, h):
    d = Dts(7, D711)
    gd = apply_permutation(d, g)
    assert apply_permutation(gd, h) == apply_permutation(d, h * g)
    assert validate_dts(gd).valid
    assert underlying_tts(gd) == apply_permutation(underlying_tts(d), g)
    assert validate_tts(apply_permutation(Tts(7, T71_BLOCKS), g)).valid


@given(perms7)
def test_permutation_inverse(g):
    assert g * g.inverse() == Permutation.identity(7)
    assert g.inverse() * g == Permutation.identity(7)


def test_permutation_cycles():
    g = Permutation.from_cycles(7, "(1,2,4,6,5,3)")
    assert g == (0, 2, 4, 1, 6, 3, 5)
    assert Permutation.from_digits("0213") == (0, 2, 1, 3)
    assert Permutation.from_digits("0213").digits() == "0213"


def test_design_text_round_trip():
    for d in (Dts(4, D4_1), Tts(7, T71_BLOCKS), Dts(7, D711)):
        assert parse_design(format_design(d)) == d
    assert format_design(Dts(4, D4_1)).splitlines()[0] == "dts v=4"


@pytest.mark.parametrize("text", [
    "dts v=4\n(0,3)\n",
    "dts v=4\n(0,3,3)\n",
    "dts v=4\n(0,3,4)\n",
    "tts v=4\n{2,1,3}\n",
    "dtx v=4\n",
    "",
])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_design(text)


def test_parse_error_has_line_number():
    with pytest.raises(ParseError) as info:
        parse_design("dts v=4\n(0,3,2)\n(0,3)\n")
    assert info.value.lineno == 3
