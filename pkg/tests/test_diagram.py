"""Parsing, validation, signs, canonical forms, and local operations."""

import pytest

from fibercheck.builders import connect_sum, torus_link
from fibercheck.diagram import (
    Diagram,
    DiagramError,
    ParseError,
    classify_alternation,
    parse_pd,
)

TREFOIL = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"


def test_parse_round_trip(diagrams):
    for name, d in diagrams.items():
        again = parse_pd(d.serialize())
        assert again.fingerprint == d.fingerprint, name


def test_parse_rejects_syntax_error_with_position():
    with pytest.raises(ParseError) as exc:
        parse_pd("X(1,4,2,5) X(3,6")
    assert "offset" in str(exc.value)


def test_parse_rejects_bad_labels():
    # edge 9 appears once, edge 2 three times
    with pytest.raises((ParseError, DiagramError)):
        parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,9,3)")


def test_parse_rejects_nonplanar():
    # trefoil quad order scrambled into a non-spherical rotation system
    with pytest.raises((ParseError, DiagramError)):
        parse_pd("X(1,4,2,5) X(3,6,1,4) X(5,2,6,3)")


def test_free_loop_grammar():
    d = parse_pd("U")
    assert d.n == 0 and d.free_loops == 1 and d.component_count == 1
    d2 = parse_pd("U U " + TREFOIL)
    assert d2.free_loops == 2 and d2.n == 3


def test_comments_ignored():
    d = parse_pd("# header\n" + TREFOIL + " # trailing\n")
    assert d.n == 3


def test_trefoil_signs_all_positive_and_mirror_negates():
    d = parse_pd(TREFOIL)
    assert d.signs == (1, 1, 1)
    assert d.mirror().signs == (-1, -1, -1)


def test_switch_crossing_is_involution():
    d = parse_pd(TREFOIL)
    assert d.switch_crossing(1).switch_crossing(1).fingerprint == d.fingerprint
    assert d.switch_crossing(1).sign(1) == -1


def test_canonical_is_relabeling_invariant():
    d = parse_pd(TREFOIL)
    # same knot shape, labels rotated along the strand
    e = parse_pd("X(3,6,4,1) X(5,2,6,3) X(1,4,2,5)")
    assert d.canonical().fingerprint == e.canonical().fingerprint


def test_nugatory_and_untwist(diagrams):
    kink = diagrams["kink"]
    assert kink.nugatory == frozenset({0})
    flat = kink.untwist(0)
    assert flat.n == 0 and flat.free_loops == 1
    assert not diagrams["trefoil_std"].nugatory


def test_trefoil_plus_kink_untwists_to_trefoil(diagrams):
    d = diagrams["trefoil_plus_kink"]
    (x,) = d.nugatory
    assert d.untwist(x).canonical().fingerprint == \
        diagrams["trefoil_std"].canonical().fingerprint


def test_smooth_kink_splits_off_circle(diagrams):
    kink = diagrams["kink"]
    s = kink.smooth_crossing(0)
    assert s.n == 0 and s.component_count == 2


def test_connected_sum_split_granny(diagrams):
    got = diagrams["granny"].connected_sum_split()
    assert got is not None
    d1, d2, _ = got
    tref = diagrams["trefoil_std"].canonical().fingerprint
    assert {d1.canonical().fingerprint, d2.canonical().fingerprint} == {tref}


def test_trefoil_is_prime(diagrams):
    assert diagrams["trefoil_std"].connected_sum_split() is None


def test_connect_sum_of_mixed_classes_splits_back(diagrams):
    d = connect_sum(diagrams["ten151_aa"], diagrams["trefoil_std"])
    got = d.connected_sum_split()
    assert got is not None
    kinds = sorted(classify_alternation(p).kind for p in got[:2])
    assert kinds == ["almost", "alternating"][::-1] or kinds == ["almost", "alternating"]


def test_classification_examples(corpus):
    for name, (d, exp_class, _) in corpus.items():
        a = classify_alternation(d)
        token = ("alternating" if a.kind == "alternating"
                 else "almost" if a.kind == "almost" else f"{a.k}-almost")
        assert token == exp_class, name


def test_dealternator_switch_restores_alternation(diagrams):
    d = diagrams["ten151_aa"]
    a = classify_alternation(d)
    assert a.kind == "almost"
    switched = d.switch_crossing(a.dealternator)
    assert classify_alternation(switched).kind == "alternating"


def test_verdict_symmetry_under_mirror_classification(diagrams):
    for name, d in diagrams.items():
        assert classify_alternation(d).kind == \
            classify_alternation(d.mirror()).kind, name


def test_torus_family_shape():
    for n in range(2, 9):
        d = torus_link(n)
        assert d.n == n
        assert classify_alternation(d).kind == "alternating"
