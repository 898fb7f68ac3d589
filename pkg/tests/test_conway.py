"""Skein engine: frozen values, skein coherence, invariance, oracles."""

import pytest

from fibercheck.builders import braid_closure, connect_sum, torus_link
from fibercheck.conway import (
    ConwayPolynomial,
    alexander,
    conway,
    hopf_plumbing_obstruction,
    mm_forbidden,
)
from fibercheck.diagram import parse_pd

from helpers import alexander_coeffs_from_conway, fox_alexander_coeffs

FROZEN = {
    "unknot": (1,),
    "kink": (1,),
    "trefoil_std": (1, 0, 1),
    "trefoil_plus_kink": (1, 0, 1),
    "granny": (1, 0, 2, 0, 1),
    "fig8_braid": (1, 0, -1),
    "torus_2": (0, 1),
    "five2_std": (1, 0, 2),
    "six1_std": (1, 0, -2),
    "six2_std": (1, 0, -1, 0, -1),
    "theta7_aa": (1, 0, 1),
    "ten151_aa": (1, 0, -1, 0, 1),
    "nine42": (1, 0, -2, 0, -1),
    "nine44": (1, 0, 0, 0, 1),
    "nine45": (1, 0, 2, 0, -1),
    "pretzel_2_m2_2": (0, 0, -1),
    "pretzel_2_m2_4": (0, 0, -1),
}


def test_frozen_corpus_values(diagrams):
    for name, coeffs in FROZEN.items():
        assert conway(diagrams[name]).coeffs == coeffs, name


def test_unknot_and_split_base_cases():
    assert conway(parse_pd("U")).coeffs == (1,)
    assert conway(parse_pd("U U")).is_zero


def test_hopf_links():
    assert conway(torus_link(2)).coeffs == (0, 1)
    assert conway(torus_link(2).mirror()).coeffs == (0, -1)


def test_skein_coherence_every_crossing_every_corpus_entry(diagrams):
    for name, d in diagrams.items():
        for x in range(d.n):
            lhs = conway(d) - conway(d.switch_crossing(x))
            rhs = conway(d.smooth_crossing(x)).shift()
            if d.sign(x) < 0:
                lhs = -lhs
            assert lhs == rhs, (name, x)


def test_knot_link_parity(diagrams):
    for name, d in diagrams.items():
        poly = conway(d)
        want = (d.component_count - 1) % 2
        assert all(c == 0 for i, c in enumerate(poly.coeffs)
                   if i % 2 != want), name
        if d.component_count == 1:
            assert poly[0] in (1, -1), name


def test_multiplicativity_under_connected_sum(diagrams):
    pairs = [("trefoil_std", "trefoil_std"),
             ("trefoil_std", "fig8_braid"),
             ("five2_std", "trefoil_std")]
    for a, b in pairs:
        d = connect_sum(diagrams[a], diagrams[b])
        assert conway(d) == conway(diagrams[a]) * conway(diagrams[b]), (a, b)


def test_invariance_under_untwist_and_relabeling(diagrams):
    d = diagrams["trefoil_plus_kink"]
    (x,) = d.nugatory
    assert conway(d) == conway(d.untwist(x))
    assert conway(d) == conway(d.canonical())


def test_mirror_negates_odd_part(diagrams):
    for name, d in diagrams.items():
        got = conway(d.mirror()).coeffs
        want = tuple(c if i % 2 == 0 else -c
                     for i, c in enumerate(conway(d).coeffs))
        assert got == want, name


def test_crossing_bound():
    with pytest.raises(ValueError):
        conway(braid_closure([1] * 17, 2), bound=16)


def test_alexander_substitution_trefoil():
    assert alexander(ConwayPolynomial((1, 0, 1))) == {-2: 1, 0: -1, 2: 1}


def test_fox_calculus_cross_oracle(diagrams):
    for name, d in diagrams.items():
        if d.component_count != 1 or d.n == 0:
            continue
        got = alexander_coeffs_from_conway(conway(d))
        want = fox_alexander_coeffs(d)
        assert got == want, name


def test_is_monic_of_degree():
    assert ConwayPolynomial((1, 0, 1)).is_monic_of_degree(2)
    assert not ConwayPolynomial((1, 0, 2)).is_monic_of_degree(2)
    assert not ConwayPolynomial((1, 0, 1)).is_monic_of_degree(4)


def test_mm_forbidden_shapes():
    assert mm_forbidden(ConwayPolynomial((1, 0, 4, 0, 1)))
    assert mm_forbidden(ConwayPolynomial((1, 0, 2, 0, -1)))
    assert not mm_forbidden(ConwayPolynomial((1, 0, 1)))
    assert not mm_forbidden(ConwayPolynomial((1, 0, 3, 0, 1)))
    assert not mm_forbidden(ConwayPolynomial((1, 0, 2, 0, 1)))
    assert hopf_plumbing_obstruction(ConwayPolynomial((1, 0, 0, 0, 1)))
