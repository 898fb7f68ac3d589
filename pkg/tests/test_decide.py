"""Decision procedure: verdicts, witnesses, scope gate, symmetry."""

import pytest

from fibercheck.builders import braid_closure, connect_sum
from fibercheck.conway import conway
from fibercheck.decide import decide_fiber, hopf_sign_report
from fibercheck.diagram import classify_alternation, parse_pd
from fibercheck.seifert import build_seifert


def test_corpus_verdicts_match_manifest(corpus):
    for name, (d, _, exp_verdict) in corpus.items():
        assert decide_fiber(d).verdict.kind == exp_verdict, name


def test_five2_witness(diagrams):
    dec = decide_fiber(diagrams["five2_std"])
    assert dec.verdict.kind == "NotFibered"
    assert dec.witness.kind == "NonStandardAlternatingLeaf"
    assert dec.witness.recheck(diagrams["five2_std"])


def test_six1_witness(diagrams):
    dec = decide_fiber(diagrams["six1_std"])
    assert dec.verdict.kind == "NotFibered"
    assert dec.witness.kind == "AnnulusTwistMismatch"
    assert abs(dec.witness.params[0]) == 4
    assert dec.witness.recheck(diagrams["six1_std"])


def test_opposite_sign_pair_verdict():
    # beta1 = 2, so the terminal annulus check cannot fire first
    d = braid_closure([1, 1, -1], 2)
    dec = decide_fiber(d)
    assert dec.verdict.kind == "NotFibered"
    assert dec.witness.kind == "OppositeSignParallelPair"
    assert dec.witness.recheck(d)


def test_split_diagram_not_fibered():
    dec = decide_fiber(parse_pd("U U"))
    assert dec.verdict.kind == "NotFibered"
    assert dec.witness.kind == "DisconnectedSurface"


def test_alexander_obstruction_upgrade():
    # almost alternating, no decomposition applies, non-monic Conway
    from fibercheck.builders import theta_link

    d = theta_link([[-1, -1, -1], [1, -1, -1], [-1]])
    assert classify_alternation(d).kind == "almost"
    dec = decide_fiber(d)
    assert dec.verdict.kind == "NotFibered"
    assert dec.witness.kind == "AlexanderObstruction"
    assert dec.witness.recheck(d)
    assert not conway(d).is_monic_of_degree(build_seifert(d).beta1)


def test_scope_gate_fires_before_simplification(diagrams):
    # connected sum with an in-scope piece must still be rejected whole
    d = connect_sum(diagrams["pretzel_2_m2_2"], diagrams["trefoil_std"])
    dec = decide_fiber(d)
    assert dec.verdict.kind == "OutOfScope"


def test_granny_certificate_shape(diagrams):
    dec = decide_fiber(diagrams["granny"])
    assert dec.verdict.kind == "Fibered"
    cert = dec.certificate
    assert cert.move.kind == "ConnSumSplit"
    assert len(cert.children) == 2
    rep = hopf_sign_report(cert)
    assert rep["bands"] == 4 and rep["signs"] == [1, 1, 1, 1]


def test_fig8_certificate_shape(diagrams):
    dec = decide_fiber(diagrams["fig8_braid"])
    cert = dec.certificate
    assert cert.move.kind == "NestedDesum"
    kinds = sorted(c.move.kind for c in cert.children)
    assert kinds == ["TerminalHopfAnnulus", "TerminalHopfAnnulus"]
    assert sorted(cert.hopf_signs()) == [-1, 1]


def test_ten151_certificate(diagrams):
    d = diagrams["ten151_aa"]
    dec = decide_fiber(d)
    assert dec.verdict.kind == "Fibered"
    rep = hopf_sign_report(dec.certificate)
    assert rep["bands"] == build_seifert(d).beta1 == 4


def test_decision_stats_and_conway_payload(diagrams):
    dec = decide_fiber(diagrams["trefoil_std"])
    assert dec.stats == {"s": 2, "c": 3, "beta1": 2}
    assert dec.conway.coeffs == (1, 0, 1)
    obj = dec.to_json()
    assert obj["verdict"] == "Fibered"
    assert obj["conway"] == [1, 0, 1]
    assert "certificate" in obj and "stats" in obj


def test_determinism(diagrams):
    for name in ("six2_std", "ten151_aa", "five2_std"):
        a = decide_fiber(diagrams[name]).to_json()
        b = decide_fiber(diagrams[name]).to_json()
        assert a == b, name


def test_verdict_invariant_under_relabeling_and_mirror(diagrams):
    for name, d in diagrams.items():
        base = decide_fiber(d).verdict.kind
        assert decide_fiber(d.canonical()).verdict.kind == base, name
        assert decide_fiber(d.mirror()).verdict.kind == base, name


def test_mirror_flips_hopf_signs(diagrams):
    for name in ("trefoil_std", "six2_std", "ten151_aa"):
        d = diagrams[name]
        plus = sorted(decide_fiber(d).certificate.hopf_signs())
        minus = sorted(-s for s in decide_fiber(d.mirror()).certificate.hopf_signs())
        assert plus == minus, name


def test_fibered_corpus_monicity_oracle(corpus):
    for name, (d, _, verdict) in corpus.items():
        if verdict == "Fibered":
            assert conway(d).is_monic_of_degree(build_seifert(d).beta1), name


def test_hopf_band_count_equals_beta1(corpus):
    for name, (d, _, verdict) in corpus.items():
        if verdict != "Fibered":
            continue
        dec = decide_fiber(d)
        assert len(dec.certificate.hopf_signs()) == build_seifert(d).beta1, name
