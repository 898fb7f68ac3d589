"""Certificate round-trips, verification, and mutation detection."""

import copy
import json

import pytest

from fibercheck.decide import (
    CertNode,
    certificate_from_json,
    certificate_to_json,
    certificate_verify,
    decide_fiber,
)
from fibercheck.moves import Move


def _fibered_certs(corpus):
    for name, (d, _, verdict) in corpus.items():
        if verdict == "Fibered":
            yield name, decide_fiber(d).certificate


def test_every_emitted_certificate_verifies(corpus):
    for name, cert in _fibered_certs(corpus):
        ok, msg = certificate_verify(cert)
        assert ok, (name, msg)


def test_json_round_trip(corpus):
    for name, cert in _fibered_certs(corpus):
        again = certificate_from_json(certificate_to_json(cert))
        assert again.to_json() == cert.to_json(), name
        ok, _ = certificate_verify(again)
        assert ok, name


def _mutants(cert: CertNode):
    """Single-node corruptions of a certificate tree."""
    # corrupt the root fingerprint
    m = copy.deepcopy(cert)
    m.fingerprint = m.fingerprint.replace("X(1,", "X(9,", 1)
    yield "fingerprint", m
    # swap the root move for a terminal it is not
    m = copy.deepcopy(cert)
    m.move = Move("TerminalDisk")
    yield "move-kind", m
    # flip a recorded Hopf sign / move parameter
    m = copy.deepcopy(cert)
    node = m
    while node.move.is_terminal is False and node.children:
        node = node.children[0]
    if node.move.params:
        p = list(node.move.params)
        p[-1] = -p[-1] if isinstance(p[-1], int) else p[-1]
        node.move = Move(node.move.kind, tuple(p))
        yield "leaf-params", m
    # drop a child where the move demands one
    m = copy.deepcopy(cert)
    if m.children:
        m.children = m.children[:-1]
        yield "dropped-child", m


def test_single_node_mutations_fail_verification(corpus):
    checked = 0
    for name, cert in _fibered_certs(corpus):
        if cert.move is None or cert.move.is_terminal:
            continue
        for label, mutant in _mutants(cert):
            ok, _ = certificate_verify(mutant)
            assert not ok, (name, label)
            checked += 1
    assert checked >= 10


def test_certificate_rejects_wrong_diagram(diagrams):
    cert = decide_fiber(diagrams["trefoil_std"]).certificate
    mirror_fp = diagrams["trefoil_std"].mirror().canonical().fingerprint
    mutant = certificate_from_json(certificate_to_json(cert))
    mutant.fingerprint = mirror_fp
    ok, _ = certificate_verify(mutant)
    assert not ok


def test_certificate_json_is_stable(diagrams):
    a = certificate_to_json(decide_fiber(diagrams["six2_std"]).certificate)
    b = certificate_to_json(decide_fiber(diagrams["six2_std"]).certificate)
    assert a == b
    json.loads(a)  # well-formed
