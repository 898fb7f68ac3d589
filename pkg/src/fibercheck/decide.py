"""Fiberedness decision procedure for alternating and almost alternating
diagrams.

The Seifert surface of such a diagram is a fiber surface exactly when it
desums completely into positive or negative Hopf bands.  ``decide_fiber``
runs the desumming recursion, producing either a certificate tree whose
leaves are terminal Hopf pieces, or a witness for non-fiberedness, or an
out-of-scope report when a piece falls outside the supported diagram
classes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

from .conway import ConwayPolynomial, conway
from .diagram import Diagram, DiagramError, classify_alternation, parse_pd
from .moves import (
    Move,
    Witness,
    apply_move,
    find_parallel_cut,
    find_pattern_move,
    terminal_check,
)
from .seifert import SeifertModel, build_seifert

__all__ = [
    "Verdict",
    "CertNode",
    "Decision",
    "InternalOracleError",
    "decide_fiber",
    "certificate_verify",
    "hopf_sign_report",
]


class InternalOracleError(AssertionError):
    """A self-check on the decision procedure's own bookkeeping failed."""


@dataclass(frozen=True)
class Verdict:
    kind: str  # Fibered | NotFibered | OutOfScope | Stuck
    detail: str = ""

    _RANK = {"NotFibered": 0, "OutOfScope": 1, "Stuck": 2, "Fibered": 3}

    def merge(self, other: "Verdict") -> "Verdict":
        return self if self._RANK[self.kind] <= self._RANK[other.kind] else other


@dataclass
class CertNode:
    fingerprint: str
    move: Move | None
    sign: int | None = None
    children: list["CertNode"] = field(default_factory=list)

    def to_json(self) -> dict:
        obj: dict = {"fingerprint": self.fingerprint}
        if self.move is not None:
            obj["move"] = self.move.to_json()
        if self.sign is not None:
            obj["sign"] = self.sign
        if self.children:
            obj["children"] = [c.to_json() for c in self.children]
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> "CertNode":
        return cls(
            fingerprint=obj["fingerprint"],
            move=Move.from_json(obj["move"]) if "move" in obj else None,
            sign=obj.get("sign"),
            children=[cls.from_json(c) for c in obj.get("children", [])],
        )

    def hopf_signs(self) -> list[int]:
        signs = list(self.move.hopf_signs()) if self.move else []
        for c in self.children:
            signs.extend(c.hopf_signs())
        return signs


@dataclass
class Decision:
    verdict: Verdict
    witness: Witness | None = None
    certificate: CertNode | None = None
    stats: dict | None = None
    conway: ConwayPolynomial | None = None

    def to_json(self) -> dict:
        obj: dict = {"verdict": self.verdict.kind}
        if self.verdict.detail:
            obj["detail"] = self.verdict.detail
        if self.witness is not None:
            obj["witness"] = self.witness.to_json()
        if self.certificate is not None:
            obj["certificate"] = self.certificate.to_json()
        if self.stats is not None:
            obj["stats"] = self.stats
        if self.conway is not None:
            obj["conway"] = list(self.conway.coeffs)
        return obj


def decide_fiber(d: Diagram, *, compute_conway: bool = True) -> Decision:
    """Decide whether the Seifert surface of ``d`` is a fiber surface."""
    m = build_seifert(d)
    stats = {"s": m.s, "c": m.c, "beta1": m.beta1}
    poly = conway(d) if compute_conway else None

    # scope gate: the desum criterion is only valid for alternating and
    # almost alternating diagrams
    if d.is_connected and d.n > 0:
        cls = classify_alternation(d)
        if cls.kind == "k_almost":
            return Decision(
                verdict=Verdict("OutOfScope", cls.describe()),
                stats=stats,
                conway=poly,
            )

    verdict, witness, cert = _recurse(d)

    if (
        verdict.kind == "Stuck"
        and poly is not None
        and not poly.is_monic_of_degree(m.beta1)
    ):
        verdict = Verdict("NotFibered", "Alexander polynomial obstruction")
        witness = Witness("AlexanderObstruction", (poly.coeffs, m.beta1))
        cert = None

    if verdict.kind == "Fibered" and poly is not None:
        if not poly.is_monic_of_degree(m.beta1):
            raise InternalOracleError(
                "fibered verdict with non-monic Conway polynomial "
                f"{poly} for beta1={m.beta1}"
            )

    return Decision(
        verdict=verdict,
        witness=witness,
        certificate=cert,
        stats=stats,
        conway=poly,
    )


def _recurse(d: Diagram) -> tuple[Verdict, Witness | None, CertNode | None]:
    d = d.canonical()
    node = CertNode(fingerprint=d.fingerprint, move=None)
    m = build_seifert(d)

    if not d.is_connected or (d.free_loops and d.n > 0) or d.free_loops > 1:
        return (
            Verdict("NotFibered", "disconnected Seifert surface"),
            Witness("DisconnectedSurface", at=d.fingerprint),
            None,
        )
    if d.n == 0:
        # a single free loop bounds a disk
        node.move = Move("TerminalDisk")
        return Verdict("Fibered"), None, node

    if d.nugatory:
        x = min(d.nugatory)
        node.move = Move("Untwist", (x,))
        return _descend(node, d, m, [d.untwist(x)], beta_drop=0)

    if m.nested_circles:
        circle = min(m.nested_circles)
        node.move = Move("NestedDesum", (circle,))
        return _descend(node, d, m, apply_move(d, node.move))

    split = d.connected_sum_split()
    if split is not None:
        d1, d2, (e1, e2) = split
        node.move = Move("ConnSumSplit", (e1, e2))
        _check_multiplicative(d, d1, d2)
        return _descend(node, d, m, [d1, d2])

    cls = classify_alternation(d)
    if cls.kind == "k_almost":
        return Verdict("OutOfScope", cls.describe()), None, None

    tc = terminal_check(d, m)
    if isinstance(tc, Witness):
        tc = replace(tc, at=d.fingerprint)
        return Verdict("NotFibered", tc.describe()), tc, None
    if isinstance(tc, Move):
        node.move = tc
        if tc.kind == "TerminalHopfAnnulus":
            node.sign = tc.params[0] // 2
        return Verdict("Fibered"), None, node

    if cls.kind == "alternating" and m.s != 2:
        w = Witness("NonStandardAlternatingLeaf", at=d.fingerprint)
        return Verdict("NotFibered", w.describe()), w, None

    pc = find_parallel_cut(d, m)
    if isinstance(pc, Witness):
        pc = replace(pc, at=d.fingerprint)
        return Verdict("NotFibered", pc.describe()), pc, None
    if isinstance(pc, Move):
        node.move = pc
        node.sign = pc.params[2]
        return _descend(node, d, m, apply_move(d, pc), beta_drop=1)

    pm = find_pattern_move(d, m)
    if pm is not None:
        node.move = pm
        return _descend(node, d, m, apply_move(d, pm))

    return Verdict("Stuck", "no applicable move"), None, None


def _descend(
    node: CertNode,
    d: Diagram,
    m: SeifertModel,
    children: list[Diagram],
    beta_drop: int | None = None,
) -> tuple[Verdict, Witness | None, CertNode | None]:
    """Recurse into children, checking Betti-number bookkeeping."""
    total = sum(build_seifert(c).beta1 for c in children)
    expected = m.beta1 - (beta_drop or 0)
    if total != expected:
        raise InternalOracleError(
            f"move {node.move.kind} changed beta1 from {m.beta1} to {total}"
            + (f" (expected drop {beta_drop})" if beta_drop else "")
        )
    verdict = Verdict("Fibered")
    witness: Witness | None = None
    for child in children:
        v, w, c = _recurse(child)
        merged = verdict.merge(v)
        if merged is v:
            witness = w
        verdict = merged
        if c is not None:
            node.children.append(c)
    if verdict.kind != "Fibered":
        return verdict, witness, None
    return verdict, None, node


def _check_multiplicative(d: Diagram, d1: Diagram, d2: Diagram) -> None:
    """Connected sums must multiply Conway polynomials."""
    if d.n > 14:  # keep the self-check cheap
        return
    if conway(d) != conway(d1) * conway(d2):
        raise InternalOracleError(
            "connected-sum split failed Conway multiplicativity"
        )


# --------------------------------------------------------------------------
# certificate verification


def certificate_verify(cert: CertNode) -> tuple[bool, str]:
    """Independently replay a certificate tree.

    Checks that every node's fingerprint parses to a valid connected
    diagram, that the recorded move applies to it and yields children
    whose fingerprints match the recorded ones, that Betti numbers add up
    across every split (and drop by one across a parallel cut), and that
    every leaf carries a terminal move matching its diagram.
    """
    try:
        _verify_node(cert)
    except (DiagramError, InternalOracleError, KeyError, ValueError) as exc:
        return False, str(exc)
    return True, "ok"


def _verify_node(node: CertNode) -> None:
    d = parse_pd(node.fingerprint.replace(";", "\n"))
    if d.fingerprint != node.fingerprint:
        raise InternalOracleError(
            f"fingerprint {node.fingerprint!r} is not canonical"
        )
    if d.n > 0 and not d.is_connected:
        raise InternalOracleError("certificate node is disconnected")
    m = build_seifert(d)
    mv = node.move
    if mv is None:
        raise InternalOracleError("certificate node missing a move")
    if mv.is_terminal:
        if node.children:
            raise InternalOracleError("terminal node has children")
        check = terminal_check(d, m) if d.n else Move("TerminalDisk")
        if not isinstance(check, Move) or check != mv:
            raise InternalOracleError(
                f"leaf move {mv.kind}{mv.params} does not match diagram"
            )
        return
    children = apply_move(d, mv)
    if len(children) != len(node.children):
        raise InternalOracleError(
            f"move {mv.kind} yields {len(children)} children, "
            f"certificate records {len(node.children)}"
        )
    drop = 1 if mv.kind == "ParallelCut" else 0
    total = sum(build_seifert(c).beta1 for c in children)
    if total != m.beta1 - drop:
        raise InternalOracleError("Betti numbers do not add up")
    if mv.kind in ("ConnSumSplit", "PatternA", "PatternB") and d.n <= 16:
        prod = conway(children[0]) * conway(children[1])
        if prod != conway(d):
            raise InternalOracleError(
                f"{mv.kind} split failed Conway multiplicativity"
            )
    got = sorted(c.canonical().fingerprint for c in children)
    recorded = sorted(c.fingerprint for c in node.children)
    if got != recorded:
        raise InternalOracleError("child fingerprints do not match")
    by_fp: dict[str, list[CertNode]] = {}
    for c in node.children:
        by_fp.setdefault(c.fingerprint, []).append(c)
    for fp in got:
        _verify_node(by_fp[fp].pop())


def hopf_sign_report(cert: CertNode) -> dict:
    """Summarize the Hopf bands a certificate plumbs together."""
    signs = cert.hopf_signs()
    return {
        "bands": len(signs),
        "positive": signs.count(1),
        "negative": signs.count(-1),
        "signs": signs,
    }


def certificate_to_json(cert: CertNode) -> str:
    return json.dumps(cert.to_json(), indent=2)


def certificate_from_json(text: str) -> CertNode:
    return CertNode.from_json(json.loads(text))
