"""Command-line front end: per-diagram queries and corpus batch runs.

Exit codes: 0 the command ran (any verdict), 2 parse error, 3 the decision
procedure declined the input as out of scope, 4 an internal consistency
oracle failed (a decomposition step broke an invariant it must preserve).
"""

from __future__ import annotations

import argparse
import json
import pathlib
import sys
from importlib import resources

from .conway import conway, mm_forbidden
from .decide import (
    CertNode,
    InternalOracleError,
    certificate_verify,
    decide_fiber,
    hopf_sign_report,
)
from .diagram import Diagram, ParseError, classify_alternation, parse_pd
from .seifert import build_seifert

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_SCOPE = 3
EXIT_ORACLE = 4


def _load(path: str) -> Diagram:
    text = sys.stdin.read() if path == "-" else pathlib.Path(path).read_text()
    return parse_pd(text)


def _class_token(d: Diagram) -> str:
    a = classify_alternation(d)
    if a.kind == "alternating":
        return "alternating"
    if a.kind == "almost":
        return "almost"
    return f"{a.k}-almost"


# --------------------------------------------------------------------------
# subcommands


def cmd_parse(args) -> int:
    d = _load(args.file)
    if args.json:
        json.dump(
            {
                "crossings": d.n,
                "free_loops": d.free_loops,
                "components": d.component_count,
                "connected": d.is_connected,
                "fingerprint": d.canonical().fingerprint,
            },
            sys.stdout, indent=2,
        )
        print()
    else:
        print(d.serialize())
    return EXIT_OK


def cmd_classify(args) -> int:
    d = _load(args.file)
    a = classify_alternation(d)
    if args.json:
        obj = {"kind": a.kind, "k": a.k}
        if a.dealternator is not None:
            obj["dealternator"] = a.dealternator
            obj["candidates"] = list(a.candidates)
        json.dump(obj, sys.stdout, indent=2)
        print()
    else:
        print(a.describe())
    return EXIT_OK


def cmd_seifert(args) -> int:
    d = _load(args.file)
    m = build_seifert(d)
    json.dump(
        {
            "circles": [list(c) for c in m.circles],
            "graph": [
                {"crossing": x, "circles": [u, v], "sign": sign}
                for x, (u, v, sign) in enumerate(m.graph_edges)
            ],
            "nested": list(m.nested_circles),
            "stats": {"s": m.s, "c": m.c, "beta1": m.beta1, "euler": m.euler},
        },
        sys.stdout, indent=2,
    )
    print()
    return EXIT_OK


def cmd_decide(args) -> int:
    d = _load(args.file)
    dec = decide_fiber(d)
    if args.cert and dec.certificate is not None:
        pathlib.Path(args.cert).write_text(
            json.dumps(dec.certificate.to_json(), indent=2) + "\n"
        )
    if args.json:
        obj = dec.to_json()
        if dec.certificate is not None:
            obj["hopf"] = hopf_sign_report(dec.certificate)
        json.dump(obj, sys.stdout, indent=2)
        print()
    else:
        line = dec.verdict.kind
        if dec.verdict.detail:
            line += f" ({dec.verdict.detail})"
        print(line)
        if dec.witness is not None:
            print("witness:", dec.witness.describe())
        if dec.certificate is not None:
            rep = hopf_sign_report(dec.certificate)
            print(f"hopf bands: {rep['bands']} "
                  f"({rep['positive']} positive, {rep['negative']} negative)")
        if dec.conway is not None:
            print("conway:", dec.conway)
    return EXIT_SCOPE if dec.verdict.kind == "OutOfScope" else EXIT_OK


def cmd_conway(args) -> int:
    d = _load(args.file)
    print(json.dumps(list(conway(d).coeffs)))
    return EXIT_OK


def cmd_mm_check(args) -> int:
    d = _load(args.file)
    poly = conway(d)
    json.dump({"conway": list(poly.coeffs), "forbidden": mm_forbidden(poly)},
              sys.stdout, indent=2)
    print()
    return EXIT_OK


def cmd_verify_cert(args) -> int:
    cert = CertNode.from_json(json.loads(pathlib.Path(args.file).read_text()))
    ok, msg = certificate_verify(cert)
    print("ok" if ok else f"FAIL: {msg}")
    return EXIT_OK if ok else 1


# --------------------------------------------------------------------------
# corpus


def corpus_dir() -> pathlib.Path:
    return pathlib.Path(str(resources.files("fibercheck") / "corpus"))


def read_manifest(root: pathlib.Path):
    for line in (root / "manifest.tsv").read_text().splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        name, fname, exp_class, exp_verdict, note = line.split("\t")
        yield name, fname, exp_class, exp_verdict, note


def cmd_corpus_run(args) -> int:
    root = pathlib.Path(args.corpus) if args.corpus else corpus_dir()
    report_dir = pathlib.Path(args.report_dir) if args.report_dir else None
    if report_dir:
        report_dir.mkdir(parents=True, exist_ok=True)

    header = ("name", "class", "verdict", "conway", "beta1", "hopf", "status")
    rows: list[tuple[str, ...]] = []
    all_ok = True
    for name, fname, exp_class, exp_verdict, note in read_manifest(root):
        d = parse_pd((root / fname).read_text())
        got_class = _class_token(d)
        dec = decide_fiber(d)
        got_verdict = dec.verdict.kind
        poly = conway(d)
        beta1 = build_seifert(d).beta1
        hopf = ""
        if dec.certificate is not None:
            signs = dec.certificate.hopf_signs()
            hopf = "".join("+" if s > 0 else "-" for s in signs)
        ok = got_class == exp_class and got_verdict == exp_verdict
        all_ok = all_ok and ok
        status = "ok" if ok else (
            f"MISMATCH expected {exp_class}/{exp_verdict}"
        )
        rows.append((name, got_class, got_verdict, str(poly), str(beta1),
                     hopf, status))
        if report_dir:
            from .report import draw_seifert_graph

            draw_seifert_graph(d, report_dir / f"{name}.png", title=name)

    widths = [max(len(r[i]) for r in rows + [header]) for i in range(len(header))]
    fmt = "  ".join(f"{{:{w}}}" for w in widths)
    print(fmt.format(*header))
    for r in rows:
        print(fmt.format(*r))
    if report_dir:
        lines = ["\t".join(header)] + ["\t".join(r) for r in rows]
        (report_dir / "report.tsv").write_text("\n".join(lines) + "\n")
        print(f"report written to {report_dir}")
    return EXIT_OK if all_ok else 1


# --------------------------------------------------------------------------
# argument wiring


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="fibercheck",
        description="Decide whether the Seifert surface of an alternating or "
                    "almost alternating link diagram is a fiber surface.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, **kw):
        sp = sub.add_parser(name, **kw)
        sp.set_defaults(fn=fn)
        return sp

    for name, fn, help_ in [
        ("parse", cmd_parse, "validate a PD file and echo its canonical form"),
        ("classify", cmd_classify, "report the alternation class"),
        ("seifert", cmd_seifert, "emit the Seifert surface model as JSON"),
        ("decide", cmd_decide, "run the fiber-surface decision procedure"),
        ("conway", cmd_conway, "print Conway polynomial coefficients as JSON"),
        ("mm-check", cmd_mm_check,
         "check the genus-2 Hopf-plumbing obstruction"),
    ]:
        sp = add(name, fn, help=help_)
        sp.add_argument("file", help="PD file, or - for stdin")
        if name in ("parse", "classify", "decide"):
            sp.add_argument("--json", action="store_true")
        if name == "decide":
            sp.add_argument("--cert", metavar="PATH",
                            help="write the certificate JSON here")

    sp = add("verify-cert", cmd_verify_cert,
             help="replay and verify a certificate JSON file")
    sp.add_argument("file", help="certificate JSON file")

    sp = add("corpus-run", cmd_corpus_run,
             help="evaluate every corpus entry against its expectations")
    sp.add_argument("--corpus", metavar="DIR",
                    help="corpus directory (default: bundled)")
    sp.add_argument("--report-dir", metavar="DIR",
                    help="write report.tsv and Seifert-graph PNGs here")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InternalOracleError as exc:
        print(f"internal oracle failure: {exc}", file=sys.stderr)
        return EXIT_ORACLE


if __name__ == "__main__":
    sys.exit(main())
