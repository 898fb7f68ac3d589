"""Regenerate the bundled diagram corpus.

Every entry is either produced by a builder or frozen as a literal PD
code.  The script re-derives classification and verdict for each entry
and refuses to write anything whose computed values disagree with the
expectations recorded below, so the manifest can never drift from the
library's actual behaviour silently.

Run from the repository root:  python tools/gen_corpus.py
"""

from __future__ import annotations

import pathlib

from fibercheck.builders import braid_closure, connect_sum, theta_link, torus_link
from fibercheck.conway import conway, mm_forbidden
from fibercheck.decide import decide_fiber
from fibercheck.diagram import classify_alternation, parse_pd

HERE = pathlib.Path(__file__).resolve().parent.parent
CORPUS = HERE / "src" / "fibercheck" / "corpus"

TREFOIL = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"
KINK = "X(1,2,2,1)"

FIVE2 = "X(1,4,2,5) X(3,8,4,9) X(5,10,6,1) X(9,6,10,7) X(7,2,8,3)"
SIX1 = "X(1,4,2,5) X(7,10,8,11) X(3,9,4,8) X(9,3,10,2) X(5,12,6,1) X(11,6,12,7)"
SIX2 = "X(1,4,2,5) X(5,10,6,11) X(3,9,4,8) X(9,3,10,2) X(7,12,8,1) X(11,6,12,7)"

# Nested almost alternating fibered knot diagram at 10 crossings: built by
# merging a Seifert circle of the 7-crossing almost alternating pretzel
# (generalized theta) diagram with a Seifert circle of the standard
# positive (2,3)-torus diagram, i.e. the inverse of a nested desum.
TEN151 = (
    "X(1,8,2,9) X(2,16,3,15) X(4,14,5,13) X(6,18,7,17) X(10,19,11,20) "
    "X(12,9,13,10) X(14,4,15,3) X(16,8,17,7) X(18,6,19,5) X(20,11,1,12)"
)


def entries():
    tref = parse_pd(TREFOIL)
    kink = parse_pd(KINK)
    out = [
        # name, diagram, expected_class, expected_verdict, note
        ("unknot", parse_pd("U"), "alternating", "Fibered",
         "crossingless unknot; disk fiber"),
        ("kink", kink, "alternating", "Fibered",
         "one-crossing unknot; untwists to a disk"),
        ("trefoil_std", tref, "alternating", "Fibered",
         "standard right-handed trefoil"),
        ("trefoil_plus_kink", connect_sum(tref, kink), "alternating", "Fibered",
         "trefoil with one extra kink; untwist target"),
        ("granny", connect_sum(tref, tref), "alternating", "Fibered",
         "connected sum of two right trefoils"),
        ("fig8_braid", braid_closure([1, -2, 1, -2], 3), "alternating", "Fibered",
         "figure-eight as the (s1 s2^-1)^2 braid closure; nested circles"),
    ]
    for n in range(2, 9):
        out.append((f"torus_{n}", torus_link(n), "alternating", "Fibered",
                    f"standard (2,{n}) torus diagram"))
    out += [
        ("five2_std", parse_pd(FIVE2), "alternating", "NotFibered",
         "table 5_2 diagram, validated by its Conway polynomial 1 + 2z^2"),
        ("six1_std", parse_pd(SIX1), "alternating", "NotFibered",
         "table 6_1 diagram, validated by its Conway polynomial 1 - 2z^2"),
        ("six2_std", parse_pd(SIX2), "alternating", "Fibered",
         "table 6_2 diagram, validated by its Conway polynomial 1 - z^2 - z^4"),
        ("theta7_aa", theta_link([[1], [-1, -1, -1], [-1, -1, -1]]),
         "almost", "Fibered",
         "7-crossing almost alternating pretzel (generalized theta), unnested"),
        ("theta7_aa_mirror",
         theta_link([[1], [-1, -1, -1], [-1, -1, -1]]).mirror(),
         "almost", "Fibered",
         "mirror of theta7_aa; opposite dealternator sign"),
        ("ten151_aa", parse_pd(TEN151), "almost", "Fibered",
         "10-crossing almost alternating fibered knot reading, nested; "
         "constructed by merging theta7_aa with the (2,3) torus diagram "
         "(inverse nested desum), validated by Conway polynomial 1 - z^2 + z^4"),
        ("pretzel_2_m2_2", theta_link([[1, 1], [-1, -1], [1, 1]]),
         "2-almost", "OutOfScope",
         "(2,-2,2) pretzel link reading; fiber surface exists but is out of "
         "scope for the desumming decider"),
        ("pretzel_2_m2_4", theta_link([[1, 1], [-1, -1], [1, 1, 1, 1]]),
         "2-almost", "OutOfScope",
         "(2,-2,4) pretzel link reading; out of scope"),
        ("nine42", braid_closure([-3, -1, -1, 2, -3, 1, 1, 2, -1], 4),
         "2-almost", "OutOfScope",
         "9-crossing knot reading with Conway polynomial 1 - 2z^2 - z^4; "
         "genus-2 plumbing obstruction applies"),
        ("nine44", braid_closure([-1, -3, 2, 3, -1, 3, 2, -3, 2], 4),
         "2-almost", "OutOfScope",
         "9-crossing knot reading with Conway polynomial 1 + z^4; "
         "genus-2 plumbing obstruction applies"),
        ("nine45", braid_closure([-2, -3, -1, 2, -1, 2, -3, -3, -2], 4),
         "2-almost", "OutOfScope",
         "9-crossing knot reading with Conway polynomial 1 + 2z^2 - z^4; "
         "genus-2 plumbing obstruction applies"),
    ]
    return out


def class_token(d):
    a = classify_alternation(d)
    if a.kind == "alternating":
        return "alternating"
    if a.kind == "almost":
        return "almost"
    return f"{a.k}-almost"


def main():
    CORPUS.mkdir(parents=True, exist_ok=True)
    rows = []
    for name, d, exp_class, exp_verdict, note in entries():
        got_class = class_token(d)
        assert got_class == exp_class, (name, got_class, exp_class)
        dec = decide_fiber(d)
        assert dec.verdict.kind == exp_verdict, (name, dec.verdict, exp_verdict)
        poly = conway(d)
        fname = f"{name}.pd"
        header = f"# {name}: {note}\n# conway: {poly}\n"
        (CORPUS / fname).write_text(header + d.serialize() + "\n")
        rows.append(f"{name}\t{fname}\t{exp_class}\t{exp_verdict}\t{note}")
        print(f"{name:20s} {exp_class:12s} {exp_verdict:12s} conway={poly}  "
              f"mm_forbidden={mm_forbidden(poly)}")
    (CORPUS / "manifest.tsv").write_text("\n".join(rows) + "\n")
    print(f"\nwrote {len(rows)} entries to {CORPUS}")


if __name__ == "__main__":
    main()
