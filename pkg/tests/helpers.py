"""Shared oracles for the test suite.

Everything here is independent of the code paths it checks: the Fox
derivative oracle computes the Alexander polynomial straight from a
Wirtinger presentation with sympy, and the generators build diagram
families directly from the public builders.
"""

from __future__ import annotations

import random

import sympy

from fibercheck.builders import chain_link, tree_link
from fibercheck.conway import ConwayPolynomial, alexander
from fibercheck.diagram import Diagram


# --------------------------------------------------------------------------
# Fox derivative Alexander oracle


def fox_alexander_coeffs(d: Diagram) -> tuple[int, ...]:
    """Alexander polynomial of a knot diagram via Fox calculus.

    Builds the Wirtinger presentation (one generator per over-arc, one
    relation per crossing), takes Fox derivatives abelianized to t, and
    returns the minor determinant's coefficients normalized to start at
    t^0 with a positive leading coefficient.
    """
    assert d.component_count == 1 and d.n > 0
    # arcs: edges merge where the strand passes over
    parent = {e: e for e in d.edges}

    def find(e):
        while parent[e] != e:
            parent[e] = parent[parent[e]]
            e = parent[e]
        return e

    for ci, quad in enumerate(d.crossings):
        oi = d.over_in[ci]
        a, b = quad[oi], quad[(oi + 2) % 4]
        parent[find(a)] = find(b)

    arcs = sorted({find(e) for e in d.edges})
    idx = {a: i for i, a in enumerate(arcs)}
    t = sympy.Symbol("t")
    rows = []
    for ci, quad in enumerate(d.crossings):
        o = idx[find(quad[d.over_in[ci]])]
        u_in = idx[find(quad[0])]
        u_out = idx[find(quad[2])]
        row = [sympy.Integer(0)] * len(arcs)
        if d.sign(ci) > 0:
            row[o] += 1 - t
            row[u_in] += t
            row[u_out] += -1
        else:
            row[o] += 1 - 1 / t
            row[u_in] += 1 / t
            row[u_out] += -1
        rows.append(row)
    # drop one relation and one generator column
    m = sympy.Matrix([r[:-1] for r in rows[:-1]])
    det = sympy.cancel(sympy.expand(m.det()))
    return _normalize_laurent(det, t)


def _normalize_laurent(expr, t) -> tuple[int, ...]:
    poly = sympy.Poly(sympy.together(expr * t ** 64).simplify(), t)
    coeffs = [int(c) for c in reversed(poly.all_coeffs())]
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if coeffs and coeffs[-1] < 0:
        coeffs = [-c for c in coeffs]
    return tuple(coeffs)


def alexander_coeffs_from_conway(poly: ConwayPolynomial) -> tuple[int, ...]:
    """The same normalization applied to the skein engine's Alexander."""
    table = alexander(poly)
    if not table:
        return ()
    lo = min(table)
    hi = max(table)
    coeffs = [table.get(k, 0) for k in range(lo, hi + 1)]
    # for a knot all exponents share parity; drop the interleaved zeros
    coeffs = coeffs[::2] if len(coeffs) > 1 else coeffs
    if coeffs[-1] < 0:
        coeffs = [-c for c in coeffs]
    return tuple(coeffs)


# --------------------------------------------------------------------------
# random flat diagram generator (unnested by construction)


def random_flat_diagrams(count: int, seed: int = 2024):
    """Reduced, connected, unnested diagrams from chain and tree builders."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        if rng.random() < 0.5:
            bundles = [[rng.choice([1, -1]) for _ in range(rng.randint(2, 4))]
                       for _ in range(rng.randint(1, 4))]
            d = chain_link(bundles)
        else:
            n = rng.randint(2, 5)
            par = [None] + [rng.randrange(k) for k in range(1, n)]
            bundles = [[]] + [
                [rng.choice([1, -1]) for _ in range(rng.randint(2, 3))]
                for _ in range(n - 1)
            ]
            d = tree_link(par, bundles)
        if d.nugatory or not d.is_connected:
            continue
        out.append(d)
    return out
