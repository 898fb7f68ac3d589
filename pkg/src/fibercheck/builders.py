"""Programmatic diagram constructions.

Two families cover everything we need:

* *flat* diagrams — disjoint unnested circles in the plane joined by
  twisted bands (one crossing per band), specified by a tree or a
  theta-shaped band graph with a bundle of signed bands per graph edge;
* braid closures.

Both build crossings over symbolic arc names and then trace the link to
assign the consecutive edge labels PD codes require.
"""

from __future__ import annotations

from .diagram import Diagram

__all__ = [
    "chain_link",
    "tree_link",
    "theta_link",
    "braid_closure",
    "torus_link",
    "connect_sum",
]


def _finalize(quads_sym, over_ins) -> Diagram:
    """Relabel symbolic quadruples with consecutive strand labels."""
    heads: dict[object, tuple[int, int]] = {}
    succ: dict[object, object] = {}
    for ki, (quad, oi) in enumerate(zip(quads_sym, over_ins)):
        for slot in (0, oi):
            arc = quad[slot]
            if arc in heads:
                raise ValueError(f"arc {arc!r} has two head ends")
            heads[arc] = (ki, slot)
            succ[arc] = quad[2] if slot == 0 else quad[4 - oi]
    if set(succ) != {a for quad in quads_sym for a in quad}:
        raise ValueError("dangling arcs")
    label: dict[object, int] = {}
    nxt = 1
    order = sorted(succ, key=lambda a: heads[a])
    for arc in order:
        if arc in label:
            continue
        cur = arc
        while cur not in label:
            label[cur] = nxt
            nxt += 1
            cur = succ[cur]
    quads = tuple(tuple(label[a] for a in quad) for quad in quads_sym)
    return Diagram(quads, 0, tuple(enumerate(over_ins)))


# --------------------------------------------------------------------------
# flat diagrams


def _flat(n_circles, blocks, bundles) -> Diagram:
    """Build a flat diagram from circles and band bundles.

    ``bundles[b] = (x, y, signs)``: a stack of parallel bands joining
    circles ``x`` and ``y``; ``x`` is the chirality anchor (in a proper
    two-coloring of the band graph, anchors form one color class).
    ``blocks[c]`` lists bundle ids in cyclic order around circle ``c``;
    each bundle's bands meet both of its circles in stored order.
    """
    ends: list[list[tuple[int, int]]] = [[] for _ in range(n_circles)]
    for c in range(n_circles):
        for b in blocks[c]:
            x, y, signs = bundles[b]
            if c not in (x, y):
                raise ValueError(f"bundle {b} not incident to circle {c}")
            ends[c].extend((b, j) for j in range(len(signs)))
    quads = []
    over_ins = []
    for b, (x, y, signs) in enumerate(bundles):
        for j, s in enumerate(signs):
            def arcs(c):
                ring = ends[c]
                k = ring.index((b, j))
                arc_in = (c, (k - 1) % len(ring))  # arc arriving at this end
                arc_out = (c, k)  # arc leaving it
                return arc_in, arc_out

            in_x, out_x = arcs(x)
            in_y, out_y = arcs(y)
            if s > 0:
                quads.append((in_x, in_y, out_y, out_x))
                over_ins.append(1)
            else:
                quads.append((in_y, out_y, out_x, in_x))
                over_ins.append(3)
    return _finalize(quads, over_ins)


def tree_link(parent: list[int | None], bundles: list[list[int]]) -> Diagram:
    """Flat diagram over a tree of circles.

    ``parent[i]`` is the parent of circle ``i`` (``None`` for the root);
    ``bundles[i]`` gives the band signs joining ``i`` to its parent.
    """
    n = len(parent)
    depth = [0] * n
    for i in range(n):
        p = parent[i]
        if p is not None:
            if p >= i:
                raise ValueError("parents must precede children")
            depth[i] = depth[p] + 1
    flat_bundles = []
    blocks: list[list[int]] = [[] for _ in range(n)]
    for i in range(n):
        p = parent[i]
        if p is None:
            continue
        x, y = (p, i) if depth[p] % 2 == 0 else (i, p)
        b = len(flat_bundles)
        flat_bundles.append((x, y, list(bundles[i])))
        blocks[p].append(b)
        blocks[i].append(b)
    # put each node's parent bundle after its children bundles
    for i in range(n):
        p = parent[i]
        if p is None or len(blocks[i]) <= 1:
            continue
        first = blocks[i][0]
        blocks[i] = blocks[i][1:] + [first]
    return _flat(n, blocks, flat_bundles)


def chain_link(bundles: list[list[int]]) -> Diagram:
    """Circles in a row; ``bundles[i]`` joins circle ``i`` to ``i+1``."""
    n = len(bundles) + 1
    return tree_link([None] + list(range(n - 1)), [[]] + list(bundles))


def theta_link(paths: list[list[int]]) -> Diagram:
    """Two hub circles joined by parallel paths of bands.

    Each path is its list of band signs; a path of length ``m`` inserts
    ``m - 1`` circles between the hubs.  All path lengths must share one
    parity so the circle orientations stay coherent.
    """
    if len(paths) < 2 or len({len(p) % 2 for p in paths}) != 1:
        raise ValueError("need >= 2 paths, lengths of uniform parity")
    right_depth = len(paths[0]) % 2
    left, right = 0, 1
    n = 2
    bundles = []
    blocks: list[list[int]] = [[], []]
    right_block = []
    for signs in paths:
        prev, prev_depth = left, 0
        for j, s in enumerate(signs):
            last = j == len(signs) - 1
            if last:
                node, node_depth = right, right_depth
            else:
                node, node_depth = n, prev_depth + 1
                n += 1
                blocks.append([])
            x, y = (prev, node) if prev_depth % 2 == 0 else (node, prev)
            b = len(bundles)
            bundles.append((x, y, [s]))
            blocks[prev].append(b)
            if last:
                right_block.append(b)
            else:
                blocks[node].append(b)
            prev, prev_depth = node, node_depth
    # when both hubs share a color class, the right hub sees the paths in
    # the opposite rotational order
    blocks[right] = right_block[::-1] if right_depth == 0 else right_block
    return _flat(n, blocks, bundles)


# --------------------------------------------------------------------------
# braids


def braid_closure(word: list[int], strands: int | None = None) -> Diagram:
    """Closure of the braid word (``i`` for sigma_i, ``-i`` for its inverse)."""
    if strands is None:
        strands = max(abs(g) for g in word) + 1 if word else 1
    current: list[object] = [("top", i) for i in range(strands)]
    used = [False] * strands
    quads = []
    over_ins = []
    for t, g in enumerate(word):
        i = abs(g) - 1
        if not (0 <= i < strands - 1):
            raise ValueError(f"generator {g} out of range")
        a_l, a_r = current[i], current[i + 1]
        n_l, n_r = ("arc", t, i), ("arc", t, i + 1)
        if g > 0:
            quads.append((a_l, a_r, n_r, n_l))
            over_ins.append(1)
        else:
            quads.append((a_r, n_r, n_l, a_l))
            over_ins.append(3)
        current[i], current[i + 1] = n_l, n_r
        used[i] = used[i + 1] = True
    free = sum(1 for u in used if not u)
    # close up: identify the bottom arcs with the top arcs
    ident = {current[i]: ("top", i) for i in range(strands) if used[i]}

    def res(a):
        while a in ident:
            a = ident[a]
        return a

    quads = [tuple(res(a) for a in quad) for quad in quads]
    d = _finalize(quads, over_ins) if quads else Diagram((), 0)
    return Diagram(d.crossings, d.free_loops + free, d.marks)


def torus_link(n: int) -> Diagram:
    """The (2, n) torus link as a two-strand braid closure (n != 0).

    Positive ``n`` gives ``n`` positive crossings.
    """
    if n == 0:
        raise ValueError("n must be nonzero")
    g = 1 if n > 0 else -1
    return braid_closure([g] * abs(n), 2)


# --------------------------------------------------------------------------
# connected sums


def connect_sum(d1: Diagram, d2: Diagram, e1: int | None = None, e2: int | None = None) -> Diagram:
    """Connected sum of two diagrams along edges ``e1`` and ``e2``."""
    if d1.n == 0 or d2.n == 0:
        raise ValueError("summands need at least one crossing")
    e1 = e1 if e1 is not None else d1.edges[0]
    e2 = e2 if e2 is not None else d2.edges[0]

    def sym(which, d, cut, quad_i, slot, e):
        if e != cut:
            return (which, e)
        role_head = d.role(quad_i, slot) == 0
        # cross-wire: each cut edge's tail half continues into the other
        return ("joinA" if (which == "a") == (not role_head) else "joinB")

    quads = []
    over_ins = []
    for ci, quad in enumerate(d1.crossings):
        quads.append(tuple(sym("a", d1, e1, ci, s, e) for s, e in enumerate(quad)))
        over_ins.append(d1.over_in[ci])
    for ci, quad in enumerate(d2.crossings):
        quads.append(tuple(sym("b", d2, e2, ci, s, e) for s, e in enumerate(quad)))
        over_ins.append(d2.over_in[ci])
    d = _finalize(quads, over_ins)
    return Diagram(d.crossings, d.free_loops + d1.free_loops + d2.free_loops, d.marks)
