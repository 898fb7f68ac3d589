"""Combinatorial model of the surface obtained by oriented smoothing.

Smoothing every crossing of an oriented diagram leaves a collection of
disjoint circles on the sphere; capping each with a disk and re-attaching
a twisted band per crossing yields the projection surface.  Everything we
need about that surface is carried by:

* the circles (cycles of diagram edges under the smoothed successor map),
* the signed circle graph (vertices are circles, one edge per crossing),
* the gap regions (sphere regions of the smoothed picture, obtained by
  merging the two diagram faces lateral to each crossing), and
* the nesting tree (gap regions as nodes, circles as edges).

A circle is *nested* when other circles lie on both of its sides, which in
the nesting tree means both endpoints of its tree edge have degree >= 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from .diagram import Diagram, DiagramError, _surgery

__all__ = ["SeifertModel", "ParallelPair", "build_seifert", "split_nested"]


@dataclass(frozen=True)
class ParallelPair:
    """Two crossings joining the same pair of circles."""

    x: int
    y: int
    circles: tuple[int, int]
    same_sign: bool
    adjacent: bool  # cobounding a bigon face with one edge on each circle


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def union(self, a: int, b: int):
        self.parent[self.find(a)] = self.find(b)


@dataclass(frozen=True)
class SeifertModel:
    diagram: Diagram

    # -- circles -------------------------------------------------------------

    def _smoothed_succ(self, e: int) -> int:
        d = self.diagram
        ci, slot = d.head_of(e)
        oi = d.over_in[ci]
        quad = d.crossings[ci]
        return quad[4 - oi] if slot == 0 else quad[2]

    @cached_property
    def circles(self) -> tuple[tuple[int, ...], ...]:
        """Each circle as its cycle of diagram edges (smoothed order).

        Crossingless components are appended as empty tuples so that the
        circle count matches the surface's disk count.
        """
        d = self.diagram
        out = []
        seen: set[int] = set()
        for e in d.edges:
            if e in seen:
                continue
            cyc = [e]
            seen.add(e)
            cur = self._smoothed_succ(e)
            while cur != e:
                cyc.append(cur)
                seen.add(cur)
                cur = self._smoothed_succ(cur)
            out.append(tuple(cyc))
        out.extend(() for _ in range(d.free_loops))
        return tuple(out)

    @cached_property
    def circle_of(self) -> dict[int, int]:
        return {e: i for i, cyc in enumerate(self.circles) for e in cyc}

    # -- the signed circle graph ----------------------------------------------

    @cached_property
    def graph_edges(self) -> tuple[tuple[int, int, int], ...]:
        """Per crossing: (circle_u, circle_v, sign).

        ``circle_u`` carries the incoming under-strand edge; ``circle_v``
        carries the incoming over-strand edge.  The two are always
        distinct (bands never join a circle to itself).
        """
        d = self.diagram
        out = []
        for ci, quad in enumerate(d.crossings):
            oi = d.over_in[ci]
            u = self.circle_of[quad[0]]
            v = self.circle_of[quad[oi]]
            if u == v:  # pragma: no cover - impossible for valid diagrams
                raise DiagramError(f"crossing {ci} joins a circle to itself")
            out.append((u, v, d.sign(ci)))
        return tuple(out)

    # -- surface statistics -----------------------------------------------------

    @property
    def s(self) -> int:
        return len(self.circles)

    @property
    def c(self) -> int:
        return self.diagram.n

    @cached_property
    def k(self) -> int:
        """Number of connected components of the surface."""
        uf = _UnionFind(self.s)
        for u, v, _ in self.graph_edges:
            uf.union(u, v)
        return len({uf.find(i) for i in range(self.s)})

    @property
    def beta1(self) -> int:
        return self.c - self.s + self.k

    @property
    def euler(self) -> int:
        return self.s - self.c

    @cached_property
    def circle_degree(self) -> tuple[int, ...]:
        deg = [0] * self.s
        for u, v, _ in self.graph_edges:
            deg[u] += 1
            deg[v] += 1
        return tuple(deg)

    # -- gap regions and nesting --------------------------------------------------

    @cached_property
    def _corner_face(self) -> dict[tuple[int, int], int]:
        d = self.diagram
        out = {}
        for fi, corners in enumerate(d.face_corners):
            for corner in corners:
                out[corner] = fi
        return out

    @cached_property
    def gap_class(self) -> tuple[int, ...]:
        """Face index -> gap-region class of the smoothed picture.

        Smoothing a crossing merges the two faces lateral to it: corners
        0 and 2 when the over-strand enters at slot 1, corners 1 and 3
        when it enters at slot 3.
        """
        d = self.diagram
        uf = _UnionFind(len(d.faces))
        for ci in range(d.n):
            oi = d.over_in[ci]
            lat = (0, 2) if oi == 1 else (1, 3)
            f1 = self._corner_face[(ci, lat[0])]
            f2 = self._corner_face[(ci, lat[1])]
            uf.union(f1, f2)
        return tuple(uf.find(i) for i in range(len(d.faces)))

    def crossing_region(self, ci: int) -> int:
        """Gap-region class the band at ``ci`` passes through."""
        oi = self.diagram.over_in[ci]
        lat = 0 if oi == 1 else 1
        return self.gap_class[self._corner_face[(ci, lat)]]

    @cached_property
    def circle_sides(self) -> tuple[tuple[int, int], ...]:
        """Per circle, the gap-region classes on its two sides."""
        d = self.diagram
        out = []
        for cyc in self.circles:
            if not cyc:
                out.append((-1, -1))
                continue
            e = cyc[0]
            left = self.gap_class[d.dart_face[(e, +1)]]
            right = self.gap_class[d.dart_face[(e, -1)]]
            out.append((left, right))
        return tuple(out)

    @cached_property
    def nested_circles(self) -> tuple[int, ...]:
        """Circles with other circles on both sides."""
        deg: dict[int, int] = {}
        for left, right in self.circle_sides:
            for r in (left, right):
                if r >= 0:
                    deg[r] = deg.get(r, 0) + 1
        out = []
        for i, (left, right) in enumerate(self.circle_sides):
            if left >= 0 and deg[left] >= 2 and deg[right] >= 2:
                out.append(i)
        return tuple(out)

    def sides_of(self, circle: int) -> tuple[frozenset[int], frozenset[int]]:
        """Partition the crossings by which side of ``circle`` they lie on."""
        left, right = self.circle_sides[circle]
        # grow region adjacency through every other circle
        adj: dict[int, set[int]] = {}
        for i, (a, b) in enumerate(self.circle_sides):
            if i == circle or a < 0:
                continue
            adj.setdefault(a, set()).add(b)
            adj.setdefault(b, set()).add(a)

        def reach(start: int) -> set[int]:
            seen = {start}
            todo = [start]
            while todo:
                r = todo.pop()
                for r2 in adj.get(r, ()):
                    if r2 not in seen:
                        seen.add(r2)
                        todo.append(r2)
            return seen

        left_regions = reach(left)
        sides = ([], [])
        for ci in range(self.c):
            region = self.crossing_region(ci)
            sides[0 if region in left_regions else 1].append(ci)
        return frozenset(sides[0]), frozenset(sides[1])

    # -- parallel pairs ---------------------------------------------------------

    @cached_property
    def parallel_pairs(self) -> tuple[ParallelPair, ...]:
        d = self.diagram
        by_pair: dict[tuple[int, int], list[int]] = {}
        for ci, (u, v, _sign) in enumerate(self.graph_edges):
            by_pair.setdefault((min(u, v), max(u, v)), []).append(ci)
        bigons: set[tuple[int, int]] = set()
        for face, corners in zip(d.faces, d.face_corners):
            if len(face) != 2:
                continue
            (c1, _), (c2, _) = corners
            e1, e2 = face[0][0], face[1][0]
            if c1 == c2 or self.circle_of[e1] == self.circle_of[e2]:
                continue
            bigons.add((min(c1, c2), max(c1, c2)))
        out = []
        for circles, members in sorted(by_pair.items()):
            for x, y in combinations(sorted(members), 2):
                out.append(
                    ParallelPair(
                        x,
                        y,
                        circles,
                        same_sign=d.sign(x) == d.sign(y),
                        adjacent=(x, y) in bigons,
                    )
                )
        return tuple(out)


def build_seifert(d: Diagram) -> SeifertModel:
    return SeifertModel(d)


def split_nested(d: Diagram, circle: int) -> tuple[Diagram, Diagram]:
    """Cut the surface along the disk of a nested circle.

    Returns the two diagrams obtained by smoothing away all crossings on
    one side of ``circle`` (circles left with no crossings are dropped).
    First Betti numbers of the pieces sum to the original's.
    """
    model = build_seifert(d)
    if circle not in model.nested_circles:
        raise DiagramError(f"circle {circle} is not nested")
    side1, side2 = model.sides_of(circle)
    pieces = []
    for smooth_away in (side2, side1):
        splices = []
        for ci in smooth_away:
            quad = d.crossings[ci]
            oi = d.over_in[ci]
            splices.append((quad[0], quad[4 - oi]))
            splices.append((quad[oi], quad[2]))
        piece = _surgery(d, removed=set(smooth_away), splices=splices)
        pieces.append(Diagram(piece.crossings, 0))
    return pieces[0], pieces[1]
