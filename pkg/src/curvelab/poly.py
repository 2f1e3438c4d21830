"""Polygon complexes: the shared cell-gluing machinery.

A PolyComplex is a disjoint set of convex polygons together with a partial
gluing of their sides.  Side ``s`` of a polygon runs from corner ``s`` to
corner ``s+1``.  A gluing carries a flip flag describing how the two sides
are identified as parametrized segments:

* ``flip=False`` -- parameter ``x`` on one side meets ``1-x`` on the other
  (the identification seen by two consistently oriented polygons);
* ``flip=True``  -- parameter ``x`` meets ``x``.

Triangulated surfaces, cut pieces, and curve-complement regions are all
instances, so Euler characteristics, boundary circles and orientability are
implemented once, here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterable, Optional

Side = tuple[int, int]  # (polygon index, side index)


class DisjointSets:
    """Union-find over hashable keys."""

    def __init__(self) -> None:
        self.parent: dict = {}

    def find(self, x):
        parent = self.parent
        root = x
        while parent.setdefault(root, root) != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a, b) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb

    def groups(self) -> dict:
        out: dict = {}
        for x in list(self.parent):
            out.setdefault(self.find(x), []).append(x)
        return out


@dataclass(frozen=True)
class BoundaryCircle:
    """One boundary circuit, as the cyclic list of unglued sides it visits."""

    sides: tuple[Side, ...]


class PolyComplex:
    def __init__(self, sizes: Iterable[int]):
        self.sizes = list(sizes)
        if any(k < 2 for k in self.sizes):
            raise ValueError("polygons need at least 2 sides")
        self.glue: dict[Side, tuple[Side, bool]] = {}

    # -- construction -----------------------------------------------------

    def add_gluing(self, a: Side, b: Side, flip: bool) -> None:
        if a in self.glue or b in self.glue:
            raise ValueError(f"side already glued: {a} or {b}")
        if a == b:
            raise ValueError("cannot glue a side to itself")
        self._check_side(a)
        self._check_side(b)
        self.glue[a] = (b, flip)
        self.glue[b] = (a, flip)

    def _check_side(self, s: Side) -> None:
        p, i = s
        if not (0 <= p < len(self.sizes)) or not (0 <= i < self.sizes[p]):
            raise ValueError(f"no such side: {s}")

    # -- basic counts ------------------------------------------------------

    def all_sides(self) -> list[Side]:
        return [(p, i) for p, k in enumerate(self.sizes) for i in range(k)]

    def boundary_sides(self) -> list[Side]:
        return [s for s in self.all_sides() if s not in self.glue]

    def side_corners(self, s: Side) -> tuple[tuple[int, int], tuple[int, int]]:
        """Tail and head corners of a side, as (polygon, corner) pairs."""
        p, i = s
        return (p, i), (p, (i + 1) % self.sizes[p])

    def corner_map_across(self, s: Side) -> dict[tuple[int, int], tuple[int, int]]:
        """How the two corners of a glued side land on the partner side."""
        t, flip = self.glue[s]
        (pt, ct), (ph, ch) = self.side_corners(s)
        (qt, dt), (qh, dh) = self.side_corners(t)
        if flip:
            return {(pt, ct): (qt, dt), (ph, ch): (qh, dh)}
        return {(pt, ct): (qh, dh), (ph, ch): (qt, dt)}

    def vertex_classes(self) -> DisjointSets:
        ds = DisjointSets()
        for p, k in enumerate(self.sizes):
            for c in range(k):
                ds.find((p, c))
        for s in self.glue:
            for a, b in self.corner_map_across(s).items():
                ds.union(a, b)
        return ds

    def euler_characteristic(self) -> int:
        v = len(set(self.vertex_classes().find(x) for p, k in enumerate(self.sizes) for x in [(p, c) for c in range(k)]))
        n_sides = sum(self.sizes)
        e = (n_sides - len(self.glue)) + len(self.glue) // 2
        f = len(self.sizes)
        return v - e + f

    # -- connectivity ------------------------------------------------------

    def components(self) -> list[list[int]]:
        ds = DisjointSets()
        for p in range(len(self.sizes)):
            ds.find(p)
        for (p, _), ((q, _), _) in self.glue.items():
            ds.union(p, q)
        comps = ds.groups()
        return sorted((sorted(v) for v in comps.values()), key=lambda c: c[0])

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    # -- orientability -----------------------------------------------------

    def orientation_signs(self, order: Optional[list[int]] = None) -> Optional[dict[int, int]]:
        """Consistent +-1 signs per polygon, or None if nonorientable.

        ``order`` optionally fixes the BFS seed order; the result (None or
        some valid assignment) is independent of it.
        """
        signs: dict[int, int] = {}
        seeds = order if order is not None else range(len(self.sizes))
        for seed in seeds:
            if seed in signs:
                continue
            signs[seed] = 1
            queue = [seed]
            while queue:
                p = queue.pop()
                for i in range(self.sizes[p]):
                    got = self.glue.get((p, i))
                    if got is None:
                        continue
                    (q, _), flip = got
                    want = -signs[p] if flip else signs[p]
                    if q in signs:
                        if signs[q] != want:
                            return None
                    else:
                        signs[q] = want
                        queue.append(q)
        return signs

    def is_orientable(self) -> bool:
        return self.orientation_signs() is not None

    # -- boundary circuits ---------------------------------------------------

    def _pivot(self, side: Side, end: int) -> tuple[Side, int]:
        """From one end of a boundary side, walk the corner fan to the next
        boundary side around the same vertex.  Returns (side, end)."""
        p, i = side
        e = end
        while True:
            k = self.sizes[p]
            # the other side at this corner
            if e == 0:
                nxt, ne = (p, (i - 1) % k), 1
            else:
                nxt, ne = (p, (i + 1) % k), 0
            got = self.glue.get(nxt)
            if got is None:
                return nxt, ne
            (q, j), flip = got
            p, i = q, j
            e = ne if flip else 1 - ne

    def boundary_circles(self) -> list[BoundaryCircle]:
        unseen = set()
        for s in self.boundary_sides():
            unseen.add((s, 0))
            unseen.add((s, 1))
        circles = []
        while unseen:
            start = min(unseen)
            walk = []
            cur = start
            while True:
                unseen.discard(cur)
                side, end = cur
                other = (side, 1 - end)
                unseen.discard(other)
                walk.append(side)
                cur = self._pivot(side, 1 - end)
                if cur == start:
                    break
            circles.append(BoundaryCircle(tuple(walk)))
        circles.sort(key=lambda c: c.sides[0])
        return circles


def fan_triangulate(sizes: list[int]) -> tuple[list[tuple[int, int]], dict[tuple[int, Side], tuple[int, int, bool]], list[tuple[Side, int, Side, int, bool]]]:
    """Triangulate each polygon by fanning from corner 0.

    Returns (triangles, side_map, internal_gluings) where triangles are
    (polygon, fan index) labels, side_map sends each original polygon side to
    (triangle index, slot, reversed) and internal_gluings list the new fan
    diagonals as (triangle a, slot, triangle b, slot, flip).
    """
    tris: list[tuple[int, int]] = []
    side_map: dict[Side, tuple[int, int, bool]] = {}
    internal: list[tuple[int, int, int, int, bool]] = []
    for p, k in enumerate(sizes):
        if k == 2:
            # bigon: two triangles sharing two edges around an interior vertex
            t0 = len(tris)
            tris.append((p, 0))
            tris.append((p, 1))
            side_map[(p, 0)] = (t0, 0, False)
            side_map[(p, 1)] = (t0 + 1, 0, False)
            internal.append((t0, 1, t0 + 1, 2, False))
            internal.append((t0, 2, t0 + 1, 1, False))
            continue
        base = len(tris)
        for j in range(k - 2):
            tris.append((p, j))
        for j in range(k - 2):
            t = base + j
            if j == 0:
                side_map[(p, 0)] = (t, 0, False)
            side_map[(p, j + 1)] = (t, 1, False)
            if j == k - 3:
                side_map[(p, k - 1)] = (t, 2, False)
            else:
                internal.append((t, 2, t + 1, 0, False))
    return tris, side_map, internal


def spread_positions(n: int) -> list[Fraction]:
    """n distinct positions strictly inside (0, 1), evenly spread."""
    return [Fraction(i + 1, n + 1) for i in range(n)]
