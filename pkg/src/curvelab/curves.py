"""Transverse curves on a triangulated surface.

A curve is a cyclic sequence of steps (triangle, entry slot, exit slot); the
transition after step k crosses the glued edge between steps k and k+1 and
carries an exact rational position, measured along the canonical side of
that edge.  Orders of crossings along an edge are the only thing positions
encode; values are renormalized freely.

Reduction has two moves:

* backtrack removal -- a step entering and leaving across the same edge is
  erased (weight drops by 2);
* vertex push -- an innermost arc hugging an interior vertex and covering
  more than half its fan is pushed across (weight drops by ``2s - d``).

Weight-neutral pushes (``2s == d``) connect minimal-weight representatives;
``reduce`` explores that orbit so equal isotopy classes get equal canonical
encodings.  Confluence is not assumed: it is checked by enumeration in the
test suite, as is agreement with the cut-based isotopy test.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import EmbeddednessError
from .surface import CombinatorialSurface, Slot

Step = tuple[int, int, int]  # (triangle, entry slot, exit slot)


def other_side(surface: CombinatorialSurface, s: Slot) -> Slot:
    return surface.glue[s][0]


def to_canonical_pos(surface: CombinatorialSurface, s: Slot, p: Fraction) -> Fraction:
    """Position ``p`` along slot ``s`` re-expressed on the canonical side."""
    canon = surface.canonical_slot(s)
    if canon == s:
        return p
    flip = surface.glue[s][1]
    return p if flip else 1 - p


def from_canonical_pos(surface: CombinatorialSurface, s: Slot, p: Fraction) -> Fraction:
    return to_canonical_pos(surface, s, p)  # the map is an involution


class Curve:
    """An embedded closed transverse curve (possibly not yet reduced)."""

    def __init__(self, surface: CombinatorialSurface, steps: Sequence[Step],
                 pos: Optional[Sequence[Fraction]] = None, check: bool = True):
        self.surface = surface
        self.steps: tuple[Step, ...] = tuple(steps)
        if pos is None:
            pos = self._default_positions()
        self.pos: tuple[Fraction, ...] = tuple(Fraction(p) for p in pos)
        if check and self.steps:
            self.validate()

    # -- basic structure ----------------------------------------------------

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def weight(self) -> int:
        return len(self.steps)

    def is_empty(self) -> bool:
        return not self.steps

    def transition_slot(self, k: int) -> Slot:
        """Exit slot of step k; the transition crosses its glued edge."""
        t, _, e_out = self.steps[k]
        return (t, e_out)

    def transition_edge(self, k: int) -> Slot:
        cache = getattr(self, "_tedges", None)
        if cache is None:
            cache = [self.surface.canonical_slot(self.transition_slot(i))
                     for i in range(len(self.steps))]
            self._tedges = cache
        return cache[k]

    def _default_positions(self) -> list[Fraction]:
        per_edge: dict[Slot, list[int]] = {}
        for k in range(len(self.steps)):
            per_edge.setdefault(self.transition_edge(k), []).append(k)
        pos = [Fraction(0)] * len(self.steps)
        for edge, ks in per_edge.items():
            for i, k in enumerate(ks):
                pos[k] = Fraction(i + 1, len(ks) + 1)
        return pos

    def entry_position(self, k: int) -> Fraction:
        """Position of step k's entry point, along slot (t, e_in)."""
        t, e_in, _ = self.steps[k]
        prev = (k - 1) % len(self.steps)
        return from_canonical_pos(self.surface, (t, e_in), self.pos[prev])

    def exit_position(self, k: int) -> Fraction:
        t, _, e_out = self.steps[k]
        return from_canonical_pos(self.surface, (t, e_out), self.pos[k])

    def validate(self) -> None:
        n = len(self.steps)
        if n < 2:
            raise EmbeddednessError("curves must cross the 1-skeleton at least twice")
        for k, (t, e_in, e_out) in enumerate(self.steps):
            if not (0 <= t < self.surface.n_tri):
                raise EmbeddednessError(f"bad triangle in step {k}")
            nxt = self.steps[(k + 1) % n]
            got = self.surface.glue.get((t, e_out))
            if got is None:
                raise EmbeddednessError(f"step {k} exits through a boundary edge")
            if got[0] != (nxt[0], nxt[1]):
                raise EmbeddednessError(f"steps {k} and {k + 1} do not chain")
            if not (0 < self.pos[k] < 1):
                raise EmbeddednessError("transition positions must lie inside the edge")
        per_edge: dict[Slot, list[Fraction]] = {}
        for k in range(n):
            per_edge.setdefault(self.transition_edge(k), []).append(self.pos[k])
        for edge, ps in per_edge.items():
            if len(set(ps)) != len(ps):
                raise EmbeddednessError(f"coincident crossings on edge {edge}")
        check_chords_embedded(self.surface, [self])

    # -- topological basics ---------------------------------------------------

    def is_two_sided(self) -> bool:
        parity = 0
        for k in range(len(self.steps)):
            _, flip = self.surface.glue[self.transition_slot(k)]
            parity ^= int(flip)
        return parity == 0

    def reverse(self) -> "Curve":
        n = len(self.steps)
        steps = [(t, e_out, e_in) for (t, e_in, e_out) in reversed(self.steps)]
        # reversed transition j crosses the edge of original transition n-2-j
        pos = [self.pos[(n - 2 - j) % n] for j in range(n)]
        return Curve(self.surface, steps, pos, check=False)

    def edge_order(self) -> dict[Slot, tuple[int, ...]]:
        """Transitions on each edge, sorted by position; only multi-crossed
        edges are reported (single crossings carry no order data)."""
        per_edge: dict[Slot, list[int]] = {}
        for k in range(len(self.steps)):
            per_edge.setdefault(self.transition_edge(k), []).append(k)
        out = {}
        for edge, ks in per_edge.items():
            if len(ks) > 1:
                out[edge] = tuple(sorted(ks, key=lambda k: self.pos[k]))
        return out

    # -- canonical encoding ----------------------------------------------------

    def _encoding_for(self, steps: tuple[Step, ...], order_rank: dict[int, tuple[Slot, int]]):
        n = len(steps)
        orders: dict[Slot, list[tuple[int, int]]] = {}
        for new_idx in range(n):
            edge, rank = order_rank[new_idx]
            orders.setdefault(edge, []).append((rank, new_idx))
        order_part = tuple(sorted((edge, tuple(i for _, i in sorted(v)))
                                  for edge, v in orders.items() if len(v) > 1))
        return (steps, order_part)

    def all_encodings(self):
        for cur in (self, self.reverse()):
            n = len(cur.steps)
            per_edge: dict[Slot, list[int]] = {}
            for k in range(n):
                per_edge.setdefault(cur.transition_edge(k), []).append(k)
            rank_of: dict[int, tuple[Slot, int]] = {}
            for edge, ks in per_edge.items():
                for r, k in enumerate(sorted(ks, key=lambda k: cur.pos[k])):
                    rank_of[k] = (edge, r)
            least = min(cur.steps)
            for r in range(n):
                if cur.steps[r] != least:
                    continue
                rot_steps = tuple(cur.steps[(r + i) % n] for i in range(n))
                rot_rank = {i: rank_of[(r + i) % n] for i in range(n)}
                yield self._encoding_for(rot_steps, rot_rank), (cur, r)

    def canonical_key(self):
        got = getattr(self, "_key_cache", None)
        if got is None:
            got = min(enc for enc, _ in self.all_encodings())
            self._key_cache = got
        return got

    def canonicalize(self) -> "Curve":
        """Rotate/orient to the smallest encoding, renormalizing positions."""
        best, (cur, r) = min(self.all_encodings(), key=lambda p: p[0])
        n = len(cur.steps)
        steps = tuple(cur.steps[(r + i) % n] for i in range(n))
        pos = [cur.pos[(r + i) % n] for i in range(n)]
        c = Curve(self.surface, steps, pos, check=False)
        return c.renormalized()

    def renormalized(self) -> "Curve":
        per_edge: dict[Slot, list[int]] = {}
        for k in range(len(self.steps)):
            per_edge.setdefault(self.transition_edge(k), []).append(k)
        pos = list(self.pos)
        for edge, ks in per_edge.items():
            for r, k in enumerate(sorted(ks, key=lambda k: self.pos[k])):
                pos[k] = Fraction(r + 1, len(ks) + 1)
        return Curve(self.surface, self.steps, pos, check=False)


def chord_coords(surface: CombinatorialSurface, curves: Iterable[Curve]):
    """Chords per triangle as boundary coordinates in [0, 3)."""
    per_tri: dict[int, list[tuple[Fraction, Fraction, int, int]]] = {}
    for ci, c in enumerate(curves):
        for k, (t, e_in, e_out) in enumerate(c.steps):
            a = e_in + c.entry_position(k)
            b = e_out + c.exit_position(k)
            per_tri.setdefault(t, []).append((a, b, ci, k))
    return per_tri


def check_chords_embedded(surface: CombinatorialSurface, curves: list[Curve]) -> None:
    """No two chords of the same family may cross inside a triangle."""
    for t, chords in chord_coords(surface, curves).items():
        for i in range(len(chords)):
            for j in range(i + 1, len(chords)):
                a1, b1, c1, _ = chords[i]
                a2, b2, c2, _ = chords[j]
                if {a1, b1} & {a2, b2}:
                    raise EmbeddednessError(f"coincident chord endpoints in triangle {t}")
                if chords_interleave(a1, b1, a2, b2):
                    raise EmbeddednessError(
                        f"crossing strands in triangle {t} (curves {c1}, {c2})")


def chords_interleave(a1, b1, a2, b2) -> bool:
    lo, hi = min(a1, b1), max(a1, b1)
    in1 = (lo < a2 < hi)
    in2 = (lo < b2 < hi)
    return in1 != in2


# -- vertex fans ---------------------------------------------------------------

Corner = tuple[int, int]


@dataclass
class Fan:
    corners: list[Corner]
    edges: list[tuple[Slot, int]]  # (canonical edge, end index at the vertex)
    cyclic: bool


def _corner_slots(c: Corner) -> tuple[Slot, Slot]:
    """Tail slot and head slot at a corner."""
    t, k = c
    return (t, k), (t, (k + 2) % 3)


def _step_across(surface: CombinatorialSurface, corner: Corner, via: Slot):
    got = surface.glue.get(via)
    if got is None:
        return None
    (t2, e2), flip = got
    t, k = corner
    if via == (t, k):  # crossed the tail slot: corner was its tail
        target_end = 0
    else:
        target_end = 1
    if flip:
        c2 = e2 if target_end == 0 else (e2 + 1) % 3
    else:
        c2 = (e2 + 1) % 3 if target_end == 0 else e2
    new_corner = (t2, c2)
    # continue around the vertex across the other slot at the new corner
    s1, s2 = _corner_slots(new_corner)
    nxt = s2 if (t2, e2) == s1 else s1
    if (t2, e2) not in (s1, s2):
        raise AssertionError("gluing did not land on the pivot vertex")
    return new_corner, nxt


def _edge_end_at_vertex(surface: CombinatorialSurface, via: Slot, corner: Corner) -> tuple[Slot, int]:
    t, k = corner
    end = 0 if via == (t, k) else 1
    canon = surface.canonical_slot(via)
    if canon != via:
        flip = surface.glue[via][1]
        end = end if flip else 1 - end
    return canon, end


def vertex_fans(surface: CombinatorialSurface) -> tuple[list[Fan], dict[Corner, tuple[int, int]]]:
    cached = getattr(surface, "_fan_cache", None)
    if cached is not None:
        return cached
    seen: set[Corner] = set()
    fans: list[Fan] = []
    locate: dict[Corner, tuple[int, int]] = {}
    for t in range(surface.n_tri):
        for k in range(3):
            c0 = (t, k)
            if c0 in seen:
                continue
            corners = [c0]
            edges: list[tuple[Slot, int]] = []
            cyclic = True
            cur, via = c0, _corner_slots(c0)[0]
            while True:
                step = _step_across(surface, cur, via)
                if step is None:
                    cyclic = False
                    break
                edges.append(_edge_end_at_vertex(surface, via, cur))
                cur, via = step
                if cur == c0:
                    break
                corners.append(cur)
            if not cyclic:
                # walk the other way to pick up the rest of a boundary fan
                rev_corners: list[Corner] = []
                rev_edges: list[tuple[Slot, int]] = []
                cur, via = c0, _corner_slots(c0)[1]
                while True:
                    step = _step_across(surface, cur, via)
                    if step is None:
                        break
                    rev_edges.append(_edge_end_at_vertex(surface, via, cur))
                    cur, via = step
                    rev_corners.append(cur)
                corners = list(reversed(rev_corners)) + corners
                edges = list(reversed(rev_edges)) + edges
            fi = len(fans)
            fans.append(Fan(corners, edges, cyclic))
            for pi, c in enumerate(corners):
                seen.add(c)
                locate[c] = (fi, pi)
    surface._fan_cache = (fans, locate)
    return fans, locate


def cut_corner(step: Step) -> Corner:
    """The triangle corner a chord separates from the other two."""
    t, e_in, e_out = step
    a, b = min(e_in, e_out), max(e_in, e_out)
    if b == a + 1:
        return (t, b)
    return (t, 0)


def make_curve(surface: CombinatorialSurface, entries: Sequence[Slot],
               pos: Optional[Sequence[Fraction]] = None) -> Curve:
    """Build a curve from the cyclic list of slots it enters triangles by.

    The exit of each step is inferred: it is the slot glued to the next
    entry.  Raises if consecutive entries do not share a gluing.
    """
    steps: list[Step] = []
    n = len(entries)
    for k, (t, e_in) in enumerate(entries):
        nxt = tuple(entries[(k + 1) % n])
        e_out = None
        for e in range(3):
            got = surface.glue.get((t, e))
            if got is not None and got[0] == nxt:
                e_out = e
                break
        if e_out is None:
            raise EmbeddednessError(f"entry {k} does not reach entry {k + 1}")
        steps.append((t, e_in, e_out))
    return Curve(surface, steps, pos)
