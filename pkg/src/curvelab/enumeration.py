"""Exhaustive curve enumeration through normal coordinates.

A normal multicurve is determined by its edge weights: inside every triangle
the weights dictate how many arcs cut each corner, and the gluing maps say
how strands chain across edges.  Enumerating weight vectors under the
matching conditions (corner counts nonnegative, parities even) up to a total
weight bound therefore enumerates all reduced curves up to that bound.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Optional

from .classes import IsotopyClass, canonical_class
from .curves import Curve
from .errors import NotAVertexError
from .moves import reduce_curve
from .surface import CombinatorialSurface, Slot


def _triangle_edges(surface: CombinatorialSurface, t: int) -> list[Slot]:
    return [surface.canonical_slot((t, e)) for e in range(3)]


def _corner_counts(w0: int, w1: int, w2: int) -> Optional[tuple[int, int, int]]:
    if (w0 + w1 + w2) % 2:
        return None
    n0 = (w2 + w0 - w1) // 2   # arcs cutting corner 0 (slots 2 and 0)
    n1 = (w0 + w1 - w2) // 2   # corner 1 (slots 0 and 1)
    n2 = (w1 + w2 - w0) // 2   # corner 2 (slots 1 and 2)
    if n0 < 0 or n1 < 0 or n2 < 0:
        return None
    return n0, n1, n2


def enumerate_weight_vectors(surface: CombinatorialSurface, max_weight: int,
                             support: Optional[set] = None) -> Iterator[dict]:
    """All nonzero admissible weight vectors of total weight <= max_weight.

    Boundary edges always carry weight zero.  ``support`` (a triangle set)
    restricts nonzero weights to edges with both sides inside it, which makes
    targeted searches in a window of cells cheap.
    """
    interior = [e for e in surface.edges() if e in surface.glue]
    if support is not None:
        allowed = set()
        for e in interior:
            (t1, _), ((t2, _), _) = e, surface.glue[e]
            if t1 in support and t2 in support:
                allowed.add(e)
        interior = [e for e in interior if e in allowed]
    tri_edges = {t: _triangle_edges(surface, t) for t in range(surface.n_tri)}
    # order triangles so each new one shares edges with what came before
    order: list[int] = []
    seen_edges: set[Slot] = set()
    remaining = set(range(surface.n_tri))
    while remaining:
        best = max(remaining,
                   key=lambda t: (sum(1 for e in tri_edges[t] if e in seen_edges), -t))
        order.append(best)
        remaining.discard(best)
        seen_edges.update(tri_edges[best])

    boundary = set(surface.boundary_slots())
    weights: dict[Slot, int] = {e: 0 for e in boundary}
    if support is not None:
        for e in surface.edges():
            if e in surface.glue and e not in interior:
                weights[e] = 0

    def admissible(t: int) -> bool:
        ws = [weights[e] for e in tri_edges[t]]
        return _corner_counts(*ws) is not None

    def rec(i: int, budget: int) -> Iterator[dict]:
        if i == len(order):
            if any(weights.get(e, 0) for e in interior):
                yield dict(weights)
            return
        t = order[i]
        unknown = [e for e in tri_edges[t] if e not in weights]
        unknown = sorted(set(unknown))
        if not unknown:
            if admissible(t):
                yield from rec(i + 1, budget)
            return
        if len(unknown) == 1:
            e = unknown[0]
            known = [weights[x] for x in tri_edges[t] if x != e]
            if len(known) == 3:  # e appears twice in this triangle
                known = known[:1]
            lo = abs(known[0] - known[1]) if len(known) == 2 else 0
            hi = known[0] + known[1] if len(known) == 2 else 2 * budget
            start = lo
            for v in range(start, min(hi, budget) + 1):
                weights[e] = v
                if admissible(t):
                    yield from rec(i + 1, budget - v)
                del weights[e]
            return
        # two or three unknown edges
        e = unknown[0]
        for v in range(0, budget + 1):
            weights[e] = v
            yield from rec(i, budget - v)
            del weights[e]

    yield from rec(0, max_weight)


def decode_weights(surface: CombinatorialSurface, weights: dict) -> list[Curve]:
    """The normal multicurve with the given edge weights, as components."""
    # crossing points: (edge, index) with canonical positions
    arcs: dict[tuple, list] = {}

    def node(edge: Slot, idx: int):
        return arcs.setdefault((edge, idx), [])

    for t in range(surface.n_tri):
        slots = [(t, e) for e in range(3)]
        edges = [surface.canonical_slot(s) for s in slots]
        ws = [weights.get(e, 0) for e in edges]
        counts = _corner_counts(*ws)
        if counts is None:
            raise ValueError("inadmissible weights")

        def canonical_index(e: int, local: int) -> int:
            slot = slots[e]
            if edges[e] == slot:
                return local
            return local if surface.glue[slot][1] else ws[e] - 1 - local

        for c in range(3):
            n_c = counts[c]
            sa = c           # slot with tail at corner c
            sb = (c + 2) % 3  # slot with head at corner c
            for r in range(n_c):
                ia = canonical_index(sa, r)
                ib = canonical_index(sb, ws[sb] - 1 - r)
                a = (edges[sa], ia)
                b = (edges[sb], ib)
                node(*a).append((t, sa, sb, b))
                node(*b).append((t, sb, sa, a))

    for key, ends in arcs.items():
        if len(ends) != 2:
            raise ValueError(f"normal decode failed at {key}: degree {len(ends)}")

    visited: set[tuple] = set()
    curves = []
    for start in sorted(arcs):
        if start in visited:
            continue
        steps = []
        pos = []
        cur = start
        use = arcs[cur][0]
        while True:
            visited.add(cur)
            t, s_in, s_out, nxt = use
            steps.append((t, s_in, s_out))
            edge, idx = nxt
            w = weights[edge]
            pos.append(Fraction(idx + 1, w + 1))
            visited.add(nxt)
            # continue through the other triangle at nxt
            options = [u for u in arcs[nxt] if not (u[0] == t and u[1] == s_out)]
            if len(options) != 1:
                raise ValueError("ambiguous strand continuation")
            use = options[0]
            cur = nxt
            if cur == start and (use[0], use[1]) == (arcs[start][0][0], arcs[start][0][1]):
                break
        curves.append(Curve(surface, steps, pos))
    return curves


def enumerate_vertices(surface: CombinatorialSurface, weight_bound: int,
                       include_one_sided: bool = False,
                       support: Optional[set] = None) -> list[IsotopyClass]:
    """All essential two-sided classes with a representative of weight <=
    the bound, deduplicated, in deterministic (weight, key) order."""
    found: dict[tuple, IsotopyClass] = {}
    for weights in enumerate_weight_vectors(surface, weight_bound, support=support):
        try:
            comps = decode_weights(surface, weights)
        except ValueError:
            continue
        if len(comps) != 1:
            continue  # unions are covered by smaller vectors
        try:
            cls = canonical_class(surface, comps[0])
        except NotAVertexError:
            continue
        if cls.weight > weight_bound:
            continue
        if not include_one_sided and not cls.two_sided:
            continue
        found.setdefault(cls.key, cls)
    return sorted(found.values())
