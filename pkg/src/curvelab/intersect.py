"""Geometric intersection numbers by overlay and bigon removal.

Two reduced curves are realized simultaneously (a deterministic interleaving
of their edge orders), the complementary regions of the union are computed
exactly, and embedded bigons are removed one at a time by sliding the second
curve across.  The count of the bigon-free overlay is the geometric
intersection number; the final region census is the certificate's witness.

An independence oracle (minimum over every initial interleaving) guards the
bigon criterion at desk scale; see the test suite and the acceptance run.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .curves import Curve, to_canonical_pos
from .geometry import DegenerateGeometryError, RegionComplex, region_complex, regions_of
from .surface import Slot


@dataclass
class Bigon:
    corners: tuple
    a_sides: list
    b_sides: list
    region_polys: list[int]


@dataclass
class IntersectionCertificate:
    count: int
    crossings: list[dict]
    regions: list[dict]
    a: Curve
    b: Curve


def merge_positions(a: Curve, b: Curve, shuffle: Optional[dict] = None) -> tuple[Curve, Curve]:
    """Respread both curves' positions onto one scale per edge.

    Ties break with ``a`` first.  ``shuffle`` optionally dictates the
    interleaving: edge -> tuple of 0/1 flags giving the source curve of each
    crossing in order (the brute-force oracle sweeps these).
    """
    per_edge: dict[Slot, list[tuple]] = {}
    for who, c in ((0, a), (1, b)):
        for k in range(len(c.steps)):
            per_edge.setdefault(c.transition_edge(k), []).append((c.pos[k], who, k))
    new_pos = {0: list(a.pos), 1: list(b.pos)}
    for edge, items in per_edge.items():
        if shuffle is not None and edge in shuffle:
            ofa = sorted((p, k) for p, w, k in items if w == 0)
            ofb = sorted((p, k) for p, w, k in items if w == 1)
            ia = ib = 0
            ordered = []
            for flag in shuffle[edge]:
                if flag == 0:
                    ordered.append((0, ofa[ia][1]))
                    ia += 1
                else:
                    ordered.append((1, ofb[ib][1]))
                    ib += 1
        else:
            ordered = [(w, k) for _, w, k in sorted(items)]
        n = len(ordered)
        for i, (w, k) in enumerate(ordered):
            new_pos[w][k] = Fraction(i + 1, n + 1)
    a2 = Curve(a.surface, a.steps, new_pos[0], check=False)
    b2 = Curve(b.surface, b.steps, new_pos[1], check=False)
    return a2, b2


def joint_renormalize(a: Curve, b: Curve) -> tuple[Curve, Curve]:
    """Respread positions keeping the joint order on every edge."""
    return merge_positions(a, b)


def _jitter(c: Curve, salt: int) -> Curve:
    pos = [p + Fraction(((37 * salt + 11 * k) % 101) + 1, 10 ** 9 * (salt + 1))
           for k, p in enumerate(c.pos)]
    return Curve(c.surface, c.steps, pos, check=False)


def build_overlay_multi(curves: list[Curve]) -> RegionComplex:
    for salt in range(12):
        cs = curves if salt == 0 else [_jitter(c, salt * 7 + i) for i, c in enumerate(curves)]
        try:
            return region_complex(curves[0].surface, cs)
        except DegenerateGeometryError:
            continue
    raise DegenerateGeometryError("could not avoid degenerate geometry")


def build_overlay(a: Curve, b: Curve) -> RegionComplex:
    return build_overlay_multi([a, b])


def merge_positions_multi(curves: list[Curve]) -> list[Curve]:
    per_edge: dict[Slot, list[tuple]] = {}
    for who, c in enumerate(curves):
        for k in range(len(c.steps)):
            per_edge.setdefault(c.transition_edge(k), []).append((c.pos[k], who, k))
    new_pos = [list(c.pos) for c in curves]
    for edge, items in per_edge.items():
        items.sort()
        n = len(items)
        for i, (_, w, k) in enumerate(items):
            new_pos[w][k] = Fraction(i + 1, n + 1)
    return [Curve(c.surface, c.steps, new_pos[i], check=False) for i, c in enumerate(curves)]


def realize_multicurve(curves: list[Curve]) -> list[Curve]:
    """Jointly realize pairwise-disjoint reduced curves with no crossings.

    Raises CutDisjointnessError when some pair genuinely intersects.
    """
    from .errors import CutDisjointnessError

    placed = [curves[0]]
    for c in curves[1:]:
        new_idx = len(placed)
        family = merge_positions_multi(placed + [c])
        rc = build_overlay_multi(family)
        while True:
            bigons = [bg for bg in find_bigons(rc)
                      if new_idx in (bg.a_sides[0].curve, bg.b_sides[0].curve)]
            if not bigons:
                break
            moved = remove_one_bigon(rc, bigons[0], movable=new_idx)
            family = merge_positions_multi(rc.curves[:new_idx] + [moved])
            rc = build_overlay_multi(family)
        for cr in rc.crossings:
            if new_idx in (cr["a"][0], cr["b"][0]):
                raise CutDisjointnessError("multicurve components intersect")
        placed = rc.curves
    return placed


def find_bigons(rc: RegionComplex) -> list[Bigon]:
    out = []
    for region in regions_of(rc):
        if region.chi != 1 or len(region.circles) != 1:
            continue
        circ = region.circles[0]
        if any(s.kind != "wall" for s in circ):
            continue
        runs: list[tuple[int, list]] = []
        for side in circ:
            if runs and runs[-1][0] == side.curve:
                runs[-1][1].append(side)
            else:
                runs.append((side.curve, [side]))
        if len(runs) > 2 and runs[0][0] == runs[-1][0]:
            runs[0] = (runs[0][0], runs[-1][1] + runs[0][1])
            runs.pop()
        if len(runs) != 2 or runs[0][0] == runs[1][0]:
            continue
        a_sides, b_sides = runs[0][1], runs[1][1]
        if a_sides[0].curve > b_sides[0].curve:
            a_sides, b_sides = b_sides, a_sides
        shared = set()
        a_ends = {p for s in a_sides for p in s.ends}
        for s in b_sides:
            shared.update(p for p in s.ends if p in a_ends)
        if len(shared) != 2:
            continue  # a disk with one corner is not a bigon
        out.append(Bigon(tuple(sorted(shared)), a_sides, b_sides, region.polys))
    out.sort(key=lambda bg: bg.corners)
    return out


def _chord_cross_params(rc: RegionComplex, curve: int, step: int) -> list[tuple[Fraction, tuple]]:
    got = []
    for cr in rc.crossings:
        for key in ("a", "b"):
            ci, k, t = cr[key]
            if ci == curve and k == step:
                got.append((t, cr["point"]))
    got.sort()
    return got


def _arc_walk(rc: RegionComplex, curve: int, sides: list):
    """Orient one bigon arc: (start point, end point, step path, direction)."""
    segs = {(s.step, s.seg) for s in sides}
    c = rc.curves[curve]
    n = len(c.steps)
    crossing_pts = {cr["point"] for cr in rc.crossings}
    pts: dict[tuple, int] = {}
    for s in sides:
        for p in s.ends:
            pts[p] = pts.get(p, 0) + 1
    ends = sorted(p for p, cnt in pts.items() if cnt == 1 and p in crossing_pts)
    if len(ends) != 2:
        raise AssertionError("bigon arc does not have two endpoints")
    x, y = ends

    def seg_at(pt):
        for s in sides:
            if pt in s.ends:
                return (s.step, s.seg)
        raise AssertionError

    kx, segx = seg_at(x)
    params = _chord_cross_params(rc, curve, kx)
    idx = next(i for i, (t, p) in enumerate(params) if p == x)
    direction = 1 if segx == idx + 1 else -1
    path = [kx]
    cur, seg = kx, segx
    while True:
        segs.discard((cur, seg))
        if not segs:
            break
        nxt_seg = seg + direction
        if (cur, nxt_seg) in segs:
            seg = nxt_seg
            continue
        if direction == 1:
            nxt, first_seg = (cur + 1) % n, 0
        else:
            nxt = (cur - 1) % n
            first_seg = len(_chord_cross_params(rc, curve, nxt))
        if (nxt, first_seg) in segs:
            cur, seg = nxt, first_seg
            path.append(cur)
            continue
        raise AssertionError("bigon arc walk got stuck")
    return x, y, path, direction


def _arc_inner_transitions(c: Curve, path: list[int], direction: int) -> list[int]:
    n = len(c.steps)
    out = []
    for i in range(len(path) - 1):
        k = path[i]
        out.append(k if direction == 1 else (k - 1) % n)
    return out


def _bigon_side_of(rc: RegionComplex, region_polys: list[int], edge: Slot, p: Fraction) -> int:
    """+1 when the bigon occupies the edge interval just above position p."""
    surface = rc.surface
    for poly in region_polys:
        for s in range(rc.pc.sizes[poly]):
            side = rc.sides[(poly, s)]
            if side.kind != "arc" or surface.canonical_slot(side.slot) != edge:
                continue
            c1 = to_canonical_pos(surface, side.slot, side.lo)
            c2 = to_canonical_pos(surface, side.slot, side.hi)
            lo_c, hi_c = min(c1, c2), max(c1, c2)
            if lo_c == p:
                return 1
            if hi_c == p:
                return -1
    raise AssertionError("bigon does not touch the expected edge point")


def remove_one_bigon(rc: RegionComplex, bigon: Bigon, movable: Optional[int] = None) -> Curve:
    """Slide one curve across the bigon; returns the respliced curve.

    The bigon's two arcs belong to two curves; ``movable`` picks which one
    moves (default: the higher-indexed one).
    """
    surface = rc.surface
    ca = bigon.a_sides[0].curve
    cb = bigon.b_sides[0].curve
    if movable is None:
        movable = max(ca, cb)
    fixed = ca if movable == cb else cb
    a, b = rc.curves[fixed], rc.curves[movable]
    nb = len(b.steps)
    ax, ay, apath, adir = _arc_walk(rc, fixed, bigon.a_sides if ca == fixed else bigon.b_sides)
    bx, by, bpath, bdir = _arc_walk(rc, movable, bigon.b_sides if cb == movable else bigon.a_sides)
    if bdir == -1:
        bx, by = by, bx
        bpath = list(reversed(bpath))
    if not (ax == bx and ay == by):
        ax, ay = ay, ax
        apath = list(reversed(apath))
        adir = -adir
    assert ax == bx and ay == by, "bigon arcs do not share endpoints"
    l_s, l_e = bpath[0], bpath[-1]
    a_inner = _arc_inner_transitions(a, apath, adir)
    b_inner = set(_arc_inner_transitions(b, bpath, 1))

    occupied: dict[Slot, list[Fraction]] = {}
    for ci, c in enumerate(rc.curves):
        for k in range(len(c.steps)):
            if ci == movable and k in b_inner:
                continue
            occupied.setdefault(c.transition_edge(k), []).append(c.pos[k])

    def adjacent_pos(edge: Slot, p: Fraction, side: int) -> Fraction:
        ps = occupied.setdefault(edge, [])
        if side > 0:
            above = [q for q in ps if q > p]
            new = (p + (min(above) if above else Fraction(1))) / 2
        else:
            below = [q for q in ps if q < p]
            new = (p + (max(below) if below else Fraction(0))) / 2
        ps.append(new)
        return new

    def a_step_oriented(k: int) -> tuple:
        t, e_in, e_out = a.steps[k]
        return (t, e_in, e_out) if adir == 1 else (t, e_out, e_in)

    new_steps: list[tuple] = []
    new_pos: list[Fraction] = []
    k = (l_e + 1) % nb
    while k != l_s:
        new_steps.append(b.steps[k])
        new_pos.append(b.pos[k])
        k = (k + 1) % nb
    t_s, be_in, _ = b.steps[l_s]
    t_e, _, be_out = b.steps[l_e]
    if not a_inner:
        assert t_s == t_e, "chordless arc must stay in one triangle"
        new_steps.append((t_s, be_in, be_out))
        new_pos.append(b.pos[l_e])
    else:
        mid_pos = []
        for tau in a_inner:
            edge = a.transition_edge(tau)
            p = a.pos[tau]
            side = -_bigon_side_of(rc, bigon.region_polys, edge, p)
            mid_pos.append(adjacent_pos(edge, p, side))
        oriented = [a_step_oriented(k) for k in apath]
        assert oriented[0][0] == t_s and oriented[-1][0] == t_e
        new_steps.append((t_s, be_in, oriented[0][2]))
        new_pos.append(mid_pos[0])
        for i in range(1, len(oriented) - 1):
            new_steps.append(oriented[i])
            new_pos.append(mid_pos[i])
        new_steps.append((t_e, oriented[-1][1], be_out))
        new_pos.append(b.pos[l_e])
    nb2 = Curve(surface, new_steps, new_pos, check=False)
    nb2.validate()
    return nb2


def overlay_reduce(a: Curve, b: Curve, shuffle: Optional[dict] = None):
    """Bigon-free joint realization of two reduced curves."""
    aa, bb = merge_positions(a, b, shuffle)
    rc = build_overlay(aa, bb)
    while True:
        bigons = find_bigons(rc)
        if not bigons:
            return rc, rc.curves[0], rc.curves[1]
        before = len(rc.crossings)
        bb = remove_one_bigon(rc, bigons[0])
        aa, bb = joint_renormalize(rc.curves[0], bb)
        rc = build_overlay(aa, bb)
        if len(rc.crossings) != before - 2:
            raise AssertionError(
                f"bigon removal changed crossings {before} -> {len(rc.crossings)}")


def geometric_intersection(a: Curve, b: Curve, shuffle: Optional[dict] = None) -> IntersectionCertificate:
    rc, aa, bb = overlay_reduce(a, b, shuffle)
    regions = []
    for region in regions_of(rc):
        walls_a = sum(1 for c in region.circles for s in c if s.kind == "wall" and s.curve == 0)
        walls_b = sum(1 for c in region.circles for s in c if s.kind == "wall" and s.curve == 1)
        regions.append({
            "chi": region.chi,
            "boundary_circles": len(region.circles),
            "wall_segments": {"a": walls_a, "b": walls_b},
        })
    return IntersectionCertificate(
        count=len(rc.crossings),
        crossings=[{"triangle": c["tri"], "a_step": c["a"][1], "b_step": c["b"][1]}
                   for c in rc.crossings],
        regions=regions,
        a=aa,
        b=bb,
    )


def all_interleavings(a: Curve, b: Curve):
    """Every per-edge shuffle of the two curves' strands (oracle use only)."""
    per_edge: dict[Slot, list[int]] = {}
    for who, c in ((0, a), (1, b)):
        for k in range(len(c.steps)):
            per_edge.setdefault(c.transition_edge(k), []).append(who)
    shared = {e: (v.count(0), v.count(1)) for e, v in per_edge.items()
              if 0 in v and 1 in v}
    edges = sorted(shared)
    pools = []
    for e in edges:
        ca, cb = shared[e]
        pools.append(sorted(set(itertools.permutations([0] * ca + [1] * cb))))
    for combo in itertools.product(*pools):
        yield dict(zip(edges, combo))


def intersection_minimum_oracle(a: Curve, b: Curve) -> int:
    best: Optional[int] = None
    for shuffle in all_interleavings(a, b):
        cert = geometric_intersection(a, b, shuffle)
        if best is None or cert.count < best:
            best = cert.count
    if best is None:
        best = geometric_intersection(a, b).count
    return best
