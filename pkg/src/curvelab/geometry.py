"""Exact planar geometry: curves overlaid on the triangulation.

Every triangle is realized as the reference triangle (0,0), (1,0), (0,1);
transition positions become rational boundary points, chords become straight
segments, and chord crossings are computed exactly.  The faces of all these
per-triangle subdivisions, glued to each other across the triangulation's
edges but not across curve strands, form the *region complex*: its connected
components are the complementary regions of the curve family, which is
simultaneously the cutting machinery and the bigon census.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .curves import Curve
from .errors import CurvelabError
from .poly import PolyComplex, fan_triangulate
from .surface import CombinatorialSurface, Slot

Point = tuple[Fraction, Fraction]
_CORNERS: list[Point] = [(Fraction(0), Fraction(0)), (Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))]


class DegenerateGeometryError(CurvelabError):
    """Coincident intersection points; caller should perturb positions."""


def slot_point(e: int, p: Fraction) -> Point:
    ax, ay = _CORNERS[e]
    bx, by = _CORNERS[(e + 1) % 3]
    return (ax + p * (bx - ax), ay + p * (by - ay))


def _cross(ax, ay, bx, by):
    return ax * by - ay * bx


def _angle_cmp(u: Point, v: Point) -> int:
    def half(d):
        return 0 if (d[1] > 0 or (d[1] == 0 and d[0] > 0)) else 1

    hu, hv = half(u), half(v)
    if hu != hv:
        return -1 if hu < hv else 1
    c = _cross(u[0], u[1], v[0], v[1])
    if c > 0:
        return -1
    if c < 0:
        return 1
    return 0


@dataclass
class Side:
    kind: str                      # "arc" | "wall" | "bdry"
    slot: Optional[Slot] = None    # arc/bdry: the slot carrying the arc
    lo: Optional[Fraction] = None  # arc/bdry: slot-local params, lo < hi
    hi: Optional[Fraction] = None
    curve: int = -1                # wall: curve index
    step: int = -1                 # wall: step index
    seg: int = -1                  # wall: segment index along the chord
    forward: bool = True           # dart direction vs slot param / chord param
    ends: tuple = ()               # node keys (tail, head) in face order


@dataclass
class RegionComplex:
    surface: CombinatorialSurface
    curves: list[Curve]
    pc: PolyComplex = None
    faces_tri: list[int] = field(default_factory=list)     # triangle of each polygon
    sides: dict[tuple[int, int], Side] = field(default_factory=dict)
    crossings: list[dict] = field(default_factory=list)    # interior double points

    def wall_sides(self, poly_side) -> Side:
        return self.sides[poly_side]


_CENTROID: Point = (Fraction(1, 3), Fraction(1, 3))


def _chord_list(surface, curves):
    """Chords per triangle: endpoints, and a bowed midpoint for chords whose
    endpoints lie on one side (straight segments would degenerate)."""
    per_tri: dict[int, list[dict]] = {}
    for ci, c in enumerate(curves):
        for k, (t, e_in, e_out) in enumerate(c.steps):
            p_in = c.entry_position(k)
            p_out = c.exit_position(k)
            per_tri.setdefault(t, []).append({
                "curve": ci, "step": k,
                "P": slot_point(e_in, p_in), "Q": slot_point(e_out, p_out),
                "in": (e_in, p_in), "out": (e_out, p_out),
                "same_side": e_in == e_out,
            })
    # nesting-aware bow depths: nested same-side chords stay nested
    for t, chords in per_tri.items():
        by_side: dict[int, list[int]] = {}
        for i, ch in enumerate(chords):
            if ch["same_side"]:
                by_side.setdefault(ch["in"][0], []).append(i)
        for side, idxs in by_side.items():
            spans = {}
            for i in idxs:
                a, b = sorted((chords[i]["in"][1], chords[i]["out"][1]))
                spans[i] = (a, b)
            for i in idxs:
                a, b = spans[i]
                level = sum(1 for j in idxs if j != i
                            and spans[j][0] < a and b < spans[j][1])
                lam = (b - a) / Fraction(8 * 2 ** level)
                mid = ((chords[i]["P"][0] + chords[i]["Q"][0]) / 2,
                       (chords[i]["P"][1] + chords[i]["Q"][1]) / 2)
                chords[i]["M"] = (mid[0] + lam * (_CENTROID[0] - mid[0]),
                                  mid[1] + lam * (_CENTROID[1] - mid[1]))
    return per_tri


def _chord_polyline(ch) -> list[Point]:
    if ch.get("same_side"):
        return [ch["P"], ch["M"], ch["Q"]]
    return [ch["P"], ch["Q"]]


def _polyline_intersections(poly1, poly2):
    """Crossings of two chord polylines as (t1, t2, point) with chord params."""
    out = []
    n1, n2 = len(poly1) - 1, len(poly2) - 1
    for i in range(n1):
        for j in range(n2):
            got = _seg_intersection(poly1[i], poly1[i + 1], poly2[j], poly2[j + 1])
            if got is None:
                continue
            pt, t, u = got
            out.append((Fraction(i + t, n1), Fraction(j + u, n2), pt))
    return out


def _expected_crossings(ch1, ch2) -> Optional[int]:
    """Combinatorial crossing count for pairs involving a bowed chord."""
    if not (ch1.get("same_side") or ch2.get("same_side")):
        return None
    if ch1.get("same_side") and ch2.get("same_side"):
        if ch1["in"][0] != ch2["in"][0]:
            return 0
        a1, b1 = sorted((ch1["in"][1], ch1["out"][1]))
        a2, b2 = sorted((ch2["in"][1], ch2["out"][1]))
        if b1 < a2 or b2 < a1:
            return 0
        if (a1 < a2 and b2 < b1) or (a2 < a1 and b1 < b2):
            return 0
        return 1
    bow, other = (ch1, ch2) if ch1.get("same_side") else (ch2, ch1)
    side = bow["in"][0]
    a, b = sorted((bow["in"][1], bow["out"][1]))
    inside = 0
    for key in ("in", "out"):
        e, p = other[key]
        if e == side and a < p < b:
            inside += 1
    return inside % 2


def _seg_intersection(P1, Q1, P2, Q2):
    d1 = (Q1[0] - P1[0], Q1[1] - P1[1])
    d2 = (Q2[0] - P2[0], Q2[1] - P2[1])
    den = _cross(d1[0], d1[1], d2[0], d2[1])
    if den == 0:
        return None
    w = (P2[0] - P1[0], P2[1] - P1[1])
    t = _cross(w[0], w[1], d2[0], d2[1]) / den
    u = _cross(w[0], w[1], d1[0], d1[1]) / den
    if not (0 < t < 1 and 0 < u < 1):
        return None
    return (P1[0] + t * d1[0], P1[1] + t * d1[1]), t, u


def _build_tri_graph(surface, t, chords, curve_count):
    """Nodes, darts and faces of one subdivided triangle."""
    if not chords:
        darts = []
        for e in range(3):
            glued = (t, e) in surface.glue
            darts.append((_CORNERS[e], _CORNERS[(e + 1) % 3],
                          Side(kind=("arc" if glued else "bdry"), slot=(t, e),
                               lo=Fraction(0), hi=Fraction(1))))
        return {}, darts, [[(0, True), (1, True), (2, True)]], []
    nodes: dict[Point, list] = {}

    def node(p: Point):
        return nodes.setdefault(p, [])

    # boundary nodes per slot: corners plus transition points
    slot_pts: dict[int, list[tuple[Fraction, Point]]] = {e: [] for e in range(3)}
    for ch in chords:
        for key in ("in", "out"):
            e, p = ch[key]
            pt = slot_point(e, p)
            if all(q != p for q, _ in slot_pts[e]):
                slot_pts[e].append((p, pt))
            node(pt)
    for e in range(3):
        node(_CORNERS[e])
        slot_pts[e].sort()

    # chord crossing points (polyline-aware: same-side chords are bowed)
    polylines = [_chord_polyline(ch) for ch in chords]
    cross_pts: dict[int, list[tuple[Fraction, Point]]] = {i: [] for i in range(len(chords))}
    crossings = []
    seen_pts = set()
    for i in range(len(chords)):
        for j in range(i + 1, len(chords)):
            hits = _polyline_intersections(polylines[i], polylines[j])
            want = _expected_crossings(chords[i], chords[j])
            if want is not None and len(hits) != want:
                raise DegenerateGeometryError(
                    f"bowed chords crossed {len(hits)} times, expected {want}")
            for ti, tj, pt in hits:
                if pt in seen_pts or pt in nodes:
                    raise DegenerateGeometryError(f"triple point in triangle {t}")
                seen_pts.add(pt)
                node(pt)
                cross_pts[i].append((ti, pt))
                cross_pts[j].append((tj, pt))
                crossings.append({
                    "tri": t, "point": (t, pt),
                    "a": (chords[i]["curve"], chords[i]["step"], ti),
                    "b": (chords[j]["curve"], chords[j]["step"], tj),
                })

    darts = []  # (u, v, Side-template)

    def add_edge(u, v, side: Side):
        idx = len(darts)
        darts.append((u, v, side))
        du = (v[0] - u[0], v[1] - u[1])
        dv = (u[0] - v[0], u[1] - v[1])
        node(u).append((du, idx, True))
        node(v).append((dv, idx, False))

    # boundary arcs
    for e in range(3):
        pts = [(Fraction(0), _CORNERS[e])] + slot_pts[e] + [(Fraction(1), _CORNERS[(e + 1) % 3])]
        glued = (t, e) in surface.glue
        for (pa, A), (pb, B) in zip(pts, pts[1:]):
            add_edge(A, B, Side(kind=("arc" if glued else "bdry"), slot=(t, e), lo=pa, hi=pb))

    # chord segments: subdivide the polyline at crossings and bow corners
    for i, ch in enumerate(chords):
        poly = polylines[i]
        nseg = len(poly) - 1
        marks = sorted(cross_pts[i])
        pts = [(Fraction(0), poly[0])]
        pts += [(Fraction(s, nseg), poly[s]) for s in range(1, nseg)]
        pts += marks + [(Fraction(1), poly[-1])]
        pts.sort()
        n_before = 0
        for (pa, A), (pb, B) in zip(pts, pts[1:]):
            if (pa, A) in marks:
                n_before += 1
            add_edge(A, B, Side(kind="wall", curve=ch["curve"], step=ch["step"], seg=n_before))

    # rotations
    for p, items in nodes.items():
        items.sort(key=functools.cmp_to_key(lambda a, b: _angle_cmp(a[0], b[0])))

    # face tracing: next dart = clockwise successor of the reversed dart
    succ = {}
    for p, items in nodes.items():
        m = len(items)
        for i, (_, idx, fwd) in enumerate(items):
            # incoming dart (towards p) is (idx, not fwd); its continuation
            # is the previous dart in ccw order = next in cw order
            prv = items[(i - 1) % m]
            succ[(idx, not fwd)] = (prv[1], prv[2])

    visited = set()
    faces = []
    for key in succ:
        if key in visited:
            continue
        cycle = []
        cur = key
        area2 = Fraction(0)
        while cur not in visited:
            visited.add(cur)
            idx, fwd = cur
            u, v, _ = darts[idx]
            if not fwd:
                u, v = v, u
            area2 += _cross(u[0], u[1], v[0], v[1])
            cycle.append(cur)
            cur = succ[cur]
        if area2 > 0:
            faces.append(cycle)
    return nodes, darts, faces, crossings


def region_complex(surface: CombinatorialSurface, curves: list[Curve]) -> RegionComplex:
    per_tri = _chord_list(surface, curves)
    rc = RegionComplex(surface, list(curves))
    tri_faces = {}
    all_sizes = []
    face_sides: list[list[Side]] = []
    arc_owner: dict[tuple[Slot, Fraction, Fraction], tuple[int, int]] = {}
    for t in range(surface.n_tri):
        chords = per_tri.get(t, [])
        nodes, darts, faces, crossings = _build_tri_graph(surface, t, chords, len(curves))
        rc.crossings.extend(crossings)
        tri_faces[t] = []
        for cyc in faces:
            pi = len(all_sizes)
            tri_faces[t].append(pi)
            all_sizes.append(len(cyc))
            rc.faces_tri.append(t)
            sides = []
            for si, (idx, fwd) in enumerate(cyc):
                u, v, tmpl = darts[idx]
                side = Side(**{**tmpl.__dict__})
                side.forward = fwd
                side.ends = (((t, u), (t, v)) if fwd else ((t, v), (t, u)))
                sides.append(side)
                if side.kind == "arc":
                    arc_owner[(side.slot, side.lo, side.hi)] = (pi, si)
            face_sides.append(sides)
    pc = PolyComplex(all_sizes)
    rc.pc = pc
    for pi, sides in enumerate(face_sides):
        for si, side in enumerate(sides):
            rc.sides[(pi, si)] = side
    # glue arcs across the surface's gluings
    done = set()
    for (slot, lo, hi), (pi, si) in arc_owner.items():
        if (pi, si) in done:
            continue
        partner_slot, flip = surface.glue[slot]
        if flip:
            lo2, hi2 = lo, hi
        else:
            lo2, hi2 = 1 - hi, 1 - lo
        got = arc_owner.get((partner_slot, lo2, hi2))
        if got is None:
            raise AssertionError(f"unmatched arc {(slot, lo, hi)}")
        pj, sj = got
        done.add((pi, si))
        done.add((pj, sj))
        # orientations: does the tail of side (pi,si) meet the tail of (pj,sj)?
        side_a = rc.sides[(pi, si)]
        side_b = rc.sides[(pj, sj)]
        a_tail_param = side_a.lo if side_a.forward else side_a.hi
        b_tail_param = side_b.lo if side_b.forward else side_b.hi
        mapped = a_tail_param if flip else 1 - a_tail_param
        pc.add_gluing((pi, si), (pj, sj), flip=(mapped == b_tail_param))
    return rc


# -- component analysis -------------------------------------------------------


@dataclass
class Region:
    polys: list[int]
    chi: int
    orientable: bool
    circles: list[list[Side]]          # boundary circuits as side lists


def regions_of(rc: RegionComplex) -> list[Region]:
    pc = rc.pc
    comps = pc.components()
    comp_of = {}
    for ci, comp in enumerate(comps):
        for p in comp:
            comp_of[p] = ci
    n = len(comps)
    # Euler characteristic in one pass
    sides_cnt = [0] * n
    glued_cnt = [0] * n
    for p, k in enumerate(pc.sizes):
        sides_cnt[comp_of[p]] += k
    for (p, _s) in pc.glue:
        glued_cnt[comp_of[p]] += 1
    ds = pc.vertex_classes()
    vcount = [0] * n
    seen_roots = set()
    for p, k in enumerate(pc.sizes):
        for c in range(k):
            r = ds.find((p, c))
            if r not in seen_roots:
                seen_roots.add(r)
                vcount[comp_of[p]] += 1
    # orientability per component
    orientable = [True] * n
    signs: dict[int, int] = {}
    for seed in range(len(pc.sizes)):
        if seed in signs:
            continue
        signs[seed] = 1
        stack = [seed]
        ci = comp_of[seed]
        while stack:
            p = stack.pop()
            for s in range(pc.sizes[p]):
                got = pc.glue.get((p, s))
                if got is None:
                    continue
                (q, _), flip = got
                want = -signs[p] if flip else signs[p]
                if q in signs:
                    if signs[q] != want:
                        orientable[ci] = False
                else:
                    signs[q] = want
                    stack.append(q)
    circles: list[list[list[Side]]] = [[] for _ in range(n)]
    for circ in pc.boundary_circles():
        ci = comp_of[circ.sides[0][0]]
        circles[ci].append([rc.sides[ps] for ps in circ.sides])
    out = []
    for ci, comp in enumerate(comps):
        e = (sides_cnt[ci] - glued_cnt[ci]) + glued_cnt[ci] // 2
        chi = vcount[ci] - e + len(comp)
        out.append(Region(polys=comp, chi=chi, orientable=orientable[ci], circles=circles[ci]))
    return out


def region_piece_surface(rc: RegionComplex, region: Region) -> CombinatorialSurface:
    """Fan-triangulate one region into a standalone CombinatorialSurface."""
    index_map = {p: i for i, p in enumerate(region.polys)}
    sizes = [rc.pc.sizes[p] for p in region.polys]
    tris, side_map, internal = fan_triangulate(sizes)
    s = CombinatorialSurface(len(tris), vertex_labels=[("x",)] * len(tris))
    for (a, sa, b, sb, flip) in internal:
        s.add_gluing((a, sa), (b, sb), flip)
    for p in region.polys:
        for k in range(rc.pc.sizes[p]):
            got = rc.pc.glue.get((p, k))
            if got is None:
                continue
            (q, k2), flip = got
            if (p, k) >= (q, k2):
                continue
            ta, ea, ra = side_map[(index_map[p], k)]
            tb, eb, rb = side_map[(index_map[q], k2)]
            s.add_gluing((ta, ea), (tb, eb), flip ^ ra ^ rb)
    return s
