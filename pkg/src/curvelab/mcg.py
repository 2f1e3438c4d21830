"""Mapping class group generators acting on curves.

Dehn twists are curve surgeries (see twist.py).  The non-twist generators
are region symmetries: a simplicial involution rho of a run of cells,
composed with a collar correction along the region's boundary cycle so the
total map is the identity outside the region.

* half twist sigma_i: the lune cells of two adjacent boundary sites with
  rho = reflection o left-right mirror (swaps the sites, rotates the
  region's boundary cycle half-way around);
* crosscap transposition u: the same map on two adjacent crosscap cells;
  the crosscap slide y is u corrected by a twist, calibrated once against
  the text's identities;
* boundary slide xi: the band cell with rho = the reflection across its
  core (the Mobius flow by one full slide).

A strand entering the region keeps its boundary crossing, spirals along the
collar to the rho-image of its entry point, then follows the rho-image of
its old path; exits are symmetric.  Spiral segments are parallel translates
and never cross each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .curves import Curve, from_canonical_pos, to_canonical_pos
from .errors import UnsupportedError
from .moves import reduce_curve
from .surface import CombinatorialSurface, DartMap, Slot


def apply_dart_map(dm: DartMap, c: Curve) -> Curve:
    """Push a curve through a total simplicial automorphism."""
    steps = []
    pos = []
    surface = c.surface
    for k, (t, e_in, e_out) in enumerate(c.steps):
        (t2, s_in), _rev_in = dm.slot_image((t, e_in))
        (t2b, s_out), rev_out = dm.slot_image((t, e_out))
        assert t2 == t2b
        steps.append((t2, s_in, s_out))
        p_local = from_canonical_pos(surface, (t, e_out), c.pos[k])
        p_img = 1 - p_local if rev_out else p_local
        pos.append(to_canonical_pos(surface, (t2, s_out), p_img))
    return Curve(surface, steps, pos, check=False)


# -- region boundary cycles ----------------------------------------------------


@dataclass
class CycleSide:
    inside: Slot          # the region triangle's slot on the cycle
    forward: bool         # cycle direction agrees with the slot's parameter


def _corner_of(side: Slot, end: int) -> tuple[int, int]:
    t, e = side
    return (t, e) if end == 0 else (t, (e + 1) % 3)


def _pivot_inside(surface: CombinatorialSurface, tris: frozenset, side: Slot, end: int):
    """Walk the corner fan inside the region from one end of a cycle side.

    Returns (next cycle side, its end at this corner, spokes) where spokes
    are (slot left from when walking forward, canonical edge, v_end) with
    v_end the canonical-side end sitting at the corner vertex.
    """
    corner = _corner_of(side, end)
    arrived = side
    spokes = []
    while True:
        tc, cc = corner
        s_tail, s_head = (tc, cc), (tc, (cc + 2) % 3)
        nxt = s_head if arrived == s_tail else s_tail
        got = surface.glue.get(nxt)
        if got is None:
            raise UnsupportedError("collar fan hit the surface boundary")
        (t2, e2), flip = got
        if t2 not in tris:
            nend = 0 if nxt == s_tail else 1
            return nxt, nend, spokes
        vend = 0 if nxt == s_tail else 1
        canon = surface.canonical_slot(nxt)
        if canon != nxt:
            vend = vend if flip else 1 - vend
        spokes.append((nxt, canon, vend))
        at_tail = nxt == s_tail
        target_end = 0 if at_tail else 1
        if flip:
            c2 = e2 if target_end == 0 else (e2 + 1) % 3
        else:
            c2 = (e2 + 1) % 3 if target_end == 0 else e2
        corner = (t2, c2)
        arrived = (t2, e2)


@dataclass
class RegionMapData:
    name: str
    surface: CombinatorialSurface
    tris: frozenset
    rho: DartMap
    cycle: list[CycleSide]
    rotation: int
    fans: list[list]      # fans[i]: spokes at the corner between sides i, i+1

    @property
    def length(self) -> int:
        return len(self.cycle)


def _build_cycle(surface: CombinatorialSurface, tris: frozenset):
    border = []
    for t in sorted(tris):
        for e in range(3):
            got = surface.glue.get((t, e))
            if got is not None and got[0][0] not in tris:
                border.append((t, e))
    if not border:
        raise UnsupportedError("region map needs a boundary cycle")
    start = min(border)
    sides = [CycleSide(start, True)]
    fans = []
    cur, fwd = start, True
    while True:
        nxt, nend, spokes = _pivot_inside(surface, tris, cur, 1 if fwd else 0)
        fans.append(spokes)
        fwd2 = nend == 0
        if nxt == start:
            if not fwd2:
                raise UnsupportedError("collar cycle closed with a flip")
            break
        sides.append(CycleSide(nxt, fwd2))
        cur, fwd = nxt, fwd2
    if len(sides) != len(border):
        raise UnsupportedError("region boundary is not a single cycle")
    return sides, fans


def build_region_map(name: str, surface: CombinatorialSurface, tris, rho: DartMap) -> RegionMapData:
    tris = frozenset(tris)
    rho.validate(region=set(tris))
    sides, fans = _build_cycle(surface, tris)
    L = len(sides)
    idx = {s.inside: i for i, s in enumerate(sides)}
    rot = None
    for i, s in enumerate(sides):
        img, rev = rho.slot_image(s.inside)
        j = idx.get(img)
        if j is None:
            raise UnsupportedError("rho does not preserve the boundary cycle")
        if rot is None:
            rot = (j - i) % L
        elif (j - i) % L != rot:
            raise UnsupportedError("rho is not a uniform rotation of the cycle")
        if sides[j].forward != (s.forward ^ rev):
            raise UnsupportedError("rho reverses the boundary cycle")
    if (2 * rot) % L != 0:
        raise UnsupportedError("rho rotation is not an involution on the cycle")
    return RegionMapData(name, surface, tris, rho, sides, rot, fans)


class _Token:
    __slots__ = ("edge", "v_end", "traveled")

    def __init__(self, edge: Slot, v_end: int, traveled: Fraction):
        self.edge = edge
        self.v_end = v_end
        self.traveled = traveled


def _collar_path(data: RegionMapData, start_idx: int, travel: int, theta: Fraction, direction: int):
    """Collar run from cycle side start_idx over ``travel`` sides.

    Returns (steps, exit_tokens): steps as [tri, in_slot, out_slot] with the
    first entry and final exit left None for the caller to splice.
    """
    surface = data.surface
    L = data.length
    steps: list[list] = []
    tokens: list = []
    cur_tri = data.cycle[start_idx].inside[0]
    cur_in: Optional[int] = None
    for m in range(travel):
        i = (start_idx + direction * m) % L
        if direction == 1:
            fan = data.fans[i]
            corner_coord = Fraction(i + 1)
        else:
            fan = list(reversed(data.fans[(i - 1) % L]))
            corner_coord = Fraction(i)
        traveled = (direction * (corner_coord - theta)) % L
        for (fwd_slot, canon, vend) in fan:
            leave = fwd_slot if direction == 1 else surface.glue[fwd_slot][0]
            assert leave[0] == cur_tri, (leave, cur_tri)
            steps.append([cur_tri, cur_in, leave[1]])
            tokens.append(_Token(canon, vend, traveled))
            far = surface.glue[leave][0]
            cur_tri, cur_in = far
    steps.append([cur_tri, cur_in, None])
    tokens.append(None)
    return steps, tokens


def _rho_slot(data: RegionMapData, slot: Slot):
    return data.rho.slot_image(slot)


def _rho_pos(data: RegionMapData, slot: Slot, pos_canonical: Fraction) -> Fraction:
    surface = data.surface
    (s2), rev = data.rho.slot_image(slot)
    p_local = from_canonical_pos(surface, slot, pos_canonical)
    p_img = 1 - p_local if rev else p_local
    return to_canonical_pos(surface, s2, p_img)


def apply_region_map(data: RegionMapData, c: Curve, direction: int = 1) -> Curve:
    surface = data.surface
    n = len(c.steps)
    inside = [st[0] in data.tris for st in c.steps]
    if not any(inside):
        return c
    if all(inside):
        out = reduce_curve(apply_dart_map(data.rho, c))
        if out is None:
            raise AssertionError("region map trivialized a curve")
        return out
    side_idx = {s.inside: i for i, s in enumerate(data.cycle)}
    L, D = data.length, data.rotation

    def cycle_theta(idx_step: int, trans: int) -> tuple[int, Fraction]:
        """Cycle side index and coordinate of the crossing into step idx_step."""
        t, e_in, _ = c.steps[idx_step]
        side = side_idx.get((t, e_in))
        if side is None:
            raise AssertionError("region entry is not across the boundary cycle")
        p_local = from_canonical_pos(surface, (t, e_in), c.pos[trans])
        frac = p_local if data.cycle[side].forward else 1 - p_local
        return side, side + frac

    # find segment starts (inside step whose predecessor is outside)
    starts = [k for k in range(n) if inside[k] and not inside[(k - 1) % n]]
    new_steps: list = []
    new_pos: list = []
    k0 = (starts[0] - 1) % n
    # walk the whole curve once, beginning at the outside step before a segment
    k = k0
    while True:
        if not inside[k]:
            new_steps.append(c.steps[k])
            new_pos.append(c.pos[k])
            k = (k + 1) % n
            if k == k0:
                break
            continue
        # inside segment k .. j
        seg = [k]
        while inside[(seg[-1] + 1) % n]:
            seg.append((seg[-1] + 1) % n)
        entry_trans = (k - 1) % n
        exit_trans = seg[-1]
        a_side, theta_in = cycle_theta(k, entry_trans)
        # exit crossing: step seg[-1] exits via its e_out
        t_x, _, e_x = c.steps[seg[-1]]
        b_side = side_idx.get((t_x, e_x))
        if b_side is None:
            raise AssertionError("region exit is not across the boundary cycle")
        p_local = from_canonical_pos(surface, (t_x, e_x), c.pos[exit_trans])
        frac_out = p_local if data.cycle[b_side].forward else 1 - p_local
        theta_out = b_side + frac_out

        es, et = _collar_path(data, a_side, D, theta_in, direction)
        xs, xt = _collar_path(data, b_side, D, theta_out, direction)
        # rho image of the segment
        mid = []
        for idx_step in seg:
            t, e_in, e_out = c.steps[idx_step]
            (t2, s_in), _ = data.rho.slot_image((t, e_in))
            (t2b, s_out), _ = data.rho.slot_image((t, e_out))
            assert t2 == t2b
            mid.append([t2, s_in, s_out])
        mid_pos = [_rho_pos(data, (c.steps[seg[i]][0], c.steps[seg[i]][2]), c.pos[seg[i]])
                   for i in range(len(seg) - 1)]
        # splice entry run
        es[0][1] = c.steps[k][1]
        assert es[-1][0] == mid[0][0], "entry run does not reach the rho image"
        mid[0][1] = es[-1][1] if es[-1][1] is not None else c.steps[k][1]
        # splice exit run (traversed inside-out)
        assert xs[-1][0] == mid[-1][0], "exit run does not reach the rho image"
        mid[-1][2] = xs[-1][1] if xs[-1][1] is not None else c.steps[seg[-1]][2]
        # assemble
        for j in range(len(es) - 1):
            new_steps.append(tuple(es[j]))
            new_pos.append(et[j])
        for j, st in enumerate(mid):
            new_steps.append(tuple(st))
            if j < len(mid) - 1:
                new_pos.append(mid_pos[j])
        if len(xs) > 1:
            new_pos.append(xt[len(xs) - 2])
            for j in range(len(xs) - 2, 0, -1):
                new_steps.append((xs[j][0], xs[j][2], xs[j][1]))
                new_pos.append(xt[j - 1])
            new_steps.append((xs[0][0], xs[0][2], c.steps[seg[-1]][2]))
            new_pos.append(c.pos[exit_trans])
        else:
            new_pos.append(c.pos[exit_trans])
        k = (seg[-1] + 1) % n
        if k == k0:
            break
    out = _resolve_tokens(surface, new_steps, new_pos)
    out.validate()
    red = reduce_curve(out)
    if red is None:
        raise AssertionError("region map trivialized a curve")
    return red


def _resolve_tokens(surface: CombinatorialSurface, steps, pos) -> Curve:
    by_group: dict[tuple, list[tuple[Fraction, int]]] = {}
    fixed: dict[Slot, list[Fraction]] = {}
    for i, p in enumerate(pos):
        t, _, e_out = steps[i]
        edge = surface.canonical_slot((t, e_out))
        if isinstance(p, _Token):
            by_group.setdefault((p.edge, p.v_end), []).append((p.traveled, i))
        else:
            fixed.setdefault(edge, []).append(p)
    res = list(pos)
    for (edge, v_end), items in by_group.items():
        items.sort()
        others = fixed.get(edge, [])
        if v_end == 0:
            bound = min(others + [Fraction(1, 2)])
            for rank, (_, i) in enumerate(items):
                res[i] = bound * Fraction(rank + 1, len(items) + 1)
        else:
            bound = max(others + [Fraction(1, 2)])
            for rank, (_, i) in enumerate(items):
                res[i] = 1 - (1 - bound) * Fraction(rank + 1, len(items) + 1)
    return Curve(surface, steps, res, check=False)


def region_boundary_curve(data: RegionMapData) -> Curve:
    """The region's boundary cycle pushed inside, as a transverse curve."""
    steps, tokens = _collar_path(data, 0, data.length, Fraction(1, 2), 1)
    closed = steps[:-1]
    assert steps[-1][0] == closed[0][0]
    closed[0][1] = steps[-1][1]
    out = _resolve_tokens(data.surface, [tuple(s) for s in closed], tokens[:-1])
    out.validate()
    red = reduce_curve(out)
    if red is None:
        raise AssertionError("region boundary curve is trivial")
    return red


def cells_region_tris(surface: CombinatorialSurface, cell_indices) -> frozenset:
    """Triangles of a contiguous run of cells; bands ride with their seats."""
    lay = surface.layout
    tris: set[int] = set()
    for ci in cell_indices:
        cell = lay.cells[ci]
        tris.update(cell.tris.values())
        if cell.kind.startswith("seat_"):
            tris.update(lay.bands[cell.kind[-1]].values())
    return frozenset(tris)


def cells_boundary_curve(surface: CombinatorialSurface, cell_indices) -> Curve:
    """The curve enclosing a contiguous run of cells (sites and all)."""
    tris = cells_region_tris(surface, cell_indices)
    sides, fans = _build_cycle(surface, tris)
    data = RegionMapData("around", surface, tris, None, sides, 0, fans)
    return region_boundary_curve(data)


# -- the standard region maps on melon surfaces -----------------------------------


def _cell_pair_vmap(surface: CombinatorialSurface, k: int) -> dict:
    """Vertex map of reflection o mirror about the border between cells k, k+1."""
    lay = surface.layout
    m = len(lay.cells)
    k2 = (k + 1) % m
    vmap = {
        ("NP",): ("SP",), ("SP",): ("NP",),
        ("M", (k - 1) % m): ("M", k2 % m), ("M", k2 % m): ("M", (k - 1) % m),
        ("L", k): ("R", k2), ("R", k2): ("L", k),
        ("R", k): ("L", k2), ("L", k2): ("R", k),
    }
    return vmap


def half_turn_region(surface: CombinatorialSurface, k: int, name: str) -> RegionMapData:
    """The sigma o mirror involution on the adjacent cells k, k+1."""
    lay = surface.layout
    m = len(lay.cells)
    a, b = lay.cells[k], lay.cells[(k + 1) % m]
    if a.kind != b.kind or a.kind not in ("crosscap", "boundary"):
        raise UnsupportedError(f"cells {k},{k + 1} are not a symmetric pair")
    tris = sorted(a.tris.values()) + sorted(b.tris.values())
    vmap = _cell_pair_vmap(surface, k)
    rho = DartMap.from_vertex_map(surface, vmap, tris=tris)
    return build_region_map(name, surface, tris, rho)


def band_slide_region(surface: CombinatorialSurface, which: str) -> RegionMapData:
    """The slide reflection (across the band's core) on a band cell.

    ``which`` is "y" (crosscap passenger: the crosscap slide's support) or
    "z" (boundary passenger: the boundary slide's support).
    """
    lay = surface.layout
    if which not in lay.bands:
        raise UnsupportedError(f"surface has no {which}-band cell")
    tris = sorted(lay.bands[which].values())
    p = which.upper()
    vmap = {
        (p + "P",): (p + "Q",), (p + "Q",): (p + "P",),
        (p + "T",): (p + "B",), (p + "B",): (p + "T",),
        (p + "NW",): (p + "SW",), (p + "SW",): (p + "NW",),
        (p + "NE",): (p + "SE",), (p + "SE",): (p + "NE",),
    }
    rho = DartMap.from_vertex_map(surface, vmap, tris=tris)
    return build_region_map(which + "_band_slide", surface, tris, rho)
