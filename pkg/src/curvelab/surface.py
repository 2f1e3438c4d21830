"""Triangulated models of compact surfaces.

A CombinatorialSurface is a set of oriented triangles with slot gluings.
Slot ``e`` of a triangle runs from corner ``e`` to corner ``e+1`` (mod 3);
gluings carry the same flip convention as poly.PolyComplex.

The standard nonorientable surface N_{g,n} is built as a "melon": a sphere
sliced into lune cells along an equator, one cell per crosscap or boundary
site.  A crosscap site is a square hole with antipodal gluing, a boundary
site is the same square left open.  When n >= 1 the last crosscap and the
last boundary component live together in a rectangular "band" cell glued
into an attachment square, which is where boundary slides act.

The melon is chosen over a crosscap-polygon fan because every mapping-class
generator the harness needs (reflection, half twists, crosscap
transpositions, boundary slides) becomes a simplicial symmetry of a cell
run; see the generator module.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import InvalidSignatureError, MustBeConnectedError, UnsupportedError
from .poly import PolyComplex

Slot = tuple[int, int]  # (triangle, edge slot)


@dataclass(frozen=True, order=True)
class SurfaceSignature:
    genus: int
    boundary_count: int
    orientable: bool

    def euler_characteristic(self) -> int:
        if self.orientable:
            return 2 - 2 * self.genus - self.boundary_count
        return 2 - self.genus - self.boundary_count

    def validate(self) -> None:
        if self.genus < 0 or self.boundary_count < 0:
            raise InvalidSignatureError(f"negative entries in {self}")
        if not self.orientable and self.genus < 1:
            raise InvalidSignatureError("nonorientable surfaces need genus >= 1")

    def is_pair_of_pants(self) -> bool:
        return self == SurfaceSignature(0, 3, True)

    def is_projective_two_holes(self) -> bool:
        return self == SurfaceSignature(1, 2, False)

    def is_disk(self) -> bool:
        return self == SurfaceSignature(0, 1, True)

    def is_annulus(self) -> bool:
        return self == SurfaceSignature(0, 2, True)

    def is_mobius(self) -> bool:
        return self == SurfaceSignature(1, 1, False)


@dataclass
class CellInfo:
    """One melon cell: which site it carries and its eight triangles."""

    kind: str  # "crosscap" | "boundary" | "seat" | "plain"
    index: int  # crosscap or boundary number, -1 otherwise
    tris: dict[str, int] = field(default_factory=dict)  # F1..F4, B1..B4


@dataclass
class MelonLayout:
    genus: int
    boundary_count: int
    orientable: bool
    cells: list[CellInfo] = field(default_factory=list)
    bands: dict[str, dict[str, int]] = field(default_factory=dict)  # "y"/"z"
    band_crosscaps: dict[str, tuple] = field(default_factory=dict)

    def crosscap_cell(self, i: int) -> CellInfo:
        for c in self.cells:
            if c.kind == "crosscap" and c.index == i:
                return c
        raise KeyError(f"crosscap {i} is not a lune cell")

    def lune_crosscaps(self) -> list[int]:
        return [c.index for c in self.cells if c.kind == "crosscap"]

    def boundary_cell(self, i: int) -> CellInfo:
        for c in self.cells:
            if c.kind == "boundary" and c.index == i:
                return c
        raise KeyError(f"boundary {i} is not a lune cell")

    def seat_cell(self, which: str) -> CellInfo:
        for c in self.cells:
            if c.kind == "seat_" + which:
                return c
        raise KeyError(f"no {which}-band seat cell")


class CombinatorialSurface:
    def __init__(self, n_tri: int, vertex_labels: Optional[list[tuple]] = None):
        self.n_tri = n_tri
        self.glue: dict[Slot, tuple[Slot, bool]] = {}
        # corner labels, for symmetry maps and debugging; (t) -> (v0, v1, v2)
        self.vertex_labels = vertex_labels
        self.layout: Optional[MelonLayout] = None
        self._signature_cache: Optional[SurfaceSignature] = None

    # -- construction ------------------------------------------------------

    def add_gluing(self, a: Slot, b: Slot, flip: bool) -> None:
        if a in self.glue or b in self.glue:
            raise ValueError(f"slot already glued: {a} / {b}")
        self.glue[a] = (b, flip)
        self.glue[b] = (a, flip)

    def glue_by_labels(self, a: Slot, b: Slot) -> None:
        """Glue two slots, inferring the flip from matching vertex labels."""
        la = self.slot_labels(a)
        lb = self.slot_labels(b)
        if la == lb:
            flip = True
        elif la == (lb[1], lb[0]):
            flip = False
        else:
            raise ValueError(f"slots {a}={la} and {b}={lb} do not share labels")
        self.add_gluing(a, b, flip)

    def slot_labels(self, s: Slot) -> tuple:
        t, e = s
        labels = self.vertex_labels[t]
        return labels[e], labels[(e + 1) % 3]

    # -- views ---------------------------------------------------------------

    def as_poly(self) -> PolyComplex:
        pc = PolyComplex([3] * self.n_tri)
        seen = set()
        for a, (b, flip) in self.glue.items():
            if a in seen or b in seen:
                continue
            seen.add(a)
            seen.add(b)
            pc.add_gluing(a, b, flip)
        return pc

    def boundary_slots(self) -> list[Slot]:
        return [(t, e) for t in range(self.n_tri) for e in range(3) if (t, e) not in self.glue]

    def edges(self) -> list[Slot]:
        """Canonical representative slot for every edge (glued or boundary)."""
        out = []
        for t in range(self.n_tri):
            for e in range(3):
                got = self.glue.get((t, e))
                if got is None or got[0] > (t, e):
                    out.append((t, e))
        return out

    def canonical_slot(self, s: Slot) -> Slot:
        got = self.glue.get(s)
        if got is None:
            return s
        return min(s, got[0])

    def is_boundary_slot(self, s: Slot) -> bool:
        return s not in self.glue

    # -- classification ------------------------------------------------------

    def classify(self) -> SurfaceSignature:
        if self._signature_cache is not None:
            return self._signature_cache
        pc = self.as_poly()
        if not pc.is_connected():
            raise MustBeConnectedError("classify needs a connected surface")
        chi = pc.euler_characteristic()
        n = len(pc.boundary_circles())
        orientable = pc.is_orientable()
        if orientable:
            genus2 = 2 - chi - n
            if genus2 % 2 != 0:
                raise ValueError(f"inconsistent complex: chi={chi}, n={n}, orientable")
            sig = SurfaceSignature(genus2 // 2, n, True)
        else:
            sig = SurfaceSignature(2 - chi - n, n, False)
        sig.validate()
        self._signature_cache = sig
        return sig


def classify_surface(s: CombinatorialSurface) -> SurfaceSignature:
    return s.classify()


# -- the standard melon builder ----------------------------------------------


def _lune_cell(s: CombinatorialSurface, labels: list[tuple], kind: str, index: int,
               west, east, cell_id: int) -> CellInfo:
    """Append one lune cell's triangles; return their ids.

    Crosscap and boundary cells are six triangles around a bigon site (its
    two edges glued antipodally for a crosscap, left open for a boundary
    circle).  The band's seat keeps a four-edge square site so the band's
    rail circle has somewhere to land; "plain" cells carry no site at all.
    """
    NP, SP = ("NP",), ("SP",)
    if kind == "plain":
        f = len(labels)
        labels.append((NP, west, east))
        labels.append((SP, west, east))
        return CellInfo(kind, index, {"F": f, "B": f + 1})
    L = ("L", cell_id)
    R = ("R", cell_id)
    base = len(labels)
    if kind.startswith("seat"):
        T = ("T", cell_id)
        U = ("U", cell_id)
        labels.append((NP, west, L))   # F1
        labels.append((NP, L, T))      # F2
        labels.append((NP, T, R))      # F3
        labels.append((NP, R, east))   # F4
        labels.append((SP, west, L))   # B1
        labels.append((SP, L, U))      # B2
        labels.append((SP, U, R))      # B3
        labels.append((SP, R, east))   # B4
        names = ["F1", "F2", "F3", "F4", "B1", "B2", "B3", "B4"]
        return CellInfo(kind, index, {nm: base + i for i, nm in enumerate(names)})
    labels.append((NP, west, L))   # F1
    labels.append((NP, L, R))      # F2 (site edge on slot 1)
    labels.append((NP, R, east))   # F3
    labels.append((SP, west, L))   # B1
    labels.append((SP, L, R))      # B2 (site edge on slot 1)
    labels.append((SP, R, east))   # B3
    names = ["F1", "F2", "F3", "B1", "B2", "B3"]
    return CellInfo(kind, index, {nm: base + i for i, nm in enumerate(names)})


def _glue_lune_interior(s: CombinatorialSurface, c: CellInfo) -> None:
    if c.kind == "plain":
        s.add_gluing((c.tris["F"], 1), (c.tris["B"], 1), True)  # equator
        return
    if c.kind.startswith("seat"):
        F1, F2, F3, F4 = (c.tris[k] for k in ("F1", "F2", "F3", "F4"))
        B1, B2, B3, B4 = (c.tris[k] for k in ("B1", "B2", "B3", "B4"))
        s.add_gluing((F1, 2), (F2, 0), False)  # NP-L
        s.add_gluing((F2, 2), (F3, 0), False)  # NP-T
        s.add_gluing((F3, 2), (F4, 0), False)  # NP-R
        s.add_gluing((B1, 2), (B2, 0), False)  # SP-L
        s.add_gluing((B2, 2), (B3, 0), False)  # SP-U
        s.add_gluing((B3, 2), (B4, 0), False)  # SP-R
        s.add_gluing((F1, 1), (B1, 1), True)   # equator west
        s.add_gluing((F4, 1), (B4, 1), True)   # equator east
        return  # square site stays open for the band rails
    F1, F2, F3 = (c.tris[k] for k in ("F1", "F2", "F3"))
    B1, B2, B3 = (c.tris[k] for k in ("B1", "B2", "B3"))
    s.add_gluing((F1, 2), (F2, 0), False)  # NP-L
    s.add_gluing((F2, 2), (F3, 0), False)  # NP-R
    s.add_gluing((B1, 2), (B2, 0), False)  # SP-L
    s.add_gluing((B2, 2), (B3, 0), False)  # SP-R
    s.add_gluing((F1, 1), (B1, 1), True)   # equator west
    s.add_gluing((F3, 1), (B3, 1), True)   # equator east
    if c.kind == "crosscap":
        s.add_gluing((F2, 1), (B2, 1), False)  # antipodal bigon site
    # boundary cells leave the bigon open


_BAND_NAMES = ["n1", "n2", "n3", "n4", "n5", "w1", "e1", "s1", "s2", "s3", "s4", "s5"]


def _band_cell(s: CombinatorialSurface, labels: list[tuple], prefix: str,
               passenger: str) -> dict[str, int]:
    """A band cell: a rectangle whose columns self-glue with a flip (one
    crosscap) carrying a passenger square on the core: an open hole for the
    boundary-slide band, an antipodally glued square for the crosscap-slide
    band."""
    P, Q, T2, B2, C = ((prefix + "P",), (prefix + "Q",), (prefix + "T",),
                       (prefix + "B",), (prefix + "C",))
    ZNW, ZNE, ZSW, ZSE = ((prefix + "NW",), (prefix + "NE",),
                          (prefix + "SW",), (prefix + "SE",))
    tris = {
        "n1": (P, C, ZNW),
        "n2": (P, ZNW, T2),
        "n3": (ZNW, ZNE, T2),
        "n4": (ZNE, Q, T2),
        "n5": (ZNE, C, Q),
        "w1": (C, ZSW, ZNW),
        "e1": (ZNE, ZSE, C),
        "s1": (Q, ZSW, C),
        "s2": (Q, B2, ZSW),
        "s3": (ZSW, B2, ZSE),
        "s4": (B2, P, ZSE),
        "s5": (ZSE, P, C),
    }
    base = len(labels)
    ids = {}
    for i, nm in enumerate(_BAND_NAMES):
        labels.append(tris[nm])
        ids[nm] = base + i
    g = s.add_gluing
    # interior edges
    g((ids["n1"], 2), (ids["n2"], 0), False)   # ZNW-P
    g((ids["n2"], 1), (ids["n3"], 2), False)   # ZNW-T2
    g((ids["n3"], 1), (ids["n4"], 2), False)   # ZNE-T2
    g((ids["n4"], 0), (ids["n5"], 2), False)   # ZNE-Q
    g((ids["n1"], 1), (ids["w1"], 2), False)   # C-ZNW
    g((ids["w1"], 0), (ids["s1"], 1), False)   # C-ZSW
    g((ids["n5"], 0), (ids["e1"], 2), False)   # ZNE-C
    g((ids["e1"], 1), (ids["s5"], 2), False)   # ZSE-C
    g((ids["s1"], 0), (ids["s2"], 2), False)   # Q-ZSW
    g((ids["s2"], 1), (ids["s3"], 0), False)   # B2-ZSW
    g((ids["s3"], 1), (ids["s4"], 2), False)   # B2-ZSE
    g((ids["s4"], 1), (ids["s5"], 0), False)   # P-ZSE
    # the pierced crosscap: rectangle columns self-glued with a flip
    g((ids["n1"], 0), (ids["s5"], 1), True)    # west-upper ~ east-lower (both P->C)
    g((ids["s1"], 2), (ids["n5"], 1), True)    # west-lower ~ east-upper (both C->Q)
    if passenger == "crosscap":
        # antipodal identification of the passenger square
        g((ids["n3"], 0), (ids["s3"], 2), True)   # north ~ south
        g((ids["w1"], 1), (ids["e1"], 0), True)   # west ~ east
    return ids


def build_standard_surface(g: int, n: int, orientable: bool = False) -> CombinatorialSurface:
    """Deterministic triangulation of N_{g,n} (or a genus-zero orientable
    surface when ``orientable`` is set).

    For g >= 4 the first two crosscaps live in a crosscap-passenger band
    (the crosscap slide's support); with boundary, the last crosscap and the
    last boundary component live in a boundary-passenger band (the boundary
    slide's support).  Remaining sites are lune cells.
    """
    if orientable:
        if g != 0:
            raise UnsupportedError("orientable builder supports genus 0 only")
        if n == 0:
            kinds: list[tuple[str, int]] = [("plain", -1), ("plain", -1)]
        else:
            kinds = [("boundary", i) for i in range(n)]
    else:
        if g < 1:
            raise InvalidSignatureError("nonorientable surfaces need genus >= 1")
        use_yband = g >= 4
        use_zband = n >= 1
        kinds = []
        first_lune = 2 if use_yband else 0
        last_lune = g - 2 if use_zband else g - 1
        if use_yband:
            kinds.append(("seat_y", -1))
        kinds += [("crosscap", i) for i in range(first_lune, last_lune + 1)]
        if use_zband:
            kinds.append(("seat_z", -1))
            kinds += [("boundary", i) for i in range(n - 1)]

    labels: list[tuple] = []
    s = CombinatorialSurface(0)
    cells: list[CellInfo] = []
    m = len(kinds)
    for ci, (kind, idx) in enumerate(kinds):
        west = ("M", (ci - 1) % m)
        east = ("M", ci)
        cells.append(_lune_cell(s, labels, kind, idx, west, east, ci))
    bands: dict[str, dict[str, int]] = {}
    for kind, _ in kinds:
        if kind == "seat_y":
            bands["y"] = _band_cell(s, labels, "Y", "crosscap")
        elif kind == "seat_z":
            bands["z"] = _band_cell(s, labels, "Z", "boundary")
    s.n_tri = len(labels)
    s.vertex_labels = labels

    for c in cells:
        _glue_lune_interior(s, c)

    def east_tris(c: CellInfo) -> tuple[int, int]:
        if c.kind == "plain":
            return c.tris["F"], c.tris["B"]
        if c.kind.startswith("seat"):
            return c.tris["F4"], c.tris["B4"]
        return c.tris["F3"], c.tris["B3"]

    def west_tris(c: CellInfo) -> tuple[int, int]:
        if c.kind == "plain":
            return c.tris["F"], c.tris["B"]
        return c.tris["F1"], c.tris["B1"]

    for ci in range(m):
        a, b = cells[ci], cells[(ci + 1) % m]
        fa, ba = east_tris(a)
        fb, bb = west_tris(b)
        s.add_gluing((fa, 2), (fb, 0), False)  # NP-M meridian, front
        s.add_gluing((ba, 2), (bb, 0), False)  # SP-M meridian, back
    for which, band in bands.items():
        seat = next(c for c in cells if c.kind == "seat_" + which)
        # seat square [L,T,R,U] glued to the band rail circle [T2,Q,B2,P]
        s.add_gluing((seat.tris["F2"], 1), (band["n4"], 1), False)  # (L->T) ~ rev(Q->T2)
        s.add_gluing((seat.tris["F3"], 1), (band["s2"], 0), True)   # (T->R) ~ (Q->B2)
        s.add_gluing((seat.tris["B3"], 1), (band["s4"], 0), False)  # (U->R) ~ rev(B2->P)
        s.add_gluing((seat.tris["B2"], 1), (band["n2"], 2), True)   # (L->U) ~ (T2->P)

    lay = MelonLayout(genus=g, boundary_count=n, orientable=orientable, cells=cells)
    lay.bands = bands
    if "y" in bands:
        lay.band_crosscaps["y"] = (0, 1)   # passenger, pierced column
    if "z" in bands:
        lay.band_crosscaps["z"] = (g - 1,)
    s.layout = lay
    return s


# -- simplicial symmetries -----------------------------------------------------


class DartMap:
    """A simplicial map of (part of) a surface to itself.

    Stored per triangle as (image triangle, corner permutation): corner i of
    ``t`` lands on corner ``perm[i]`` of the image.  Partial maps describe
    region symmetries; total bijective maps are automorphisms.
    """

    def __init__(self, surface: CombinatorialSurface, images: dict[int, tuple[int, tuple[int, int, int]]]):
        self.surface = surface
        self.images = images

    @classmethod
    def from_vertex_map(cls, surface: CombinatorialSurface, vmap: dict, tris: Optional[list[int]] = None) -> "DartMap":
        """Build from a vertex-label permutation.

        Every triangle in ``tris`` (default: all) must land on a unique
        triangle carrying the image label set.
        """
        by_set: dict[frozenset, list[int]] = {}
        for t in range(surface.n_tri):
            key = frozenset(surface.vertex_labels[t])
            by_set.setdefault(key, []).append(t)
        images = {}
        for t in (tris if tris is not None else range(surface.n_tri)):
            src = surface.vertex_labels[t]
            img = tuple(vmap.get(v, v) for v in src)
            cands = by_set.get(frozenset(img), [])
            if len(cands) != 1:
                raise ValueError(f"vertex map is not simplicial at triangle {t}: image {img}")
            t2 = cands[0]
            dst = surface.vertex_labels[t2]
            if len(set(dst)) != 3 or len(set(img)) != 3:
                raise ValueError(f"degenerate labels at triangle {t}")
            perm = tuple(dst.index(v) for v in img)
            images[t] = (t2, perm)
        return cls(surface, images)

    def domain(self) -> set[int]:
        return set(self.images)

    def slot_image(self, s: Slot) -> tuple[Slot, bool]:
        """Image slot and whether the parametrization is reversed."""
        t, e = s
        t2, perm = self.images[t]
        a, b = perm[e], perm[(e + 1) % 3]
        if (a + 1) % 3 == b:
            return (t2, a), False
        if (b + 1) % 3 == a:
            return (t2, b), True
        raise AssertionError("corner permutation broke an edge")

    def validate(self, region: Optional[set[int]] = None) -> None:
        """Check the map carries interior gluings of its domain to gluings."""
        dom = region if region is not None else self.domain()
        for t in dom:
            for e in range(3):
                got = self.surface.glue.get((t, e))
                if got is None:
                    continue
                (t2, e2), flip = got
                if t2 not in dom:
                    continue
                (ia, ra) = self.slot_image((t, e))
                (ib, rb) = self.slot_image((t2, e2))
                got2 = self.surface.glue.get(ia)
                if got2 is None or got2[0] != ib:
                    raise ValueError(f"map breaks gluing {(t, e)}~{(t2, e2)}")
                want = flip ^ ra ^ rb
                if got2[1] != want:
                    raise ValueError(f"map breaks flip at {(t, e)}: {got2[1]} != {want}")

    def compose(self, other: "DartMap") -> "DartMap":
        """self after other (apply ``other`` first)."""
        images = {}
        for t, (t1, p1) in other.images.items():
            t2, p2 = self.images[t1]
            images[t] = (t2, tuple(p2[p1[i]] for i in range(3)))
        return DartMap(self.surface, images)

    def inverse(self) -> "DartMap":
        images = {}
        for t, (t2, perm) in self.images.items():
            inv = [0, 0, 0]
            for i in range(3):
                inv[perm[i]] = i
            images[t2] = (t, tuple(inv))
        return DartMap(self.surface, images)

    def is_identity(self) -> bool:
        return all(t2 == t and perm == (0, 1, 2) for t, (t2, perm) in self.images.items())


def reflection_map(s: CombinatorialSurface) -> DartMap:
    """The paper's reflection: swap the melon's north and south sheets."""
    if s.layout is None:
        raise UnsupportedError("reflection is defined on standard surfaces")
    vmap = {("NP",): ("SP",), ("SP",): ("NP",)}
    for ci, cell in enumerate(s.layout.cells):
        if cell.kind.startswith("seat"):
            vmap[("T", ci)] = ("U", ci)
            vmap[("U", ci)] = ("T", ci)
    for which in s.layout.bands:
        p = which.upper()
        vmap[(p + "P",)] = (p + "Q",)
        vmap[(p + "Q",)] = (p + "P",)
        vmap[(p + "NW",)] = (p + "NE",)
        vmap[(p + "NE",)] = (p + "NW",)
        vmap[(p + "SW",)] = (p + "SE",)
        vmap[(p + "SE",)] = (p + "SW",)
    dm = DartMap.from_vertex_map(s, vmap)
    dm.validate()
    return dm
