"""The verification harness: realized configurations, lemma-level checks,
superinjectivity, stabilizer searches, and the orbit exhaustion."""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

from .classes import IsotopyClass, canonical_class
from .complexes import (PANTS, PROJ2, PSDecomposition, build_complex, is_ps_decomposition,
                        top_curve_count, top_dimension)
from .configs import Families, intersection, lune_chain
from .curves import Curve
from .cutting import cut_along
from .enumeration import enumerate_vertices
from .errors import CurvelabError, RealizationError, UnsupportedError, WeightOverflowError
from .generators import Generator, apply_word, word_name
from .geometry import regions_of
from .intersect import build_overlay_multi, merge_positions_multi, realize_multicurve
from .mcg import apply_region_map, band_slide_region, cells_region_tris, half_turn_region, region_boundary_curve
from .surface import CombinatorialSurface, SurfaceSignature, build_standard_surface, reflection_map
from .twist import dehn_twist


@dataclass
class Claim:
    claim_id: str
    anchor: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def as_dict(self) -> dict:
        return {"claim": self.claim_id, "anchor": self.anchor,
                "verdict": "pass" if self.passed else "FAIL",
                "detail": self.detail, "seconds": round(self.seconds, 2)}


class Lab:
    """Realized curves, generators and check registry for one surface."""

    def __init__(self, g: int, n: int):
        self.g, self.n = g, n
        self.surface = build_standard_surface(g, n)
        self.fam = Families(self.surface)
        self._gens: Optional[list[Generator]] = None

    # -- configuration realizations ------------------------------------------

    def chain(self) -> list[IsotopyClass]:
        return [self.fam.a(i) for i in range(1, self.g)]

    def b1(self) -> IsotopyClass:
        """The chain-slide image: meets a_1 once, misses the chain middle."""
        def build():
            x = self.fam.a(1)
            for i in range(1, self.g):
                x = canonical_class(
                    self.surface,
                    dehn_twist(self.fam.a(i).representative, x.representative, power=-1))
            return x
        return self.fam.memo(("b1slide",), build)

    def c1(self) -> IsotopyClass:
        def build():
            y = self.y_region()
            return canonical_class(
                self.surface, apply_region_map(y, self.b1().representative, +1))
        return self.fam.memo(("c1",), build)

    def y_region(self):
        return self.fam.memo(("yreg",), lambda: band_slide_region(self.surface, "y"))

    def xi_region(self):
        return self.fam.memo(("zreg",), lambda: band_slide_region(self.surface, "z"))

    def top_psd(self) -> list[IsotopyClass]:
        """The standard top P-S decomposition of N_{g,n}.

        Crosscaps pair off left to right (the y band is the first pair); each
        pair contributes its through-curve and its enclosing curve; an odd
        leftover crosscap either becomes the projective-plane piece or, with
        boundary, pairs into the z band.  Nested separators around growing
        prefixes of the cell row close the complement into pairs of pants.
        """
        fam, lay = self.fam, self.surface.layout
        curves: list[IsotopyClass] = [fam.a(1), fam.e_curve()]
        groups: list[tuple] = [(self._cell_index("seat_y"),)]
        lunes = lay.lune_crosscaps()
        i = 0
        while i + 1 < len(lunes):
            lo = lunes[i]
            curves.append(canonical_class(self.surface, lune_chain(self.surface, lo)))
            cells = (self._cell_of_lune(lo), self._cell_of_lune(lunes[i + 1]))
            curves.append(fam.around(cells))
            groups.append(cells)
            i += 2
        leftover_lune = lunes[i] if i < len(lunes) else None
        if self.n >= 1:
            if leftover_lune is not None:
                # even genus with boundary: the leftover lune pairs into the z band
                curves.append(fam.a(self.g - 1))
                curves.append(self._around_pair_with_band(leftover_lune))
            else:
                curves.append(fam.ring())
            groups.append((self._cell_index("seat_z"),))
        for ci, cell in enumerate(lay.cells):
            if cell.kind == "boundary":
                groups.append((ci,))
        need = top_curve_count(self.g, self.n)
        prefix = list(groups[0])
        for cells in groups[1:-1]:
            if len(curves) >= need:
                break
            prefix.extend(cells)
            curves.append(fam.around(tuple(sorted(set(prefix)))))
        if len(curves) != need:
            raise RealizationError(
                f"top_psd assembled {len(curves)} curves, formula wants {need}")
        return curves

    def _cell_index(self, kind: str) -> int:
        for ci, cell in enumerate(self.surface.layout.cells):
            if cell.kind == kind:
                return ci
        raise KeyError(kind)

    def _cell_of_lune(self, i: int) -> int:
        for ci, cell in enumerate(self.surface.layout.cells):
            if cell.kind == "crosscap" and cell.index == i:
                return ci
        raise KeyError(i)

    def _around_pair_with_band(self, lune: int) -> IsotopyClass:
        """Curve enclosing the last lune crosscap and the z-band crosscap,
        leaving the z boundary outside (searched in the two-cell window)."""
        def build():
            cells = [self._cell_of_lune(lune), self._cell_index("seat_z")]
            support = cells_region_tris(self.surface, cells)
            want_inside = SurfaceSignature(2, 1, False)
            pool = enumerate_vertices(self.surface, 18, support=support)
            good = [c for c in pool
                    if c.descriptor.separating
                    and want_inside in c.descriptor.complement_signatures]
            if not good:
                raise RealizationError("no Klein-pair separator in the band window")
            return sorted(good, key=lambda c: (c.weight, c.key))[0]
        return self.fam.memo(("arpair", lune), build)

    # -- generators -----------------------------------------------------------

    def standard_generators(self) -> list[Generator]:
        """The realized generating set (twists about the chain and named
        curves, realized half twists, the crosscap slide, boundary slides).

        Half twists exist for adjacent boundary-lune pairs; the braid of the
        last two boundary components (one of which lives in the z band) has
        no symmetric region in this model and is omitted; reports flag it.
        """
        if self._gens is not None:
            return self._gens
        s = self.surface
        gens: list[Generator] = []
        for i in range(1, self.g):
            gens.append(Generator(f"t_a{i}", "dehn_twist", s, instrument=self.fam.a(i)))
        gens.append(Generator("t_e", "dehn_twist", s, instrument=self.fam.e_curve()))
        gens.append(Generator("t_b1", "dehn_twist", s, instrument=self.b1()))
        if self.g >= 4:
            gens.append(Generator("y", "region", s, region=self.y_region()))
        if self.n >= 1:
            gens.append(Generator("xi", "region", s, region=self.xi_region()))
            gens.append(Generator("t_ring", "dehn_twist", s, instrument=self.fam.ring()))
        bcells = [ci for ci, c in enumerate(s.layout.cells) if c.kind == "boundary"]
        for j in range(len(bcells) - 1):
            if bcells[j + 1] == bcells[j] + 1:
                reg = half_turn_region(s, bcells[j], f"sigma_{j + 1}")
                gens.append(Generator(f"sigma_{j + 1}", "region", s, region=reg))
                gens.append(Generator(f"t_m{j + 1}", "dehn_twist", s,
                                      instrument=canonical_class(s, region_boundary_curve(reg))))
        gens.append(Generator("refl", "dart", s, dart=reflection_map(s), involution=True))
        self._gens = gens
        return gens

    def generator(self, name: str) -> Generator:
        for gen in self.standard_generators():
            if gen.name == name:
                return gen
        raise KeyError(name)

    # -- harness operations ----------------------------------------------------

    def search_curves(self, weight_bound: int, predicate, support_cells=None):
        support = cells_region_tris(self.surface, support_cells) if support_cells else None
        pool = enumerate_vertices(self.surface, weight_bound, support=support)
        return [c for c in pool if predicate(c)]

    def vertex_pool(self, weight_bound: int) -> list[IsotopyClass]:
        return self.fam.memo(("pool", weight_bound),
                             lambda: enumerate_vertices(self.surface, weight_bound))


# -- superinjectivity ---------------------------------------------------------


@dataclass
class VertexMap:
    domain: list[IsotopyClass]
    images: list[IsotopyClass]


def induced_vertex_map(word, pool: list[IsotopyClass], ceiling: Optional[int] = None) -> VertexMap:
    return VertexMap(list(pool), [apply_word(word, v, ceiling=ceiling) for v in pool])


def check_superinjective(vm: VertexMap):
    """(verdict, counterexample, injective). Rejects non-simplicial input."""
    n = len(vm.domain)
    for i, j in itertools.combinations(range(n), 2):
        src = intersection(vm.domain[i], vm.domain[j])
        dst = intersection(vm.images[i], vm.images[j])
        if src == 0 and dst != 0:
            raise UnsupportedError(f"map is not simplicial at pair ({i}, {j})")
        if src != 0 and dst == 0:
            return False, (i, j), None
    injective = len({im.key for im in vm.images}) == n
    return True, None, injective


# -- stabilizer search ----------------------------------------------------------


@dataclass
class StabilizerReport:
    word_length_bound: int
    ceiling: int
    fixing_words: list[str]
    identity_on_pool: list[str]
    overflow_words: int
    states: int

    @property
    def trivial_up_to_bound(self) -> bool:
        return not self.fixing_words


def stabilizer_search(lab: Lab, config: list[IsotopyClass], max_len: int,
                      ceiling: int = 40, gens: Optional[list[Generator]] = None) -> StabilizerReport:
    """Breadth-first over reduced words; collects words fixing every class.

    Soundness is exact; completeness is bounded by the weight ceiling
    (overflowing words are skipped and counted).
    """
    gens = gens if gens is not None else lab.standard_generators()
    letters = []
    for g in gens:
        letters.append((g, 1))
        if not g.involution:
            letters.append((g, -1))
    base = tuple(c.key for c in config)
    seen = {base: ()}
    frontier = [(tuple(config), ())]
    fixing: list[str] = []
    overflow = 0
    for depth in range(max_len):
        nxt = []
        for state, word in frontier:
            for gen, ex in letters:
                if word and word[-1] == (gen, -ex):
                    continue  # freely reduced words only
                try:
                    imgs = tuple(gen.apply(c, ex, ceiling=ceiling) for c in state)
                except WeightOverflowError:
                    overflow += 1
                    continue
                w2 = word + ((gen, ex),)
                key = tuple(c.key for c in imgs)
                if key == base:
                    fixing.append(word_name(w2))
                    continue
                if key in seen:
                    continue
                seen[key] = w2
                nxt.append((imgs, w2))
        frontier = nxt
    return StabilizerReport(max_len, ceiling, fixing, [], overflow, len(seen))


# -- orbit exhaustion -----------------------------------------------------------


@dataclass
class OrbitStep:
    depth: int
    size: int
    new_classes: int
    overflowed: int


def orbit_exhaustion(lab: Lab, seeds: list[IsotopyClass], depth: int,
                     ceiling: int, gens: Optional[list[Generator]] = None):
    """X_1 = seeds; X_k = X_{k-1} plus generator images and preimages,
    truncated at the weight ceiling (overflow is logged, not dropped)."""
    gens = gens if gens is not None else lab.standard_generators()
    current = {c.key: c for c in seeds}
    steps = [OrbitStep(1, len(current), len(current), 0)]
    frontier = list(current.values())
    for d in range(2, depth + 1):
        new = []
        overflowed = 0
        for c in frontier:
            for gen in gens:
                for ex in (1, -1):
                    if gen.involution and ex == -1:
                        continue
                    try:
                        img = gen.apply(c, ex, ceiling=ceiling)
                    except WeightOverflowError:
                        overflowed += 1
                        continue
                    if img.key not in current:
                        current[img.key] = img
                        new.append(img)
        steps.append(OrbitStep(d, len(current), len(new), overflowed))
        frontier = new
        if not new:
            break
    return current, steps
