"""Cutting surfaces along multicurves, and curve classification by pieces."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Optional

from .curves import Curve, check_chords_embedded
from .errors import CutDisjointnessError, EmbeddednessError
from .geometry import Region, RegionComplex, region_complex, region_piece_surface, regions_of
from .surface import CombinatorialSurface, SurfaceSignature

Provenance = tuple[str, int]  # ("curve", i) or ("boundary", j)


@dataclass
class CutPiece:
    surface: CombinatorialSurface
    signature: SurfaceSignature
    boundary: list[Provenance]


@dataclass
class CutResult:
    pieces: list[CutPiece]

    def signatures(self) -> list[SurfaceSignature]:
        return sorted(p.signature for p in self.pieces)

    def census(self) -> dict[SurfaceSignature, int]:
        out: dict[SurfaceSignature, int] = {}
        for p in self.pieces:
            out[p.signature] = out.get(p.signature, 0) + 1
        return out


def _region_signature(region: Region) -> SurfaceSignature:
    b = len(region.circles)
    chi = region.chi
    if region.orientable:
        g2 = 2 - chi - b
        if g2 < 0 or g2 % 2:
            raise AssertionError(f"bad piece: chi={chi} b={b} orientable")
        return SurfaceSignature(g2 // 2, b, True)
    return SurfaceSignature(2 - chi - b, b, False)


def _boundary_circle_index(surface: CombinatorialSurface) -> dict:
    idx = {}
    for i, circ in enumerate(surface.as_poly().boundary_circles()):
        for side in circ.sides:
            idx[side] = i
    return idx


def _validate_disjoint(surface: CombinatorialSurface, curves: list[Curve]) -> None:
    per_edge: dict = {}
    for c in curves:
        for k in range(len(c.steps)):
            per_edge.setdefault(c.transition_edge(k), []).append(c.pos[k])
    for edge, ps in per_edge.items():
        if len(set(ps)) != len(ps):
            raise CutDisjointnessError(f"coincident positions on edge {edge}")
    try:
        check_chords_embedded(surface, curves)
    except EmbeddednessError as exc:
        raise CutDisjointnessError(str(exc)) from exc


def cut_along(surface: CombinatorialSurface, curves: list[Curve],
              build_pieces: bool = True) -> CutResult:
    """Cut the surface along a disjointly realized family of curves."""
    for c in curves:
        if c.surface is not surface:
            raise CutDisjointnessError("curves live on a different surface")
    if not curves:
        sig = surface.classify()
        piece = CutPiece(surface, sig, [("boundary", i) for i in range(sig.boundary_count)])
        return CutResult([piece])
    _validate_disjoint(surface, curves)
    rc = region_complex(surface, curves)
    if rc.crossings:
        raise CutDisjointnessError("multicurve components intersect")
    bidx = _boundary_circle_index(surface)
    pieces = []
    for region in regions_of(rc):
        sig = _region_signature(region)
        provs: list[Provenance] = []
        for circ in region.circles:
            kinds = {s.kind for s in circ}
            if "wall" in kinds:
                curves_touched = {s.curve for s in circ if s.kind == "wall"}
                if kinds != {"wall"} or len(curves_touched) != 1:
                    raise AssertionError("mixed boundary circle after cut")
                provs.append(("curve", curves_touched.pop()))
            else:
                provs.append(("boundary", bidx[circ[0].slot]))
        piece_surface = region_piece_surface(rc, region) if build_pieces else None
        if piece_surface is not None and piece_surface.classify() != sig:
            raise AssertionError("piece triangulation disagrees with census")
        pieces.append(CutPiece(piece_surface, sig, sorted(provs)))
    total = sum(p.signature.euler_characteristic() for p in pieces)
    if total != surface.classify().euler_characteristic():
        raise AssertionError("Euler characteristic not conserved by cut")
    return CutResult(pieces)


Triviality = Literal["essential", "bounds_disk", "bounds_mobius", "boundary_parallel"]


@dataclass(frozen=True)
class TopologicalDescriptor:
    two_sided: bool
    triviality: Triviality
    separating: bool
    complement_signatures: tuple[SurfaceSignature, ...]

    @property
    def essential(self) -> bool:
        return self.triviality == "essential"


def topological_descriptor(surface: CombinatorialSurface, curve: Curve) -> TopologicalDescriptor:
    """Classify one reduced curve by cutting along it."""
    cut = cut_along(surface, [curve], build_pieces=False)
    two_sided = curve.is_two_sided()
    separating = len(cut.pieces) == 2
    triviality: Triviality = "essential"
    for p in cut.pieces:
        curve_circles = sum(1 for kind, _ in p.boundary if kind == "curve")
        bdry_circles = len(p.boundary) - curve_circles
        if p.signature.is_disk() and curve_circles == 1:
            triviality = "bounds_disk"
            break
        if p.signature.is_mobius() and curve_circles == 1:
            triviality = "bounds_mobius"
            break
        if p.signature.is_annulus() and curve_circles == 1 and bdry_circles == 1:
            triviality = "boundary_parallel"
            break
    return TopologicalDescriptor(
        two_sided=two_sided,
        triviality=triviality,
        separating=separating,
        complement_signatures=tuple(cut.signatures()),
    )
