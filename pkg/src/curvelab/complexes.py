"""Finite pieces of the two-sided curve complex.

Vertices are enumerated isotopy classes; edges join classes with geometric
intersection zero; simplices are the cliques.  P-S decompositions are
recognized by cutting: every piece must be a pair of pants or a projective
plane with two boundary circles.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from .classes import IsotopyClass
from .configs import intersection
from .cutting import CutResult, cut_along
from .curves import Curve
from .errors import NotAMemberError, UnsupportedError
from .intersect import realize_multicurve
from .surface import CombinatorialSurface, SurfaceSignature


@dataclass
class FlagComplex:
    surface: CombinatorialSurface
    vertices: list[IsotopyClass]
    edges: set[frozenset] = field(default_factory=set)

    def adjacent(self, i: int, j: int) -> bool:
        return frozenset((i, j)) in self.edges

    def is_clique(self, idxs) -> bool:
        return all(self.adjacent(i, j) for i, j in itertools.combinations(idxs, 2))

    def maximal_cliques_containing(self, seed: tuple) -> list[tuple]:
        """All maximal cliques of the enumerated pool containing the seed.

        Maximality is relative to the pool (a truncation of the complex);
        absolute top dimensions come from the dimension formula instead.
        """
        seed = tuple(sorted(set(seed)))
        if not self.is_clique(seed):
            raise UnsupportedError("seed is not a simplex")
        n = len(self.vertices)
        cands = {v for v in range(n) if v not in seed
                 and all(self.adjacent(v, c) for c in seed)}
        out: list[tuple] = []

        def bk(r: set, p: set, x: set) -> None:
            if not p and not x:
                out.append(tuple(sorted(r)))
                return
            for v in sorted(p):
                bk(r | {v}, {q for q in p if self.adjacent(q, v)},
                   {q for q in x if self.adjacent(q, v)})
                p = p - {v}
                x = x | {v}

        bk(set(seed), cands, set())
        return sorted(set(out))


def build_complex(surface: CombinatorialSurface, vertices: list[IsotopyClass]) -> FlagComplex:
    fc = FlagComplex(surface, list(vertices))
    for i, j in itertools.combinations(range(len(vertices)), 2):
        if intersection(vertices[i], vertices[j]) == 0:
            fc.edges.add(frozenset((i, j)))
    return fc


def top_dimension(g: int, n: int) -> int:
    """Dimension of top simplices of the two-sided complex on N_{g,n}."""
    if g < 2 or (g, n) == (2, 0):
        raise UnsupportedError("dimension formula needs g >= 2, (g,n) != (2,0)")
    r = g // 2
    if g % 2 == 1:
        return 3 * r + n - 3
    return 3 * r + n - 4


def top_curve_count(g: int, n: int) -> int:
    return top_dimension(g, n) + 1


PANTS = SurfaceSignature(0, 3, True)
PROJ2 = SurfaceSignature(1, 2, False)


@dataclass
class PSDecomposition:
    surface: CombinatorialSurface
    classes: list[IsotopyClass]
    realized: list[Curve]
    cut: CutResult

    def piece_census(self) -> dict:
        return self.cut.census()

    def piece_count(self) -> int:
        return len(self.cut.pieces)


def is_ps_decomposition(surface: CombinatorialSurface, classes: list[IsotopyClass]):
    """Accept iff every cut piece is a pair of pants or a projective plane
    with two boundary circles; returns PSDecomposition or (False, offender)."""
    for i, j in itertools.combinations(range(len(classes)), 2):
        if classes[i] == classes[j]:
            return False, f"components {i} and {j} are isotopic"
        if intersection(classes[i], classes[j]) != 0:
            return False, f"components {i} and {j} intersect"
    curves = realize_multicurve([c.representative for c in classes])
    cut = cut_along(surface, curves, build_pieces=False)
    for piece in cut.pieces:
        if piece.signature not in (PANTS, PROJ2):
            return False, f"piece {piece.signature} is not allowed"
    return PSDecomposition(surface, list(classes), curves, cut), None


def adjacency_wrt(psd: PSDecomposition, i: int, j: int) -> bool:
    """Are components i and j on the boundary of a common piece?"""
    if i == j:
        raise NotAMemberError("adjacency needs two distinct components")
    k = len(psd.classes)
    if not (0 <= i < k and 0 <= j < k):
        raise NotAMemberError("component index out of range")
    for piece in psd.cut.pieces:
        curves = [c for kind, c in piece.boundary if kind == "curve"]
        if i in curves and j in curves:
            return True
    return False
