"""Isotopy classes: canonical representatives, isotopy decision, push-offs.

Reduction plus the neutral-push orbit usually gives one encoding per class,
but confluence is not a theorem here: occasionally two minimal
representatives of one class are not connected by weight-neutral pushes.  A
per-surface registry therefore arbitrates class identity with the cut-based
isotopy test, and every key ever seen for a class aliases to its first
registered representative.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .curves import Curve
from .cutting import TopologicalDescriptor, cut_along, topological_descriptor
from .errors import EssentialityError, NotAVertexError, UnsupportedError
from .intersect import geometric_intersection
from .moves import reduce_curve
from .surface import CombinatorialSurface, Slot


@dataclass(frozen=True)
class IsotopyClass:
    surface: CombinatorialSurface = field(compare=False, repr=False)
    representative: Curve = field(compare=False, repr=False)
    descriptor: TopologicalDescriptor = field(compare=False)
    key: tuple = field(compare=True)

    @property
    def two_sided(self) -> bool:
        return self.descriptor.two_sided

    @property
    def weight(self) -> int:
        return self.representative.weight

    def __eq__(self, other) -> bool:
        return isinstance(other, IsotopyClass) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __lt__(self, other) -> bool:
        return (self.weight, self.key) < (other.weight, other.key)


class ClassRegistry:
    def __init__(self) -> None:
        self.by_key: dict[tuple, int] = {}
        self.entries: list[IsotopyClass] = []
        self.by_descriptor: dict[TopologicalDescriptor, list[int]] = {}


def _registry(surface: CombinatorialSurface) -> ClassRegistry:
    reg = getattr(surface, "_class_registry", None)
    if reg is None:
        reg = ClassRegistry()
        surface._class_registry = reg
    return reg


def canonical_class(surface: CombinatorialSurface, curve: Curve) -> IsotopyClass:
    """Canonical IsotopyClass of an essential curve.

    One-sided curves are allowed (they instrument crosscap slides) but are
    never vertices of the two-sided complex; callers filter on
    ``two_sided``.  Trivial and boundary-parallel curves are rejected.
    """
    red = reduce_curve(curve)
    if red is None:
        raise NotAVertexError("curve is trivial (vanished under reduction)")
    reg = _registry(surface)
    key = red.canonical_key()
    cid = reg.by_key.get(key)
    if cid is not None:
        return reg.entries[cid]
    desc = topological_descriptor(surface, red)
    if not desc.essential:
        raise NotAVertexError(f"curve is {desc.triviality}, not a vertex")
    for cand in reg.by_descriptor.get(desc, []):
        if _isotopic_reduced(surface, reg.entries[cand].representative, red, desc):
            reg.by_key[key] = cand
            return reg.entries[cand]
    cls = IsotopyClass(surface, red, desc, key)
    cid = len(reg.entries)
    reg.entries.append(cls)
    reg.by_key[key] = cid
    reg.by_descriptor.setdefault(desc, []).append(cid)
    return cls


def push_off(c: Curve) -> Curve:
    """A parallel copy of ``c``: disjoint when two-sided, the Mobius-band
    boundary double (two laps) when one-sided."""
    surface = c.surface
    n = len(c.steps)

    def ori(slot: Slot) -> int:
        canon = surface.canonical_slot(slot)
        if canon == slot:
            return 1
        return 1 if surface.glue[slot][1] else -1

    tau = [1]
    for k in range(1, n + 1):
        t, e_in, e_out = c.steps[k % n]
        tau.append(-tau[-1] * ori((t, e_in)) * ori((t, e_out)))
    closes = tau[n] == tau[0]
    assert closes == c.is_two_sided()
    per_edge: dict[Slot, list[Fraction]] = {}
    for k in range(n):
        per_edge.setdefault(c.transition_edge(k), []).append(c.pos[k])
    eps: dict[Slot, Fraction] = {}
    for edge, ps in per_edge.items():
        qs = sorted(ps)
        gap = min([qs[0], 1 - qs[-1]] + [b - a for a, b in zip(qs, qs[1:])])
        eps[edge] = gap / 4
    laps = 1 if closes else 2
    steps = list(c.steps) * laps
    pos = []
    for lap in range(laps):
        sgn = 1 if lap == 0 else -1
        for k in range(n):
            e = c.transition_edge(k)
            pos.append(c.pos[k] + sgn * tau[k] * eps[e])
    return Curve(surface, steps, pos)


def _annulus_between(surface: CombinatorialSurface, c1: Curve, c2: Curve) -> bool:
    """Two two-sided curves are isotopic iff a disjoint realization has an
    annulus complement piece meeting both (valid with no essentiality
    assumption, so it also serves the Mobius-boundary doubles)."""
    if c1.canonical_key() == c2.canonical_key():
        return True
    cert = geometric_intersection(c1, c2)
    if cert.count != 0:
        return False
    cut = cut_along(surface, [cert.a, cert.b], build_pieces=False)
    for piece in cut.pieces:
        if piece.signature.is_annulus() and piece.boundary == [("curve", 0), ("curve", 1)]:
            return True
    return False


def _isotopic_reduced(surface: CombinatorialSurface, c1: Curve, c2: Curve,
                      desc: TopologicalDescriptor) -> bool:
    if c1.canonical_key() == c2.canonical_key():
        return True
    if desc.two_sided:
        return _annulus_between(surface, c1, c2)
    # one-sided: compare Mobius-neighborhood boundaries.  Except on the
    # closed Klein bottle, the double determines the core.
    sig = surface.classify()
    if (sig.genus, sig.boundary_count, sig.orientable) == (2, 0, False):
        raise UnsupportedError("one-sided isotopy is ambiguous on the closed Klein bottle")
    d1 = reduce_curve(push_off(c1))
    d2 = reduce_curve(push_off(c2))
    if d1 is None or d2 is None:
        raise AssertionError("Mobius-band boundary reduced to nothing")
    return _annulus_between(surface, d1, d2)


def are_isotopic(surface: CombinatorialSurface, c1: Curve, c2: Curve) -> bool:
    """Decide isotopy of two reduced essential curves."""
    descs = []
    for c in (c1, c2):
        d = topological_descriptor(surface, c)
        if not d.essential:
            raise EssentialityError("isotopy test requires essential curves")
        descs.append(d)
    if descs[0] != descs[1]:
        return False
    return _isotopic_reduced(surface, c1, c2, descs[0])
