"""Named generators, words, and their class-level action.

A Generator owns whatever realizes it (a twist instrument class, a region
map, a simplicial automorphism, or a composite) and acts on isotopy classes
with memoization.  Words are short sequences of signed generators applied
left to right.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .classes import IsotopyClass, canonical_class
from .curves import Curve
from .errors import UnsupportedError, WeightOverflowError
from .mcg import RegionMapData, apply_dart_map, apply_region_map
from .moves import reduce_curve
from .surface import CombinatorialSurface, DartMap
from .twist import dehn_twist


@dataclass
class Generator:
    name: str
    kind: str                      # "dehn_twist" | "region" | "dart" | "composite"
    surface: CombinatorialSurface
    instrument: Optional[IsotopyClass] = None       # dehn_twist
    region: Optional[RegionMapData] = None          # region maps
    dart: Optional[DartMap] = None                  # simplicial automorphisms
    parts: tuple = ()              # composite: ((Generator, exp), ...)
    involution: bool = False
    _cache: dict = field(default_factory=dict, repr=False)

    def apply(self, cls: IsotopyClass, power: int = 1,
              ceiling: Optional[int] = None) -> IsotopyClass:
        if power == 0:
            return cls
        sign = 1 if power > 0 else -1
        out = cls
        for _ in range(abs(power)):
            out = self._apply_once(out, sign, ceiling)
        return out

    def _apply_once(self, cls: IsotopyClass, sign: int,
                    ceiling: Optional[int]) -> IsotopyClass:
        if self.involution:
            sign = 1
        key = (cls.key, sign)
        got = self._cache.get(key)
        if got is None:
            got = canonical_class(self.surface, self._apply_curve(cls.representative, sign))
            self._cache[key] = got
            self._cache[(got.key, -sign)] = cls
        if ceiling is not None and got.weight > ceiling:
            raise WeightOverflowError(got.weight, ceiling)
        return got

    def _apply_curve(self, curve: Curve, sign: int) -> Curve:
        if self.kind == "dehn_twist":
            return dehn_twist(self.instrument.representative, curve, power=sign)
        if self.kind == "region":
            return apply_region_map(self.region, curve, direction=sign)
        if self.kind == "dart":
            out = reduce_curve(apply_dart_map(self.dart, curve))
            if out is None:
                raise AssertionError("automorphism trivialized a curve")
            return out
        if self.kind == "composite":
            parts = self.parts if sign > 0 else tuple((g, -e) for (g, e) in reversed(self.parts))
            cls = canonical_class(self.surface, curve)
            for g, e in parts:
                cls = g.apply(cls, e)
            return cls.representative
        raise UnsupportedError(f"unknown generator kind {self.kind}")


Word = tuple[tuple[Generator, int], ...]


def apply_word(word, cls: IsotopyClass, ceiling: Optional[int] = None) -> IsotopyClass:
    """Left-to-right application of (Generator, exponent) letters."""
    out = cls
    for gen, exp in word:
        out = gen.apply(out, exp, ceiling=ceiling)
    return out


def word_name(word) -> str:
    if not word:
        return "id"
    bits = []
    for gen, exp in word:
        bits.append(gen.name if exp == 1 else f"{gen.name}^{exp}")
    return "*".join(bits)
