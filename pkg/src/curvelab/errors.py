"""Exception types shared across the package."""


class CurvelabError(Exception):
    pass


class InvalidSignatureError(CurvelabError):
    """Surface signature outside the supported range."""


class MustBeConnectedError(CurvelabError):
    """Operation requires a connected complex."""


class EmbeddednessError(CurvelabError):
    """Curve data does not admit a crossing-free realization."""


class CutDisjointnessError(CurvelabError):
    """cut_along needs pairwise disjoint multicurve components."""


class EssentialityError(CurvelabError):
    """Operation defined only for essential curves."""


class NotAVertexError(CurvelabError):
    """Trivial or boundary-parallel curve used where a T(N) vertex is required."""


class TwoSidedError(CurvelabError):
    """Dehn twists need a two-sided instrument curve."""


class SurfaceMismatchError(CurvelabError):
    """Objects built on different surfaces were combined."""


class NotAMemberError(CurvelabError):
    """Curve is not a component of the decomposition."""


class UnsupportedError(CurvelabError):
    """Parameter combination outside the supported range."""


class WeightOverflowError(CurvelabError):
    """Curve weight exceeded the configured ceiling; caller may raise it."""

    def __init__(self, weight: int, ceiling: int):
        super().__init__(f"curve weight {weight} exceeds ceiling {ceiling}")
        self.weight = weight
        self.ceiling = ceiling


class RealizationError(CurvelabError):
    """A named configuration could not be realized; carries the violated fact."""
