import pytest

from curvelab.errors import InvalidSignatureError, UnsupportedError
from curvelab.surface import (
    SurfaceSignature,
    build_standard_surface,
    classify_surface,
    reflection_map,
)


@pytest.mark.parametrize(
    "g,n",
    [(1, 0), (1, 1), (2, 0), (2, 1), (3, 0), (5, 0), (5, 1), (5, 2), (6, 0), (6, 1), (7, 0), (7, 3)],
)
def test_standard_nonorientable_signatures(g, n):
    s = build_standard_surface(g, n)
    sig = classify_surface(s)
    assert sig == SurfaceSignature(g, n, False)
    assert sig.euler_characteristic() == 2 - g - n


def test_chi_values_from_formula():
    assert classify_surface(build_standard_surface(1, 0)).euler_characteristic() == 1
    assert classify_surface(build_standard_surface(5, 0)).euler_characteristic() == -3
    assert classify_surface(build_standard_surface(2, 1)).euler_characteristic() == -1


@pytest.mark.parametrize("n,chi", [(0, 2), (1, 1), (2, 0), (3, -1)])
def test_orientable_genus_zero(n, chi):
    s = build_standard_surface(0, n, orientable=True)
    sig = classify_surface(s)
    assert sig == SurfaceSignature(0, n, True)
    assert sig.euler_characteristic() == chi


def test_orientable_positive_genus_rejected():
    with pytest.raises(UnsupportedError):
        build_standard_surface(1, 0, orientable=True)


def test_invalid_signature():
    with pytest.raises(InvalidSignatureError):
        build_standard_surface(0, 2)


def test_orientability_sign_independence():
    s = build_standard_surface(4, 1)
    pc = s.as_poly()
    import random

    rng = random.Random(7)
    orders = [list(range(s.n_tri)) for _ in range(5)]
    for o in orders:
        rng.shuffle(o)
    results = [pc.orientation_signs(order=o) is not None for o in orders]
    assert all(r == results[0] for r in results)
    assert results[0] is False


def test_reflection_is_involution_and_simplicial():
    for g, n in [(3, 0), (5, 0), (5, 1), (6, 1), (5, 2)]:
        s = build_standard_surface(g, n)
        sig = reflection_map(s)
        sig.validate()
        assert not sig.is_identity()
        assert sig.compose(sig).is_identity()
