import pytest

from curvelab.cutting import cut_along, topological_descriptor
from curvelab.errors import CutDisjointnessError
from curvelab.moves import reduce_curve
from curvelab.surface import SurfaceSignature, build_standard_surface

from .test_curves import chain_curve, crosscap_core


def test_empty_cut_returns_whole_surface():
    s = build_standard_surface(5, 0)
    cut = cut_along(s, [])
    assert len(cut.pieces) == 1
    assert cut.pieces[0].signature == SurfaceSignature(5, 0, False)


def test_cut_along_one_sided_core():
    # cutting N_{2,1} along the core of a crosscap leaves one piece with one
    # extra boundary circle and chi unchanged... chi drops by 0, genus by 1
    s = build_standard_surface(3, 0)
    c = reduce_curve(crosscap_core(s, 0))
    cut = cut_along(s, [c])
    assert len(cut.pieces) == 1
    piece = cut.pieces[0]
    assert piece.signature.euler_characteristic() == s.classify().euler_characteristic()
    # one-sided cut: exactly one new boundary circle
    assert piece.boundary.count(("curve", 0)) == 1


def test_cut_along_two_sided_chain_curve():
    s = build_standard_surface(6, 0)
    c = reduce_curve(chain_curve(s, s.layout.lune_crosscaps()[0]))
    assert c.is_two_sided()
    cut = cut_along(s, [c])
    new_circles = sum(p.boundary.count(("curve", 0)) for p in cut.pieces)
    assert new_circles == 2
    assert sum(p.signature.euler_characteristic() for p in cut.pieces) == -4
    # the complement of a two-crosscap chain curve in N_6 stays nonorientable
    assert len(cut.pieces) == 1
    assert not cut.pieces[0].signature.orientable
    assert cut.pieces[0].signature == SurfaceSignature(4, 2, False)


def test_descriptor_of_core_and_chain():
    s = build_standard_surface(3, 0)
    core = reduce_curve(crosscap_core(s, 0))
    d = topological_descriptor(s, core)
    assert not d.two_sided
    assert d.triviality == "essential"
    assert not d.separating

    chain = reduce_curve(chain_curve(s, 0))
    d2 = topological_descriptor(s, chain)
    assert d2.two_sided
    assert d2.triviality == "essential"


def test_intersecting_curves_rejected():
    s = build_standard_surface(3, 0)
    a = reduce_curve(chain_curve(s, 0))
    b = reduce_curve(chain_curve(s, 1))
    with pytest.raises(CutDisjointnessError):
        cut_along(s, [a, b])
