import pytest

from curvelab.intersect import (
    geometric_intersection,
    intersection_minimum_oracle,
    overlay_reduce,
)
from curvelab.moves import reduce_curve
from curvelab.surface import build_standard_surface

from .test_curves import chain_curve, crosscap_core


@pytest.fixture(scope="module")
def n3():
    return build_standard_surface(3, 0)


def test_self_overlay_is_disjoint(n3):
    c = reduce_curve(chain_curve(n3, 0))
    cert = geometric_intersection(c, c)
    assert cert.count == 0


def test_chain_curves_intersect_once(n3):
    a = reduce_curve(chain_curve(n3, 0))
    b = reduce_curve(chain_curve(n3, 1))
    cert = geometric_intersection(a, b)
    assert cert.count == 1
    cert2 = geometric_intersection(b, a)
    assert cert2.count == 1


def test_disjoint_chain_curves(n3):
    s = build_standard_surface(6, 0)
    lunes = s.layout.lune_crosscaps()
    a = reduce_curve(chain_curve(s, lunes[0]))
    b = reduce_curve(chain_curve(s, lunes[2]))
    assert geometric_intersection(a, b).count == 0


def test_core_vs_chain(n3):
    core = reduce_curve(crosscap_core(n3, 0))
    a = reduce_curve(chain_curve(n3, 0))
    cert = geometric_intersection(core, a)
    assert cert.count == 1


def test_oracle_agreement_small(n3):
    curves = [
        reduce_curve(chain_curve(n3, 0)),
        reduce_curve(chain_curve(n3, 1)),
        reduce_curve(crosscap_core(n3, 0)),
        reduce_curve(crosscap_core(n3, 2)),
    ]
    for i in range(len(curves)):
        for j in range(len(curves)):
            got = geometric_intersection(curves[i], curves[j]).count
            want = intersection_minimum_oracle(curves[i], curves[j])
            assert got == want, (i, j, got, want)


def test_final_overlay_has_no_bigon(n3):
    a = reduce_curve(chain_curve(n3, 0))
    b = reduce_curve(chain_curve(n3, 1))
    rc, _, _ = overlay_reduce(a, b)
    from curvelab.intersect import find_bigons

    assert find_bigons(rc) == []
