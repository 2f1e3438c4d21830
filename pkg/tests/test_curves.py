import pytest

from curvelab.curves import Curve, make_curve
from curvelab.errors import EmbeddednessError
from curvelab.moves import reduce_curve
from curvelab.surface import build_standard_surface


def crosscap_core(s, i):
    """One-sided core of crosscap lune i (hand route)."""
    c = s.layout.crosscap_cell(i).tris
    entries = [(c["B2"], 1), (c["B1"], 2), (c["F1"], 1), (c["F2"], 0)]
    return make_curve(s, entries)


def chain_curve(s, i):
    """Two-sided curve through crosscap lunes i and i+1 (hand route)."""
    a = s.layout.crosscap_cell(i).tris
    b = s.layout.crosscap_cell((i + 1) % s.layout.genus).tris
    entries = [
        (a["B2"], 1), (a["B3"], 0), (b["B1"], 0), (b["B2"], 0),
        (b["F2"], 1), (b["F1"], 2), (a["F3"], 2), (a["F2"], 2),
    ]
    return make_curve(s, entries)


def np_vertex_link(s):
    entries = []
    for cell in s.layout.cells:
        names = ("F1", "F2", "F3", "F4") if cell.kind == "seat" else ("F1", "F2", "F3")
        for nm in names:
            entries.append((cell.tris[nm], 0))
    return make_curve(s, entries)


def test_core_curve_valid_and_one_sided():
    s = build_standard_surface(2, 0)
    c = crosscap_core(s, 0)
    assert c.weight == 4
    assert not c.is_two_sided()


def test_chain_curve_two_sided():
    s = build_standard_surface(2, 0)
    c = chain_curve(s, 0)
    assert c.is_two_sided()


def test_vertex_link_reduces_to_nothing():
    s = build_standard_surface(3, 0)
    c = np_vertex_link(s)
    assert reduce_curve(c) is None


def test_backtrack_removal():
    s = build_standard_surface(2, 0)
    c = crosscap_core(s, 0)
    cc = s.layout.crosscap_cell(0).tris
    prev = s.layout.crosscap_cell(1).tris
    # splice a detour across the west meridian into the (F1, 1, 2) step
    steps = []
    for st in c.steps:
        if st == (cc["F1"], 1, 2):
            steps.extend([(cc["F1"], 1, 0), (prev["F3"], 2, 2), (cc["F1"], 0, 2)])
        else:
            steps.append(st)
    from fractions import Fraction

    mer = s.canonical_slot((cc["F1"], 0))
    pos, seen = [], 0
    for (t, _, e_out) in steps:
        if s.canonical_slot((t, e_out)) == mer:
            pos.append(Fraction(2, 3) if seen == 0 else Fraction(1, 3))
            seen += 1
        else:
            pos.append(Fraction(1, 2))
    detoured = Curve(s, steps, pos)
    assert detoured.weight == c.weight + 2
    red = reduce_curve(detoured)
    base = reduce_curve(c)
    assert red is not None and base is not None
    assert red.canonical_key() == base.canonical_key()


def test_reduce_idempotent():
    s = build_standard_surface(2, 0)
    for c in (crosscap_core(s, 0), chain_curve(s, 0)):
        r1 = reduce_curve(c)
        r2 = reduce_curve(r1)
        assert r1.canonical_key() == r2.canonical_key()
        assert r1.weight == r2.weight


def test_canonical_key_rotation_invariant():
    s = build_standard_surface(2, 0)
    c = chain_curve(s, 0)
    n = len(c.steps)
    for r in (1, 3, 5):
        steps = [c.steps[(r + i) % n] for i in range(n)]
        pos = [c.pos[(r + i) % n] for i in range(n)]
        rot = Curve(s, steps, pos)
        assert rot.canonical_key() == c.canonical_key()
        assert rot.reverse().canonical_key() == c.canonical_key()


def test_invalid_chaining_rejected():
    s = build_standard_surface(2, 0)
    cc = s.layout.crosscap_cell(0).tris
    with pytest.raises(EmbeddednessError):
        make_curve(s, [(cc["F2"], 0), (cc["B3"], 2)])
