"""Dehn twists as curve surgery.

Inside an annular collar of the two-sided instrument curve c, the twist maps
each transversal strand of d to a spiral: depth across the collar grows
linearly with the angle travelled along c.  Every rerouted strand therefore
inserts one full lap of transitions parallel to c with linearly graded exact
offsets; parallel spirals never cross, and each strand still crosses c once
per original crossing (where its depth changes sign).

The handedness convention is the global TWIST_SIGN; generator validation
pins it against the half-twist and crosscap-slide identities.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .curves import Curve
from .errors import TwoSidedError
from .geometry import slot_point
from .intersect import overlay_reduce
from .moves import reduce_curve
from .surface import Slot

TWIST_SIGN = 1


def _orientation_along(c: Curve) -> list[int]:
    """Local orientation transport: +-1 per step, flipping at flipped gluings."""
    out = [1]
    for k in range(len(c.steps) - 1):
        _, flip = c.surface.glue[c.transition_slot(k)]
        out.append(out[-1] * (-1 if flip else 1))
    return out


def _tau_offsets(c: Curve) -> list[int]:
    """Offset signs per transition placing a copy on one consistent side."""
    surface = c.surface
    n = len(c.steps)

    def ori(slot: Slot) -> int:
        canon = surface.canonical_slot(slot)
        if canon == slot:
            return 1
        return 1 if surface.glue[slot][1] else -1

    tau = [1]
    for k in range(1, n):
        t, e_in, e_out = c.steps[k]
        tau.append(-tau[-1] * ori((t, e_in)) * ori((t, e_out)))
    return tau


def _cross2(u, v):
    return u[0] * v[1] - u[1] * v[0]


def _chord_dir(c: Curve, j: int):
    t, e_in, e_out = c.steps[j]
    P = slot_point(e_in, c.entry_position(j))
    Q = slot_point(e_out, c.exit_position(j))
    return P, Q, (Q[0] - P[0], Q[1] - P[1])


def _copy_side_sign(c: Curve, tau: list[int], j: int) -> int:
    """Geometric side (sign of cross(c_dir, offset)) of the tau=+1 copy
    along c's chord in step j."""
    t, e_in, _ = c.steps[j]
    _, _, cdir = _chord_dir(c, j)
    surface = c.surface
    canon = surface.canonical_slot((t, e_in))
    ori = 1 if canon == (t, e_in) else (1 if surface.glue[(t, e_in)][1] else -1)
    n = len(c.steps)
    delta = tau[(j - 1) % n] * ori
    a = slot_point(e_in, Fraction(0))
    b = slot_point(e_in, Fraction(1))
    off = ((b[0] - a[0]) * delta, (b[1] - a[1]) * delta)
    s = _cross2(cdir, off)
    assert s != 0
    return 1 if s > 0 else -1


def dehn_twist(c: Curve, d: Curve, power: int = 1) -> Curve:
    """t_c^power applied to d; both curves reduced on the same surface."""
    if not c.is_two_sided():
        raise TwoSidedError("Dehn twists need a two-sided instrument curve")
    if power == 0:
        return d
    out = d
    for _ in range(abs(power)):
        out = _twist_once(c, out, 1 if power > 0 else -1)
    return out


def _twist_once(c: Curve, d: Curve, power_sign: int) -> Curve:
    surface = c.surface
    rc, cc, dd = overlay_reduce(c, d)
    if not rc.crossings:
        return reduce_curve(dd)
    nc = len(cc.steps)
    orient = _orientation_along(cc)
    tau = _tau_offsets(cc)
    g0 = _copy_side_sign(cc, tau, 0)  # geometric side of the tau=+1 copy at step 0
    slope = TWIST_SIGN * power_sign

    # crossing data, grouped by d-step and ordered along each chord
    per_step: dict[int, list] = {}
    phases = []
    for cr in rc.crossings:
        (ci_a, ka, ta) = cr["a"]
        (ci_b, kb, tb) = cr["b"]
        if ci_a == 0:
            cstep, t_c, dstep, t_d = ka, ta, kb, tb
        else:
            cstep, t_c, dstep, t_d = kb, tb, ka, ta
        per_step.setdefault(dstep, []).append([t_d, cstep, t_c])
        phases.append((cstep, t_c))
    # avoid zero offsets (a strand exactly on c at a transition): shrink all
    # chord phases uniformly, preserving their order, until clean
    for _ in range(64):
        clean = True
        for hits in per_step.values():
            for h in hits:
                a_x = h[1] + h[2]
                for i in range(nc):
                    if (2 * ((Fraction(i + 1) - a_x) % nc)) % (2 * nc) == nc:
                        clean = False
        if clean:
            break
        for hits in per_step.values():
            for h in hits:
                h[2] = h[2] * Fraction(255, 256)
    else:
        raise AssertionError("could not normalize twist phases")

    occupied: dict[Slot, list[Fraction]] = {}
    for cur in (cc, dd):
        for k in range(len(cur.steps)):
            occupied.setdefault(cur.transition_edge(k), []).append(cur.pos[k])
    eps: dict[Slot, Fraction] = {}
    for edge, ps in occupied.items():
        qs = sorted(ps)
        gap = min([qs[0], 1 - qs[-1]] + [b - a for a, b in zip(qs, qs[1:])])
        eps[edge] = gap / 2

    def spiral_pos(i: int, a_x: Fraction) -> Fraction:
        factor = slope * (-1 + 2 * ((Fraction(i + 1) - a_x) % nc) / nc)
        edge = cc.transition_edge(i)
        return cc.pos[i] + factor * tau[i] * eps[edge]

    new_steps: list = []
    new_pos: list[Fraction] = []
    for k, (t, e_in, e_out) in enumerate(dd.steps):
        hits = sorted(per_step.get(k, []))
        if not hits:
            new_steps.append((t, e_in, e_out))
            new_pos.append(dd.pos[k])
            continue
        cur_entry = e_in
        dP = slot_point(e_in, dd.entry_position(k))
        dQ = slot_point(e_out, dd.exit_position(k))
        ddir = (dQ[0] - dP[0], dQ[1] - dP[1])
        for (t_d, j, t_c) in hits:
            a_x = j + t_c
            _, _, cdir = _chord_dir(cc, j)
            raw = _cross2(cdir, ddir)
            assert raw != 0
            arrived_geo = 1 if raw > 0 else -1
            arrived_r = arrived_geo * orient[j] * g0
            sigma = arrived_r * slope
            ct, c_ein, c_eout = cc.steps[j]
            assert ct == t
            if sigma > 0:
                new_steps.append((t, cur_entry, c_eout))
                new_pos.append(spiral_pos(j, a_x))
                idx = (j + 1) % nc
                while idx != j:
                    ct2, a2, b2 = cc.steps[idx]
                    new_steps.append((ct2, a2, b2))
                    new_pos.append(spiral_pos(idx, a_x))
                    idx = (idx + 1) % nc
                cur_entry = c_ein
            else:
                new_steps.append((t, cur_entry, c_ein))
                new_pos.append(spiral_pos((j - 1) % nc, a_x))
                idx = (j - 1) % nc
                while idx != j:
                    ct2, a2, b2 = cc.steps[idx]
                    new_steps.append((ct2, b2, a2))
                    new_pos.append(spiral_pos((idx - 1) % nc, a_x))
                    idx = (idx - 1) % nc
                cur_entry = c_eout
        new_steps.append((t, cur_entry, e_out))
        new_pos.append(dd.pos[k])
    twisted = Curve(surface, new_steps, new_pos, check=False)
    twisted.validate()
    out = reduce_curve(twisted)
    if out is None:
        raise AssertionError("twist produced a trivial curve")
    return out
