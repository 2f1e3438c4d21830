"""Reduction moves and canonical representatives.

``reduce_curve`` returns a minimal-weight representative (or None when the
curve vanishes entirely: vertex links and edge bigons collapse to nothing,
which only trivial curves do).  ``canonical_curve`` additionally walks the
weight-neutral push orbit and returns the representative with the smallest
encoding, so isotopic curves produced by different routes compare equal.

Neither confluence nor completeness of the move set is assumed; both are
checked against the cut-based isotopy oracle in the test suite.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .curves import Curve, Fan, cut_corner, vertex_fans
from .surface import CombinatorialSurface, Slot


# -- backtracks ----------------------------------------------------------------


def _innermost_backtrack(c: Curve) -> Optional[int]:
    n = len(c.steps)
    cands = [k for k, (_, a, b) in enumerate(c.steps) if a == b]
    for k in cands:
        prev = (k - 1) % n
        edge = c.transition_edge(prev)
        lo, hi = sorted((c.pos[prev], c.pos[k]))
        blocked = any(
            j not in (prev, k) and c.transition_edge(j) == edge and lo < c.pos[j] < hi
            for j in range(n))
        if not blocked:
            return k
    if cands:
        raise AssertionError("backtracks present but none innermost")
    return None


def _remove_backtrack(c: Curve, k: int) -> Optional[Curve]:
    n = len(c.steps)
    if n == 2:
        return None
    prev, nxt = (k - 1) % n, (k + 1) % n
    t_prev, a_in, _ = c.steps[prev]
    t_next, _, b_out = c.steps[nxt]
    assert t_prev == t_next, "backtrack neighbours must share a triangle"
    steps, pos = [], []
    for j in range(n):
        if j in (k, nxt):
            continue
        if j == prev:
            steps.append((t_prev, a_in, b_out))
            pos.append(c.pos[nxt])
        else:
            steps.append(c.steps[j])
            pos.append(c.pos[j])
    return Curve(c.surface, steps, pos, check=False)


def remove_backtracks(c: Curve) -> Optional[Curve]:
    while True:
        k = _innermost_backtrack(c)
        if k is None:
            return c
        nxt = _remove_backtrack(c, k)
        if nxt is None:
            return None
        c = nxt


# -- vertex pushes -------------------------------------------------------------


class _Run:
    """A maximal arc of the curve hugging one interior vertex."""

    __slots__ = ("start", "length", "fan", "positions", "delta", "whole")

    def __init__(self, start: int, length: int, fan: Fan, positions: list[int], whole: bool):
        self.start = start
        self.length = length
        self.fan = fan
        self.positions = positions
        self.whole = whole
        self.delta = len(fan.corners) - 2 * length


def _continues(c: Curve, where, a: int, b: int) -> bool:
    """Does step b extend the vertex hug of step a along the fan?"""
    fa, pa = where[a]
    fb, pb = where[b]
    if fa is None or fa != fb:
        return False
    fans, _ = vertex_fans(c.surface)
    fan = fans[fa]
    d = len(fan.corners)
    delta = (pb - pa) % d
    edge = c.transition_edge(a)
    if delta == 1 and fan.edges[pa][0] == edge:
        return True
    if delta == d - 1 and fan.edges[pb][0] == edge:
        return True
    return False


def _find_runs(c: Curve) -> list[_Run]:
    fans, locate = vertex_fans(c.surface)
    n = len(c.steps)
    where = []
    for st in c.steps:
        fi, p = locate[cut_corner(st)]
        where.append((fi, p) if fans[fi].cyclic else (None, p))
    cont = [_continues(c, where, k, (k + 1) % n) for k in range(n)]
    if all(cont) and where[0][0] is not None:
        fan = fans[where[0][0]]
        return [_Run(0, n, fan, [w[1] for w in where], True)]
    runs = []
    for s0 in range(n):
        if where[s0][0] is None or cont[(s0 - 1) % n]:
            continue
        ln = 1
        while ln < n and cont[(s0 + ln - 1) % n]:
            ln += 1
        fan = fans[where[s0][0]]
        ps = [where[(s0 + i) % n][1] for i in range(ln)]
        runs.append(_Run(s0, ln, fan, ps, False))
    return runs


def _run_geometry(c: Curve, run: _Run):
    """(corner_seq, edge_idx_seq) of the complementary arc, or None.

    edge_idx_seq has one more entry than corner_seq; its first and last
    entries are the run's entry and exit fan edges.
    """
    fan, d = run.fan, len(run.fan.corners)
    ps = run.positions
    n = len(c.steps)
    entry_edge = c.transition_edge((run.start - 1) % n)
    exit_edge = c.transition_edge((run.start + run.length - 1) % n)
    for ascending in (True, False):
        pts = ps if ascending else list(reversed(ps))
        if run.length > 1 and (pts[1] - pts[0]) % d != 1:
            continue
        lo, hi = pts[0], pts[-1]
        if fan.edges[(lo - 1) % d][0] != (entry_edge if ascending else exit_edge):
            continue
        if fan.edges[hi % d][0] != (exit_edge if ascending else entry_edge):
            continue
        comp = []
        q = (lo - 1) % d
        while q != hi % d:
            comp.append(q)
            q = (q - 1) % d
        # comp descends lo-1, lo-2, ..., hi+1; arcs traverse it from the
        # entry side: ascending runs enter at lo-1, descending at hi+1
        if ascending:
            corner_seq = comp
            edge_idx = [(lo - 1) % d] + [(q - 1) % d for q in comp]
        else:
            corner_seq = list(reversed(comp))
            edge_idx = [hi % d] + [q % d for q in corner_seq]
        return corner_seq, edge_idx
    return None


def _extreme_ok(c: Curve, k: int, edge: Slot, v_end: int) -> bool:
    p = c.pos[k]
    for j in range(len(c.steps)):
        if j == k or c.transition_edge(j) != edge:
            continue
        if (v_end == 0 and c.pos[j] < p) or (v_end == 1 and c.pos[j] > p):
            return False
    return True


def _run_is_innermost(c: Curve, run: _Run, geom) -> bool:
    """The run's crossings must all be nearest the vertex on their edges."""
    fan, d = run.fan, len(run.fan.corners)
    n = len(c.steps)
    corner_seq, comp_edge_idx = geom
    # fan edges crossed by the run itself, entry first
    ps = run.positions
    ascending = run.length == 1 or (ps[1] - ps[0]) % d == 1
    if ascending and fan.edges[(ps[0] - 1) % d][0] != c.transition_edge((run.start - 1) % n):
        ascending = False
    if ascending:
        run_edge_idx = [(ps[0] - 1) % d] + [p % d for p in ps]
    else:
        run_edge_idx = [ps[0] % d] + [(p - 1) % d for p in ps]
    trans = [(run.start - 1) % n] + [(run.start + i) % n for i in range(run.length)]
    seen = set()
    for k, ei in zip(trans, run_edge_idx):
        edge, v_end = fan.edges[ei]
        if c.transition_edge(k) != edge:
            return False
        if edge in seen:
            return False  # wrapping arc, never innermost
        seen.add(edge)
        if not _extreme_ok(c, k, edge, v_end):
            return False
    return True


def _slot_for_edge(surface: CombinatorialSurface, corner, edge: Slot) -> int:
    t, cc = corner
    for e in (cc, (cc + 2) % 3):
        if surface.canonical_slot((t, e)) == edge:
            return e
    raise AssertionError("fan edge not incident to corner")


def _near_position(c: Curve, keep: list[int], edge: Slot, v_end: int) -> Fraction:
    ps = [c.pos[k] for k in keep if c.transition_edge(k) == edge]
    if v_end == 0:
        return (min(ps) if ps else Fraction(1)) / 2
    return ((max(ps) if ps else Fraction(0)) + 1) / 2


def _merge_flags(c: Curve, run: _Run, geom) -> tuple[bool, bool]:
    """Whether the entry/exit transitions are absorbed by the push.

    When the step before (after) the run already lives in the first (last)
    complementary fan triangle, on the near side of the entry (exit) edge,
    the pushed strand no longer crosses that edge: the chords merge and the
    weight drops by an extra unit per absorbed end.
    """
    corner_seq, edge_idx = geom
    fan = run.fan
    n = len(c.steps)
    prev = c.steps[(run.start - 1) % n]
    nxt = c.steps[(run.start + run.length) % n]
    c0 = fan.corners[corner_seq[0]]
    e_in0 = _slot_for_edge(c.surface, c0, fan.edges[edge_idx[0]][0])
    c1 = fan.corners[corner_seq[-1]]
    e_out1 = _slot_for_edge(c.surface, c1, fan.edges[edge_idx[-1]][0])
    merge_entry = (prev[0], prev[2]) == (c0[0], e_in0)
    merge_exit = (nxt[0], nxt[1]) == (c1[0], e_out1)
    return merge_entry, merge_exit


def push_delta(c: Curve, run: _Run, geom) -> int:
    me, mx = _merge_flags(c, run, geom)
    return len(run.fan.corners) - 2 * run.length - int(me) - int(mx)


def apply_push(c: Curve, run: _Run) -> Curve:
    """Push the run to the other side of its vertex."""
    assert not run.whole
    geom = _run_geometry(c, run)
    if geom is None:
        raise AssertionError("push applied to a non-hugging run")
    corner_seq, edge_idx = geom
    fan = run.fan
    n = len(c.steps)
    exit_t = (run.start + run.length - 1) % n
    prev_idx = (run.start - 1) % n
    next_idx = (run.start + run.length) % n
    internal_old = set((run.start + i) % n for i in range(run.length - 1))
    keep_trans = [k for k in range(n) if k not in internal_old]
    chords = []
    for i, q in enumerate(corner_seq):
        corner = fan.corners[q]
        e_in = _slot_for_edge(c.surface, corner, fan.edges[edge_idx[i]][0])
        e_out = _slot_for_edge(c.surface, corner, fan.edges[edge_idx[i + 1]][0])
        chords.append((corner[0], e_in, e_out))
    new_pos = []
    for i in range(len(corner_seq) - 1):
        edge, v_end = fan.edges[edge_idx[i + 1]]
        new_pos.append(_near_position(c, keep_trans, edge, v_end))
    merge_entry, merge_exit = _merge_flags(c, run, geom)
    prev = c.steps[prev_idx]
    nxt = c.steps[next_idx]
    if merge_entry:
        chords[0] = (chords[0][0], prev[1], chords[0][2])
    if merge_exit:
        chords[-1] = (chords[-1][0], chords[-1][1], nxt[2])
    last_pos = c.pos[next_idx] if merge_exit else c.pos[exit_t]
    both_into_one = merge_entry and merge_exit and prev_idx == next_idx
    start_out = (next_idx + 1) % n if merge_exit else next_idx
    stop_out = prev_idx if merge_entry else (prev_idx + 1) % n  # exclusive
    steps: list = []
    pos: list[Fraction] = []
    if not both_into_one:
        k = start_out
        while k != stop_out:
            steps.append(c.steps[k])
            pos.append(c.pos[k])
            k = (k + 1) % n
    steps.extend(chords)
    pos.extend(new_pos)
    pos.append(last_pos)
    assert len(pos) == len(steps), (len(pos), len(steps))
    return Curve(c.surface, steps, pos, check=False)


def _push_candidate(c: Curve, run: _Run):
    if run.whole:
        return None
    geom = _run_geometry(c, run)
    if geom is None or not _run_is_innermost(c, run, geom):
        return None
    return geom


def _reducing_run(c: Curve) -> Optional[_Run]:
    best = None
    best_delta = 0
    for run in _find_runs(c):
        if run.whole:
            return run
        geom = _push_candidate(c, run)
        if geom is None:
            continue
        delta = push_delta(c, run, geom)
        if delta < best_delta:
            best, best_delta = run, delta
    return best


def reduce_curve(c: Curve, neutral_search: bool = True, cap: int = 64) -> Optional[Curve]:
    cur = c
    while True:
        cur = remove_backtracks(cur)
        if cur is None:
            return None
        run = _reducing_run(cur)
        if run is not None:
            if run.whole:
                return None
            cur = apply_push(cur, run)
            continue
        if not neutral_search:
            return cur.canonicalize()
        start = cur.canonicalize()
        seen = {start.canonical_key(): start}
        frontier = [start]
        escape = None
        while frontier and len(seen) < cap and escape is None:
            nxt = []
            for state in frontier:
                for r in _find_runs(state):
                    if r.whole:
                        continue
                    geom = _push_candidate(state, r)
                    if geom is None or push_delta(state, r, geom) != 0:
                        continue
                    moved = apply_push(state, r)
                    if _reducing_run(moved) is not None:
                        escape = moved
                        break
                    canon = moved.canonicalize()
                    key = canon.canonical_key()
                    if key not in seen:
                        seen[key] = canon
                        nxt.append(canon)
                if escape is not None:
                    break
            frontier = nxt
        if escape is not None:
            cur = escape
            continue
        return seen[min(seen)]


def canonical_curve(c: Curve) -> Optional[Curve]:
    """Minimal-weight, lexicographically least representative (None: trivial)."""
    return reduce_curve(c, neutral_search=True)
