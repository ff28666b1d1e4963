"""A deliberately naive HOMFLY evaluator used as a cross-check.

It shares nothing with :mod:`knotgenus.homfly` beyond the polynomial type:
no Reidemeister simplification, no memo, no splitting into pieces.  Base
points sit on the largest arc label of each component and components are
stacked in decreasing order of that label, so the crossings it resolves
differ from the main engine's choices.  Cost is exponential; keep inputs to
about eight crossings.
"""

from __future__ import annotations

from .diagram import Diagram
from .poly import DELTA, ONE, LaurentPoly2

__all__ = ["oracle_homfly"]

MAX_ORACLE_CROSSINGS = 10


def _walk(crossings):
    """Components as lists of ``(arc, crossing, slot_in)`` in travel order."""
    enter = {}
    for idx, (a, b, c, d, s) in enumerate(crossings):
        enter[a] = (idx, 0)
        enter[d if s > 0 else b] = (idx, 3 if s > 0 else 1)
    done = set()
    comps = []
    for top in sorted(enter, reverse=True):
        if top in done:
            continue
        comp = []
        arc = top
        while arc not in done:
            done.add(arc)
            idx, k = enter[arc]
            comp.append((arc, idx, k))
            arc = crossings[idx][(k + 2) % 4]
        comps.append(comp)
    return comps


def _merge(crossings, pairs_by_index, drop):
    """Relabel after deleting crossing ``drop`` and merging slot pairs."""
    a = crossings[drop]
    ren = {}

    def r(x):
        while ren.get(x, x) != x:
            x = ren[x]
        return x

    for p, q in pairs_by_index:
        x, y = r(a[p]), r(a[q])
        if x != y:
            ren[max(x, y)] = min(x, y)

    rest = [c for j, c in enumerate(crossings) if j != drop]
    new = [(r(c[0]), r(c[1]), r(c[2]), r(c[3]), c[4]) for c in rest]
    used = {x for c in new for x in c[:4]}
    lost = {r(x) for x in a[:4]} - used
    return new, len(lost)


def _eval(crossings, loops):
    if not crossings:
        return _delta(loops - 1)
    comps = _walk(crossings)
    seen = set()
    bad = None
    for comp in comps:
        for _, idx, k in comp:
            if idx in seen:
                continue
            seen.add(idx)
            if k == 0:  # entering along the under-strand
                bad = idx
                break
        if bad is not None:
            break
    if bad is None:
        return _delta(len(comps) + loops - 1)
    a, b, c, d, s = crossings[bad]
    flipped = list(crossings)
    flipped[bad] = (d, a, b, c, -1) if s > 0 else (b, c, d, a, 1)
    pairs = ((0, 1), (3, 2)) if s > 0 else ((0, 3), (1, 2))
    rest, extra = _merge(crossings, pairs, bad)
    p_switch = _eval(flipped, loops)
    p_smooth = _eval(rest, loops + extra)
    if s > 0:
        return p_switch.shift(dv=2) + p_smooth.shift(dv=1, dz=1)
    return p_switch.shift(dv=-2) + p_smooth.shift(dv=-1, dz=1, coeff=-1)


def _delta(n):
    out = ONE
    for _ in range(n):
        out = out * DELTA
    return out


def oracle_homfly(d: Diagram) -> LaurentPoly2:
    if d.crossing_count > MAX_ORACLE_CROSSINGS:
        raise ValueError(f"oracle refuses {d.crossing_count} crossings (limit {MAX_ORACLE_CROSSINGS})")
    crossings = [tuple(cr.slots) + (cr.sign,) for cr in d.crossings]
    return _eval(crossings, d.free_loops)
