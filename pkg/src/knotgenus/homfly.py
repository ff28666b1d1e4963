"""HOMFLY polynomials by the skein relation.

Convention: ``v^-1 P(K+) - v P(K-) = z P(K0)`` and ``P(unknot) = 1``.

The recursion works on raw diagrams, tuples of ``(a, b, c, d, sign)``
crossings plus a free-loop count.  Each call simplifies (kinks, parallel
bigons), splits the projection into connected pieces, consults the memo on a
canonical key, and then either recognises a descending diagram (an unlink) or
resolves the first crossing met from below along the base-pointed components.
"""

from __future__ import annotations

import os
from collections import defaultdict
from dataclasses import dataclass

from .diagram import Diagram, DiagramError, raw_canonical_key, seifert_circles, validate, writhe
from .poly import DELTA, ONE, LaurentPoly2

__all__ = [
    "BudgetExceeded",
    "SkeinStats",
    "HomflyEngine",
    "homfly",
    "z_degree",
    "morton_bound",
    "InvariantReport",
    "invariant_report",
    "raw_switch",
    "raw_smooth",
    "simplify",
    "DEFAULT_BUDGET",
]

DEFAULT_BUDGET = 5_000_000


def default_budget() -> int:
    env = os.environ.get("KNOT_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


class BudgetExceeded(RuntimeError):
    """The skein recursion expanded more nodes than allowed."""

    def __init__(self, budget, stats):
        self.budget = budget
        self.stats = stats
        super().__init__(f"skein budget of {budget} nodes exceeded ({stats})")


@dataclass
class SkeinStats:
    nodes: int = 0
    memo_hits: int = 0
    descending_leaves: int = 0
    kinks_removed: int = 0
    bigons_removed: int = 0

    def __str__(self):
        return (
            f"nodes={self.nodes} memo_hits={self.memo_hits} descending={self.descending_leaves} "
            f"kinks={self.kinks_removed} bigons={self.bigons_removed}"
        )


# --- raw diagram surgery ----------------------------------------------------


def _remove(crossings, loops, removals):
    """Delete crossings, joining arcs as given.

    ``removals`` maps a crossing index to the slot pairs whose arcs merge.
    """
    parent = {}

    def find(x):
        while parent.get(x, x) != x:
            x = parent[x]
        return x

    def union(x, y):
        x, y = find(x), find(y)
        if x != y:
            if x < y:
                parent[y] = x
            else:
                parent[x] = y

    removed = []
    for i, pairs in removals.items():
        c = crossings[i]
        removed.extend(c[:4])
        for p, q in pairs:
            union(c[p], c[q])
    kept = []
    for i, c in enumerate(crossings):
        if i in removals:
            continue
        kept.append((find(c[0]), find(c[1]), find(c[2]), find(c[3]), c[4]))
    live = {x for c in kept for x in c[:4]}
    dead = {find(x) for x in removed} - live
    return tuple(kept), loops + len(dead)


_PASS = ((0, 2), (1, 3))


def raw_switch(crossings, i):
    crossings = list(crossings)
    a, b, c, d, s = crossings[i]
    crossings[i] = (d, a, b, c, -1) if s > 0 else (b, c, d, a, 1)
    return tuple(crossings)


def raw_smooth(crossings, loops, i):
    s = crossings[i][4]
    pairs = ((0, 1), (3, 2)) if s > 0 else ((0, 3), (1, 2))
    return _remove(crossings, loops, {i: pairs})


def _find_kink(crossings):
    for i, c in enumerate(crossings):
        if c[0] == c[1] or c[1] == c[2] or c[2] == c[3] or c[3] == c[0]:
            return i
    return None


def _find_r2(crossings):
    pos = defaultdict(list)
    for i, c in enumerate(crossings):
        for k in range(4):
            pos[c[k]].append((i, k))

    def other(i, k):
        p, q = pos[crossings[i][k]]
        return q if p == (i, k) else p

    for i in range(len(crossings)):
        for k in range(4):
            j, m = other(i, (k + 1) % 4)
            if j == i:
                continue
            if other(j, (m + 1) % 4) == (i, k) and (k + 1) % 2 == m % 2:
                return i, j
    return None


def simplify(crossings, loops, stats=None):
    """Remove kinks and parallel bigons until none remain."""
    while True:
        i = _find_kink(crossings)
        if i is not None:
            crossings, loops = _remove(crossings, loops, {i: _PASS})
            if stats:
                stats.kinks_removed += 1
            continue
        pair = _find_r2(crossings)
        if pair is not None:
            i, j = pair
            crossings, loops = _remove(crossings, loops, {i: _PASS, j: _PASS})
            if stats:
                stats.bigons_removed += 1
            continue
        return crossings, loops


def _pieces(crossings):
    pos = defaultdict(list)
    for i, c in enumerate(crossings):
        for x in c[:4]:
            pos[x].append(i)
    parent = list(range(len(crossings)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in pos.values():
        parent[find(i)] = find(j)
    groups = defaultdict(list)
    for i in range(len(crossings)):
        groups[find(i)].append(crossings[i])
    return [tuple(g) for g in groups.values()]


def _first_ascending(crossings):
    """Index of the first crossing met from below, and the component count.

    Components are taken in order of their least arc label and each is walked
    from that arc.
    """
    heads = {}
    for i, c in enumerate(crossings):
        heads[c[0]] = (i, 0)
        if c[4] > 0:
            heads[c[3]] = (i, 3)
        else:
            heads[c[1]] = (i, 1)
    seen_arc = set()
    seen_cross = set()
    comps = 0
    for start in sorted(heads):
        if start in seen_arc:
            continue
        comps += 1
        x = start
        while x not in seen_arc:
            seen_arc.add(x)
            i, k = heads[x]
            if i not in seen_cross:
                if k % 2 == 0:
                    return i, None
                seen_cross.add(i)
            x = crossings[i][(k + 2) % 4]
    return None, comps


class HomflyEngine:
    """Skein evaluator with a shared memo and a node budget."""

    def __init__(self, budget=None, simplify=True, memo=None):
        self.budget = default_budget() if budget is None else budget
        self.simplify = simplify
        self.memo = {} if memo is None else memo
        self.stats = SkeinStats()

    def __call__(self, d: Diagram) -> LaurentPoly2:
        report = validate(d)
        if report:
            raise DiagramError("invalid diagram: " + "; ".join(report))
        crossings, loops = d.raw()
        return self.raw(crossings, loops)

    def raw(self, crossings, loops=0) -> LaurentPoly2:
        if self.simplify:
            crossings, loops = simplify(crossings, loops, self.stats)
        if not crossings:
            return _delta_power(loops - 1)
        pieces = _pieces(crossings)
        if len(pieces) > 1 or loops:
            out = _delta_power(len(pieces) + loops - 1)
            for piece in pieces:
                out = out * self._connected(piece)
            return out
        return self._connected(crossings)

    def _connected(self, crossings):
        key = raw_canonical_key(crossings)
        hit = self.memo.get(key)
        if hit is not None:
            self.stats.memo_hits += 1
            return hit
        self.stats.nodes += 1
        if self.stats.nodes > self.budget:
            raise BudgetExceeded(self.budget, self.stats)
        i, comps = _first_ascending(crossings)
        if i is None:
            self.stats.descending_leaves += 1
            result = _delta_power(comps - 1)
        else:
            sign = crossings[i][4]
            switched = self.raw(raw_switch(crossings, i), 0)
            smoothed = self.raw(*raw_smooth(crossings, 0, i))
            if sign > 0:
                # P+ = v^2 P- + v z P0
                result = switched.shift(dv=2) + smoothed.shift(dv=1, dz=1)
            else:
                # P- = v^-2 P+ - v^-1 z P0
                result = switched.shift(dv=-2) + smoothed.shift(dv=-1, dz=1, coeff=-1)
        self.memo[key] = result
        return result


_DELTA_POWERS = [ONE]


def _delta_power(n):
    while len(_DELTA_POWERS) <= n:
        _DELTA_POWERS.append(_DELTA_POWERS[-1] * DELTA)
    return _DELTA_POWERS[n]


_SHARED_MEMO: dict = {}


def homfly(d: Diagram, budget=None, engine: HomflyEngine | None = None) -> LaurentPoly2:
    """HOMFLY polynomial of ``d``.

    Raises :class:`BudgetExceeded` when more than ``budget`` skein nodes are
    expanded (memo hits are free).
    """
    engine = engine or HomflyEngine(budget, memo=_SHARED_MEMO)
    return engine(d)


def z_degree(p: LaurentPoly2) -> int:
    return p.z_degree()


def morton_bound(d: Diagram) -> int:
    """``c(D) - s(D) + 1``."""
    return d.crossing_count - seifert_circles(d).circle_count + 1


@dataclass(frozen=True)
class InvariantReport:
    crossing_count: int
    components: int
    seifert_circles: int
    canonical_genus: int
    writhe: int
    homfly: LaurentPoly2
    z_degree: int
    morton_bound: int
    morton_tight: bool
    stats: SkeinStats | None = None

    def to_json(self) -> dict:
        return {
            "crossing_count": self.crossing_count,
            "components": self.components,
            "seifert_circles": self.seifert_circles,
            "canonical_genus": self.canonical_genus,
            "writhe": self.writhe,
            "homfly": self.homfly.to_json(),
            "homfly_text": str(self.homfly),
            "z_degree": self.z_degree,
            "morton_bound": self.morton_bound,
            "morton_tight": self.morton_tight,
        }


def invariant_report(d: Diagram, budget=None) -> InvariantReport:
    engine = HomflyEngine(budget, memo=_SHARED_MEMO)
    p = engine(d)
    seif = seifert_circles(d)
    deg = p.z_degree()
    bound = d.crossing_count - seif.circle_count + 1
    if deg > bound:  # pragma: no cover - would contradict Morton's theorem
        raise AssertionError(f"z-degree {deg} exceeds Morton bound {bound}")
    return InvariantReport(
        crossing_count=d.crossing_count,
        components=d.component_count,
        seifert_circles=seif.circle_count,
        canonical_genus=seif.canonical_genus,
        writhe=writhe(d),
        homfly=p,
        z_degree=deg,
        morton_bound=bound,
        morton_tight=deg == bound,
        stats=engine.stats,
    )
