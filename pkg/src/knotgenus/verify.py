"""The acceptance battery: every numeric claim checked end to end.

Each criterion returns a :class:`CriterionResult` carrying sub-check lines.
Output contains no timings so that repeated runs print identical bytes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import constructors as C
from .bounds import DEGRADED_ROOT, LEDGER_CHAIN, UPPER, LedgerMismatch, ledger_check
from .diagram import (
    disjoint_union,
    faces,
    is_alternating,
    is_connected_projection,
    isomorphic,
    mirror,
    nugatory_crossings,
    seifert_circles,
    validate,
)
from .homfly import BudgetExceeded, HomflyEngine, default_budget, morton_bound
from .oracle import oracle_homfly
from .poly import ONE

__all__ = ["CriterionResult", "CRITERIA", "run_suite", "format_table", "random_diagrams", "skein_triple_holds"]

PASS, FAIL, SKIP = "PASS", "FAIL", "SKIPPED-BUDGET"


@dataclass
class CriterionResult:
    number: int | str
    title: str
    claim: str
    status: str = PASS
    lines: list[str] = field(default_factory=list)

    def check(self, ok: bool, text: str):
        self.lines.append(f"{'ok ' if ok else 'BAD'} {text}")
        if not ok:
            self.status = FAIL
        return ok

    def skip(self, text: str):
        self.lines.append(f"--- {text}")
        if self.status == PASS:
            self.status = SKIP

    @property
    def passed(self) -> bool:
        return self.status != FAIL

    def to_json(self):
        return {
            "criterion": self.number,
            "title": self.title,
            "claim": self.claim,
            "status": self.status,
            "checks": list(self.lines),
        }


class _Ctx:
    def __init__(self, budget):
        self.budget = default_budget() if budget is None else budget
        self.memo = {}
        self.reports = []

    def homfly(self, d, budget=None):
        engine = HomflyEngine(self.budget if budget is None else budget, memo=self.memo)
        p = engine(d)
        bound = morton_bound(d)
        self.reports.append((p.z_degree(), bound))
        return p


def _c1(ctx):
    r = CriterionResult(1, "unknot axiom", "P(unknot) = 1")
    for name, d in (("crossingless unknot", C.unknot()), ("positive kink", C.kink(1)), ("negative kink", C.kink(-1))):
        p = ctx.homfly(d)
        r.check(p == ONE, f"{name}: P = {p}")
    return r


def _c2(ctx):
    r = CriterionResult(2, "trefoil baseline", "deg_z P(T(2,3)) = 2 = c - s + 1")
    d = C.torus2(3)
    p = ctx.homfly(d)
    r.check(p.z_degree() == 2, f"z-degree {p.z_degree()}")
    r.check(morton_bound(d) == 2, f"Morton bound {morton_bound(d)}")
    o = oracle_homfly(d)
    r.check(o == p, f"engine {p} equals brute-force oracle {o}")
    return r


def _c3(ctx):
    r = CriterionResult(3, "flat double of the trefoil", "deg_z P(D(T(2,3), n)) = 5 = 2c - 1")
    for n in (-1, 0, 1, 2):
        d = C.flat_double(C.torus2(3), n)
        try:
            p = ctx.homfly(d)
        except BudgetExceeded:
            r.skip(f"n={n}: budget of {ctx.budget} nodes exceeded")
            continue
        r.check(p.z_degree() == 5, f"n={n}: {d.crossing_count} crossings, z-degree {p.z_degree()}")
    return r


def _c4(ctx):
    r = CriterionResult(4, "Whitehead double of the trefoil", "deg_z P(W(T(2,3), 0, +)) = 6 = 2c")
    d = C.whitehead_double(C.torus2(3), 0, "+")
    r.check(d.component_count == 1, "the double is a knot")
    try:
        p = ctx.homfly(d)
        r.check(p.z_degree() == 6, f"{d.crossing_count} crossings, z-degree {p.z_degree()}")
    except BudgetExceeded:
        r.skip(f"budget of {ctx.budget} nodes exceeded")
    return r


CENSUS_KNOTS = (("T(2,3)", lambda: C.torus2(3)), ("P(2,1,1)", lambda: C.pretzel((2, 1, 1))), ("P(3,1,1)", lambda: C.pretzel((3, 1, 1))))


def _c5(ctx):
    r = CriterionResult(5, "canonical surface census", "hidden-twist W(K,0,+): s = 2c+3, bands = 4c+2, genus = c")
    for name, make in CENSUS_KNOTS:
        k = make()
        c = k.crossing_count
        w = C.whitehead_double(k, 0, "+", hidden=True)
        sd = seifert_circles(w)
        r.check(
            sd.circle_count == 2 * c + 3 and w.crossing_count == 4 * c + 2 and sd.canonical_genus == c,
            f"{name} (c={c}): disks {sd.circle_count}, bands {w.crossing_count}, genus {sd.canonical_genus}",
        )
    return r


def _c6(ctx):
    r = CriterionResult(6, "Whitehead doubles of alternating pretzels", "deg_z P(W(P(k),0,+)) = 2(k1+...+kn)")
    for twists, factor in (((2, 1, 1), 1), ((2, 3), 10)):
        k = C.pretzel(twists)
        c = sum(twists)
        w = C.whitehead_double(k, 0, "+")
        label = "P(" + ",".join(map(str, twists)) + ")"
        try:
            p = ctx.homfly(w, budget=ctx.budget * factor)
        except BudgetExceeded:
            r.skip(f"{label}: budget of {ctx.budget * factor} nodes exceeded")
            continue
        r.check(p.z_degree() == 2 * c, f"{label}: {w.crossing_count}-crossing double, z-degree {p.z_degree()} vs 2c = {2 * c}")
    return r


def _c7(ctx):
    r = CriterionResult(7, "degree ledger", "labeled skein tree gives K_h = Exact(2c-2), root = Exact(2c-1)")
    for c in (3, 4, 10):
        try:
            t = ledger_check(c)
        except LedgerMismatch as exc:
            r.check(False, str(exc))
            continue
        offsets = ",".join(f"{n}:{t.bounds[n].value - 2 * c:+d}" for n, _, _ in LEDGER_CHAIN)
        r.check(True, f"c={c}: root {t.root}; offsets {offsets}")
    for c in (3, 4, 10):
        try:
            t = ledger_check(c, "degraded")
            want = (UPPER, 2 * c + DEGRADED_ROOT[1])
            r.check((t.root.kind, t.root.value) == want, f"c={c}, lower K_8: root {t.root}")
        except LedgerMismatch as exc:
            r.check(False, str(exc))
    return r


# --- criterion 8 ------------------------------------------------------------


def _small_random(rng, max_crossings):
    kind = rng.randrange(6)
    if kind == 0:
        return C.torus2(rng.randint(2, max_crossings))
    if kind == 1:
        bands = rng.randint(2, 4)
        twists = [rng.choice((1, 2, 3, -1, -2)) for _ in range(bands)]
        while sum(abs(t) for t in twists) > max_crossings:
            twists[rng.randrange(bands)] = rng.choice((1, -1))
        if sum(abs(t) for t in twists) > max_crossings:
            twists = twists[:2]
        return C.pretzel(tuple(twists))
    if kind == 2:
        length = rng.choice((1, 3, 5))
        word = [rng.randint(1, 3) for _ in range(length)]
        while sum(word) > max_crossings:
            word[word.index(max(word))] -= 1
        return C.four_plat(tuple(word))
    if kind == 3:
        base = C.torus2(rng.randint(2, max(2, max_crossings - 2)))
        return C.twist_replace(base, rng.randrange(base.crossing_count))
    if kind == 4:
        a = C.torus2(rng.randint(2, max(2, max_crossings // 2)))
        b = C.four_plat((rng.randint(1, 2), 1, 1)) if rng.random() < 0.5 else C.kink(rng.choice((1, -1)))
        return disjoint_union(a, b)
    return C.half_to_full(C.torus2(rng.randint(2, max_crossings - 1)), 0)


def random_diagrams(count: int, seed: int = 0, max_crossings: int = 8):
    """Reproducible random diagrams: constructions with switched crossings."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        d = _small_random(rng, max_crossings)
        if not 0 < d.crossing_count <= max_crossings:
            continue
        for i in range(d.crossing_count):
            if rng.random() < 0.35:
                d = C.switch(d, i)
        if rng.random() < 0.15 and d.crossing_count > 1:
            d = C.smooth(d, rng.randrange(d.crossing_count))
        if rng.random() < 0.5:
            d = mirror(d)
        if d.crossing_count == 0 or validate(d):
            continue
        out.append(d)
    return out


def skein_triple_holds(d, i, homfly) -> bool:
    """``v^-1 P(K+) - v P(K-) = z P(K0)`` at crossing ``i``."""
    other = C.switch(d, i)
    plus, minus = (d, other) if d.crossings[i].sign > 0 else (other, d)
    p_plus, p_minus, p_zero = homfly(plus), homfly(minus), homfly(C.smooth(d, i))
    return p_plus.shift(dv=-1) - p_minus.shift(dv=1) == p_zero.shift(dz=1)


def _examples():
    ex = [(f"T(2,{n})", C.torus2(n)) for n in range(2, 7)]
    for tw in ((2, 1, 1), (3, 1, 1), (2, 3), (1, 1, 1, 1), (3, 3, -2), (3, -3, 2), (2, -1, 3)):
        ex.append(("P(" + ",".join(map(str, tw)) + ")", C.pretzel(tw)))
    for w in ((1, 1, 1), (2, 1, 1), (3, 1, 1), (2, 2, 2), (1, 1, 1, 1, 1)):
        ex.append(("4-plat(" + ",".join(map(str, w)) + ")", C.four_plat(w)))
    ex.append(("D(T(2,3),0)", C.flat_double(C.torus2(3), 0)))
    ex.append(("D(T(2,3),1)", C.flat_double(C.torus2(3), 1)))
    ex.append(("W(T(2,3),0,+)", C.whitehead_double(C.torus2(3), 0, "+")))
    ex.append(("W(T(2,3),0,-)", C.whitehead_double(C.torus2(3), 0, "-")))
    ex.append(("W(T(2,3),1,+) hidden", C.whitehead_double(C.torus2(3), 1, "+", hidden=True)))
    return ex


def _count_formulas():
    rows = []
    for n in range(2, 7):
        rows.append((f"T(2,{n})", C.torus2(n).crossing_count, n))
    for tw in ((2, 1, 1), (3, 3, -2), (1, -2, 3, 1)):
        rows.append((f"P{tw}", C.pretzel(tw).crossing_count, sum(abs(k) for k in tw)))
    for w in ((1, 1, 1), (3, 1, 1), (1, 2, 1, 1, 1)):
        rows.append((f"4-plat{w}", C.four_plat(w).crossing_count, sum(w)))
    k = C.torus2(3)
    for n in (-1, 0, 2):
        rows.append((f"D(T(2,3),{n})", C.flat_double(k, n).crossing_count, 4 * 3 + 2 * abs(n)))
        rows.append((f"W(T(2,3),{n},+)", C.whitehead_double(k, n, "+").crossing_count, 4 * 3 + 2 * abs(n) + 2))
    rows.append(("twist_replace(T(2,4))", C.twist_replace(C.torus2(4), 1).crossing_count, 6))
    rows.append(("half_to_full(T(2,4))", C.half_to_full(C.torus2(4), 1).crossing_count, 5))
    return rows


def _c8(ctx, random_count=200, seed=2024):
    r = CriterionResult(8, "property suite", "skein, Morton, mirror, Euler, counts, twists, deflation, clasp site")
    # skein consistency, with the oracle as a second opinion
    ds = random_diagrams(random_count, seed)
    engine = HomflyEngine(ctx.budget, memo=ctx.memo)
    rng = random.Random(seed + 1)
    bad_triples = bad_oracle = 0
    for d in ds:
        i = rng.randrange(d.crossing_count)
        if not skein_triple_holds(d, i, engine):
            bad_triples += 1
        p = ctx.homfly(d)
        if p != oracle_homfly(d):
            bad_oracle += 1
    r.check(bad_triples == 0, f"skein relation on {len(ds)} random diagrams: {bad_triples} failures")
    r.check(bad_oracle == 0, f"engine vs oracle on {len(ds)} random diagrams: {bad_oracle} disagreements")

    ex = _examples()
    mirror_bad = []
    for name, d in ex:
        p, q = ctx.homfly(d), ctx.homfly(mirror(d))
        if q != p.substitute_mirror() or q.z_degree() != p.z_degree():
            mirror_bad.append(name)
    r.check(not mirror_bad, f"mirror invariance of z-degree on {len(ex)} constructions {mirror_bad or ''}".rstrip())

    over = [(m, b) for m, b in ctx.reports if m > b]
    r.check(not over, f"Morton inequality on all {len(ctx.reports)} computed polynomials")

    euler_bad = []
    connected = [(n, d) for n, d in ex if is_connected_projection(d)]
    for name, d in connected:
        if faces(d).count != d.crossing_count + 2:
            euler_bad.append(name)
    r.check(not euler_bad, f"f = c + 2 on {len(connected)} connected constructions {euler_bad or ''}".rstrip())

    rows = _count_formulas()
    wrong = [f"{n}: {got} != {want}" for n, got, want in rows if got != want]
    r.check(not wrong, f"crossing-count formulas on {len(rows)} constructions {wrong or ''}".rstrip())

    twist_bad = []
    for n in range(2, 7):
        base = C.torus2(n)
        for i in range(n):
            t = C.twist_replace(base, i)
            if nugatory_crossings(t) or not is_alternating(t) or t.crossing_count != n + 2:
                twist_bad.append(f"T(2,{n})@{i}")
    r.check(not twist_bad, f"twist_replace on T(2,n), n <= 6, keeps diagrams alternating and nugatory-free {twist_bad or ''}".rstrip())

    for word in ((1, 1, 1), (3, 1, 1), (2, 1, 1), (1, 1, 1, 1, 1)):
        path = C.deflation_path(word)
        ok = isomorphic(C.replay(word, path), C.four_plat(word), oriented=False)
        if path:
            ok = ok and isomorphic(path[-1][0], C.four_plat((1, 1, 1)), oriented=False)
        r.check(ok, f"deflation round trip for {word}: {len(path)} moves")

    k = C.torus2(3)
    degs = []
    for site in (1, 2, 3):
        w = C.whitehead_double(k, 0, "+", site=site)
        degs.append(ctx.homfly(w).z_degree())
    r.check(len(set(degs)) == 1 and degs[0] == 6, f"clasp site independence on W(T(2,3),0,+): z-degrees {degs}")
    return r


CRITERIA = (_c1, _c2, _c3, _c4, _c5, _c6, _c7, _c8)


def _stretch(ctx):
    r = CriterionResult("S", "stretch: non-alternating pretzels", "deg_z P(W(K,0,+)) = 2c - 2 for P(3,3,-2), P(3,-3,2)")
    for tw in ((3, 3, -2), (3, -3, 2)):
        w = C.whitehead_double(C.pretzel(tw), 0, "+")
        try:
            p = ctx.homfly(w, budget=ctx.budget * 10)
        except BudgetExceeded:
            r.skip(f"P{tw}: budget exceeded")
            continue
        c = sum(abs(k) for k in tw)
        r.check(p.z_degree() == 2 * c - 2, f"P{tw}: {w.crossing_count} crossings, z-degree {p.z_degree()}")
    return r


def run_suite(budget=None, stretch=False, only=None, random_count=200):
    ctx = _Ctx(budget)
    results = []
    for k, fn in enumerate(CRITERIA, start=1):
        if only and k not in only:
            continue
        results.append(fn(ctx, random_count) if fn is _c8 else fn(ctx))
    if stretch:
        results.append(_stretch(ctx))
    return results


def format_table(results) -> str:
    out = []
    for r in results:
        out.append(f"[{r.status}] {r.number}. {r.title}: {r.claim}")
        out.extend(f"    {line}" for line in r.lines)
    passed = sum(r.status == PASS for r in results)
    skipped = sum(r.status == SKIP for r in results)
    failed = sum(r.status == FAIL for r in results)
    out.append(f"summary: {passed} passed, {skipped} skipped, {failed} failed")
    return "\n".join(out) + "\n"
