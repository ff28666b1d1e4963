import random

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from knotgenus import constructors as C
from knotgenus.diagram import DiagramError, disjoint_union, mirror, reverse_components
from knotgenus.homfly import (
    BudgetExceeded,
    HomflyEngine,
    homfly,
    invariant_report,
    morton_bound,
    raw_smooth,
    raw_switch,
    simplify,
)
from knotgenus.oracle import oracle_homfly
from knotgenus.poly import DELTA, ONE, LaurentPoly2
from knotgenus.verify import random_diagrams, skein_triple_holds

TREFOIL = LaurentPoly2({(2, 0): 2, (4, 0): -1, (2, 2): 1})
HOPF = LaurentPoly2({(1, -1): 1, (3, -1): -1, (1, 1): 1})
FIG8 = LaurentPoly2({(-2, 0): 1, (0, 0): -1, (2, 0): 1, (0, 2): -1})


def fresh(d):
    return HomflyEngine(memo={})(d)


def test_unknots():
    assert fresh(C.unknot()) == ONE
    assert fresh(C.kink(1)) == ONE
    assert fresh(C.kink(-1)) == ONE


@pytest.mark.parametrize("k", [2, 3, 4])
def test_unlinks(k):
    assert fresh(C.unlink(k)) == DELTA ** (k - 1)


def test_known_polynomials():
    assert fresh(C.torus2(3)) == TREFOIL
    assert fresh(C.torus2(2)) == HOPF
    assert fresh(C.four_plat((2, 1, 1))) == FIG8
    assert fresh(C.pretzel((2, 1, 1))) == FIG8


def test_engine_without_simplification_agrees():
    for d in (C.torus2(5), C.pretzel((3, 1, 1)), C.four_plat((2, 2, 2)), C.kink(1)):
        assert HomflyEngine(simplify=False, memo={})(d) == fresh(d)


@pytest.mark.parametrize("d", random_diagrams(200, seed=7), ids=lambda d: f"c{d.crossing_count}")
def test_engine_matches_oracle(d):
    assert fresh(d) == oracle_homfly(d)


@pytest.mark.parametrize("seed", range(200))
def test_skein_relation_on_random_diagrams(seed):
    rng = random.Random(seed)
    d = random_diagrams(1, seed=1000 + seed)[0]
    assert skein_triple_holds(d, rng.randrange(d.crossing_count), fresh)


@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.integers(0, 10_000))
def test_mirror_substitution(seed):
    d = random_diagrams(1, seed=seed)[0]
    assert fresh(mirror(d)) == fresh(d).substitute_mirror()


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000), st.integers(0, 10_000))
def test_split_union_multiplies_by_delta(s1, s2):
    a = random_diagrams(1, seed=s1, max_crossings=5)[0]
    b = random_diagrams(1, seed=s2, max_crossings=5)[0]
    assert fresh(disjoint_union(a, b)) == DELTA * fresh(a) * fresh(b)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_morton_inequality(seed):
    d = random_diagrams(1, seed=seed)[0]
    assert fresh(d).z_degree() <= morton_bound(d)


def test_reversing_all_components_keeps_polynomial():
    d = C.torus2(4)
    assert fresh(reverse_components(d, [0, 1])) == fresh(d)
    # reversing one component changes the linking number, hence P
    assert fresh(reverse_components(d, [1])) != fresh(d)


def test_raw_switch_is_involution():
    raw, _ = C.torus2(3).raw()
    assert raw_switch(raw_switch(raw, 1), 1) == raw


def test_smoothing_a_kink_gives_two_loops():
    raw, loops = C.kink(1).raw()
    crossings, loops = raw_smooth(raw, loops, 0)
    assert crossings == () and loops == 2


def test_simplify_removes_kinks_and_bigons():
    d = C.switch(C.torus2(2), 0)  # unlinked Reidemeister II picture
    crossings, loops = simplify(*d.raw())
    assert crossings == () and loops == 2


def test_budget_is_enforced():
    w = C.whitehead_double(C.torus2(3), 0, "+")
    with pytest.raises(BudgetExceeded) as info:
        HomflyEngine(budget=5, memo={})(w)
    assert info.value.budget == 5


def test_budget_from_environment(monkeypatch):
    monkeypatch.setenv("KNOT_BUDGET", "3")
    with pytest.raises(BudgetExceeded):
        HomflyEngine(memo={})(C.whitehead_double(C.torus2(3), 0, "+"))


def test_invalid_diagram_rejected():
    bad = C.torus2(3)
    bad = type(bad)(bad.crossings[:2], bad.components)
    with pytest.raises(DiagramError):
        homfly(bad)


def test_invariant_report_fields():
    r = invariant_report(C.torus2(3))
    assert (r.crossing_count, r.seifert_circles, r.z_degree, r.morton_bound, r.morton_tight) == (3, 2, 2, 2, True)
    data = r.to_json()
    assert LaurentPoly2.from_json(data["homfly"]) == TREFOIL
    assert data["canonical_genus"] == 1


@pytest.mark.parametrize("n, expected", [(-1, 5), (0, 5), (1, 5), (2, 5)])
def test_flat_double_z_degree(n, expected):
    assert homfly(C.flat_double(C.torus2(3), n)).z_degree() == expected


@pytest.mark.parametrize("clasp", ["+", "-"])
def test_whitehead_double_of_trefoil(clasp):
    assert homfly(C.whitehead_double(C.torus2(3), 0, clasp)).z_degree() == 6


@pytest.mark.parametrize("site", [1, 3, 5])
def test_clasp_site_does_not_change_polynomial(site):
    ref = homfly(C.whitehead_double(C.torus2(3), 0, "+"))
    assert homfly(C.whitehead_double(C.torus2(3), 0, "+", site=site)) == ref


def test_hidden_layout_is_the_same_knot():
    for n in (0, 1):
        a = homfly(C.whitehead_double(C.torus2(3), n, "+"))
        b = homfly(C.whitehead_double(C.torus2(3), n, "+", hidden=True))
        assert a == b


def test_hidden_double_is_morton_tight():
    w = C.whitehead_double(C.torus2(3), 0, "+", hidden=True)
    r = invariant_report(w)
    assert r.morton_tight and r.z_degree == 6


@pytest.mark.parametrize(
    "make, c",
    [
        (lambda: C.pretzel((2, 1, 1)), 4),
        (lambda: C.pretzel((2, 3)), 5),
        (lambda: C.pretzel((3, 1, 1)), 5),
        (lambda: C.four_plat((3, 1, 1)), 5),
    ],
)
def test_whitehead_doubles_of_alternating_knots(make, c):
    assert homfly(C.whitehead_double(make(), 0, "+")).z_degree() == 2 * c


def test_mirror_double_has_mirror_polynomial():
    w = C.whitehead_double(C.torus2(3), 0, "+")
    assert homfly(mirror(w)) == homfly(w).substitute_mirror()


@pytest.mark.parametrize("twists", [(3, 3, -2), (3, -3, 2)])
def test_non_alternating_doubles_fall_short(twists):
    # 34-crossing doubles; the degree lands at 2c - 2 rather than 2c
    w = C.whitehead_double(C.pretzel(twists), 0, "+")
    c = sum(abs(k) for k in twists)
    deg = HomflyEngine(budget=50_000_000, memo={})(w).z_degree()
    assert deg == 2 * c - 2
