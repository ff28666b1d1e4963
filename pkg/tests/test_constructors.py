import pytest

from knotgenus import constructors as C
from knotgenus.diagram import (
    DiagramError,
    canonical_key,
    faces,
    is_alternating,
    is_connected_projection,
    isomorphic,
    mirror,
    nugatory_crossings,
    seifert_circles,
    validate,
    writhe,
)
from knotgenus.homfly import homfly


def test_unknot_and_unlink():
    assert C.unknot().crossing_count == 0
    assert C.unlink(3).component_count == 3
    with pytest.raises(DiagramError):
        C.unlink(0)


@pytest.mark.parametrize("n", range(2, 9))
def test_torus2_shape(n):
    d = C.torus2(n)
    assert validate(d) == []
    assert d.crossing_count == n
    assert d.component_count == (2 if n % 2 == 0 else 1)
    assert writhe(d) == n
    assert all(cr.sign == 1 for cr in d.crossings)


@pytest.mark.parametrize(
    "twists, comps",
    [((3, 1, 1), 1), ((2, 1, 1), 1), ((2, 3), 1), ((3, 3, -2), 1), ((1, 1), 2), ((2, 2, 2), 3), ((1, 1, 1, 1), 2)],
)
def test_pretzel_counts_and_components(twists, comps):
    d = C.pretzel(twists)
    assert validate(d) == []
    assert d.crossing_count == sum(abs(k) for k in twists)
    assert d.component_count == comps
    assert C.pretzel_is_knot(twists) == (comps == 1)


def test_pretzel_one_one_one_is_the_trefoil():
    assert isomorphic(C.pretzel((1, 1, 1)), C.torus2(3), oriented=False)


def test_pretzel_rejects_zero_band():
    with pytest.raises(DiagramError):
        C.pretzel((2, 0, 1))


@pytest.mark.parametrize("twists", [(2, 3), (3, 2), (1, 4)])
def test_two_band_pretzel_is_torus_knot(twists):
    # the bands close up into one vertical twist chain: the mirror of the
    # horizontal chain drawn by torus2
    assert homfly(C.pretzel(twists)) == homfly(C.torus2(5)).substitute_mirror()
    assert homfly(C.pretzel((1, 1, 1, 1, 1))) == homfly(C.torus2(5))


@pytest.mark.parametrize("word", [(1, 1, 1), (2, 1, 1), (3, 1, 1), (2, 2, 2), (1, 1, 1, 1, 1), (1, 2, 1, 1, 1)])
def test_four_plat_is_reduced_alternating(word):
    d = C.four_plat(word)
    assert validate(d) == []
    assert d.crossing_count == sum(word)
    assert is_alternating(d)
    assert nugatory_crossings(d) == []


def test_four_plat_basic_knots():
    # s2 s1^-1 s2 is the left trefoil, (2,1,1) the figure eight
    assert isomorphic(C.four_plat((1, 1, 1)), mirror(C.torus2(3)), oriented=False)
    assert writhe(C.four_plat((1, 1, 1))) == -3
    fig8 = homfly(C.four_plat((2, 1, 1)))
    assert fig8 == fig8.substitute_mirror()
    assert C.four_plat((1, 1, 1, 1, 1)).component_count == 2


@pytest.mark.parametrize("n", range(2, 7))
def test_twist_replace_on_torus_links(n):
    base = C.torus2(n)
    for i in range(n):
        t = C.twist_replace(base, i)
        assert validate(t) == []
        assert t.crossing_count == n + 2
        assert t.component_count == base.component_count
        assert is_alternating(t)
        assert nugatory_crossings(t) == []


def test_twist_replace_gives_a_pretzel():
    t = C.twist_replace(C.torus2(3), 0)
    assert isomorphic(t, C.pretzel((3, 1, 1)), oriented=False)


def test_half_to_full_changes_components():
    d = C.half_to_full(C.torus2(3), 0)
    assert d.crossing_count == 4 and d.component_count == 2
    assert isomorphic(d, C.torus2(4), oriented=False)


def test_twist_bigons_of_torus_link():
    # T(2,4): every adjacent pair of crossings bounds a twist bigon
    assert len(C.twist_bigons(C.torus2(4))) == 4


def test_full_to_half_inverts_half_to_full():
    d = C.torus2(4)
    c1, i, c2 = C.twist_bigons(d)[0]
    smaller, new, axis = C.full_to_half(d, c1, i, c2)
    assert isomorphic(smaller, C.torus2(3), oriented=False)
    assert isomorphic(C.half_to_full(smaller, new, axis), d, oriented=False)


def test_switch_and_smooth():
    d = C.torus2(3)
    s = C.switch(d, 0)
    assert validate(s) == [] and writhe(s) == 1
    h = C.smooth(d, 0)
    assert validate(h) == [] and h.crossing_count == 2 and h.component_count == 2


@pytest.mark.parametrize("n", [-1, 0, 1, 2])
def test_flat_double_of_trefoil(n):
    d = C.flat_double(C.torus2(3), n)
    assert validate(d) == []
    assert d.component_count == 2
    assert d.crossing_count == 12 + 2 * abs(n)
    assert is_connected_projection(d)
    assert faces(d).count == d.crossing_count + 2


@pytest.mark.parametrize("clasp", ["+", "-"])
def test_whitehead_double_shape(clasp):
    d = C.whitehead_double(C.torus2(3), 0, clasp)
    assert validate(d) == []
    assert d.component_count == 1
    assert d.crossing_count == 14
    clasp_signs = sorted(cr.sign for cr in d.crossings)
    # the clasp adds two crossings of the requested sign
    plain = C.flat_double(C.torus2(3), 0)
    extra = sum(clasp_signs) - sum(cr.sign for cr in plain.crossings)
    assert extra == (2 if clasp == "+" else -2)


def test_whitehead_clasp_rejects_bad_sign():
    with pytest.raises(DiagramError):
        C.whitehead_double(C.torus2(3), 0, "x")


def test_doubling_requires_a_knot():
    with pytest.raises(DiagramError):
        C.flat_double(C.torus2(4))


@pytest.mark.parametrize("name, make", [("T(2,3)", lambda: C.torus2(3)), ("P(2,1,1)", lambda: C.pretzel((2, 1, 1))), ("P(3,1,1)", lambda: C.pretzel((3, 1, 1)))])
def test_hidden_twist_census(name, make):
    k = make()
    c = k.crossing_count
    w = C.whitehead_double(k, 0, "+", hidden=True)
    s = seifert_circles(w)
    assert (s.circle_count, w.crossing_count, s.canonical_genus) == (2 * c + 3, 4 * c + 2, c)


def test_hidden_layout_with_one_twist():
    w = C.whitehead_double(C.torus2(3), 1, "+", hidden=True)
    assert w.crossing_count == 16 and w.component_count == 1
    assert seifert_circles(w).circle_count == 11


@pytest.mark.parametrize("site", [1, 2, 3, 4, 5, 6])
def test_every_site_gives_a_valid_double(site):
    d = C.whitehead_double(C.torus2(3), 0, "+", site=site)
    assert validate(d) == [] and d.component_count == 1


def test_bad_site():
    with pytest.raises(DiagramError):
        C.flat_double(C.torus2(3), site=99)


@pytest.mark.parametrize("word", [(1, 1, 1), (2, 1, 1), (3, 1, 1), (1, 1, 1, 1, 1), (2, 3, 1), (1, 2, 1, 1, 1)])
def test_deflation_round_trip(word):
    path = C.deflation_path(word)
    assert isomorphic(C.replay(word, path), C.four_plat(word), oriented=False)
    end = path[-1][0] if path else C.four_plat(word)
    assert isomorphic(end, C.four_plat((1, 1, 1)), oriented=False)
    for dg, move in path:
        assert validate(dg) == []
        assert move.axis in ("A", "B")


def test_deflation_lowers_one_crossing_per_move():
    path = C.deflation_path((3, 1, 1))
    assert [dg.crossing_count for dg, _ in path] == [4, 3]
    assert [m.after for _, m in path] == [(2, 1, 1), (1, 1, 1)]


def test_constructions_have_distinct_keys():
    keys = {canonical_key(d, oriented=False) for d in (C.torus2(5), C.pretzel((3, 1, 1)), C.four_plat((3, 1, 1)))}
    assert len(keys) == 3
