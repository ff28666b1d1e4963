import itertools
import json
import random

import pytest

from knotgenus import constructors as C
from knotgenus.bounds import (
    EXACT,
    UPPER,
    DegreeBound,
    Exact,
    LedgerMismatch,
    SkeinEdge,
    SkeinTree,
    SkeinTreeError,
    UpperBound,
    combine,
    combine_smoothed,
    ledger_check,
    ledger_tree,
    propagate,
    to_dot,
)
from knotgenus.homfly import HomflyEngine
from knotgenus.verify import random_diagrams


def test_strict_maximum_from_exact_side_is_exact():
    # M(K_g) <= 2c-4 and M(K_8) = 2c-3 at c = 5 give M(K_h) = 8 = 2c-2
    assert combine(1, UpperBound(6), Exact(7)) == Exact(8)


def test_tie_gives_upper_bound():
    assert combine(1, Exact(3), Exact(2)) == UpperBound(3)


def test_upper_bounds_never_become_exact():
    assert combine(-1, UpperBound(5), UpperBound(1)) == UpperBound(5)


def test_strict_maximum_from_upper_side_stays_upper():
    assert combine(1, UpperBound(9), Exact(2)) == UpperBound(9)


def test_sign_is_bookkeeping_only():
    for a, b in itertools.product([Exact(2), UpperBound(4), Exact(5)], repeat=2):
        assert combine(1, a, b) == combine(-1, a, b)
    with pytest.raises(ValueError):
        combine(0, Exact(1), Exact(1))


def test_combine_smoothed():
    assert combine_smoothed(Exact(6), UpperBound(4)) == Exact(5)
    assert combine_smoothed(Exact(6), Exact(6)) == UpperBound(5)


def test_refinement_lattice():
    assert Exact(3).refines(UpperBound(3))
    assert Exact(3).refines(UpperBound(5))
    assert not Exact(6).refines(UpperBound(5))
    assert not UpperBound(3).refines(Exact(3))
    assert UpperBound(2).refines(UpperBound(3))
    with pytest.raises(ValueError):
        DegreeBound("Maybe", 1)


def test_single_node_tree():
    t = SkeinTree(["K"], [], {"K": Exact(5)})
    assert propagate(t) == {"K": Exact(5)}


@pytest.mark.parametrize("c", [3, 4, 5, 10, 17])
def test_ledger_offsets(c):
    t = ledger_check(c)
    offsets = {n: (b.kind, b.value - 2 * c) for n, b in t.bounds.items() if not n[2:].isdigit() and n not in ("K_A", "K_B")}
    assert offsets == {
        "K_a": (UPPER, -5),
        "K_b": (UPPER, -4),
        "K_c": (UPPER, -3),
        "K_d": (UPPER, -4),
        "K_e": (UPPER, -4),
        "K_f": (UPPER, -3),
        "K_g": (UPPER, -4),
        "K_h": (EXACT, -2),
        "D(K)": (EXACT, -1),
    }


def test_ledger_examples():
    assert ledger_check(3).root == Exact(5)
    assert ledger_check(3).text().endswith("root Exact(5)")
    assert ledger_check(4).root == Exact(7)
    assert ledger_check(10).bounds["K_f"] == UpperBound(17)


def test_ledger_is_affine_with_slope_two():
    a, b = ledger_check(3), ledger_check(11)
    for n in a.bounds:
        assert b.bounds[n].value - a.bounds[n].value == 16
        assert a.bounds[n].kind == b.bounds[n].kind


@pytest.mark.parametrize("c", [3, 4, 10])
def test_degraded_leaf_drops_the_root(c):
    assert ledger_check(c, "degraded").root == UpperBound(2 * c - 3)


@pytest.mark.parametrize("c", [3, 6])
def test_split_unknot_fixture_keeps_the_conclusion(c):
    assert ledger_check(c, "split-unknot").root == Exact(2 * c - 1)


def test_ledger_needs_c_at_least_three():
    with pytest.raises(ValueError):
        ledger_check(2)


def test_mismatch_carries_structured_diff(monkeypatch):
    import knotgenus.bounds as B

    monkeypatch.setitem(B._LEAVES, "standard", dict(B._LEAVES["standard"], K_8=(EXACT, -6)))
    with pytest.raises(LedgerMismatch) as info:
        ledger_check(5)
    nodes = [n for n, _, _ in info.value.diff]
    assert "K_h" in nodes and "D(K)" in nodes
    assert info.value.to_json()["diff"][0]["expected"]


def _orders(tree, k, seed=0):
    """``k`` random topological orders, children before parents."""
    rng = random.Random(seed)
    kids = {n: [e.child for e in tree.edges if e.parent == n] for n in tree.nodes}
    for _ in range(k):
        done, order = set(), []
        while len(order) < len(tree.nodes):
            ready = [n for n in tree.nodes if n not in done and all(c in done for c in kids[n])]
            n = rng.choice(ready)
            done.add(n)
            order.append(n)
        yield order


def test_propagation_is_order_independent():
    t = ledger_tree(6)
    ref = propagate(t)
    for order in _orders(t, 25):
        assert propagate(t, order) == ref


def test_bad_order_is_rejected():
    t = ledger_tree(4)
    with pytest.raises(SkeinTreeError):
        propagate(t, list(reversed(t.order())))


def test_weakening_a_leaf_never_strengthens_the_root():
    t = ledger_tree(5)
    base = propagate(t)
    for leaf, b in t.leaf_bounds.items():
        for weaker in (b.weaken(), UpperBound(b.value + 1), UpperBound(b.value + 3)):
            assert b.refines(weaker)
            w = ledger_tree(5)
            w.leaf_bounds[leaf] = weaker
            out = propagate(w)
            for n in out:
                assert base[n].refines(out[n]), (leaf, weaker, n)


def test_cycle_is_an_error():
    edges = [SkeinEdge("a", "b", "switched", 1), SkeinEdge("a", "c", "smoothed", 1),
             SkeinEdge("b", "a", "switched", 1), SkeinEdge("b", "c", "smoothed", 1)]
    t = SkeinTree(["a", "b", "c"], edges, {"c": Exact(1)})
    with pytest.raises(SkeinTreeError, match="cycle"):
        propagate(t)


def test_internal_node_needs_both_children():
    t = SkeinTree(["a", "b"], [SkeinEdge("a", "b", "switched", 1)], {"b": Exact(1)})
    with pytest.raises(SkeinTreeError):
        propagate(t)


def test_leaf_without_bound():
    t = SkeinTree(["a", "b", "c"], [SkeinEdge("a", "b", "switched", 1), SkeinEdge("a", "c", "smoothed", 1)], {"b": Exact(1)})
    with pytest.raises(SkeinTreeError, match="leaf c"):
        propagate(t)


def test_json_round_trip_and_symbolic_values():
    t = ledger_tree(7)
    again = SkeinTree.from_json(json.dumps(t.to_json()))
    assert propagate(again) == propagate(t)
    data = {
        "edges": [
            {"parent": "P", "child": "S", "role": "switched", "sign": "+"},
            {"parent": "P", "child": "Z", "role": "smoothed", "sign": "+"},
        ],
        "leaf_bounds": {"S": {"kind": "UpperBound", "value": "2c-4"}, "Z": {"kind": "Exact", "value": "2c-3"}},
    }
    tree = SkeinTree.from_json(data, c=5)
    assert propagate(tree)["P"] == Exact(8)
    with pytest.raises(SkeinTreeError):
        SkeinTree.from_json(data)


def test_dot_output_mentions_every_node():
    t = ledger_tree(3)
    dot = to_dot(t)
    assert dot.startswith("digraph")
    for n in t.nodes:
        assert f'"{n}"' in dot
    assert "Exact(5)" in dot


def test_combine_is_sound_against_the_engine():
    """Exact leaf data from real polynomials never contradicts the parent."""
    engine = HomflyEngine(memo={})
    rng = random.Random(3)
    for d in random_diagrams(120, seed=11):
        i = rng.randrange(d.crossing_count)
        parent = engine(d).z_degree()
        sw = engine(C.switch(d, i)).z_degree()
        sm = engine(C.smooth(d, i)).z_degree()
        b = combine(d.crossings[i].sign, Exact(sw), Exact(sm))
        assert b.admits(parent), (d, i)
        # and the smoothing rule, read from the other side
        plus, minus = (parent, sw) if d.crossings[i].sign > 0 else (sw, parent)
        assert combine_smoothed(Exact(plus), Exact(minus)).admits(sm)
