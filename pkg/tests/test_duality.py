"""Duals, walk change numbers, and bond change numbers."""

from __future__ import annotations

import itertools

import pytest

from diwallkit import (
    Dart,
    Didrawing,
    Disconnected,
    NotBond,
    NotWalk,
    TAIL,
    HEAD,
    bond_change_number,
    bond_cycle,
    build_didrawing,
    change_number,
    cut_change_number,
    digraph,
    dual,
)

from _fixtures import (
    digon,
    directed_cycle,
    directed_path,
    k4,
    parallel_pair,
    star_in_out,
    triangle,
    two_triangles,
)


def loop_map() -> Didrawing:
    return build_didrawing(["v"], [("e", "v", "v")],
                           {"v": [("e", TAIL), ("e", HEAD)]})


def single_vertex() -> Didrawing:
    return build_didrawing(["v"], [], {"v": []})


# -- construction ----------------------------------------------------------


def test_right_dual_of_clockwise_triangle():
    t = triangle()
    outer = t.region_of(Dart("a", TAIL)).id
    inner = t.region_of(Dart("a", HEAD)).id
    dm = dual(t)

    assert dm.side == "right"
    assert dm.dual.graph.n == 2
    assert set(dm.dual.graph.vertices) == {outer, inner}
    # all three dual edges run from the outer region to the inner one
    for e in dm.dual.graph.edges:
        assert (e.tail, e.head) == (outer, inner)
    assert dm.edge_to_edge == {"a": "a", "b": "b", "c": "c"}
    # regions of the dual stand for the primal vertices
    assert sorted(dm.region_to_vertex.values()) == ["1", "2", "3"]
    assert {dm.vertex_to_region[v]: v for v in "123"} == dm.region_to_vertex


def test_dual_rotation_is_reversed_face_orbit():
    d = k4()
    dm = dual(d)
    for r in d.regions:
        want = tuple(reversed(r.darts))
        got = dm.dual.rotation[r.id]
        # both are cyclic sequences; constructor normalizes the start
        n = len(want)
        assert any(want[i:] + want[:i] == got for i in range(n))


def test_left_dual_is_right_dual_reversed():
    for d in [triangle(), digon(), k4(), star_in_out()]:
        assert dual(d, "left").dual == dual(d, "right").dual.reverse()


def test_double_dual_round_trips():
    for d in [triangle(), digon(), k4(), star_in_out(), two_triangles(),
              directed_path(3), loop_map(), single_vertex()]:
        dm = dual(d)
        back = dual(dm.dual, "left").dual.relabel(vertex_map=dm.region_to_vertex)
        assert back == d
        again = dual(dm.dual, "right").dual.relabel(vertex_map=dm.region_to_vertex)
        assert again == d.reverse()


def test_dual_of_path_is_loops_on_one_vertex():
    dm = dual(directed_path(2))
    assert dm.dual.graph.n == 1
    assert dm.dual.graph.m == 2
    assert all(e.is_loop for e in dm.dual.graph.edges)
    # its regions recover the three path vertices
    assert sorted(dm.region_to_vertex.values()) == ["p0", "p1", "p2"]


def test_dual_of_loop_map():
    dm = dual(loop_map())
    assert dm.dual.graph.n == 2
    assert dm.dual.graph.m == 1
    (e,) = dm.dual.graph.edges
    assert e.tail != e.head


def test_dual_of_single_vertex():
    dm = dual(single_vertex())
    assert dm.dual.graph.n == 1
    assert dm.dual.graph.m == 0
    assert dm.region_to_vertex == {"f0": "v"}


def test_dual_requires_connected():
    g = digraph([("a", "1", "2")], vertices=["1", "2", "z"])
    d = build_didrawing(g.vertices, g.edges, {
        "1": [("a", TAIL)], "2": [("a", HEAD)], "z": [],
    })
    with pytest.raises(Disconnected):
        dual(d)


def test_dual_rejects_bad_side():
    with pytest.raises(ValueError):
        dual(triangle(), "up")


# -- change number of walks ------------------------------------------------


def test_change_number_straight_path():
    d = directed_path(3)
    assert change_number(d, [("e0", TAIL), ("e1", TAIL), ("e2", TAIL)]) == 0


def test_change_number_out_and_back():
    d = directed_path(2)
    # p0 -> p1 -> p2 -> p1: one turn at p2
    walk = [("e0", TAIL), ("e1", TAIL), ("e1", HEAD)]
    assert change_number(d, walk) == 1


def test_change_number_directed_cycle_is_zero():
    d = directed_cycle(4)
    walk = [(f"e{i}", TAIL) for i in range(4)]
    assert change_number(d, walk) == 0


def test_change_number_closed_seam():
    d = k4()
    # 1 -> 2 -> 3 then back along b against its arrow
    walk = [("a", TAIL), ("d", TAIL), ("b", HEAD)]
    assert change_number(d, walk, closed=False) == 1
    assert change_number(d, walk) == 2  # auto-closed, seam pair differs too


def test_change_number_single_edge_there_and_back():
    d = star_in_out()
    walk = [("e1", HEAD), ("e1", TAIL)]  # p -> c -> p
    assert change_number(d, walk, closed=False) == 1
    assert change_number(d, walk) == 2


def test_change_number_works_on_bare_digraph():
    g = digraph([("a", "x", "y"), ("b", "y", "z")])
    assert change_number(g, [("a", TAIL), ("b", TAIL)]) == 0


def test_change_number_rejects_bad_walks():
    t = triangle()
    with pytest.raises(NotWalk):
        change_number(t, [])
    with pytest.raises(NotWalk):
        change_number(t, [("a", TAIL), ("c", TAIL)])  # 2 then 3: no chain
    with pytest.raises(NotWalk):
        change_number(t, [("zz", TAIL)])
    with pytest.raises(NotWalk):
        change_number(t, [("a", TAIL)], closed=True)  # 1 -> 2 does not close


# -- bonds -----------------------------------------------------------------


def test_triangle_singleton_bond():
    t = triangle()
    for v in "123":
        k, cyc = bond_change_number(t, {v})
        assert k == 2
        assert len(cyc) == 2


def test_parallel_pair_bonds():
    same = parallel_pair(2)
    k, cyc = bond_change_number(same, {"1"})
    assert k == 0
    assert sorted(s.edge for s in cyc) == ["e0", "e1"]

    opposed = parallel_pair(2, direction_flips=(1,))
    k, _ = bond_change_number(opposed, {"1"})
    assert k == 2


def test_bridge_bond_is_a_dual_loop():
    d = directed_path(1)  # single edge p0 -> p1
    k, cyc = bond_change_number(d, {"p0"})
    assert k == 0
    assert cyc == (Dart("e0", TAIL),)


def test_directed_cycle_interval_bonds():
    d = directed_cycle(5)
    # every arc of the cycle meets the rest in one in- and one out-edge
    for a, b in [(1, 2), (1, 3), (2, 5)]:
        side = {f"u{i % 5}" for i in range(a, b)}
        k, cyc = bond_change_number(d, side)
        assert k == 2
        assert len(cyc) == 2


def test_bond_cycle_lists_each_cut_edge_once():
    d = k4()
    cyc = bond_cycle(d, {"1", "2"})
    assert sorted(s.edge for s in cyc) == ["b", "c", "d", "f"]


def test_bond_rejections():
    t = two_triangles()
    with pytest.raises(NotBond):
        bond_change_number(t, {"2", "4"})  # side A disconnected
    with pytest.raises(NotBond):
        bond_change_number(t, {"1"})  # complement disconnected
    with pytest.raises(NotBond):
        bond_change_number(t, set())
    with pytest.raises(NotBond):
        bond_change_number(t, {"1", "2", "3", "4", "5"})
    with pytest.raises(NotBond):
        bond_change_number(t, {"zz"})
    with pytest.raises(NotBond):
        bond_change_number(t, {"1"}, {"2", "3"})  # not a partition


def test_all_bonds_even_and_region_rule_agrees():
    for d in [triangle(), digon(), k4(), two_triangles(), directed_cycle(4)]:
        verts = d.graph.vertices
        for r in range(1, len(verts)):
            for side in itertools.combinations(verts, r):
                try:
                    k, cyc = bond_change_number(d, side)
                except NotBond:
                    continue
                assert k % 2 == 0
                cut = {e.id for e in d.graph.edges
                       if (e.tail in side) != (e.head in side)}
                assert sorted(s.edge for s in cyc) == sorted(cut)
                assert cut_change_number(d, cut) == k
                # the complementary side names the same bond
                other = tuple(v for v in verts if v not in side)
                assert bond_change_number(d, other)[0] == k


def test_cut_change_number_rejects_non_cycle_cuts():
    d = k4()
    with pytest.raises(NotBond):
        cut_change_number(d, {"a"})  # lone chord: outer region crossed once
    lm = loop_map()
    with pytest.raises(NotBond):
        cut_change_number(lm, {"e"})
