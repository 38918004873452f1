"""Blowup construction, recovery, and the blowup box system."""

from __future__ import annotations

import pytest

from diwallkit import (
    BoxSystem,
    Dart,
    Digraph,
    HEAD,
    HasLoop,
    NotTwoEdgeConnected,
    TAIL,
    box_to_layout,
    build_didrawing,
    embeds,
    generate,
    interleaving,
    verify_box_system,
    verify_layout,
)
from diwallkit.blowup import Blowup, blow_up, dart_vertex, recover

from _fixtures import digon, directed_path, k4, parallel_pair, triangle
from _oracles import maps_isomorphic_bruteforce


def sources():
    return [triangle(), digon(), k4(), parallel_pair(2),
            generate("diwall", 2), generate("alternating", 2, 2)]


def test_counts_and_degrees():
    for d in sources():
        j = blow_up(d).J
        assert (j.graph.n, j.graph.m) == (2 * d.graph.m, 3 * d.graph.m)
        for v in j.vertices:
            assert (j.graph.in_degree(v), j.graph.out_degree(v)) in ((2, 1), (1, 2))
    assert (blow_up(triangle()).J.graph.n, blow_up(triangle()).J.graph.m) == (6, 9)


def test_interleaving_at_most_two():
    for d in sources():
        assert interleaving(blow_up(d).J) == 2


def test_recover_is_exact():
    for d in sources():
        rec = recover(blow_up(d))
        assert rec == d
        assert rec.is_isomorphic_to(d)
    assert maps_isomorphic_bruteforce(recover(blow_up(triangle())), triangle())


def test_cycles_bound_clockwise_faces():
    for d in sources():
        b = blow_up(d)
        regions = {frozenset(r.darts) for r in b.J.regions}
        for v, cyc in b.cv_cycles.items():
            assert frozenset(Dart(x, HEAD) for x in cyc) in regions
            assert len(cyc) == d.graph.degree(v)


def test_dart_map_is_a_bijection():
    for d in sources():
        b = blow_up(d)
        assert sorted(b.dart_map.values()) == sorted(b.J.vertices)
        darts = {x for v in d.vertices for x in d.rotation[v]}
        assert set(b.dart_map) == darts
        for dd, jv in b.dart_map.items():
            assert jv == dart_vertex(dd)
        # the middle edge of e joins the two dart vertices of e
        for eid, mid in b.edge_map.items():
            e = b.J.graph.edge(mid)
            assert e.tail == b.dart_map[Dart(eid, TAIL)]
            assert e.head == b.dart_map[Dart(eid, HEAD)]


def test_rejects_degenerate_sources():
    with pytest.raises(NotTwoEdgeConnected):
        blow_up(directed_path(2))            # every edge is a bridge
    with pytest.raises(NotTwoEdgeConnected):
        blow_up(build_didrawing(["v"], [], {"v": []}))
    looped = build_didrawing(["v"], [("l", "v", "v")],
                             {"v": [Dart("l", TAIL), Dart("l", HEAD)]})
    with pytest.raises(HasLoop):
        blow_up(looped)


def test_blowup_box_system_yields_layout():
    gam = generate("alternating", 2, 6)
    b = blow_up(gam)
    j = b.J
    sets = {}
    for v in gam.vertices:
        sets[v] = frozenset(x for eid in b.cv_cycles[v]
                            for x in j.graph.edge(eid).ends())
    bs = BoxSystem(2, 6, sets, dict(b.edge_map))
    assert verify_box_system(j, bs, 2, 6)

    lay = box_to_layout(j, bs)
    assert verify_layout(j, lay, 2)
    assert lay.horizontals[0] == ("h1.1", "v1.2.cyc2", "h1.2", "v1.3.cyc2",
                                  "h1.3", "v1.4.cyc2", "h1.4", "v1.5.cyc2", "h1.5")
    assert lay.verticals[0] == ("h2.1", "v2.1.cyc2", "c1.1", "v1.1.cyc1", "h1.1")

    used = sorted({x for p in lay.horizontals + lay.verticals for x in p})
    union = Digraph(sorted({v for x in used for v in j.graph.edge(x).ends()}),
                    [j.graph.edge(x) for x in used])
    assert embeds(union, generate("diwall", 2)) is not None
