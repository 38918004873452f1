"""Rotation systems, face tracing, canonical form, serialization."""

from __future__ import annotations

import pytest

from diwallkit import (
    Dart,
    Didrawing,
    HEAD,
    TAIL,
    build_didrawing,
    connectivity_profile,
    didrawing_from_positions,
    digraph,
    interleaving,
    parse,
    serialize,
    to_dot,
)
from diwallkit.errors import (
    DanglingDart,
    DuplicateDart,
    HasLoop,
    InvalidDrawing,
    NotSphere,
    ParseError,
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
from _oracles import maps_isomorphic_bruteforce


# -- construction and faces ------------------------------------------------

def test_triangle_has_two_regions():
    t = triangle()
    assert len(t.regions) == 2


def test_k4_planar_rotation_has_four_regions():
    assert len(k4().regions) == 4


def test_twisted_k4_rejected():
    base = k4()
    rot = {v: list(base.rotation[v]) for v in base.vertices}
    # swapping two darts at the hub forces a higher-genus embedding
    rot["1"] = [Dart("a", TAIL), Dart("b", TAIL), Dart("c", TAIL)]
    with pytest.raises(NotSphere):
        Didrawing(base.graph, rot)


def test_digon_face_membership_fixes_conventions():
    d = digon()
    # outer region: above arc a and below arc b
    outer = d.region_of(Dart("a", TAIL))
    inner = d.region_of(Dart("a", HEAD))
    assert outer is not inner
    assert d.region_of(Dart("b", HEAD)) is outer
    assert d.region_of(Dart("b", TAIL)) is inner
    # left/right of an edge walking tail -> head
    assert d.left("a") is outer and d.right("a") is inner
    assert d.left("b") is inner and d.right("b") is outer
    # face orbits pair opposite ends of the two arcs
    assert outer.darts == (Dart("a", TAIL), Dart("b", HEAD))
    assert inner.darts == (Dart("a", HEAD), Dart("b", TAIL))


def test_corner_rule_on_digon():
    d = digon()
    # clockwise at vertex 1: (a,T) then (b,T); the corner swept from a to b
    # is the wedge between the arcs, i.e. the inner region
    assert d.rotation["1"] == (Dart("a", TAIL), Dart("b", TAIL))
    inner = d.region_of(Dart("b", TAIL))
    assert d.corner_region("1", 0) is inner
    assert d.corner_region("1", 1) is d.region_of(Dart("a", TAIL))


def test_loop_map_on_sphere():
    g = digraph([("l", "v", "v")])
    d = Didrawing(g, {"v": [Dart("l", TAIL), Dart("l", HEAD)]})
    assert len(d.regions) == 2


def test_every_dart_on_exactly_one_region():
    for d in (triangle(), k4(), digon(), star_in_out(), two_triangles()):
        seen = {}
        for r in d.regions:
            for x in r.darts:
                assert x not in seen
                seen[x] = r.id
        assert set(seen) == set(d.darts)


def test_construction_errors():
    g = digraph([("a", "1", "2")])
    with pytest.raises(DanglingDart):
        Didrawing(g, {"1": [Dart("a", HEAD)], "2": [Dart("a", TAIL)]})
    with pytest.raises(DanglingDart):
        Didrawing(g, {"1": [], "2": [Dart("a", HEAD)]})
    with pytest.raises(DuplicateDart):
        Didrawing(g, {"1": [Dart("a", TAIL), Dart("a", TAIL)],
                      "2": [Dart("a", HEAD)]})
    with pytest.raises(DanglingDart):
        Didrawing(g, {"1": [Dart("a", TAIL)], "2": [Dart("a", HEAD)],
                      "3": []})
    lg = digraph([("l", "v", "v")])
    with pytest.raises(HasLoop):
        Didrawing(lg, {"v": [Dart("l", TAIL), Dart("l", HEAD)]},
                  loops_allowed=False)


def test_from_positions_rejects_ambiguity():
    g = digraph([("a", "1", "2"), ("b", "1", "2")])
    pos = {"1": (0.0, 0.0), "2": (4.0, 0.0)}
    with pytest.raises(InvalidDrawing):
        didrawing_from_positions(g, pos)  # both stubs at angle 0
    lg = digraph([("l", "v", "v")])
    with pytest.raises(InvalidDrawing):
        didrawing_from_positions(lg, {"v": (0.0, 0.0)})


def test_isolated_vertex_and_empty_map():
    g = digraph([("a", "1", "2")], vertices=["3"])
    d = Didrawing(g, {"1": [Dart("a", TAIL)], "2": [Dart("a", HEAD)], "3": []})
    assert d.rotation["3"] == ()
    lone = Didrawing(digraph([], vertices=["x"]), {"x": []})
    assert len(lone.regions) == 1
    assert lone.regions[0].darts == ()


# -- interleaving ----------------------------------------------------------

def test_interleaving_examples():
    assert interleaving(directed_cycle(3)) == 2
    assert interleaving(directed_cycle(7)) == 2
    assert interleaving(star_in_out()) == 4
    assert interleaving(directed_path(3)) == 2
    # all-out hub: a single block
    g = digraph([("e1", "c", "x"), ("e2", "c", "y")])
    d = didrawing_from_positions(
        g, {"c": (0.0, 0.0), "x": (1.0, 1.0), "y": (1.0, -1.0)})
    assert interleaving(d) == 1
    lone = Didrawing(digraph([], vertices=["x"]), {"x": []})
    assert interleaving(lone) == 0


def test_interleaving_rejects_loops():
    g = digraph([("l", "v", "v")])
    d = Didrawing(g, {"v": [Dart("l", TAIL), Dart("l", HEAD)]})
    with pytest.raises(HasLoop):
        interleaving(d)


def test_interleaving_parity_property():
    # vertices seeing both directions contribute an even block count
    for d in (triangle(), k4(), digon(), star_in_out(), two_triangles()):
        for v in d.vertices:
            darts = d.rotation[v]
            dirs = {x.end for x in darts}
            if len(dirs) == 2:
                seq = [x.end == TAIL for x in darts]
                blocks = sum(1 for i in range(len(seq)) if seq[i] != seq[i - 1])
                assert blocks % 2 == 0


# -- connectivity profile --------------------------------------------------

def test_connectivity_profile_examples():
    p = connectivity_profile(triangle())
    assert (p.one_weak, p.two_weak, p.weakly_two_edge_connected,
            p.strongly_connected) == (True, True, True, True)

    p = connectivity_profile(two_triangles())
    assert p.one_weak and not p.two_weak

    p = connectivity_profile(directed_path(3))
    assert p.one_weak and not p.strongly_connected
    assert not p.weakly_two_edge_connected  # every edge is a bridge


def test_two_vertex_parallel_didrawing_is_two_weak():
    p = connectivity_profile(parallel_pair(2))
    assert p.two_weak


# -- serialization ---------------------------------------------------------

def test_serialize_round_trip_byte_identity():
    for d in (triangle(), k4(), digon(), star_in_out(), parallel_pair(3)):
        text = serialize(d)
        again = parse(text)
        assert again == d
        assert serialize(again) == text


def test_serialize_is_canonical_in_rotation_start():
    g = digraph([("a", "1", "2"), ("b", "2", "1")])
    pos = {"1": (0.0, 0.0), "2": (4.0, 0.0)}
    bends = {"a": [(2.0, 1.0)], "b": [(2.0, -1.0)]}
    d1 = didrawing_from_positions(g, pos, bends)
    # same map entered with rotations listed from a different start dart
    rot = {v: d1.rotation[v][1:] + d1.rotation[v][:1] for v in d1.vertices}
    d2 = Didrawing(g, rot)
    assert serialize(d1) == serialize(d2)


def test_serialize_header():
    assert serialize(triangle()).startswith('{\n  "format": "didrawing/1"')


def test_parse_errors():
    with pytest.raises(ParseError):
        parse("not json at all {")
    with pytest.raises(ParseError):
        parse('{"format": "didrawing/2", "vertices": [], "edges": [], "rotations": {}}')
    with pytest.raises(ParseError):
        parse('{"format": "didrawing/1", "vertices": []}')
    with pytest.raises(ParseError):
        parse('{"format": "didrawing/1", "vertices": ["v"], "edges": 3, "rotations": {}}')
    # structurally fine JSON, but the rotation references a missing dart
    bad = ('{"format": "didrawing/1", "vertices": ["u", "v"], '
           '"edges": [{"id": "e", "tail": "u", "head": "v"}], '
           '"rotations": {"u": [["e", "T"]], "v": []}}')
    with pytest.raises(ParseError):
        parse(bad)


def test_to_dot_mentions_every_edge():
    dot = to_dot(k4())
    assert dot.startswith("digraph")
    for e in k4().edges:
        assert f'"{e.tail}" -> "{e.head}"' in dot


# -- isomorphism -----------------------------------------------------------

def _relabeled(d: Didrawing, vsuffix: str = "x") -> Didrawing:
    vm = {v: v + vsuffix for v in d.vertices}
    em = {e.id: e.id + vsuffix for e in d.edges}
    return d.relabel(vm, em)


def test_canonical_form_matches_bruteforce_oracle():
    t = triangle()
    pairs = [
        (t, t),
        (t, _relabeled(t)),
        (t, t.reverse()),
        (t, t.mirror()),
        (t, directed_cycle(3)),
        (digon(), parallel_pair(2)),
        (digon(), parallel_pair(2, direction_flips=(1,))),
        (k4(), _relabeled(k4())),
        (k4(), k4().mirror()),
        (star_in_out(), star_in_out().reverse()),
        (directed_path(2), directed_path(2).reverse()),
        (t, k4()),
    ]
    for d1, d2 in pairs:
        for reflect in (False, True):
            expect = maps_isomorphic_bruteforce(d1, d2, allow_reflection=reflect)
            got = d1.is_isomorphic_to(d2, allow_reflection=reflect)
            assert got == expect, (
                f"iso mismatch (reflect={reflect}): canonical={got}, "
                f"bruteforce={expect}")


def test_mirror_is_isomorphic_under_reflection():
    for d in (triangle(), k4(), star_in_out(), two_triangles()):
        assert d.is_isomorphic_to(d.mirror(), allow_reflection=True)


def test_canonical_form_invariant_under_relabel():
    for d in (triangle(), k4(), digon(), two_triangles()):
        assert d.canonical_form() == _relabeled(d, "zz").canonical_form()


# -- embedded edits --------------------------------------------------------

def test_contract_edge_embedded_digon():
    d = digon().contract_edge_embedded("a", new_id="m")
    assert d.vertices == ("m",)
    assert [e.id for e in d.edges] == ["b"]
    assert len(d.regions) == 2  # a loop on the sphere


def test_contract_face_cycle_triangle():
    t = triangle()
    d = t.contract_face_cycle(["a", "b", "c"], "z")
    assert d.vertices == ("z",)
    assert d.m == 0
    assert len(d.regions) == 1


def test_contract_face_cycle_rejects_non_face():
    d = k4()
    with pytest.raises(ValueError):
        d.contract_face_cycle(["a", "d", "e", "c"], "z")  # a 4-cycle, no such face
    with pytest.raises(ValueError):
        d.contract_face_cycle(["a", "b"], "z")


def test_delete_edge_embedded():
    d = k4().delete_edges_embedded(["d"])
    assert d.m == 5
    assert len(d.regions) == 3


def test_reverse_preserves_regions():
    for d in (triangle(), k4(), digon()):
        assert len(d.reverse().regions) == len(d.regions)
