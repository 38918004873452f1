"""Blowing a didrawing up into its dart didrawing and back.

Every vertex becomes a small clockwise directed cycle through one new
vertex per incident dart; every edge keeps only its middle third.  The
result J has a vertex for each dart of G, interleaving at most two, and
G can be recovered exactly by contracting the cycles.
"""

from __future__ import annotations

from dataclasses import dataclass
from collections.abc import Mapping

from .core import Dart, Didrawing, HEAD, TAIL, build_didrawing
from .errors import HasLoop, NotTwoEdgeConnected, TransferCostExceeded
from .width import Carving, _sensible_table, verify_bond_carving

__all__ = ["Blowup", "blow_up", "dart_vertex", "recover", "transfer_carving"]


def dart_vertex(dart: Dart) -> str:
    """Name of the J vertex standing for a dart of G."""
    return f"{dart.edge}.{'t' if dart.end == TAIL else 'h'}"


@dataclass(frozen=True)
class Blowup:
    """A blowup J together with the maps back to its source didrawing.

    ``cv_cycles[v]`` lists the cycle edge ids of C_v in clockwise
    traversal order, ``edge_map`` sends each source edge to its middle
    edge, and ``dart_map`` is the bijection from source darts to J
    vertices.
    """

    J: Didrawing
    cv_cycles: Mapping[str, tuple[str, ...]]
    edge_map: Mapping[str, str]
    dart_map: Mapping[Dart, str]


def blow_up(g: Didrawing) -> Blowup:
    """Construct the blowup didrawing J of g.

    Each edge u -> v is subdivided twice and the two new vertices are the
    dart vertices of its ends; around every source vertex the dart
    vertices are joined into a directed cycle following the clockwise
    rotation, and the source vertices themselves disappear.  |V(J)| is
    twice and |E(J)| three times the source edge count.

    Raises HasLoop on loops and NotTwoEdgeConnected when g has a cut edge
    or no edge at all (some cycle would degenerate).
    """
    if g.graph.has_loops:
        raise HasLoop("blow up a loopless didrawing")
    if g.graph.m == 0:
        raise NotTwoEdgeConnected("the blowup needs at least one edge")
    if not g.graph.is_weakly_two_edge_connected():
        raise NotTwoEdgeConnected("the blowup needs a weakly 2-edge-connected source")

    rotations: dict[str, list[Dart]] = {}
    edges: list[tuple[str, str, str]] = []
    cv_cycles: dict[str, tuple[str, ...]] = {}
    dart_map: dict[Dart, str] = {}

    for e in g.edges:
        edges.append((e.id, dart_vertex(Dart(e.id, TAIL)), dart_vertex(Dart(e.id, HEAD))))
    for v in g.vertices:
        darts = g.rotation[v]
        n = len(darts)
        cyc = tuple(f"{v}.cyc{i + 1}" for i in range(n))
        cv_cycles[v] = cyc
        for i, dd in enumerate(darts):
            here = dart_vertex(dd)
            dart_map[dd] = here
            edges.append((cyc[i], here, dart_vertex(darts[(i + 1) % n])))
            # clockwise at a dart vertex: the middle stub, then the cycle
            # edge onward, then the cycle edge arriving
            rotations[here] = [Dart(dd.edge, dd.end),
                               Dart(cyc[i], TAIL),
                               Dart(cyc[i - 1], HEAD)]

    j = build_didrawing(rotations.keys(), edges, rotations, loops_allowed=False)
    return Blowup(j, cv_cycles, {e: e for e in g.graph.edge_ids}, dart_map)


def recover(b: Blowup) -> Didrawing:
    """Contract every C_v back into its source vertex.

    The middle edges keep their source ids and the clockwise order of the
    cycle reproduces the source rotation, so the result equals the
    didrawing that was blown up, not merely an isomorphic copy.
    """
    d = b.J
    for v in sorted(b.cv_cycles):
        d = d.contract_face_cycle(b.cv_cycles[v], v)
    return d


def transfer_carving(b: Blowup, c: Carving) -> Carving:
    """Reread a bond carving of V(J) as a dart carving of the source.

    The dart map is a bijection, so relabeling the leaves through its
    inverse turns the carving tree into a carving of the source darts.
    Every tree-edge partition must then be one some good curve of the
    source induces, at cost no more than the carving's width; anything
    else raises TransferCostExceeded loudly, since the reread carving is
    promised never to pay more than the bond carving did, and a breach
    means a bug, not an unlucky input.
    """
    reasons: list[str] = []
    if not verify_bond_carving(b.J, c, reasons=reasons):
        raise ValueError("not a diwidth carving of the blowup: "
                         + "; ".join(reasons))
    g = recover(b)
    table = _sensible_table(g)
    inv = {jv: dart for dart, jv in b.dart_map.items()}
    relabeled = Carving(c.edges, {inv[jv]: leaf for jv, leaf in c.leaf_map.items()},
                        c.width)
    worst = 0
    for side_a, _ in relabeled.partitions():
        got = table.get(frozenset((side_a, frozenset(inv.values()) - side_a)))
        if got is None:
            raise TransferCostExceeded(
                f"the dart split {sorted(side_a)} comes from no good curve")
        if got > c.width:
            raise TransferCostExceeded(
                f"dart split cost {got} exceeds the bond carving width {c.width}")
        worst = max(worst, got)
    return Carving(relabeled.edges, relabeled.leaf_map, worst)
