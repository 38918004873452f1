"""Duality for didrawings, and change numbers of walks and bonds.

The dual map has one vertex per region of the primal and one edge per primal
edge, and it reuses the primal ids for both.  In the right dual, the edge
dual to ``e`` runs from the region on the left of ``e`` to the region on its
right; the left dual points the other way.

With the conventions of :mod:`diwallkit.core` the construction is almost
free of bookkeeping.  The rotation at a dual vertex is the primal face orbit
of that region, reversed, and for the right dual the dart labels carry over
verbatim: the orbit dart ``(e, T)`` lies in the region left of ``e``, which
is exactly the tail of the dual edge ``e``.  Regions of the dual correspond
to vertices of the primal; :func:`dual` checks this and returns the
bijection in the :class:`DualMap` it produces.

The change number of a walk counts the intermediate vertices where the walk
switches between moving with the edge directions and against them.  Bonds of
a didrawing correspond to simple cycles of the dual, so a bond has a change
number too: the change number of its dual cycle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import Dart, DartLike, Didrawing, TAIL, _as_dart
from .digraph import Digraph, Edge
from .errors import Disconnected, NotBond, NotWalk

__all__ = [
    "DualMap",
    "dual",
    "change_number",
    "bond_cycle",
    "bond_change_number",
    "cut_change_number",
]


# -- dual construction -----------------------------------------------------


@dataclass(frozen=True)
class DualMap:
    """A dual didrawing together with the correspondences that define it.

    ``dual`` vertices are named by primal region ids and ``dual`` edges by
    primal edge ids, so ``edge_to_edge`` is the identity; it is kept
    explicit so callers never have to rely on the naming scheme.
    ``vertex_to_region`` sends a primal vertex to the id of the dual region
    that surrounds it, and ``region_to_vertex`` is its inverse.
    """

    primal: Didrawing
    dual: Didrawing
    side: str
    edge_to_edge: dict[str, str]
    vertex_to_region: dict[str, str]
    region_to_vertex: dict[str, str]


def dual(d: Didrawing, side: str = "right") -> DualMap:
    """Construct the right or left dual of a weakly connected didrawing."""
    if side not in ("right", "left"):
        raise ValueError(f"side must be 'right' or 'left', got {side!r}")
    if not d.graph.is_weakly_connected():
        raise Disconnected("the dual is only defined for weakly connected didrawings")

    edges = []
    for e in d.graph.edges:
        lt = d.left(e.id).id
        rt = d.right(e.id).id
        edges.append(Edge(e.id, lt, rt) if side == "right" else Edge(e.id, rt, lt))

    rotations: dict[str, tuple[Dart, ...]] = {}
    for r in d.regions:
        rev = tuple(reversed(r.darts))
        if side == "left":
            rev = tuple(dd.reversed() for dd in rev)
        rotations[r.id] = rev

    dual_drawing = Didrawing(
        Digraph((r.id for r in d.regions), edges),
        rotations,
        loops_allowed=True,
    )

    # Every region of the dual must border exactly one primal vertex.  In
    # the right dual the orbit dart (e, T) heads into the face around
    # head(e), and (e, H) into the face around tail(e); the left dual swaps
    # the roles.  This is a theorem of the construction, hence asserts.
    def owner(dd: Dart) -> str:
        e = d.graph.edge(dd.edge)
        if side == "right":
            return e.head if dd.end == TAIL else e.tail
        return e.tail if dd.end == TAIL else e.head

    region_to_vertex: dict[str, str] = {}
    for fr in dual_drawing.regions:
        if not fr.darts:
            # an edgeless connected primal is a single vertex
            region_to_vertex[fr.id] = d.graph.vertices[0]
            continue
        owners = {owner(dd) for dd in fr.darts}
        assert len(owners) == 1, (
            f"dual region {fr.id} borders primal vertices {sorted(owners)}")
        region_to_vertex[fr.id] = owners.pop()
    assert len(region_to_vertex) == d.graph.n
    assert len(set(region_to_vertex.values())) == d.graph.n

    return DualMap(
        primal=d,
        dual=dual_drawing,
        side=side,
        edge_to_edge={e.id: e.id for e in d.graph.edges},
        vertex_to_region={v: r for r, v in region_to_vertex.items()},
        region_to_vertex=region_to_vertex,
    )


# -- change numbers --------------------------------------------------------


def change_number(g: Didrawing | Digraph, walk: Sequence[DartLike],
                  *, closed: bool | None = None) -> int:
    """Count the direction changes along a walk.

    The walk is a sequence of step darts: ``(e, T)`` traverses ``e`` from
    tail to head, ``(e, H)`` the other way, and consecutive steps must chain
    at a common vertex.  A change happens at an intermediate vertex whose
    two incident steps disagree in end, i.e. where the walk turns from
    running with the arrows to running against them or back.  Endpoints of
    an open walk never count; a closed walk also pays at the seam.  With
    ``closed=None`` the walk is closed exactly when it returns to its
    starting vertex.
    """
    graph = g.graph if isinstance(g, Didrawing) else g
    try:
        steps = tuple(_as_dart(s) for s in walk)
    except (TypeError, ValueError) as exc:
        raise NotWalk(f"bad step in walk: {exc}") from None
    if not steps:
        raise NotWalk("empty walk")
    for s in steps:
        if not graph.has_edge(s.edge):
            raise NotWalk(f"edge {s.edge!r} is not in the graph")

    def depart(s: Dart) -> str:
        e = graph.edge(s.edge)
        return e.tail if s.end == TAIL else e.head

    def arrive(s: Dart) -> str:
        e = graph.edge(s.edge)
        return e.head if s.end == TAIL else e.tail

    for a, b in zip(steps, steps[1:]):
        if arrive(a) != depart(b):
            raise NotWalk(
                f"step {b} does not start where step {a} ends")
    returns = arrive(steps[-1]) == depart(steps[0])
    if closed is None:
        closed = returns
    elif closed and not returns:
        raise NotWalk("closed walk does not return to its start")

    pairs = list(zip(steps, steps[1:]))
    if closed:
        pairs.append((steps[-1], steps[0]))
    return sum(1 for a, b in pairs if a.end != b.end)


def _checked_bond(d: Didrawing, side_a: Iterable[str],
                  side_b: Iterable[str] | None) -> tuple[frozenset[str], frozenset[str], tuple[Edge, ...]]:
    g = d.graph
    verts = frozenset(g.vertices)
    va = frozenset(side_a)
    if not va <= verts:
        raise NotBond(f"unknown vertices {sorted(va - verts)}")
    if side_b is None:
        vb = verts - va
    else:
        vb = frozenset(side_b)
        if not vb <= verts:
            raise NotBond(f"unknown vertices {sorted(vb - verts)}")
        if (va | vb) != verts or (va & vb):
            raise NotBond("the two sides must partition the vertex set")
    if not va or not vb:
        raise NotBond("both sides of a bond are nonempty")
    if not g.induced(va).is_weakly_connected():
        raise NotBond("side A does not induce a connected subgraph")
    if not g.induced(vb).is_weakly_connected():
        raise NotBond("side B does not induce a connected subgraph")
    cut = tuple(e for e in g.edges if (e.tail in va) != (e.head in va))
    return va, vb, cut


def _bond_cycle(d: Didrawing, side_a: Iterable[str],
                side_b: Iterable[str] | None) -> tuple[DualMap, tuple[Dart, ...]]:
    _, _, cut = _checked_bond(d, side_a, side_b)
    dm = dual(d, "right")
    cut_ids = {e.id for e in cut}

    # stubs of cut edges around each dual vertex
    stubs: dict[str, list[Dart]] = {}
    for rid, darts in dm.dual.rotation.items():
        hit = [dd for dd in darts if dd.edge in cut_ids]
        if hit:
            if len(hit) != 2:
                raise NotBond(
                    f"region {rid} is crossed {len(hit)} times by the cut")
            stubs[rid] = hit

    start = Dart(min(cut_ids), TAIL)
    walk = [start]
    while True:
        cur = walk[-1]
        e = dm.dual.graph.edge(cur.edge)
        at = e.head if cur.end == TAIL else e.tail
        back = cur.reversed()
        pair = stubs[at]
        assert back in pair
        nxt = pair[0] if pair[1] == back else pair[1]
        if nxt == start:
            break
        walk.append(nxt)
        if len(walk) > len(cut_ids):
            raise NotBond("the cut edges do not form a single dual cycle")
    if len(walk) != len(cut_ids):
        raise NotBond("the cut edges do not form a single dual cycle")
    return dm, tuple(walk)


def bond_cycle(d: Didrawing, side_a: Iterable[str],
               side_b: Iterable[str] | None = None) -> tuple[Dart, ...]:
    """The closed walk in the right dual crossed by the bond (A, B).

    Steps are right-dual darts, so a step ``(e, T)`` leaves the region on
    the left of the primal edge ``e``.  The walk starts with the least cut
    edge id, traversed tail first.
    """
    return _bond_cycle(d, side_a, side_b)[1]


def bond_change_number(d: Didrawing, side_a: Iterable[str],
                       side_b: Iterable[str] | None = None) -> tuple[int, tuple[Dart, ...]]:
    """Change number of a bond and the dual cycle realizing it.

    Raises NotBond unless both sides are nonempty and induce weakly
    connected subgraphs partitioning the vertices.
    """
    dm, walk = _bond_cycle(d, side_a, side_b)
    return change_number(dm.dual, walk, closed=True), walk


def cut_change_number(d: Didrawing, edge_ids: Iterable[str]) -> int:
    """Change number of an edge cut, computed region by region.

    A region crossed by exactly two cut edges is a change region iff the
    two orbit darts of the cut there have equal ends; the count of change
    regions equals the change number of the dual cycle, and this form needs
    no dual construction.  Works whenever every region is crossed 0 or 2
    times, which covers all bonds and disjoint unions of bonds; otherwise
    the pairing of crossings is ambiguous and NotBond is raised.
    """
    cut = frozenset(edge_ids)
    for eid in cut:
        e = d.graph.edge(eid)
        if e.is_loop:
            raise NotBond(f"loop {eid!r} cannot lie in a cut")
    n = 0
    for r in d.regions:
        hit = [dd for dd in r.darts if dd.edge in cut]
        if not hit:
            continue
        if len(hit) != 2:
            raise NotBond(f"region {r.id} is crossed {len(hit)} times by the cut")
        if hit[0].end == hit[1].end:
            n += 1
    return n
