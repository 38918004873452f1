"""Carvings and the two width measures of a didrawing.

Diwidth carves the vertex set: every tree edge of the carving must cut a
bond, and the bond's change number is what the carving pays.  Dart width
carves the darts: every tree edge must induce a partition obtainable from
a good curve, a simple closed curve meeting each edge at most once and
each region in at most a single arc, and the payment is the curve cost
(change regions plus vertices the curve passes through).

Good curves are handled combinatorially.  A curve is an alternating
cycle through the incidence structure of the drawing: region, portal,
region, portal, ..., where a portal is either an edge (crossed at an
interior point) or a vertex (passed through), no node repeating.  At a
passed vertex the curve enters and leaves through two corners, and that
choice matters, so curves are enumerated per corner pair.  The two sides
of the curve are recovered by 2-coloring the half-edge and corner atoms
of the drawing; darts read their side directly off their half-edge atom.
"""

from __future__ import annotations

import itertools
from collections import deque
from collections.abc import Hashable, Iterable, Iterator, Mapping
from dataclasses import dataclass
from types import MappingProxyType

from .core import HEAD, TAIL, Dart, Didrawing
from .duality import bond_change_number
from .errors import (
    CutEdge,
    HasLoop,
    NotBond,
    NotTwoWeak,
    ScaleExceeded,
    TransferCostExceeded,
)

__all__ = [
    "Carving",
    "DartPartition",
    "GoodCurve",
    "dart_width_exact",
    "dart_width_via_blowup",
    "diwidth_exact",
    "diwidth_greedy",
    "enumerate_good_curves",
    "validate_carving",
    "verify_bond_carving",
    "verify_dart_carving",
]

_INF = float("inf")


# -- carvings --------------------------------------------------------------


@dataclass(frozen=True)
class Carving:
    """A ternary tree whose leaves are in bijection with a ground set.

    ``edges`` lists the undirected tree edges over integer node ids and
    ``leaf_map`` sends each ground element to its leaf node.  Every tree
    edge splits the ground set in two; ``width`` is the maximum payment
    over those splits under whichever measure produced the carving.
    """

    edges: tuple[tuple[int, int], ...]
    leaf_map: Mapping[Hashable, int]
    width: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges",
                           tuple((int(a), int(b)) for a, b in self.edges))
        object.__setattr__(self, "leaf_map",
                           MappingProxyType(dict(self.leaf_map)))

    @property
    def nodes(self) -> tuple[int, ...]:
        return tuple(sorted({x for e in self.edges for x in e}))

    @property
    def leaves(self) -> tuple[int, ...]:
        deg = _degrees(self.edges)
        return tuple(sorted(x for x, k in deg.items() if k == 1))

    def partitions(self) -> Iterator[tuple[frozenset, frozenset]]:
        """The ground-set bipartition of each tree edge, in edge order.

        The first side is the one containing the ground elements whose
        leaves fall on the edge's listed tail endpoint.
        """
        yield from _edge_partitions(self.edges, self.leaf_map)

    def rooted_parents(self, root: int | None = None) -> dict[int, int | None]:
        """Parent-array form: every node mapped to its parent, root to None."""
        if root is None:
            root = min(x for e in self.edges for x in e)
        adj: dict[int, list[int]] = {}
        for a, b in self.edges:
            adj.setdefault(a, []).append(b)
            adj.setdefault(b, []).append(a)
        parents: dict[int, int | None] = {root: None}
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in sorted(adj.get(x, ())):
                if y not in parents:
                    parents[y] = x
                    queue.append(y)
        return parents


def _degrees(edges: Iterable[tuple[int, int]]) -> dict[int, int]:
    deg: dict[int, int] = {}
    for a, b in edges:
        deg[a] = deg.get(a, 0) + 1
        deg[b] = deg.get(b, 0) + 1
    return deg


def _edge_partitions(edges: tuple[tuple[int, int], ...],
                     leaf_map: Mapping[Hashable, int],
                     ) -> Iterator[tuple[frozenset, frozenset]]:
    by_leaf: dict[int, list[Hashable]] = {}
    for x, leaf in leaf_map.items():
        by_leaf.setdefault(leaf, []).append(x)
    adj: dict[int, list[int]] = {}
    for a, b in edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    ground = frozenset(leaf_map)
    for a, b in edges:
        seen = {a, b}
        queue = deque([a])
        side: set[Hashable] = set(by_leaf.get(a, ()))
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in seen and not (x == a and y == b):
                    seen.add(y)
                    side.update(by_leaf.get(y, ()))
                    queue.append(y)
        fs = frozenset(side)
        yield fs, ground - fs


def validate_carving(c: Carving, ground: Iterable[Hashable]) -> list[str]:
    """Structural defects of a carving over the given ground set, if any."""
    reasons: list[str] = []
    want = set(ground)
    if len(want) < 2:
        reasons.append("a carving needs a ground set of at least two elements")
    if set(c.leaf_map) != want:
        reasons.append("leaf_map keys do not match the ground set")
    if len(set(c.leaf_map.values())) != len(c.leaf_map):
        reasons.append("leaf_map is not injective")
    nodes = {x for e in c.edges for x in e}
    if len(c.edges) != len(set(c.edges)) or any(a == b for a, b in c.edges):
        reasons.append("tree edges repeat or loop")
    if len(c.edges) != len(nodes) - 1:
        reasons.append("edge count does not match a tree")
    else:
        seen = {min(nodes)}
        queue = deque(seen)
        adj: dict[int, list[int]] = {}
        for a, b in c.edges:
            adj.setdefault(a, []).append(b)
            adj.setdefault(b, []).append(a)
        while queue:
            x = queue.popleft()
            for y in adj.get(x, ()):
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        if seen != nodes:
            reasons.append("tree edges are not connected")
    deg = _degrees(c.edges)
    bad = sorted(x for x in nodes if deg[x] not in (1, 3))
    if bad:
        reasons.append(f"nodes {bad} have degree other than 1 or 3")
    leaves = {x for x in nodes if deg.get(x) == 1}
    if set(c.leaf_map.values()) != leaves:
        reasons.append("leaf_map image does not match the degree-1 nodes")
    if c.width < 0:
        reasons.append("width is negative")
    return reasons


def _leaf_trees(n: int) -> Iterator[tuple[tuple[int, int], ...]]:
    """All ternary trees with leaves 0..n-1, in canonical insertion order.

    The two-leaf tree is the single edge (0, 1).  Leaf k is attached by
    subdividing each edge of the (k-1)-leaf tree in list order with a
    fresh internal node; the subdivided halves replace the old edge in
    place and the new leaf edge is appended.  This yields the classical
    double-factorial count and a stable order for regression pins.
    """
    if n < 2:
        raise ValueError("leaf trees need at least two leaves")
    if n == 2:
        yield ((0, 1),)
        return

    def rec(k: int, edges: list[tuple[int, int]], nxt: int,
            ) -> Iterator[tuple[tuple[int, int], ...]]:
        if k == n:
            yield tuple(edges)
            return
        for i in range(len(edges)):
            a, b = edges[i]
            mid = nxt
            grown = edges[:i] + [(a, mid), (mid, b)] + edges[i + 1:] + [(mid, k)]
            yield from rec(k + 1, grown, nxt + 1)

    yield from rec(2, [(0, 1)], n)


def _edge_leaf_sides(edges: tuple[tuple[int, int], ...], n_leaves: int,
                     ) -> list[frozenset[int]]:
    """Per tree edge, the set of leaf ids on the side of its listed tail."""
    adj: dict[int, list[int]] = {}
    for a, b in edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    sides = []
    for a, b in edges:
        seen = {a, b}
        queue = deque([a])
        leaves = {a} if a < n_leaves else set()
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in seen and not (x == a and y == b):
                    seen.add(y)
                    if y < n_leaves:
                        leaves.add(y)
                    queue.append(y)
        sides.append(frozenset(leaves))
    return sides


# -- diwidth ---------------------------------------------------------------


class _BondCost:
    """Memoized bond change number; None marks sides that cut no bond."""

    def __init__(self, d: Didrawing):
        self.d = d
        self.all = frozenset(d.graph.vertices)
        self.memo: dict[frozenset[str], int | None] = {}

    def __call__(self, side: frozenset[str]) -> int | None:
        if side in self.memo:
            return self.memo[side]
        try:
            c, _ = bond_change_number(self.d, side)
        except NotBond:
            c = None
        self.memo[side] = c
        self.memo[self.all - side] = c
        return c


def _check_diwidth_input(d: Didrawing) -> None:
    if d.graph.has_loops:
        raise HasLoop("diwidth is defined for loopless didrawings")
    if d.graph.n < 2:
        raise NotTwoWeak("diwidth needs at least two vertices")
    if not d.graph.is_k_weak(2):
        raise NotTwoWeak("the underlying graph is not 2-connected, "
                         "so no vertex bipartition cuts a bond carving")


def diwidth_exact(d: Didrawing) -> tuple[int, Carving]:
    """Minimum over all bond carvings of the vertex set, with a witness.

    Every ternary tree over the vertices is enumerated in the canonical
    order of ``_leaf_trees``; a tree is admissible when each of its edge
    cuts is a bond, and it pays the largest bond change number among
    them.  The witness is the first admissible tree attaining the
    minimum.  Only desk-size inputs are accepted: 8 vertices mean 10395
    trees, one more vertex would mean 135135.
    """
    _check_diwidth_input(d)
    n = d.graph.n
    if n > 8:
        raise ScaleExceeded(
            f"diwidth_exact enumerates all carvings of at most 8 vertices, got {n}")
    verts = sorted(d.graph.vertices)
    cost = _BondCost(d)
    side_cost: dict[frozenset[int], int | None] = {}

    def leaf_side_cost(side: frozenset[int]) -> int | None:
        if side not in side_cost:
            side_cost[side] = cost(frozenset(verts[i] for i in side))
        return side_cost[side]

    best_w: int | None = None
    best_edges: tuple[tuple[int, int], ...] | None = None
    for edges in _leaf_trees(n):
        w = 0
        for side in _edge_leaf_sides(edges, n):
            c = leaf_side_cost(side)
            if c is None or (best_w is not None and max(w, c) >= best_w):
                w = -1
                break
            w = max(w, c)
        if w >= 0 and (best_w is None or w < best_w):
            best_w, best_edges = w, edges
    assert best_w is not None and best_edges is not None, \
        "a 2-weak didrawing always admits a bond carving"
    leaf_map = {verts[i]: i for i in range(n)}
    return best_w, Carving(best_edges, leaf_map, best_w)


def verify_bond_carving(d: Didrawing, c: Carving, k: int | None = None, *,
                        reasons: list[str] | None = None) -> bool:
    """Check that every tree-edge cut of c is a bond, within budget k."""
    if reasons is None:
        reasons = []
    reasons.extend(validate_carving(c, d.graph.vertices))
    if not reasons:
        cost = _BondCost(d)
        worst = 0
        for a, b in c.partitions():
            got = cost(a)
            if got is None:
                reasons.append(f"the cut at {sorted(a)} is not a bond")
            else:
                worst = max(worst, got)
        if not reasons:
            if k is not None and worst > k:
                reasons.append(f"largest change number {worst} exceeds budget {k}")
            if worst > c.width:
                reasons.append(
                    f"largest change number {worst} exceeds declared width {c.width}")
    return not reasons


def diwidth_greedy(d: Didrawing, k: int) -> Carving | None:
    """Try to build a bond carving of change number at most k, greedily.

    The carving starts from a star split at the first vertex whose star
    is a bond within budget, then repeatedly splits a leaf class A with
    two or more vertices.  A split is found by walking the dual disc of
    A's bond: a shortest simple path of dual edges interior to the disc,
    with distinct ends on the disc boundary, tears A into two classes,
    and the split is kept when both new cuts are bonds within budget.
    Success returns a verified carving; None means no split was found,
    which carries no certificate that none exists.
    """
    _check_diwidth_input(d)
    if k < 0:
        return None
    verts = sorted(d.graph.vertices)
    cost = _BondCost(d)

    seed = None
    for v in verts:
        c0 = cost(frozenset((v,)))
        if c0 is not None and c0 <= k:
            seed = v
            break
    if seed is None:
        return None

    edges: list[tuple[int, int]] = [(0, 1)]
    classes: dict[int, frozenset[str]] = {
        0: frozenset((seed,)),
        1: frozenset(verts) - {seed},
    }
    nxt = 2
    while True:
        big = sorted(t for t, cl in classes.items() if len(cl) >= 2)
        if not big:
            break
        t = big[0]
        split = _disc_split(d, classes[t], k, cost)
        if split is None:
            return None
        a1, a2 = split
        edges.append((t, nxt))
        edges.append((t, nxt + 1))
        classes[nxt], classes[nxt + 1] = a1, a2
        del classes[t]
        nxt += 2

    leaf_map = {next(iter(cl)): t for t, cl in classes.items()}
    width = 0
    for side, _ in _edge_partitions(tuple(edges), leaf_map):
        got = cost(side)
        assert got is not None
        width = max(width, got)
    carving = Carving(tuple(edges), leaf_map, width)
    assert verify_bond_carving(d, carving, k)
    return carving


def _disc_split(d: Didrawing, cls: frozenset[str], k: int, cost: _BondCost,
                ) -> tuple[frozenset[str], frozenset[str]] | None:
    """Split one carving class along a dual path through its disc."""
    g = d.graph
    internal = sorted(e.id for e in g.edges
                      if e.tail in cls and e.head in cls)
    internal_set = set(internal)
    cut = {e.id for e in g.edges if (e.tail in cls) != (e.head in cls)}

    boundary: set[str] = set()
    inside: set[str] = set()
    for r in d.regions:
        eids = set(r.edge_ids)
        if eids & cut:
            boundary.add(r.id)
        elif eids and eids <= internal_set:
            inside.add(r.id)

    adj: dict[str, list[tuple[str, str]]] = {}
    for eid in internal:
        lt, rt = d.left(eid).id, d.right(eid).id
        adj.setdefault(lt, []).append((eid, rt))
        adj.setdefault(rt, []).append((eid, lt))
    for lst in adj.values():
        lst.sort()

    def paths(limit: int) -> Iterator[tuple[str, ...]]:
        # Fixed-length simple paths; each level yields fresh paths only.
        for start in sorted(boundary):

            def walk(at: str, used_r: set[str], used_e: list[str],
                     ) -> Iterator[tuple[str, ...]]:
                for eid, other in adj.get(at, ()):
                    if eid in used_e:
                        continue
                    if len(used_e) + 1 == limit:
                        if other in boundary and other > start:
                            yield tuple(used_e) + (eid,)
                        continue
                    if other in inside and other not in used_r:
                        used_r.add(other)
                        used_e.append(eid)
                        yield from walk(other, used_r, used_e)
                        used_e.pop()
                        used_r.remove(other)

            yield from walk(start, {start}, [])

    for limit in range(1, len(internal) + 1):
        for path in paths(limit):
            a1, a2 = _split_by_path(d, cls, internal, path)
            c1 = cost(a1)
            if c1 is None or c1 > k:
                continue
            c2 = cost(a2)
            if c2 is None or c2 > k:
                continue
            return a1, a2
    return None


def _split_by_path(d: Didrawing, cls: frozenset[str], internal: list[str],
                   path: tuple[str, ...],
                   ) -> tuple[frozenset[str], frozenset[str]]:
    """2-color the class: crossing a path edge flips sides, others do not."""
    crossed = set(path)
    nbrs: dict[str, list[tuple[str, int]]] = {v: [] for v in cls}
    for eid in internal:
        e = d.graph.edge(eid)
        flip = 1 if eid in crossed else 0
        nbrs[e.tail].append((e.head, flip))
        nbrs[e.head].append((e.tail, flip))
    color = {min(cls): 0}
    queue = deque([min(cls)])
    while queue:
        x = queue.popleft()
        for y, flip in nbrs[x]:
            want = color[x] ^ flip
            if y not in color:
                color[y] = want
                queue.append(y)
            else:
                assert color[y] == want, "dual path fails to split the disc"
    assert len(color) == len(cls)
    a1 = frozenset(v for v, c in color.items() if c == 0)
    return a1, cls - a1


# -- good curves -----------------------------------------------------------


@dataclass(frozen=True)
class GoodCurve:
    """One enumerated curve: its incidence cycle plus corner choices.

    ``cycle`` alternates ("region", id) with portal nodes ("edge", id) or
    ("vertex", id), starting at the least region.  ``corners`` holds, for
    each passed vertex, the rotation slots of the corner the curve enters
    through and the corner it leaves through.
    """

    cycle: tuple[tuple[str, str], ...]
    corners: Mapping[str, tuple[int, int]]

    def __post_init__(self) -> None:
        object.__setattr__(self, "cycle",
                           tuple((str(k), str(x)) for k, x in self.cycle))
        object.__setattr__(self, "corners",
                           MappingProxyType(dict(self.corners)))

    @property
    def regions(self) -> tuple[str, ...]:
        return tuple(x for kind, x in self.cycle if kind == "region")

    @property
    def crossed_edges(self) -> tuple[str, ...]:
        return tuple(x for kind, x in self.cycle if kind == "edge")

    @property
    def vertices(self) -> tuple[str, ...]:
        return tuple(x for kind, x in self.cycle if kind == "vertex")


@dataclass(frozen=True)
class DartPartition:
    """The two dart sides of a good curve and the curve's cost.

    Cost counts the change regions (regions whose two crossing edges
    head to opposite sides) plus the vertices the curve passes through.
    The side holding the least dart is stored first.
    """

    d1: frozenset[Dart]
    d2: frozenset[Dart]
    cost: int

    @property
    def key(self) -> frozenset[frozenset[Dart]]:
        return frozenset((self.d1, self.d2))


def _check_curve_input(d: Didrawing) -> None:
    if d.graph.has_loops:
        raise HasLoop("good curves are defined for loopless didrawings")
    if d.graph.m == 0:
        raise CutEdge("an edgeless didrawing admits no good curves")
    bridges = d.graph.bridges()
    if bridges:
        raise CutEdge(f"cut edges {sorted(bridges)} admit no sensible partition")
    if not d.graph.is_weakly_two_edge_connected():
        raise CutEdge("the didrawing is not weakly 2-edge-connected")


def _corner(v: str, slot: int) -> tuple[str, str, int]:
    return ("c", v, slot)


class _Atoms:
    """Half-edge and corner atoms of a drawing, with their cyclic layouts.

    Each region owns the cyclic atom walk along its boundary: the two
    halves of every boundary edge in traversal order, then the corner at
    the far vertex.  Each vertex owns its fan: the half-edge at each
    rotation slot followed by the corner after it.  A curve cuts these
    cycles at its portals, and the cut chains 2-color into the curve's
    two sides.
    """

    def __init__(self, d: Didrawing):
        self.d = d
        self.slot_of: dict[Dart, int] = {}
        for v, rot in d.rotation.items():
            for i, dd in enumerate(rot):
                self.slot_of[dd] = i

        # region id -> (atom list, edge id -> gap index, corner atom -> index)
        self.region_atoms: dict[str, tuple[list, dict[str, int], dict[tuple, int]]] = {}
        for r in d.regions:
            atoms: list = []
            edge_gap: dict[str, int] = {}
            corner_at: dict[tuple, int] = {}
            for q in r.darts:
                first = q
                second = q.reversed()
                atoms.append(first)
                edge_gap[q.edge] = len(atoms) - 1
                atoms.append(second)
                v = d.dart_vertex(second)
                corner = _corner(v, self.slot_of[second])
                corner_at[corner] = len(atoms)
                atoms.append(corner)
            self.region_atoms[r.id] = (atoms, edge_gap, corner_at)

        # vertex -> fan atom list: half at slot i, then corner (v, i)
        self.fans: dict[str, list] = {}
        for v, rot in d.rotation.items():
            fan: list = []
            for i, dd in enumerate(rot):
                fan.append(dd)
                fan.append(_corner(v, i))
            self.fans[v] = fan

        # corner slots of each vertex grouped by the region they open into
        self.corner_slots: dict[str, dict[str, list[int]]] = {}
        for v, rot in d.rotation.items():
            per: dict[str, list[int]] = {}
            for i in range(len(rot)):
                per.setdefault(d.corner_region(v, i).id, []).append(i)
            self.corner_slots[v] = per


def _cyclic_chains(atoms: list, gap_after: set[int], cut_at: set[int],
                   ) -> list[list]:
    """Chains of a cyclic atom list cut at gaps and at removed atoms."""
    n = len(atoms)
    breaks: set[int] = set(gap_after)
    for i in cut_at:
        breaks.add(i)
        breaks.add((i - 1) % n)
    if not breaks:
        return [atoms[:]]
    marks = sorted(breaks)
    chains: list[list] = []
    for j, start_gap in enumerate(marks):
        end_gap = marks[(j + 1) % len(marks)]
        chain: list = []
        i = (start_gap + 1) % n
        while True:
            if i not in cut_at:
                chain.append(atoms[i])
            if i == end_gap:
                break
            i = (i + 1) % n
        if chain:
            chains.append(chain)
    return chains


def _curve_partition(d: Didrawing, atoms: _Atoms,
                     cycle: tuple[tuple[str, str], ...],
                     corners: dict[str, tuple[int, int]],
                     ) -> DartPartition | None:
    """Side assignment and cost for one curve; None when a side is empty.

    Constraints: atoms consecutive in an uncut chain share a side, the
    two chains of a cut cycle take opposite sides, an uncrossed edge
    keeps its halves together and a crossed edge separates them.  The
    constraint graph must 2-color; anything else is a bug, not an input
    condition, hence the asserts.
    """
    entries = [x for x in cycle if x[0] != "region"]
    region_seq = [x for x in cycle if x[0] == "region"]
    crossed = {x for kind, x in cycle if kind == "edge"}
    passed = {x for kind, x in cycle if kind == "vertex"}

    # region id -> its two portals, each ("edge", eid) or corner atom
    portals: dict[str, list] = {rid: [] for _, rid in
                                (x for x in cycle if x[0] == "region")}
    k = len(entries)
    for i, (kind, x) in enumerate(entries):
        before = region_seq[i][1]
        after = region_seq[(i + 1) % k][1]
        if kind == "edge":
            portals[before].append(("edge", x))
            portals[after].append(("edge", x))
        else:
            slot_in, slot_out = corners[x]
            portals[before].append(_corner(x, slot_in))
            portals[after].append(_corner(x, slot_out))

    same: list[tuple] = []
    opposite: list[tuple] = []

    for rid, (alist, edge_gap, corner_at) in atoms.region_atoms.items():
        if rid in portals:
            gaps: set[int] = set()
            cuts: set[int] = set()
            for p in portals[rid]:
                if p[0] == "edge":
                    gaps.add(edge_gap[p[1]])
                else:
                    cuts.add(corner_at[p])
            chains = _cyclic_chains(alist, gaps, cuts)
            assert len(chains) == 2, \
                f"curve arc must cut region {rid} into two boundary chains"
            for chain in chains:
                same.extend(zip(chain, chain[1:]))
            opposite.append((chains[0][0], chains[1][0]))
        else:
            for a, b in zip(alist, alist[1:]):
                same.append((a, b))
            same.append((alist[-1], alist[0]))

    for v, fan in atoms.fans.items():
        if v in passed:
            slot_in, slot_out = corners[v]
            cuts = {fan.index(_corner(v, slot_in)),
                    fan.index(_corner(v, slot_out))}
            chains = _cyclic_chains(fan, set(), cuts)
            assert len(chains) == 2, \
                f"curve must split the rotation fan at {v} in two"
            for chain in chains:
                same.extend(zip(chain, chain[1:]))
            opposite.append((chains[0][0], chains[1][0]))
        else:
            for a, b in zip(fan, fan[1:]):
                same.append((a, b))
            same.append((fan[-1], fan[0]))

    for e in d.graph.edges:
        pair = (Dart(e.id, TAIL), Dart(e.id, HEAD))
        (opposite if e.id in crossed else same).append(pair)

    nbrs: dict[object, list[tuple[object, int]]] = {}
    for a, b in same:
        nbrs.setdefault(a, []).append((b, 0))
        nbrs.setdefault(b, []).append((a, 0))
    for a, b in opposite:
        nbrs.setdefault(a, []).append((b, 1))
        nbrs.setdefault(b, []).append((a, 1))

    color: dict[object, int] = {}
    for seed in nbrs:
        if seed in color:
            continue
        color[seed] = 0
        queue = deque([seed])
        while queue:
            x = queue.popleft()
            for y, flip in nbrs[x]:
                want = color[x] ^ flip
                if y not in color:
                    color[y] = want
                    queue.append(y)
                else:
                    assert color[y] == want, "curve sides fail to 2-color"

    all_darts = d.darts
    assert all(dd in color for dd in all_darts)
    side0 = frozenset(dd for dd in all_darts if color[dd] == 0)
    side1 = frozenset(all_darts) - side0
    if not side0 or not side1:
        return None

    changes = 0
    for rid, plist in portals.items():
        if all(p[0] == "edge" for p in plist):
            e, f = plist[0][1], plist[1][1]
            if color[Dart(e, HEAD)] != color[Dart(f, HEAD)]:
                changes += 1
    cost = changes + len(passed)

    least = min(all_darts)
    d1, d2 = (side0, side1) if least in side0 else (side1, side0)
    return DartPartition(d1, d2, cost)


def enumerate_good_curves(d: Didrawing,
                          ) -> Iterator[tuple[GoodCurve, DartPartition]]:
    """All good curves of the drawing with their dart partitions.

    Curves are produced as alternating incidence cycles: regions
    interleaved with portals (a crossed edge or a passed vertex), no
    node twice.  Cycles start at their least region and run toward the
    smaller of the two neighboring portals, so each curve appears once
    per choice of corners at its passed vertices.  Curves whose sides
    carry no darts are dropped: both sides of a dart partition must be
    inhabited.  Distinct curves may induce the same partition; their
    costs are asserted equal, the cost is a function of the partition.
    """
    _check_curve_input(d)
    atoms = _Atoms(d)

    edge_flank = {e.id: (d.left(e.id).id, d.right(e.id).id)
                  for e in d.graph.edges}
    # portal node -> regions it can sit between
    portal_regions: dict[tuple[str, str], tuple[str, ...]] = {}
    for eid, (lt, rt) in edge_flank.items():
        portal_regions[("edge", eid)] = (lt, rt)
    for v, per in atoms.corner_slots.items():
        if len(per) >= 2:
            portal_regions[("vertex", v)] = tuple(sorted(per))
    by_region: dict[str, list[tuple[str, str]]] = {}
    for node, rids in portal_regions.items():
        for rid in set(rids):
            by_region.setdefault(rid, []).append(node)
    for lst in by_region.values():
        lst.sort()

    seen_costs: dict[frozenset[frozenset[Dart]], int] = {}

    def emit(cycle: list[tuple[str, str]],
             ) -> Iterator[tuple[GoodCurve, DartPartition]]:
        verts = [x for kind, x in cycle if kind == "vertex"]
        region_seq = [x for x in cycle if x[0] == "region"]
        entries = [x for x in cycle if x[0] != "region"]
        choice_sets = []
        for x in verts:
            i = next(j for j, node in enumerate(entries) if node == ("vertex", x))
            before = region_seq[i][1]
            after = region_seq[(i + 1) % len(entries)][1]
            pairs = [(slot_in, slot_out)
                     for slot_in in atoms.corner_slots[x][before]
                     for slot_out in atoms.corner_slots[x][after]]
            if before == after:
                # one-portal cycle: unordered distinct corners of one region
                pairs = [(a, b) for a, b in pairs if a < b]
            choice_sets.append([(x, p) for p in pairs])
        for combo in itertools.product(*choice_sets):
            corners = dict(combo)
            part = _curve_partition(d, atoms, tuple(cycle), corners)
            if part is None:
                continue
            prev = seen_costs.setdefault(part.key, part.cost)
            assert prev == part.cost, \
                "two curves with one partition disagree on cost"
            yield GoodCurve(tuple(cycle), corners), part

    regions = sorted(r.id for r in d.regions)
    for start in regions:
        # one-portal cycles: through a vertex with two corners on `start`,
        # both arcs inside it; the only legal revisit of a region
        for v in sorted(atoms.corner_slots):
            if len(atoms.corner_slots[v].get(start, ())) >= 2:
                yield from emit([("region", start), ("vertex", v)])

        # cycles of two or more portals whose least region is `start`
        path: list[tuple[str, str]] = [("region", start)]
        used_r = {start}
        used_p: set[tuple[str, str]] = set()

        def grow(cur: str) -> Iterator[tuple[GoodCurve, DartPartition]]:
            for node in by_region.get(cur, ()):
                if node in used_p:
                    continue
                flank = portal_regions[node]
                if len(used_p) >= 1 and start in flank and node > path[1]:
                    yield from emit(path + [node])
                for rid in flank:
                    if rid <= start or rid in used_r or \
                            (node[0] == "edge" and rid == cur):
                        continue
                    if node[0] == "vertex" and rid == cur:
                        continue
                    used_p.add(node)
                    used_r.add(rid)
                    path.append(node)
                    path.append(("region", rid))
                    yield from grow(rid)
                    path.pop()
                    path.pop()
                    used_r.remove(rid)
                    used_p.remove(node)

        yield from grow(start)


def _sensible_table(d: Didrawing) -> dict[frozenset[frozenset[Dart]], int]:
    """Partition key -> cost over every good curve of the drawing."""
    table: dict[frozenset[frozenset[Dart]], int] = {}
    for _, part in enumerate_good_curves(d):
        prev = table.setdefault(part.key, part.cost)
        assert prev == part.cost
    return table


# -- dart width ------------------------------------------------------------


def _carve_dp(ground: tuple, cost_of) -> tuple[float, object]:
    """Min-max carving value by subset recursion.

    cost_of maps a side (frozenset over ground) to its payment, or None
    when the side is inadmissible.  Returns the optimum (inf when no
    carving is admissible) and the memoized subtree evaluator, which
    witness reconstruction may query for any subset.
    """
    memo: dict[frozenset, float] = {}

    def rec(A: frozenset) -> float:
        """Best width of a carving subtree over A; its own top cut excluded."""
        if len(A) <= 1:
            return 0
        if A in memo:
            return memo[A]
        order = sorted(A)
        pivot = order[0]
        rest = order[1:]
        best = _INF
        for r in range(len(rest)):
            for extra in itertools.combinations(rest, r):
                B = frozenset((pivot, *extra))
                C = A - B
                cb = cost_of(B)
                if cb is None or cb >= best:
                    continue
                cc = cost_of(C)
                if cc is None or cc >= best:
                    continue
                w = max(cb, cc, rec(B))
                if w >= best:
                    continue
                w = max(w, rec(C))
                if w < best:
                    best = w
        memo[A] = best
        return best

    S = frozenset(ground)
    if len(S) < 2:
        raise ValueError("carvings need at least two ground elements")
    top = _INF
    order = sorted(S)
    pivot = order[0]
    rest = order[1:]
    for r in range(len(rest)):
        for extra in itertools.combinations(rest, r):
            B = frozenset((pivot, *extra))
            C = S - B
            cb = cost_of(B)
            if cb is None or cb >= top:
                continue
            w = max(cb, rec(B))
            if w >= top:
                continue
            w = max(w, rec(C))
            if w < top:
                top = w
    return top, rec


def _carve_witness(ground: tuple, cost_of, rec, target: float, admissible=None,
                   ) -> tuple[tuple[tuple[int, int], ...], dict] | None:
    """First carving of value at most target, splits in canonical order.

    ``rec`` is the subtree evaluator from ``_carve_dp``.  ``admissible``
    further restricts every side used (on top of cost_of being within
    target); the search backtracks across split choices, so None means
    no carving within target satisfies the restriction.
    """
    S = frozenset(ground)
    order = sorted(S)
    leaf_id = {x: i for i, x in enumerate(order)}
    dead: set[frozenset] = set()

    def g(A: frozenset) -> float:
        if len(A) <= 1:
            return 0
        return rec(A)

    def ok(side: frozenset) -> bool:
        c = cost_of(side)
        if c is None or c > target:
            return False
        return admissible is None or admissible(side)

    counter = itertools.count(len(order))

    def build(A: frozenset) -> tuple[int, list[tuple[int, int]]] | None:
        if len(A) == 1:
            return leaf_id[next(iter(A))], []
        if A in dead:
            return None
        aorder = sorted(A)
        pivot = aorder[0]
        rest = aorder[1:]
        for r in range(len(rest)):
            for extra in itertools.combinations(rest, r):
                B = frozenset((pivot, *extra))
                C = A - B
                if g(B) > target or g(C) > target:
                    continue
                if not ok(B) or not ok(C):
                    continue
                sub_b = build(B)
                if sub_b is None:
                    continue
                sub_c = build(C)
                if sub_c is None:
                    continue
                root_b, edges_b = sub_b
                root_c, edges_c = sub_c
                node = next(counter)
                return node, edges_b + edges_c + [(node, root_b), (node, root_c)]
        dead.add(A)
        return None

    pivot = order[0]
    rest = order[1:]
    for r in range(len(rest)):
        for extra in itertools.combinations(rest, r):
            B = frozenset((pivot, *extra))
            C = S - B
            if g(B) > target or g(C) > target:
                continue
            if not ok(B):
                continue
            sub_b = build(B)
            if sub_b is None:
                continue
            sub_c = build(C)
            if sub_c is None:
                continue
            root_b, edges_b = sub_b
            root_c, edges_c = sub_c
            edges = tuple(edges_b + edges_c + [(root_b, root_c)])
            return edges, {x: leaf_id[x] for x in order}
    return None


def dart_width_exact(d: Didrawing) -> tuple[int, Carving]:
    """Minimum over dart carvings whose every split some good curve makes.

    The full curve enumeration is materialized into a partition-to-cost
    table, then a min-max subset recursion finds the cheapest carving of
    the dart set all of whose tree-edge partitions appear in the table.
    The recursion visits exponentially many dart subsets, so inputs are
    capped at 6 edges (12 darts); the literal tree-by-tree enumeration
    used for diwidth would need 654 million trees at that size.
    """
    _check_curve_input(d)
    if d.graph.m > 6:
        raise ScaleExceeded(
            f"dart_width_exact handles at most 6 edges, got {d.graph.m}")
    darts = d.darts
    table = _sensible_table(d)
    S = frozenset(darts)

    def cost_of(side: frozenset) -> int | None:
        return table.get(frozenset((side, S - side)))

    value, rec = _carve_dp(darts, cost_of)
    assert value != _INF, \
        "every loopless weakly 2-edge-connected didrawing has sliver splits"
    built = _carve_witness(darts, cost_of, rec, value)
    assert built is not None
    edges, leaf_map = built
    carving = Carving(edges, leaf_map, int(value))
    assert verify_dart_carving(d, carving)
    return int(value), carving


def verify_dart_carving(d: Didrawing, c: Carving, *,
                        max_cost: int | None = None,
                        reasons: list[str] | None = None) -> bool:
    """Check every tree-edge partition of c against the good-curve table."""
    if reasons is None:
        reasons = []
    reasons.extend(validate_carving(c, d.darts))
    if not reasons:
        table = _sensible_table(d)
        worst = 0
        for a, b in c.partitions():
            got = table.get(frozenset((a, b)))
            if got is None:
                reasons.append(
                    f"no good curve induces the split of {sorted(a)}")
            else:
                worst = max(worst, got)
        if not reasons:
            budget = c.width if max_cost is None else max_cost
            if worst > budget:
                reasons.append(f"largest cost {worst} exceeds {budget}")
    return not reasons


def dart_width_via_blowup(d: Didrawing) -> tuple[int, Carving]:
    """Upper bound on dart width through the blowup construction.

    The drawing's blowup J has one vertex per dart, and a bond carving
    of V(J) reads directly as a dart carving of the original.  The bound
    returned is the diwidth of J, computed by the subset recursion; the
    witness is rebuilt among the optimal carvings so that every tree
    edge also transfers to a good-curve partition, and the transfer is
    validated by ``transfer_carving``.  A failure to find a transferable
    optimal carving raises TransferCostExceeded: the bound claim would
    be unwitnessed, which indicates a bug rather than an input defect.
    """
    _check_curve_input(d)
    if d.graph.m > 8:
        raise ScaleExceeded(
            f"dart_width_via_blowup handles at most 8 edges, got {d.graph.m}")
    from .blowup import blow_up, transfer_carving

    b = blow_up(d)
    j = b.J
    jverts = tuple(sorted(j.graph.vertices))
    jcost = _BondCost(j)

    def cost_of(side: frozenset) -> int | None:
        return jcost(side)

    value, rec = _carve_dp(jverts, cost_of)
    assert value != _INF, "a blowup always admits bond carvings"
    width = int(value)

    table = _sensible_table(d)
    inv = {jv: dart for dart, jv in b.dart_map.items()}
    all_darts = frozenset(inv.values())

    def transfers(side: frozenset) -> bool:
        image = frozenset(inv[x] for x in side)
        got = table.get(frozenset((image, all_darts - image)))
        return got is not None and got <= width

    built = _carve_witness(jverts, cost_of, rec, width, admissible=transfers)
    if built is None:
        raise TransferCostExceeded(
            f"no optimal carving of the blowup (width {width}) transfers to "
            "good-curve partitions; the transfer argument promises one")
    edges, leaf_map = built
    j_carving = Carving(edges, leaf_map, width)
    assert verify_bond_carving(j, j_carving, width)
    return width, transfer_carving(b, j_carving)
