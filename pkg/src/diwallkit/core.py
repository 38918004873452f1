"""Didrawings: digraphs drawn on the sphere as rotation systems.

A didrawing is a digraph plus, at every vertex, the clockwise cyclic order
of its darts.  A dart is one end of one edge: ``Dart(e, "T")`` sits at the
tail of e, ``Dart(e, "H")`` at its head.  All topology used downstream
(regions, duals, curves) derives from one convention fixed here:

    The face walk leaves dart d by jumping to its reversal at the other
    end of the edge and then stepping to the next dart clockwise.

Consequences, used throughout and verified by the test suite: face orbits
traverse each region anticlockwise; the region to the left of an edge
(walking tail to head) is the one containing its tail dart, the region to
the right the one containing its head dart; the corner strictly between
consecutive rotation entries d, d' (clockwise) belongs to the region of d'.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple, Sequence

from .digraph import Digraph, Edge, EdgeLike
from .errors import (
    DanglingDart,
    DuplicateDart,
    HasLoop,
    InvalidDrawing,
    NotSphere,
)

TAIL = "T"
HEAD = "H"


class Dart(NamedTuple):
    """One end of one edge."""

    edge: str
    end: str

    def reversed(self) -> Dart:
        return Dart(self.edge, HEAD if self.end == TAIL else TAIL)


DartLike = Dart | tuple[str, str]


def _as_dart(d: DartLike) -> Dart:
    dart = Dart(str(d[0]), str(d[1]))
    if dart.end not in (TAIL, HEAD):
        raise DanglingDart(f"dart end must be {TAIL!r} or {HEAD!r}, got {dart.end!r}")
    return dart


def _rotate_min(seq: tuple[Dart, ...]) -> tuple[Dart, ...]:
    """Rotate a cyclic sequence so its least element comes first."""
    if not seq:
        return seq
    i = seq.index(min(seq))
    return seq[i:] + seq[:i]


@dataclass(frozen=True)
class Region:
    """A face of the embedding: the cyclic dart sequence of one face walk."""

    id: str
    darts: tuple[Dart, ...]

    @property
    def edge_ids(self) -> tuple[str, ...]:
        return tuple(sorted({d.edge for d in self.darts}))

    def __len__(self) -> int:
        return len(self.darts)


class Didrawing:
    """A digraph with a validated spherical rotation system.

    Immutable by convention: every editing helper returns a new object, and
    the constructor re-validates from scratch (dart bookkeeping, then
    Euler's formula per weak component).

    Args:
        graph: the underlying digraph.
        rotation: per vertex, the clockwise cyclic sequence of its darts.
            Cyclic start is irrelevant; it is canonicalized on input.
        loops_allowed: reject loops outright when False.

    Raises:
        DanglingDart, DuplicateDart: rotation bookkeeping errors.
        NotSphere: face tracing contradicts Euler's formula.
        HasLoop: a loop is present while loops_allowed is False.
    """

    def __init__(self, graph: Digraph, rotation: Mapping[str, Sequence[DartLike]],
                 *, loops_allowed: bool = True):
        self.graph = graph
        self.loops_allowed = loops_allowed
        if not loops_allowed and graph.has_loops:
            raise HasLoop("loops are not allowed in this didrawing")

        rot: dict[str, tuple[Dart, ...]] = {}
        for v in rotation:
            if not graph.has_vertex(v):
                raise DanglingDart(f"rotation given for unknown vertex {v!r}")
            rot[v] = tuple(_as_dart(d) for d in rotation[v])
        for v in graph.vertices:
            rot.setdefault(v, ())

        # expected darts at each vertex
        expected: dict[str, set[Dart]] = {v: set() for v in graph.vertices}
        for e in graph.edges:
            expected[e.tail].add(Dart(e.id, TAIL))
            expected[e.head].add(Dart(e.id, HEAD))
        placed: set[Dart] = set()
        for v, darts in rot.items():
            for d in darts:
                if d in placed:
                    raise DuplicateDart(f"dart {d} appears more than once")
                placed.add(d)
                if d not in expected[v]:
                    raise DanglingDart(f"dart {d} does not belong at vertex {v!r}")
            missing = expected[v] - set(darts)
            if missing:
                raise DanglingDart(
                    f"rotation at {v!r} is missing darts {sorted(missing)}")

        self.rotation = {v: _rotate_min(rot[v]) for v in graph.vertices}

        self._dart_vertex: dict[Dart, str] = {}
        self._sigma: dict[Dart, Dart] = {}
        self._sigma_inv: dict[Dart, Dart] = {}
        for v, darts in self.rotation.items():
            for i, d in enumerate(darts):
                self._dart_vertex[d] = v
                nxt = darts[(i + 1) % len(darts)]
                self._sigma[d] = nxt
                self._sigma_inv[nxt] = d

        self._check_euler()

    # -- primitive moves ---------------------------------------------------

    def dart_vertex(self, d: Dart) -> str:
        return self._dart_vertex[d]

    def sigma(self, d: Dart) -> Dart:
        """Next dart clockwise at the same vertex."""
        return self._sigma[d]

    def sigma_inv(self, d: Dart) -> Dart:
        return self._sigma_inv[d]

    def alpha(self, d: Dart) -> Dart:
        """The same edge seen from its other end."""
        return d.reversed()

    def next_face_dart(self, d: Dart) -> Dart:
        return self._sigma[d.reversed()]

    @property
    def darts(self) -> tuple[Dart, ...]:
        return tuple(sorted(self._dart_vertex))

    # -- delegation --------------------------------------------------------

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.graph.vertices

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self.graph.edges

    def edge(self, eid: str) -> Edge:
        return self.graph.edge(eid)

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def m(self) -> int:
        return self.graph.m

    def __repr__(self) -> str:
        return f"Didrawing(n={self.n}, m={self.m}, regions={len(self.regions)})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Didrawing):
            return NotImplemented
        return self.graph == other.graph and self.rotation == other.rotation

    # -- faces -------------------------------------------------------------

    def _trace_face(self, start: Dart) -> tuple[Dart, ...]:
        orbit = [start]
        d = self.next_face_dart(start)
        while d != start:
            orbit.append(d)
            d = self.next_face_dart(d)
        return tuple(orbit)

    @cached_property
    def regions(self) -> tuple[Region, ...]:
        """All faces, ids assigned in canonical (least-dart) discovery order.

        A map with no darts at all still has its one spherical region,
        reported with an empty boundary.
        """
        orbits: list[tuple[Dart, ...]] = []
        seen: set[Dart] = set()
        for d in sorted(self._dart_vertex):
            if d in seen:
                continue
            orbit = self._trace_face(d)
            seen.update(orbit)
            orbits.append(_rotate_min(orbit))
        if not orbits and self.n:
            return (Region("f0", ()),)
        return tuple(Region(f"f{i}", o) for i, o in enumerate(orbits))

    @cached_property
    def _region_of(self) -> dict[Dart, Region]:
        out = {}
        for r in self.regions:
            for d in r.darts:
                out[d] = r
        return out

    @cached_property
    def _region_by_id(self) -> dict[str, Region]:
        return {r.id: r for r in self.regions}

    def region_of(self, d: Dart) -> Region:
        return self._region_of[d]

    def region(self, rid: str) -> Region:
        return self._region_by_id[rid]

    def left(self, eid: str) -> Region:
        """Region on the left of e, walking tail to head."""
        return self._region_of[Dart(eid, TAIL)]

    def right(self, eid: str) -> Region:
        return self._region_of[Dart(eid, HEAD)]

    def corner_region(self, v: str, i: int) -> Region:
        """Region filling the corner after rotation slot i (clockwise) at v.

        The corner between rotation[i] and rotation[i+1] belongs to the
        region of rotation[i+1]; degree-1 vertices have a single corner.
        """
        darts = self.rotation[v]
        return self._region_of[darts[(i + 1) % len(darts)]]

    def _check_euler(self) -> None:
        comps = self.graph.weak_components()
        if not comps:
            return
        face_comp: dict[frozenset[str], int] = {c: 0 for c in comps}
        vert_comp = {v: c for c in comps for v in c}
        seen: set[Dart] = set()
        for d in self._dart_vertex:
            if d in seen:
                continue
            orbit = self._trace_face(d)
            seen.update(orbit)
            face_comp[vert_comp[self._dart_vertex[d]]] += 1
        for c in comps:
            nv = len(c)
            ne = sum(1 for e in self.graph.edges if e.tail in c)
            nf = face_comp[c] if face_comp[c] else 1
            if nv - ne + nf != 2:
                raise NotSphere(
                    f"component containing {min(c)!r}: V-E+F = "
                    f"{nv}-{ne}+{nf} = {nv - ne + nf}, expected 2")

    # -- rebuilding --------------------------------------------------------

    def reverse(self) -> Didrawing:
        """Reverse every edge; geometrically the same drawing, arrows flipped."""
        rot = {v: [d.reversed() for d in darts] for v, darts in self.rotation.items()}
        return Didrawing(self.graph.reverse(), rot, loops_allowed=self.loops_allowed)

    def mirror(self) -> Didrawing:
        """The reflected drawing: every rotation reversed."""
        rot = {v: tuple(reversed(darts)) for v, darts in self.rotation.items()}
        return Didrawing(self.graph, rot, loops_allowed=self.loops_allowed)

    def relabel(self, vertex_map: dict[str, str] | None = None,
                edge_map: dict[str, str] | None = None) -> Didrawing:
        vm = vertex_map or {}
        em = edge_map or {}
        rot = {vm.get(v, v): [Dart(em.get(d.edge, d.edge), d.end) for d in darts]
               for v, darts in self.rotation.items()}
        return Didrawing(self.graph.relabel(vm, em), rot,
                         loops_allowed=self.loops_allowed)

    def delete_edges_embedded(self, eids: Iterable[str]) -> Didrawing:
        drop = set(eids)
        rot = {v: [d for d in darts if d.edge not in drop]
               for v, darts in self.rotation.items()}
        return Didrawing(self.graph.delete_edges(drop), rot,
                         loops_allowed=self.loops_allowed)

    def contract_edge_embedded(self, eid: str, *, new_id: str | None = None) -> Didrawing:
        """Contract a non-loop edge, splicing the two rotations.

        The head's rotation is inserted where the contracted edge sat in the
        tail's rotation, starting just after the head dart; this is the
        unique splice that keeps the drawing planar.  Parallel edges become
        loops (kept), so the result may contain loops even if the input did
        not.
        """
        e = self.graph.edge(eid)
        if e.is_loop:
            raise ValueError(f"cannot contract loop {eid!r}")
        keep = new_id if new_id is not None else e.tail
        u, w = e.tail, e.head
        rot_u, rot_w = self.rotation[u], self.rotation[w]
        iu = rot_u.index(Dart(eid, TAIL))
        iw = rot_w.index(Dart(eid, HEAD))
        spliced = (rot_u[:iu]
                   + rot_w[iw + 1:] + rot_w[:iw]
                   + rot_u[iu + 1:])
        merged = self.graph.merge({u, w}, keep, keep_loops=True)
        merged = merged.delete_edges([eid])
        rot = {v: darts for v, darts in self.rotation.items() if v not in (u, w)}
        rot[keep] = spliced
        return Didrawing(merged, rot, loops_allowed=True)

    def contract_face_cycle(self, edge_ids: Iterable[str], new_vertex: str) -> Didrawing:
        """Contract a directed cycle that bounds a region to a single vertex.

        The cycle's edges disappear; all other edges at its vertices are
        spliced into one rotation.  Raises ValueError when the edge set is
        not a directed face-bounding cycle.
        """
        eids = sorted(set(edge_ids))
        match = None
        for r in self.regions:
            if len(r.darts) == len(eids) and sorted(d.edge for d in r.darts) == eids:
                match = r
                break
        if match is None:
            raise ValueError(f"edges {eids} do not bound a region")
        cyc = [self.graph.edge(i) for i in eids]
        heads = sorted(e.head for e in cyc)
        tails = sorted(e.tail for e in cyc)
        verts = sorted({e.tail for e in cyc} | {e.head for e in cyc})
        if not (heads == tails == verts) or len(verts) != len(eids):
            raise ValueError(f"edges {eids} do not form a directed cycle")

        d = self
        order = [e.id for e in cyc]
        for eid in order[:-1]:
            e = d.graph.edge(eid)
            d = d.contract_edge_embedded(eid, new_id=e.tail)
        d = d.delete_edges_embedded([order[-1]])
        survivor = [v for v in verts if d.graph.has_vertex(v)]
        assert len(survivor) == 1
        if new_vertex != survivor[0] and d.graph.has_vertex(new_vertex):
            raise ValueError(f"vertex name {new_vertex!r} already in use")
        return d.relabel(vertex_map={survivor[0]: new_vertex})

    # -- canonical form ----------------------------------------------------

    def _code_from(self, start: Dart, *, reflect: bool) -> tuple:
        step = self._sigma_inv if reflect else self._sigma
        idx = {start: 0}
        order = [start]
        i = 0
        while i < len(order):
            d = order[i]
            for nxt in (step[d], d.reversed()):
                if nxt not in idx:
                    idx[nxt] = len(order)
                    order.append(nxt)
            i += 1
        return tuple((idx[step[d]], idx[d.reversed()], d.end == TAIL) for d in order)

    @cached_property
    def _dart_components(self) -> tuple[tuple[Dart, ...], ...]:
        comps = []
        seen: set[Dart] = set()
        for d in sorted(self._dart_vertex):
            if d in seen:
                continue
            comp = {d}
            stack = [d]
            while stack:
                x = stack.pop()
                for nxt in (self._sigma[x], x.reversed()):
                    if nxt not in comp:
                        comp.add(nxt)
                        stack.append(nxt)
            seen |= comp
            comps.append(tuple(sorted(comp)))
        return tuple(comps)

    def canonical_form(self, *, reflect: bool = False) -> tuple:
        """A hashable invariant deciding map isomorphism.

        Orientation-preserving by default; with reflect=True the mirror
        image yields the same form.  Isolated vertices contribute a count.
        """
        codes = []
        for comp in self._dart_components:
            best = min(self._code_from(d, reflect=False) for d in comp)
            if reflect:
                best_r = min(self._code_from(d, reflect=True) for d in comp)
                best = min(best, best_r)
            codes.append(best)
        isolated = sum(1 for v in self.vertices if not self.rotation[v])
        return (tuple(sorted(codes)), isolated)

    def is_isomorphic_to(self, other: Didrawing, *, allow_reflection: bool = False) -> bool:
        """Combinatorial-map isomorphism (the drawing-equivalence notion here)."""
        if self.n != other.n or self.m != other.m:
            return False
        if not allow_reflection:
            return self.canonical_form() == other.canonical_form()
        return (self.canonical_form(reflect=True)
                == other.canonical_form(reflect=True))


# -- public operations -----------------------------------------------------

def build_didrawing(vertices: Iterable[str], edges: Iterable[EdgeLike],
                    rotations: Mapping[str, Sequence[DartLike]],
                    *, loops_allowed: bool = True) -> Didrawing:
    """Validate a raw vertex/edge/rotation description into a Didrawing."""
    return Didrawing(Digraph(vertices, edges), rotations, loops_allowed=loops_allowed)


def interleaving(d: Didrawing) -> int:
    """Max over vertices of the number of same-direction dart blocks.

    A block is a maximal cyclic run of darts all leaving or all entering.
    Isolated vertices contribute 0, sources and sinks 1, everything else an
    even count.
    """
    if d.graph.has_loops:
        raise HasLoop("interleaving requires a loopless didrawing")
    best = 0
    for v in d.vertices:
        darts = d.rotation[v]
        if not darts:
            continue
        dirs = [x.end == TAIL for x in darts]
        changes = sum(1 for i in range(len(dirs)) if dirs[i] != dirs[i - 1])
        best = max(best, changes if changes else 1)
    return best


@dataclass(frozen=True)
class ConnectivityProfile:
    one_weak: bool
    two_weak: bool
    weakly_two_edge_connected: bool
    strongly_connected: bool


def connectivity_profile(d: Didrawing) -> ConnectivityProfile:
    g = d.graph
    return ConnectivityProfile(
        one_weak=g.is_weakly_connected(),
        two_weak=g.is_k_weak(2),
        weakly_two_edge_connected=g.is_weakly_two_edge_connected(),
        strongly_connected=g.is_strongly_connected(),
    )


Point = tuple[float, float]


def didrawing_from_positions(graph: Digraph, pos: Mapping[str, Point],
                             bends: Mapping[str, Sequence[Point]] | None = None,
                             *, loops_allowed: bool = True) -> Didrawing:
    """Derive the rotation system from coordinates of a plane drawing.

    Each edge runs tail -> bends -> head as a polyline.  At every vertex the
    incident darts are sorted clockwise (decreasing angle, y axis up).  Two
    darts leaving a vertex at exactly the same angle cannot be ordered and
    raise InvalidDrawing; give the edge a bend instead.  Loops always need
    at least one bend for the same reason.

    The coordinates themselves are discarded: only the rotation survives.
    Crossings in the polyline drawing are not detected; Euler validation
    still rejects rotation systems that fail to be spherical.
    """
    bends = bends or {}
    rotations: dict[str, list[Dart]] = {v: [] for v in graph.vertices}
    angles: dict[str, list[tuple[float, Dart]]] = {v: [] for v in graph.vertices}
    for e in graph.edges:
        pts = [tuple(map(float, pos[e.tail]))]
        pts += [tuple(map(float, p)) for p in bends.get(e.id, [])]
        pts.append(tuple(map(float, pos[e.head])))
        if e.is_loop and len(pts) < 3:
            raise InvalidDrawing(f"loop {e.id!r} needs at least one bend point")
        for dart, a, b in ((Dart(e.id, TAIL), pts[0], pts[1]),
                           (Dart(e.id, HEAD), pts[-1], pts[-2])):
            dx, dy = b[0] - a[0], b[1] - a[1]
            if dx == 0 and dy == 0:
                raise InvalidDrawing(f"zero-length stub on edge {e.id!r}")
            v = e.tail if dart.end == TAIL else e.head
            angles[v].append((math.atan2(dy, dx), dart))
    for v, items in angles.items():
        items.sort(key=lambda t: (-t[0], t[1]))
        for i in range(1, len(items)):
            if items[i][0] == items[i - 1][0]:
                raise InvalidDrawing(
                    f"darts {items[i - 1][1]} and {items[i][1]} leave {v!r} "
                    f"at the same angle; add a bend point")
        rotations[v] = [dart for _, dart in items]
    return Didrawing(graph, rotations, loops_allowed=loops_allowed)
