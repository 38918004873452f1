"""Rings of directed cycles through a hub vertex, and the diwall layouts
they weave.

A ring is a family of directed cycles that all pass through one vertex,
pairwise edge-disjoint and pairwise non-crossing, arranged so that around
the hub their entry and exit darts interleave in the figure-eight pattern
that lets the cycles nest between two opposite boundary arcs.  Rings are
found through the dual: an alternating multicut between two contracted
arc sides pulls back to the cycles, and the multicut's witness path pulls
back to a low-change dual path when no ring exists at the requested size.
A thinned ring is vertex-disjoint away from the hub; two disjointed rings
crossing each other carry a diwall layout.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .core import Dart, Didrawing, HEAD, TAIL
from .digraph import Digraph
from .duality import DualMap, dual
from .errors import (
    HasLoop,
    InterleavingExceeded,
    InvalidArcs,
    InvalidRing,
    NestingViolated,
    NotOdd,
    NotOneWeak,
    RingTooSmall,
)
from .multicut import Path, Pattern, connectify, find_multicut_with_witness
from .walls import DiwallLayout, verify_layout

__all__ = [
    "Ring",
    "find_ring",
    "ring_from_cycles",
    "rings_to_layout",
    "thin_ring",
    "verify_ring",
]


# -- the ring record ---------------------------------------------------------

@dataclass(frozen=True)
class Ring:
    """Directed cycles through a common hub, in nesting order.

    ``cycles[i]`` lists edge ids; the first edge leaves the hub, the last
    returns to it.  ``walks[i]`` lists the vertices in step, starting at
    the hub; the closing step back to the hub is implicit.  ``disjointed``
    claims the cycles share no vertex besides the hub.

    Only shape is validated here.  Consistency with a drawing (that the
    ids chain into directed cycles, the hub darts alternate, no two
    cycles cross) is the job of :func:`verify_ring`.
    """

    vertex: str
    cycles: tuple[tuple[str, ...], ...]
    walks: tuple[tuple[str, ...], ...]
    disjointed: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "cycles",
                           tuple(tuple(c) for c in self.cycles))
        object.__setattr__(self, "walks",
                           tuple(tuple(w) for w in self.walks))
        if not self.cycles:
            raise InvalidRing("a ring needs at least one cycle")
        if len(self.cycles) != len(self.walks):
            raise InvalidRing("cycles and walks must pair up")
        for idx, (cyc, walk) in enumerate(zip(self.cycles, self.walks), 1):
            if len(cyc) < 2:
                raise InvalidRing(f"cycle {idx} must have at least two edges")
            if len(walk) != len(cyc):
                raise InvalidRing(f"cycle {idx} walk length does not match")
            if walk[0] != self.vertex:
                raise InvalidRing(f"cycle {idx} walk must start at the hub")
            if len(set(walk)) != len(walk):
                raise InvalidRing(f"cycle {idx} repeats a vertex")
        if self.disjointed:
            for a in range(len(self.walks)):
                for b in range(a + 1, len(self.walks)):
                    shared = set(self.walks[a]) & set(self.walks[b])
                    if shared != {self.vertex}:
                        raise InvalidRing(
                            f"cycles {a + 1} and {b + 1} share vertices "
                            "besides the hub but the ring claims disjointed")

    @property
    def size(self) -> int:
        return len(self.cycles)


def ring_from_cycles(d: Didrawing, vertex: str,
                     cycles: Sequence[Sequence[str]],
                     *, disjointed: bool = False) -> Ring:
    """Assemble and fully verify a Ring from raw edge-id cycles.

    Each cycle may start anywhere; it is rotated so its hub exit comes
    first.  Raises InvalidRing if the ids do not chain into directed
    cycles through ``vertex`` or if :func:`verify_ring` rejects the
    result.
    """
    g = d.graph
    built_cycles: list[tuple[str, ...]] = []
    built_walks: list[tuple[str, ...]] = []
    for idx, given in enumerate(cycles, 1):
        ids = list(given)
        if not ids:
            raise InvalidRing(f"cycle {idx} is empty")
        for eid in ids:
            if not g.has_edge(eid):
                raise InvalidRing(f"cycle {idx} uses unknown edge {eid!r}")
        edges = [g.edge(eid) for eid in ids]
        for t, e in enumerate(edges):
            if e.head != edges[(t + 1) % len(edges)].tail:
                raise InvalidRing(
                    f"cycle {idx} edges do not chain head to tail at {e.id!r}")
        starts = [t for t, e in enumerate(edges) if e.tail == vertex]
        if len(starts) != 1:
            raise InvalidRing(
                f"cycle {idx} must pass through {vertex!r} exactly once")
        s = starts[0]
        edges = edges[s:] + edges[:s]
        built_cycles.append(tuple(e.id for e in edges))
        built_walks.append(tuple(e.tail for e in edges))
    ring = Ring(vertex, tuple(built_cycles), tuple(built_walks), disjointed)
    why: list[str] = []
    if not verify_ring(d, ring, reasons=why):
        raise InvalidRing("; ".join(why))
    return ring


# -- verification ------------------------------------------------------------

def _hub_order(ring: Ring) -> tuple[Dart, ...]:
    """Required anticlockwise dart order at the hub.

    First half: for cycle i (1-based) take its return dart when i is odd,
    its exit dart when i is even.  Second half: the other dart of each
    cycle, in reverse cycle order.  This is the interleaving that nested
    cycles between two opposite arcs produce.
    """
    k = ring.size
    enter = [Dart(c[-1], HEAD) for c in ring.cycles]
    leave = [Dart(c[0], TAIL) for c in ring.cycles]
    first = [enter[i] if i % 2 == 0 else leave[i] for i in range(k)]
    second = [leave[i] if i % 2 == 0 else enter[i] for i in reversed(range(k))]
    return tuple(first + second)


def _cyclically_equal(a: Sequence, b: Sequence) -> bool:
    if len(a) != len(b):
        return False
    if not a:
        return True
    aa = list(a)
    bb = list(b)
    return any(aa[r:] + aa[:r] == bb for r in range(len(aa)))


def _cycle_sides(dm: DualMap,
                 cycle: Sequence[str]) -> tuple[frozenset[str], frozenset[str]] | None:
    """Split the dual vertices by the side of the cycle they lie on.

    Removing the cycle's dual edges must leave exactly two weak
    components; returns None when it does not (the ids then do not bound
    a disc pair, so the cycle is not a closed curve of this drawing).
    """
    rest = dm.dual.graph.delete_edges(cycle)
    comps = rest.weak_components()
    if len(comps) != 2:
        return None
    return frozenset(comps[0]), frozenset(comps[1])


def verify_ring(d: Didrawing, ring: Ring, *,
                arcs: Sequence[Sequence[str]] | None = None,
                reasons: list[str] | None = None) -> bool:
    """Check a Ring against its drawing.

    Checks that each cycle is a directed cycle through the hub, the
    cycles are pairwise edge-disjoint and non-crossing, and the hub darts
    follow the alternating anticlockwise order.  With ``arcs`` (the four
    boundary arcs, as edge-id sequences) also checks that every cycle
    leaves through the fourth arc and returns through the second, with
    the parity swap on even cycles.  A disjointed ring is also checked
    for vertex-disjointness away from the hub (already enforced by the
    Ring constructor; re-checked here for rings built by hand).
    """
    ok = True

    def problem(msg: str) -> None:
        nonlocal ok
        ok = False
        if reasons is not None:
            reasons.append(msg)

    g = d.graph
    v = ring.vertex
    if not g.has_vertex(v):
        problem(f"hub {v!r} is not a vertex of the drawing")
        return False
    for e in g.incident_edges(v):
        if e.is_loop:
            problem(f"hub {v!r} carries the loop {e.id!r}")

    for idx, (cyc, walk) in enumerate(zip(ring.cycles, ring.walks), 1):
        for t, eid in enumerate(cyc):
            if not g.has_edge(eid):
                problem(f"cycle {idx} uses unknown edge {eid!r}")
                return False
            e = g.edge(eid)
            tail, head = walk[t], walk[(t + 1) % len(walk)]
            if e.tail != tail or e.head != head:
                problem(f"cycle {idx} is not directed along {eid!r}")

    k = ring.size
    for a in range(k):
        for b in range(a + 1, k):
            shared = set(ring.cycles[a]) & set(ring.cycles[b])
            if shared:
                problem(f"cycles {a + 1} and {b + 1} share edge "
                        f"{min(shared)!r}")
    if not ok:
        return False

    required = _hub_order(ring)
    want = set(required)
    actual = tuple(dd for dd in reversed(d.rotation[v]) if dd in want)
    if not _cyclically_equal(actual, required):
        problem("hub darts do not follow the alternating anticlockwise order")

    if not g.is_weakly_connected():
        problem("the drawing must be weakly connected to take sides")
        return False
    dm = dual(d, "right")
    sides: list[tuple[frozenset[str], frozenset[str]]] = []
    for idx, cyc in enumerate(ring.cycles, 1):
        pair = _cycle_sides(dm, cyc)
        if pair is None:
            problem(f"cycle {idx} does not bound")
            return False
        sides.append(pair)
    for a in range(k):
        for b in range(a + 1, k):
            sa, sb = sides[a], sides[b]
            nested = any(x >= y for x in sa for y in sb) \
                or any(y >= x for x in sa for y in sb)
            if not nested:
                problem(f"cycles {a + 1} and {b + 1} cross")

    # second view of the same condition: at every shared vertex the four
    # darts of the two cycles must not interleave around the rotation
    for a in range(k):
        for b in range(a + 1, k):
            for x in set(ring.walks[a]) & set(ring.walks[b]):
                da = _darts_at(ring, a, x)
                db = _darts_at(ring, b, x)
                labels = [0 if dd in da else 1
                          for dd in d.rotation[x] if dd in da | db]
                if len(labels) == 4 and labels[0] == labels[2] \
                        and labels[1] == labels[3] and labels[0] != labels[1]:
                    problem(f"cycles {a + 1} and {b + 1} interleave "
                            f"at {x!r}")

    if arcs is not None:
        second = set(arcs[1])
        fourth = set(arcs[3])
        for i in range(1, k + 1):
            leave_eid = ring.cycles[i - 1][0]
            enter_eid = ring.cycles[i - 1][-1]
            want_leave, want_enter = (fourth, second) if i % 2 else (second, fourth)
            if leave_eid not in want_leave:
                problem(f"cycle {i} leaves the hub outside its arc")
            if enter_eid not in want_enter:
                problem(f"cycle {i} returns to the hub outside its arc")

    if ring.disjointed:
        for a in range(k):
            for b in range(a + 1, k):
                shared = set(ring.walks[a]) & set(ring.walks[b])
                if shared != {v}:
                    problem(f"cycles {a + 1} and {b + 1} are not "
                            "vertex-disjoint away from the hub")
    return ok


def _darts_at(ring: Ring, i: int, x: str) -> frozenset[Dart]:
    """The in and out darts of cycle i at a vertex x on its walk."""
    walk = ring.walks[i]
    t = walk.index(x)
    cyc = ring.cycles[i]
    return frozenset({Dart(cyc[t - 1], HEAD), Dart(cyc[t], TAIL)})


# -- finding rings through the dual ------------------------------------------

def find_ring(d: Didrawing, vertex: str,
              arcs: Sequence[Sequence[str]], k: int) -> Ring | Path:
    """Find k cycles ringed through ``vertex``, or a cheap dual path.

    ``arcs`` splits the dual cycle bounding the hub's region into four
    consecutive arcs, given anticlockwise as sequences of primal edge
    ids; an arc may be empty, its position then pinned by its
    neighbours.  Returns either a Ring whose cycles run from the fourth
    arc to the second, or a Path in the dual joining the first arc's
    regions to the third's with fewer than k sign changes.

    The hub must be loopless and the drawing must stay weakly connected
    without it.  The ring is recovered by contracting the first and
    third arc sides in the right dual and asking for a multicut with the
    alternating pattern starting forward; each level's bond pulls back
    to one cycle.
    """
    if k < 1:
        raise ValueError(f"ring size must be at least 1, got {k}")
    g = d.graph
    if not g.has_vertex(vertex):
        raise ValueError(f"unknown vertex {vertex!r}")
    if not g.is_weakly_connected():
        raise NotOneWeak("the drawing must be weakly connected")
    for e in g.incident_edges(vertex):
        if e.is_loop:
            raise HasLoop(f"hub {vertex!r} carries the loop {e.id!r}")
    rest = [x for x in g.vertices if x != vertex]
    if rest and not g.induced(rest).is_weakly_connected():
        raise NotOneWeak(f"removing {vertex!r} disconnects the drawing")

    dm = dual(d, "right")
    rid = dm.vertex_to_region[vertex]
    orbit = dm.dual.region(rid).darts
    if not orbit:
        raise InvalidArcs(f"hub {vertex!r} has no incident edges")
    orbit_edges = [dd.edge for dd in orbit]
    owners = [dm.dual.dart_vertex(dd) for dd in orbit]
    n = len(orbit)

    if len(arcs) != 4:
        raise InvalidArcs("exactly four arcs are required")
    given = tuple(tuple(a) for a in arcs)
    flat = [eid for a in given for eid in a]
    if len(flat) != n or len(set(flat)) != n or set(flat) != set(orbit_edges):
        raise InvalidArcs("arcs must partition the dual cycle around the hub")
    offset = next((r for r in range(n)
                   if [orbit_edges[(r + t) % n] for t in range(n)] == flat),
                  None)
    if offset is None:
        raise InvalidArcs("arcs must run anticlockwise around the hub, in order")

    vsets: list[frozenset[str]] = []
    pos = offset
    for a in given:
        span = {owners[pos % n]}
        for t in range(len(a)):
            span.add(owners[(pos + t + 1) % n])
        vsets.append(frozenset(span))
        pos += len(a)
    first_side, third_side = vsets[0], vsets[2]
    if first_side & third_side:
        raise InvalidArcs("the first and third arcs must not share a region")

    u = min(first_side)
    w = min(third_side)
    h = dm.dual.graph
    if len(first_side) > 1:
        h = h.merge(first_side, u)
    if len(third_side) > 1:
        h = h.merge(third_side, w)
    pattern = Pattern(tuple(1 if t % 2 == 0 else -1 for t in range(k)))
    res = find_multicut_with_witness(h, u, w, pattern)

    if isinstance(res, Path):
        start_side = first_side if res.first == u else third_side
        return _lift_witness(dm, start_side, res, k)

    mc = connectify(h, res, u=u, v=w)
    level = {x: i for i, part in enumerate(mc.parts) for x in part}
    cycles: list[tuple[str, ...]] = []
    walks: list[tuple[str, ...]] = []
    for i in range(1, k + 1):
        cut = [e.id for e in h.edges
               if not e.is_loop and {level[e.tail], level[e.head]} == {i - 1, i}]
        cyc, walk = _cut_cycle(g, vertex, cut)
        cycles.append(cyc)
        walks.append(walk)
    ring = Ring(vertex, tuple(cycles), tuple(walks), False)
    why: list[str] = []
    assert verify_ring(d, ring, arcs=given, reasons=why), why
    return ring


def _cut_cycle(g: Digraph, vertex: str,
               ids: list[str]) -> tuple[tuple[str, ...], tuple[str, ...]]:
    """Order a level cut's primal edges into the directed cycle they form."""
    edges = [g.edge(eid) for eid in ids]
    out_of = {}
    heads = set()
    for e in edges:
        assert e.tail not in out_of and e.head not in heads, \
            "level cut does not pull back to a single directed cycle"
        out_of[e.tail] = e
        heads.add(e.head)
    assert vertex in out_of and set(out_of) == heads, \
        "level cut does not pull back through the hub"
    cyc: list[str] = []
    walk: list[str] = []
    x = vertex
    while True:
        walk.append(x)
        e = out_of[x]
        cyc.append(e.id)
        x = e.head
        if x == vertex:
            break
    assert len(cyc) == len(edges), \
        "level cut does not pull back to a single directed cycle"
    return tuple(cyc), tuple(walk)


def _lift_witness(dm: DualMap, start_side: frozenset[str],
                  hpath: Path, k: int) -> Path:
    """Re-express a contracted witness path in the uncontracted dual."""
    g = dm.dual.graph
    edges = [g.edge(e.id) for e in hpath.edges]
    if len(edges) == 1:
        e = edges[0]
        first = e.tail if e.tail in start_side else e.head
        chain = [first, e.other_end(first)]
    else:
        nxt = edges[1]
        shared = {edges[0].tail, edges[0].head} & {nxt.tail, nxt.head}
        (s,) = shared
        chain = [edges[0].other_end(s), s]
        for e in edges[1:]:
            chain.append(e.other_end(chain[-1]))
    assert chain[0] in start_side, "lifted witness starts on the wrong side"
    lifted = Path(tuple(chain), tuple(edges))
    signs = lifted.signs
    changes = sum(1 for a, b in zip(signs, signs[1:]) if a != b)
    assert changes < k, "witness path must change direction fewer than k times"
    return lifted


# -- thinning ----------------------------------------------------------------

def thin_ring(ring: Ring, lam: int, k: int) -> Ring:
    """Keep every lam-th cycle of a ring, making a disjointed ring of size k.

    ``lam`` must be odd: skipping an odd number of cycles preserves the
    parity of the alternating hub order and of the arc ends, so the
    selection is again a ring, now claimed vertex-disjoint away from the
    hub.  If two selected cycles still share a vertex, the cycles
    between them interleave too much for the stride and
    InterleavingExceeded is raised.
    """
    if k < 1:
        raise ValueError(f"ring size must be at least 1, got {k}")
    if lam < 1 or lam % 2 == 0:
        raise NotOdd(f"stride must be a positive odd number, got {lam}")
    if ring.size < lam * k:
        raise RingTooSmall(
            f"thinning by {lam} to size {k} needs {lam * k} cycles, "
            f"the ring has {ring.size}")
    pick = [i * lam for i in range(k)]
    walks = [ring.walks[p] for p in pick]
    for a in range(k):
        for b in range(a + 1, k):
            shared = (set(walks[a]) & set(walks[b])) - {ring.vertex}
            if shared:
                raise InterleavingExceeded(
                    f"cycles {pick[a] + 1} and {pick[b] + 1} share "
                    f"{min(shared)!r}; crossings interleave more than "
                    f"{2 * lam} deep")
    return Ring(ring.vertex, tuple(ring.cycles[p] for p in pick),
                tuple(walks), True)


# -- weaving two rings into a diwall layout ----------------------------------

class _Rung(NamedTuple):
    """One clean crossing of a column cycle between adjacent rows."""

    j: int         # crossing cycle index, 0-based
    t1: int        # window start on the crossing cycle's path
    t2: int        # window end
    h_from: int    # row met first, 0-based
    h_to: int      # row met second
    pos_from: int  # position on h_from's row path
    pos_to: int    # position on h_to's row path

    @property
    def down(self) -> bool:
        return self.h_to == self.h_from + 1


def rings_to_layout(d: Didrawing, c_ring: Ring, d_ring: Ring) -> DiwallLayout:
    """Weave a carried ring and a crossing ring into a diwall layout.

    The ``k`` cycles of ``c_ring`` minus the hub become the horizontal
    rows.  ``d_ring`` must have ``3 * k`` cycles; selected crossing
    segments of some of them, joined along the rows, become the vertical
    columns.  Both rings must be disjointed and share their hub.  Every
    crossing cycle must meet every row in one contiguous block, the
    blocks must be ordered the same way along every row with the
    direction alternating row to row, and the selected crossings must
    run consistently; any failure raises NestingViolated.
    """
    why: list[str] = []
    if not verify_ring(d, c_ring, reasons=why) \
            or not verify_ring(d, d_ring, reasons=why):
        raise InvalidRing("; ".join(why))
    if c_ring.vertex != d_ring.vertex:
        raise InvalidRing("the rings must share their hub")
    k = c_ring.size
    if k < 2 or k % 2:
        raise InvalidRing(f"carried ring size must be even, at least 2, got {k}")
    if d_ring.size != 3 * k:
        raise InvalidRing(
            f"crossing ring must have size {3 * k}, got {d_ring.size}")
    if not (c_ring.disjointed and d_ring.disjointed):
        raise InvalidRing("both rings must be disjointed")
    hub = c_ring.vertex

    # rows: the carried cycles with the hub cut away
    row_vertices = [c_ring.walks[h][1:] for h in range(k)]
    row_edges = [c_ring.cycles[h][1:-1] for h in range(k)]
    on_row: dict[str, int] = {}
    row_pos: dict[str, int] = {}
    for h, vs in enumerate(row_vertices):
        for t, x in enumerate(vs):
            on_row[x] = h
            row_pos[x] = t

    d_vertices = [d_ring.walks[j][1:] for j in range(3 * k)]
    d_edges = [d_ring.cycles[j][1:-1] for j in range(3 * k)]

    # every crossing cycle must meet every row in one contiguous block,
    # ordered consistently along the row
    blocks: list[list[list[int]]] = []
    for h in range(k):
        per_row = []
        for j in range(3 * k):
            dset = set(d_vertices[j])
            per_row.append([t for t, x in enumerate(row_vertices[h])
                            if x in dset])
        blocks.append(per_row)
    for h in range(k):
        for j in range(3 * k):
            if not blocks[h][j]:
                raise NestingViolated(
                    f"crossing cycle {j + 1} never meets carried cycle {h + 1}")
        for i in range(3 * k):
            for j in range(i + 1, 3 * k):
                a, b = blocks[h][i], blocks[h][j]
                if not (a[-1] < b[0] or b[-1] < a[0]):
                    raise NestingViolated(
                        f"crossing cycles {i + 1} and {j + 1} overlap on "
                        f"carried cycle {h + 1}")
    flips: list[int] = []
    for h in range(k):
        order = sorted(range(3 * k), key=lambda j: blocks[h][j][0])
        if order == list(range(3 * k)):
            flips.append(1)
        elif order == list(reversed(range(3 * k))):
            flips.append(-1)
        else:
            raise NestingViolated(
                f"crossing order along carried cycle {h + 1} is scrambled")
    for h in range(k):
        if flips[h] != flips[0] * (-1) ** h:
            raise NestingViolated(
                "crossing order must alternate between consecutive rows")

    def rung_for(j: int, gap: int) -> _Rung:
        # first clean window of crossing j between rows gap and gap + 1
        vs = d_vertices[j]
        hits = [(t, on_row[x]) for t, x in enumerate(vs) if x in on_row]
        for (t1, h1), (t2, h2) in zip(hits, hits[1:]):
            if {h1, h2} == {gap, gap + 1}:
                return _Rung(j, t1, t2, h1, h2,
                             row_pos[vs[t1]], row_pos[vs[t2]])
        raise NestingViolated(
            f"crossing cycle {j + 1} has no clean crossing between "
            f"carried cycles {gap + 1} and {gap + 2}")

    def selected(fam: str, m: int, gap: int) -> int:
        # crossing cycle (0-based) serving 0-based gap for column (fam, m)
        if fam == "a":
            return 6 * m - 6 if gap % 2 == 0 else 6 * m - 4
        return 6 * m - 1 if gap % 2 == 0 else 6 * m - 3

    half = k // 2
    col_rungs: dict[tuple[str, int], list[_Rung]] = {}
    fam_down: dict[str, bool] = {}
    for fam in ("a", "b"):
        downs = set()
        for m in range(1, half + 1):
            rungs = [rung_for(selected(fam, m, gap), gap)
                     for gap in range(k - 1)]
            col_rungs[(fam, m)] = rungs
            downs.update(r.down for r in rungs)
        if len(downs) != 1:
            raise NestingViolated(
                "crossings of one column family run both ways")
        fam_down[fam] = downs.pop()
    if fam_down["a"] == fam_down["b"]:
        raise NestingViolated(
            "the two column families must run in opposite directions")
    if fam_down["a"] != (flips[0] == -1):
        raise NestingViolated(
            "column directions disagree with the crossing order along rows")

    def assemble(rungs: list[_Rung], down: bool) -> tuple[tuple[str, ...], int]:
        order = list(range(k - 1)) if down else list(range(k - 2, -1, -1))
        out: list[str] = []
        first = rungs[order[0]]
        if first.pos_from < 1:
            raise NestingViolated("no room for an entry edge on the first row")
        out.append(row_edges[first.h_from][first.pos_from - 1])
        for t, gap in enumerate(order):
            r = rungs[gap]
            out.extend(d_edges[r.j][r.t1:r.t2])
            if t + 1 < len(order):
                nxt = rungs[order[t + 1]]
                if r.h_to != nxt.h_from:
                    raise NestingViolated("column crossings do not chain")
                p, q = r.pos_to, nxt.pos_from
                if p >= q:
                    raise NestingViolated(
                        "column attachments run against the row direction")
                out.extend(row_edges[r.h_to][p:q])
        last = rungs[order[-1]]
        if last.pos_to >= len(row_edges[last.h_to]):
            raise NestingViolated("no room for an exit edge on the last row")
        out.append(row_edges[last.h_to][last.pos_to])
        # key: where the column's single edge on the topmost row sits
        key = first.pos_from - 1 if down else last.pos_to
        return tuple(out), key

    keyed: list[tuple[int, tuple[str, ...]]] = []
    for fam in ("a", "b"):
        for m in range(1, half + 1):
            col, key = assemble(col_rungs[(fam, m)], fam_down[fam])
            keyed.append((key, col))
    keyed.sort()
    layout = DiwallLayout(tuple(tuple(e) for e in row_edges),
                          tuple(col for _, col in keyed))
    check: list[str] = []
    assert verify_layout(d, layout, k, reasons=check), check
    return layout
