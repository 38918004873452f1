"""Grid families and the machinery that connects them.

Generators for the six drawn grid families (diwall, alternating grid,
semi-grid, cylindrical grid, and the two acyclic grids), validators for
diwall layouts and box systems, extraction of a k x k diwall layout from a
k x 3k box system, and exact small-scale subdivision testing.

Naming scheme.  Grid vertices are ``v{row}.{col}`` with row 1 at the top
and column 1 on the left; horizontal edges are ``h{i}.{j}`` (row i, between
columns j and j+1), vertical edges ``c{i}.{j}`` (column j, between rows i
and i+1).  The diwall has two vertices per cell, ``a{i}.{j}`` and
``b{i}.{j}``, joined by the diagonal ``d{i}.{j}``, with connectors named
like the grid edges.  Cylindrical grids use ``r{i}.{s}`` for ring edges and
``s{i}.{s}`` for spoke edges.
"""

from __future__ import annotations

import math
import os
from collections import deque
from collections.abc import Mapping, Sequence
from dataclasses import dataclass

from .core import Didrawing, didrawing_from_positions
from .digraph import Digraph, Edge
from .errors import BadParity, RoutingFailed, ScaleExceeded, TooSmall

__all__ = [
    "BoxSystem",
    "DiwallLayout",
    "SubdivisionModel",
    "KINDS",
    "alternating_grid_paths",
    "box_to_layout",
    "diwall_layout",
    "diwall_positions",
    "embeds",
    "generate",
    "identity_box_system",
    "verify_box_system",
    "verify_layout",
]

KINDS = ("diwall", "alternating", "semigrid", "cylindrical", "acyclicA", "acyclicB")


# -- generators ----------------------------------------------------------


def _require(kind: str, k: int, *, even: bool, least: int = 2) -> None:
    if k < least:
        raise TooSmall(f"{kind} needs size >= {least}, got {k}")
    if even and k % 2:
        raise BadParity(f"{kind} needs an even size, got {k}")


def _square_only(kind: str, k1: int, k2: int | None) -> int:
    if k2 is not None and k2 != k1:
        raise ValueError(f"{kind} is square; got {k1} x {k2}")
    return k1


def generate(kind: str, k1: int, k2: int | None = None) -> Didrawing:
    """Build one of the drawn grid families.

    ``k2`` defaults to ``k1`` (cylindrical: ``2 * k1``).  The rotation
    system comes from an explicit plane drawing, so the result is always a
    valid spherical didrawing with the canonical planar rotation.

    Raises BadParity or TooSmall for sizes outside a family's range, and
    ValueError for an unknown kind or a non-square request to a
    square-only family.
    """
    if kind == "diwall":
        k = _square_only(kind, k1, k2)
        _require(kind, k, even=True)
        return _diwall(k)
    if kind == "alternating":
        k2 = k1 if k2 is None else k2
        _require(kind, k1, even=True)
        _require(kind, k2, even=True)
        return _grid(k1, k2, _alternating_dirs(k1, k2))
    if kind == "semigrid":
        k = _square_only(kind, k1, k2)
        _require(kind, k, even=True)
        return _grid(k, k, _semigrid_dirs(k))
    if kind == "cylindrical":
        k2 = 2 * k1 if k2 is None else k2
        _require(kind, k1, even=False)
        _require(kind, k2, even=True)
        return _cylindrical(k1, k2)
    if kind in ("acyclicA", "acyclicB"):
        k2 = k1 if k2 is None else k2
        _require(kind, k1, even=False)
        _require(kind, k2, even=False)
        return _grid(k1, k2, _acyclic_dirs(k1, k2, alternate=kind == "acyclicB"))
    raise ValueError(f"unknown kind {kind!r}; expected one of {KINDS}")


# Direction tables: row_fwd[i] is True when row i runs left to right,
# col_down[j] when column j runs top to bottom.  1-based, index 0 unused.

def _alternating_dirs(k1: int, k2: int) -> tuple[list[bool], list[bool]]:
    row_fwd = [bool(i % 2) for i in range(k1 + 1)]
    col_down = [not (j % 2) for j in range(k2 + 1)]
    return row_fwd, col_down


def _semigrid_dirs(k: int) -> tuple[list[bool], list[bool]]:
    row_fwd = [i <= k // 2 for i in range(k + 1)]
    col_down = [j > k // 2 for j in range(k + 1)]
    return row_fwd, col_down


def _acyclic_dirs(k1: int, k2: int, *, alternate: bool) -> tuple[list[bool], list[bool]]:
    row_fwd = [True] * (k1 + 1)
    if alternate:
        col_down = [bool(j % 2) for j in range(k2 + 1)]
    else:
        col_down = [True] * (k2 + 1)
    return row_fwd, col_down


def _grid(k1: int, k2: int, dirs: tuple[list[bool], list[bool]]) -> Didrawing:
    row_fwd, col_down = dirs
    edges = []
    for i in range(1, k1 + 1):
        for j in range(1, k2):
            a, b = f"v{i}.{j}", f"v{i}.{j + 1}"
            if not row_fwd[i]:
                a, b = b, a
            edges.append(Edge(f"h{i}.{j}", a, b))
    for j in range(1, k2 + 1):
        for i in range(1, k1):
            a, b = f"v{i}.{j}", f"v{i + 1}.{j}"
            if not col_down[j]:
                a, b = b, a
            edges.append(Edge(f"c{i}.{j}", a, b))
    vertices = [f"v{i}.{j}" for i in range(1, k1 + 1) for j in range(1, k2 + 1)]
    pos = {f"v{i}.{j}": (float(j), float(k1 + 1 - i))
           for i in range(1, k1 + 1) for j in range(1, k2 + 1)}
    return didrawing_from_positions(Digraph(vertices, edges), pos, loops_allowed=False)


def _diwall_cells(k: int) -> tuple[list[str], list[Edge]]:
    vertices = [f"{t}{i}.{j}"
                for i in range(1, k + 1) for j in range(1, k + 1) for t in "ab"]
    edges = []
    for i in range(1, k + 1):
        for j in range(1, k + 1):
            a, b = f"a{i}.{j}", f"b{i}.{j}"
            edges.append(Edge(f"d{i}.{j}", a, b) if j % 2 else Edge(f"d{i}.{j}", b, a))
    # Horizontal connectors join the exit of one cell to the entry of the
    # next along the row; odd rows run rightward, even rows leftward.  The
    # joined letter follows cell and row parity: b when i + j is even.
    for i in range(1, k + 1):
        for j in range(1, k):
            t = "b" if (i + j) % 2 == 0 else "a"
            a, b = f"{t}{i}.{j}", f"{t}{i}.{j + 1}"
            if not i % 2:
                a, b = b, a
            edges.append(Edge(f"h{i}.{j}", a, b))
    # Vertical connectors: odd columns climb, even columns descend.
    for j in range(1, k + 1):
        for i in range(1, k):
            if j % 2:
                edges.append(Edge(f"c{i}.{j}", f"b{i + 1}.{j}", f"a{i}.{j}"))
            else:
                edges.append(Edge(f"c{i}.{j}", f"a{i}.{j}", f"b{i + 1}.{j}"))
    return vertices, edges


def _diwall(k: int) -> Didrawing:
    vertices, edges = _diwall_cells(k)
    return didrawing_from_positions(Digraph(vertices, edges),
                                    diwall_positions(k), loops_allowed=False)


def _diwall_row_order(k: int, i: int) -> list[str]:
    """Vertices of diwall row path i, in traversal order.

    Diagonal directions do not depend on the row, so each cell is entered
    at a and left at b for odd j, the other way around for even j; even
    rows just visit the cells right to left.
    """
    cells = range(1, k + 1) if i % 2 else range(k, 0, -1)
    out = []
    for j in cells:
        pair = ("a", "b") if j % 2 else ("b", "a")
        out += [f"{pair[0]}{i}.{j}", f"{pair[1]}{i}.{j}"]
    return out


def diwall_positions(k: int, style: str = "diagonal") -> dict[str, tuple[float, float]]:
    """Vertex coordinates for the two standard diwall presentations.

    ``"diagonal"`` is the cell drawing the generator uses (each cell holds
    its a and b vertex on opposite corners, diagonals visible).
    ``"straight"`` redraws every row path as a straight horizontal line,
    even rows written right to left so the vertical connectors line up;
    node t of row i is the t-th row-path vertex for odd i and the
    (2k+1-t)-th for even i.  Both position sets induce the same rotation
    system, so either feeds didrawing_from_positions identically.
    """
    if style == "diagonal":
        pos = {}
        for i in range(1, k + 1):
            for j in range(1, k + 1):
                off = 0.2 if (i + j) % 2 == 0 else -0.2
                pos[f"b{i}.{j}"] = (j + off, k + 1 - i + 0.2)
                pos[f"a{i}.{j}"] = (j - off, k + 1 - i - 0.2)
        return pos
    if style == "straight":
        pos = {}
        for i in range(1, k + 1):
            order = _diwall_row_order(k, i)
            for p, v in enumerate(order, start=1):
                t = p if i % 2 else 2 * k + 1 - p
                pos[v] = (float(t), float(k + 1 - i))
        return pos
    raise ValueError(f"unknown style {style!r}")


def _cylindrical(k1: int, k2: int) -> Didrawing:
    vertices = [f"v{i}.{s}" for i in range(1, k1 + 1) for s in range(1, k2 + 1)]
    edges = []
    for i in range(1, k1 + 1):
        for s in range(1, k2 + 1):
            edges.append(Edge(f"r{i}.{s}", f"v{i}.{s}", f"v{i}.{s % k2 + 1}"))
    for s in range(1, k2 + 1):
        for i in range(1, k1):
            a, b = f"v{i}.{s}", f"v{i + 1}.{s}"
            if not s % 2:
                a, b = b, a
            edges.append(Edge(f"s{i}.{s}", a, b))
    def at(radius: float, theta: float) -> tuple[float, float]:
        return (radius * math.cos(theta), radius * math.sin(theta))
    pos = {}
    for i in range(1, k1 + 1):
        for s in range(1, k2 + 1):
            pos[f"v{i}.{s}"] = at(k1 + 1 - i, -2 * math.pi * (s - 1) / k2)
    # Ring edges bend through the arc midpoint; straight chords would
    # coincide for k2 = 2 and cut across inner rings for small k2.
    bends = {}
    for i in range(1, k1 + 1):
        for s in range(1, k2 + 1):
            mid = -2 * math.pi * (s - 1) / k2 - math.pi / k2
            bends[f"r{i}.{s}"] = [at(k1 + 1 - i, mid)]
    return didrawing_from_positions(Digraph(vertices, edges), pos, bends,
                                    loops_allowed=False)


# -- layouts -------------------------------------------------------------


@dataclass(frozen=True)
class DiwallLayout:
    """A k x k diwall layout: two families of directed paths, as edge ids.

    ``horizontals[i-1]`` is P_i and ``verticals[j-1]`` is Q_j.  The
    validity conditions (disjointness, every P_i meeting every Q_j in a
    path with at least one edge, and the parity order conditions) are
    checked by verify_layout, not by this container.
    """

    horizontals: tuple[tuple[str, ...], ...]
    verticals: tuple[tuple[str, ...], ...]

    @property
    def k(self) -> int:
        return len(self.horizontals)


def diwall_layout(k: int) -> DiwallLayout:
    """The generated diwall's own defining paths.

    P_i is the row path (diagonals and horizontal connectors), Q_j the
    column path (diagonals and vertical connectors); P_i and Q_j share
    exactly the diagonal d{i}.{j}.
    """
    _require("diwall", k, even=True)
    horizontals = []
    for i in range(1, k + 1):
        p: list[str] = []
        cells = range(1, k + 1) if i % 2 else range(k, 0, -1)
        for j in cells:
            if p:
                p.append(f"h{i}.{min(j, prev)}")
            p.append(f"d{i}.{j}")
            prev = j
        horizontals.append(tuple(p))
    verticals = []
    for j in range(1, k + 1):
        q: list[str] = []
        rows = range(1, k + 1) if j % 2 == 0 else range(k, 0, -1)
        for i in rows:
            if q:
                q.append(f"c{min(i, prev)}.{j}")
            q.append(f"d{i}.{j}")
            prev = i
        verticals.append(tuple(q))
    return DiwallLayout(tuple(horizontals), tuple(verticals))


def _graph_of(g) -> Digraph:
    return g.graph if isinstance(g, Didrawing) else g


def _path_vertices(g: Digraph, edge_ids: Sequence[str]) -> list[str] | None:
    """Vertex sequence of a simple directed path, or None if it is not one."""
    if not edge_ids:
        return None
    try:
        es = [g.edge(x) for x in edge_ids]
    except KeyError:
        return None
    verts = [es[0].tail]
    for e in es:
        if e.tail != verts[-1]:
            return None
        verts.append(e.head)
    if len(set(verts)) != len(verts):
        return None
    return verts


def _intersection_path(p_edges: Sequence[str], p_verts: Sequence[str],
                       q_edges: Sequence[str], q_verts: Sequence[str],
                       g: Digraph) -> list[str] | None:
    """Shared subgraph of two paths if it is a path with >= 1 edge."""
    shared_v = set(p_verts) & set(q_verts)
    shared_e = [x for x in p_edges if x in set(q_edges)]
    if not shared_e:
        return None
    nxt: dict[str, str] = {}
    indeg = dict.fromkeys(shared_v, 0)
    for x in shared_e:
        e = g.edge(x)
        if e.tail in nxt:            # branching, cannot be one path
            return None
        nxt[e.tail] = x
        indeg[e.head] += 1
    starts = [v for v in shared_v if indeg[v] == 0]
    if len(starts) != 1:
        return None
    walk, v = [], starts[0]
    seen = {v}
    while v in nxt:
        walk.append(nxt[v])
        v = g.edge(nxt[v]).head
        if v in seen:
            return None
        seen.add(v)
    if len(walk) != len(shared_e) or len(seen) != len(shared_v):
        return None                  # stray vertex or edge off the chain
    return walk


def verify_layout(g, layout: DiwallLayout, k: int,
                  *, reasons: list[str] | None = None) -> bool:
    """Check every diwall-layout condition; collect reasons on failure."""
    out = reasons if reasons is not None else []
    graph = _graph_of(g)
    if k < 2 or k % 2:
        out.append(f"k must be even and >= 2, got {k}")
        return False
    if len(layout.horizontals) != k or len(layout.verticals) != k:
        out.append(f"expected {k} paths per family, got "
                   f"{len(layout.horizontals)} x {len(layout.verticals)}")
        return False

    hv, vv = [], []
    for name, fam, acc in (("P", layout.horizontals, hv),
                           ("Q", layout.verticals, vv)):
        for idx, edge_ids in enumerate(fam, start=1):
            verts = _path_vertices(graph, edge_ids)
            if verts is None:
                out.append(f"{name}_{idx} is not a simple directed path")
                return False
            acc.append(verts)
    for name, vs in (("P", hv), ("Q", vv)):
        for a in range(len(vs)):
            for b in range(a + 1, len(vs)):
                if set(vs[a]) & set(vs[b]):
                    out.append(f"{name}_{a + 1} and {name}_{b + 1} share vertices")
                    return False

    inter: dict[tuple[int, int], list[str]] = {}
    for i in range(1, k + 1):
        for j in range(1, k + 1):
            r = _intersection_path(layout.horizontals[i - 1], hv[i - 1],
                                   layout.verticals[j - 1], vv[j - 1], graph)
            if r is None:
                out.append(f"P_{i} and Q_{j} do not meet in a path "
                           f"with at least one edge")
                return False
            inter[i, j] = r

    def first_pos(path_verts: Sequence[str], r: list[str]) -> int:
        start = graph.edge(r[0]).tail
        return path_verts.index(start)

    for i in range(1, k + 1):
        seq = [first_pos(hv[i - 1], inter[i, j]) for j in range(1, k + 1)]
        want = seq == sorted(seq) if i % 2 else seq == sorted(seq, reverse=True)
        if not want:
            out.append(f"intersections along P_{i} are out of order")
            return False
    for j in range(1, k + 1):
        seq = [first_pos(vv[j - 1], inter[i, j]) for i in range(1, k + 1)]
        want = seq == sorted(seq) if j % 2 == 0 else seq == sorted(seq, reverse=True)
        if not want:
            out.append(f"intersections along Q_{j} are out of order")
            return False
    return True


# -- box systems ---------------------------------------------------------


@dataclass(frozen=True)
class BoxSystem:
    """A k1 x k2 box system: images of the alternating grid inside G.

    ``vertex_sets`` maps each grid vertex name to a disjoint set of G
    vertices (its box) and ``edge_map`` maps each grid edge id to a G edge
    whose endpoints sit in the right boxes.  Validity, including the
    internal routing condition, is checked by verify_box_system.
    """

    k1: int
    k2: int
    vertex_sets: Mapping[str, frozenset[str]]
    edge_map: Mapping[str, str]

    def __post_init__(self):
        object.__setattr__(self, "vertex_sets",
                           {v: frozenset(s) for v, s in self.vertex_sets.items()})
        object.__setattr__(self, "edge_map", dict(self.edge_map))


def identity_box_system(k1: int, k2: int) -> BoxSystem:
    """The box system with eta(v) = {v}, eta(e) = e on the alternating grid."""
    g = generate("alternating", k1, k2).graph
    return BoxSystem(k1, k2,
                     {v: frozenset({v}) for v in g.vertices},
                     {e: e for e in g.edge_ids})


def _gamma_edge(kind: str, i: int, j: int) -> Edge:
    """Edge of the canonical alternating grid, with its true direction."""
    if kind == "h":
        a, b = f"v{i}.{j}", f"v{i}.{j + 1}"
        if not i % 2:
            a, b = b, a
        return Edge(f"h{i}.{j}", a, b)
    a, b = f"v{i}.{j}", f"v{i + 1}.{j}"
    if j % 2:
        a, b = b, a
    return Edge(f"c{i}.{j}", a, b)


def alternating_grid_paths(k1: int, k2: int) -> tuple[tuple[tuple[str, ...], ...],
                                                      tuple[tuple[str, ...], ...]]:
    """Row and column paths of the alternating grid, as edge-id tuples."""
    _require("alternating", k1, even=True)
    _require("alternating", k2, even=True)
    rows = []
    for i in range(1, k1 + 1):
        ids = [f"h{i}.{j}" for j in range(1, k2)]
        rows.append(tuple(ids if i % 2 else reversed(ids)))
    cols = []
    for j in range(1, k2 + 1):
        ids = [f"c{i}.{j}" for i in range(1, k1)]
        cols.append(tuple(reversed(ids) if j % 2 else ids))
    return tuple(rows), tuple(cols)


def verify_box_system(g, bs: BoxSystem, k1: int, k2: int,
                      *, reasons: list[str] | None = None) -> bool:
    """Check disjointness, edge placement, and internal routing of a box system."""
    out = reasons if reasons is not None else []
    graph = _graph_of(g)
    gamma = generate("alternating", k1, k2).graph
    if (bs.k1, bs.k2) != (k1, k2):
        out.append(f"box system says {bs.k1} x {bs.k2}, asked for {k1} x {k2}")
        return False

    owner: dict[str, str] = {}
    ok = True
    for v in gamma.vertices:
        box = bs.vertex_sets.get(v)
        if not box:
            out.append(f"no box for grid vertex {v}")
            ok = False
            continue
        for x in box:
            if not graph.has_vertex(x):
                out.append(f"box of {v} contains unknown vertex {x!r}")
                ok = False
            elif x in owner:
                out.append(f"boxes of {owner[x]} and {v} both contain {x!r}")
                ok = False
            else:
                owner[x] = v
    if not ok:
        return False

    for e in gamma.edges:
        img = bs.edge_map.get(e.id)
        if img is None or not graph.has_edge(img):
            out.append(f"grid edge {e.id} has no image edge")
            ok = False
            continue
        ge = graph.edge(img)
        if ge.tail not in bs.vertex_sets[e.tail]:
            out.append(f"image of {e.id} has its tail outside the box of {e.tail}")
            ok = False
        if ge.head not in bs.vertex_sets[e.head]:
            out.append(f"image of {e.id} has its head outside the box of {e.head}")
            ok = False
    if not ok:
        return False

    for v in gamma.vertices:
        box = graph.induced(bs.vertex_sets[v])
        heads = sorted({graph.edge(bs.edge_map[e.id]).head for e in gamma.in_edges(v)})
        tails = {graph.edge(bs.edge_map[e.id]).tail for e in gamma.out_edges(v)}
        for h in heads:
            missing = tails - box.reachable(h)
            for t in sorted(missing):
                out.append(f"box of {v} has no directed path {h!r} -> {t!r}")
                ok = False
    return ok


# -- box system to diwall layout ----------------------------------------


def _bfs_path(g: Digraph, start: str, goals: frozenset[str] | set[str],
              ) -> tuple[list[str], list[str]] | None:
    """Shortest directed path from start to the nearest goal.

    Deterministic: neighbors explored in sorted edge-id order, so ties
    resolve to the lexicographically least path.  Returns (vertices,
    edge ids); start may itself be a goal (empty path).
    """
    if start in goals:
        return [start], []
    prev: dict[str, tuple[str, str]] = {}
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for e in sorted(g.out_edges(x), key=lambda e: e.id):
            y = e.head
            if y in seen:
                continue
            seen.add(y)
            prev[y] = (x, e.id)
            if y in goals:
                verts, eids = [y], []
                while verts[-1] != start:
                    px, pe = prev[verts[-1]]
                    eids.append(pe)
                    verts.append(px)
                return verts[::-1], eids[::-1]
            queue.append(y)
    return None


def _reverse_bfs_path(g: Digraph, goal: str, starts: set[str],
                      ) -> tuple[list[str], list[str]] | None:
    got = _bfs_path(g.reverse(), goal, starts)
    if got is None:
        return None
    verts, eids = got
    return verts[::-1], eids[::-1]


class _Boxes:
    """Lifting context for one box system: trunks and interior routing."""

    def __init__(self, graph: Digraph, bs: BoxSystem):
        self.graph = graph
        self.bs = bs
        self.k, self.k2 = bs.k1, bs.k2
        self.sub = {v: graph.induced(s) for v, s in bs.vertex_sets.items()}
        self.trunk: dict[str, tuple[list[str], list[str]]] = {}
        for i in range(1, self.k + 1):
            for j in range(2, self.k2):
                v = f"v{i}.{j}"
                x_in, x_out = self.row_pair(i, j)
                start = graph.edge(bs.edge_map[x_in.id]).head
                goal = graph.edge(bs.edge_map[x_out.id]).tail
                got = _bfs_path(self.sub[v], start, {goal})
                if got is None:
                    raise RoutingFailed(
                        f"box of {v} has no directed path {start!r} -> {goal!r}")
                self.trunk[v] = got

    def row_pair(self, i: int, j: int) -> tuple[Edge, Edge]:
        """In and out horizontal edges at grid vertex (i, j), 2 <= j < k2."""
        left = _gamma_edge("h", i, j - 1)
        right = _gamma_edge("h", i, j)
        return (left, right) if i % 2 else (right, left)

    def interior(self, v: str, e: Edge, f: Edge) -> list[str]:
        """Edge ids routed through the box of v between images of e and f.

        Honors the trunk rule: a link sharing one horizontal edge with the
        trunk follows the trunk up to (or from) the nearest branch point,
        so their intersection is a path.
        """
        img_in = self.graph.edge(self.bs.edge_map[e.id])
        img_out = self.graph.edge(self.bs.edge_map[f.id])
        start, goal = img_in.head, img_out.tail
        i, j = (int(t) for t in v[1:].split("."))
        if not 2 <= j <= self.k2 - 1:
            got = _bfs_path(self.sub[v], start, {goal})
            assert got is not None, "validated box lost a routing path"
            return got[1]
        x_in, x_out = self.row_pair(i, j)
        t_verts, t_eids = self.trunk[v]
        if (e.id, f.id) == (x_in.id, x_out.id):
            return t_eids
        if e.id == x_in.id:
            got = _reverse_bfs_path(self.sub[v], goal, set(t_verts))
            assert got is not None, "validated box lost a routing path"
            verts, eids = got
            cut = t_verts.index(verts[0])
            return t_eids[:cut] + eids
        assert f.id == x_out.id, "snake links always share a horizontal edge"
        got = _bfs_path(self.sub[v], start, set(t_verts))
        assert got is not None, "validated box lost a routing path"
        verts, eids = got
        cut = t_verts.index(verts[-1])
        return eids + t_eids[cut:]

    def lift(self, gamma_path: list[Edge]) -> tuple[str, ...]:
        out = [self.bs.edge_map[gamma_path[0].id]]
        for e, f in zip(gamma_path, gamma_path[1:]):
            assert e.head == f.tail
            out += self.interior(e.head, e, f)
            out.append(self.bs.edge_map[f.id])
        return tuple(out)


def _snake_vertices(k: int, group: int) -> list[tuple[int, int]]:
    """Extended snake through column group ``group`` of the k x 3k grid.

    Odd groups ascend (their grid path runs from the bottom row to the
    top), even groups descend; one horizontal edge is appended at each
    terminal row so the lift shares an image edge with every row path.
    """
    if group % 2:
        c = 3 * group - 2                      # 1 mod 6: weave c, c+1, c+2
        seq = [(k, c + 1), (k, c)]
        for r in range(k - 1, 1, -1):
            cols = (c, c + 1, c + 2) if r % 2 else (c + 2, c + 1, c)
            seq += [(r, x) for x in cols]
        seq += [(1, c), (1, c + 1)]
    else:
        c = 3 * group                          # 0 mod 6: weave c, c-1, c-2
        seq = [(1, c - 1), (1, c)]
        for r in range(2, k):
            cols = (c, c - 1, c - 2) if r % 2 == 0 else (c - 2, c - 1, c)
            seq += [(r, x) for x in cols]
        seq += [(k, c), (k, c - 1)]
    return seq


def _gamma_path_edges(verts: list[tuple[int, int]]) -> list[Edge]:
    out = []
    for (r1, c1), (r2, c2) in zip(verts, verts[1:]):
        if r1 == r2:
            e = _gamma_edge("h", r1, min(c1, c2))
        else:
            assert c1 == c2
            e = _gamma_edge("c", min(r1, r2), c1)
        assert (e.tail, e.head) == (f"v{r1}.{c1}", f"v{r2}.{c2}"), \
            f"walk step v{r1}.{c1} -> v{r2}.{c2} runs against {e}"
        out.append(e)
    return out


def box_to_layout(g, bs: BoxSystem) -> DiwallLayout:
    """Extract a k x k diwall layout from a k x 3k box system.

    Horizontal paths chain the image edges of each grid row through
    shortest trunk paths inside the boxes; vertical paths lift one snake
    per three-column group, sharing trunk segments where they cross the
    rows.  Raises RoutingFailed when the box system is invalid.
    """
    graph = _graph_of(g)
    k = bs.k1
    if bs.k2 != 3 * k:
        raise ValueError(f"need a k x 3k box system, got {bs.k1} x {bs.k2}")
    why: list[str] = []
    if not verify_box_system(graph, bs, k, 3 * k, reasons=why):
        raise RoutingFailed("; ".join(why))

    ctx = _Boxes(graph, bs)
    horizontals = []
    for i in range(1, k + 1):
        cols = range(1, 3 * k) if i % 2 else range(3 * k - 1, 0, -1)
        horizontals.append(ctx.lift([_gamma_edge("h", i, j) for j in cols]))
    verticals = []
    for group in range(1, k + 1):
        verticals.append(ctx.lift(_gamma_path_edges(_snake_vertices(k, group))))

    layout = DiwallLayout(tuple(horizontals), tuple(verticals))
    why = []
    assert verify_layout(graph, layout, k, reasons=why), "; ".join(why)
    return layout


# -- subdivision testing -------------------------------------------------


_SCALE_EDGES = 12
_SCALE_VERTICES = 40


@dataclass(frozen=True)
class SubdivisionModel:
    """Witness that G embeds H: branch images and one path per H edge.

    ``paths[e]`` is a directed path of G edge ids from the image of e's
    tail to the image of its head; the paths are internally disjoint from
    each other and from all branch images.
    """

    branch: dict[str, str]
    paths: dict[str, tuple[str, ...]]


def _order_vertices(h: Digraph) -> list[str]:
    """Connectivity-first ordering: least seed, then least attached vertex."""
    left = set(h.vertices)
    order: list[str] = []
    while left:
        attached = sorted(v for v in left
                          if any(u in order for u in h.neighbors(v)))
        pick = attached[0] if attached else min(left)
        order.append(pick)
        left.remove(pick)
    return order


def embeds(g, h, *, force: bool = False) -> SubdivisionModel | None:
    """Search G for a subdigraph isomorphic to a subdivision of H.

    Exact backtracking over branch-vertex images and internally disjoint
    directed path routings; absence is conclusive.  Deterministic: branch
    candidates and path edges are explored in ascending name order along a
    connectivity-first ordering of H's vertices, so the same inputs always
    produce the same model, the least one in that exploration order.
    Guarded by ScaleExceeded beyond desk scale unless ``force`` or the
    DIWALLKIT_SCALE_OVERRIDE environment variable is set.
    """
    gg, hh = _graph_of(g), _graph_of(h)
    override = force or os.environ.get("DIWALLKIT_SCALE_OVERRIDE", "") not in ("", "0")
    if not override and (hh.m > _SCALE_EDGES or gg.n > _SCALE_VERTICES):
        raise ScaleExceeded(
            f"embeds guard: |E(H)| = {hh.m} > {_SCALE_EDGES} or "
            f"|V(G)| = {gg.n} > {_SCALE_VERTICES}; pass force=True or set "
            f"DIWALLKIT_SCALE_OVERRIDE=1")

    order = _order_vertices(hh)
    rank = {v: i for i, v in enumerate(order)}
    # H edges become routable once both endpoints are placed.
    ready: dict[int, list[Edge]] = {i: [] for i in range(len(order))}
    for e in sorted(hh.edges, key=lambda e: e.id):
        ready[max(rank[e.tail], rank[e.head])].append(e)

    reach = {v: gg.reachable(v) for v in gg.vertices}
    out_sorted = {v: sorted(gg.out_edges(v), key=lambda e: e.id)
                  for v in gg.vertices}
    candidates = {v: [c for c in sorted(gg.vertices)
                      if gg.out_degree(c) >= hh.out_degree(v)
                      and gg.in_degree(c) >= hh.in_degree(v)]
                  for v in hh.vertices}

    branch: dict[str, str] = {}
    paths: dict[str, tuple[str, ...]] = {}
    used_v: set[str] = set()            # branch images and path interiors
    used_e: set[str] = set()

    def route(edges: list[Edge], at: int, then) -> SubdivisionModel | None:
        if at == len(edges):
            return then()
        he = edges[at]
        a, b = branch[he.tail], branch[he.head]
        walk_v: list[str] = [a]
        walk_e: list[str] = []

        def extend() -> SubdivisionModel | None:
            x = walk_v[-1]
            for e in out_sorted[x]:
                if e.id in used_e:
                    continue
                y = e.head
                if y == b:
                    # Arrival beats the blocked-vertex check: b is a branch
                    # image, so it sits in used_v on purpose.
                    walk_e.append(e.id)
                    paths[he.id] = tuple(walk_e)
                    used_e.update(walk_e)
                    interior = walk_v[1:]
                    used_v.update(interior)
                    got = route(edges, at + 1, then)
                    if got is not None:
                        return got
                    used_v.difference_update(interior)
                    used_e.difference_update(walk_e)
                    del paths[he.id]
                    walk_e.pop()
                    continue
                if y in used_v or y in walk_v or b not in reach[y]:
                    continue
                walk_v.append(y)
                walk_e.append(e.id)
                got = extend()
                if got is not None:
                    return got
                walk_v.pop()
                walk_e.pop()
            return None

        return extend()

    def place(i: int) -> SubdivisionModel | None:
        if i == len(order):
            return SubdivisionModel(dict(branch), dict(paths))
        hv = order[i]
        for c in candidates[hv]:
            if c in used_v:
                continue
            bad = False
            for e in hh.out_edges(hv):
                if e.head in branch and branch[e.head] not in reach[c]:
                    bad = True
                    break
            if not bad:
                for e in hh.in_edges(hv):
                    if e.tail in branch and c not in reach[branch[e.tail]]:
                        bad = True
                        break
            if bad:
                continue
            branch[hv] = c
            used_v.add(c)
            got = route(ready[i], 0, lambda: place(i + 1))
            if got is not None:
                return got
            used_v.remove(c)
            del branch[hv]
        return None

    return place(0)
