"""Shared hand-built didrawings for the test suite.

Everything here is constructed from explicit coordinates or explicit
rotations, independently of the generators under test.
"""

from __future__ import annotations

from diwallkit import (Didrawing, Digraph, build_didrawing,
                       didrawing_from_positions, digraph)


def triangle() -> Didrawing:
    """Directed 3-cycle 1->2->3->1 drawn clockwise (inner region on the right)."""
    g = digraph([("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")])
    pos = {"1": (0.0, 2.0), "2": (2.0, -1.0), "3": (-2.0, -1.0)}
    return didrawing_from_positions(g, pos)


def digon() -> Didrawing:
    """Two parallel edges 1->2: a bows up, b bows down."""
    g = digraph([("a", "1", "2"), ("b", "1", "2")])
    pos = {"1": (0.0, 0.0), "2": (4.0, 0.0)}
    bends = {"a": [(2.0, 1.0)], "b": [(2.0, -1.0)]}
    return didrawing_from_positions(g, pos, bends)


def k4() -> Didrawing:
    """Planar K4 orientation: hub 1 inside triangle 2,3,4."""
    g = digraph([
        ("a", "1", "2"), ("b", "1", "3"), ("c", "1", "4"),
        ("d", "2", "3"), ("e", "3", "4"), ("f", "4", "2"),
    ])
    pos = {"1": (0.0, 0.0), "2": (0.0, 2.0), "3": (-2.0, -1.0), "4": (2.0, -1.0)}
    return didrawing_from_positions(g, pos)


def star_in_out() -> Didrawing:
    """Degree-4 hub whose rotation alternates out,in,out,in."""
    g = digraph([
        ("e1", "c", "p"), ("e2", "q", "c"), ("e3", "c", "r"), ("e4", "s", "c"),
    ])
    pos = {"c": (0.0, 0.0), "p": (0.0, 2.0), "q": (2.0, 0.0),
           "r": (0.0, -2.0), "s": (-2.0, 0.0)}
    return didrawing_from_positions(g, pos)


def two_triangles() -> Didrawing:
    """Two directed triangles sharing vertex 1 (a cut vertex)."""
    g = digraph([
        ("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1"),
        ("d", "1", "4"), ("e", "4", "5"), ("f", "5", "1"),
    ])
    pos = {"1": (0.0, 0.0), "2": (-2.0, 1.0), "3": (-2.0, -1.0),
           "4": (2.0, 1.0), "5": (2.0, -1.0)}
    return didrawing_from_positions(g, pos)


def directed_path(n: int) -> Didrawing:
    """p0 -> p1 -> ... -> pn on a line."""
    g = digraph([(f"e{i}", f"p{i}", f"p{i + 1}") for i in range(n)])
    pos = {f"p{i}": (float(i), 0.0) for i in range(n + 1)}
    return didrawing_from_positions(g, pos)


def directed_cycle(n: int) -> Didrawing:
    """Directed n-cycle drawn clockwise, vertices u0..u{n-1}."""
    import math
    g = digraph([(f"e{i}", f"u{i}", f"u{(i + 1) % n}") for i in range(n)])
    pos = {f"u{i}": (math.sin(2 * math.pi * i / n), math.cos(2 * math.pi * i / n))
           for i in range(n)}
    return didrawing_from_positions(g, pos)


def parallel_pair(m: int, *, direction_flips: tuple[int, ...] = ()) -> Didrawing:
    """m parallel arcs between 1 and 2, nested top to bottom.

    Arc i runs 1->2 unless i is listed in direction_flips.
    """
    edges = []
    for i in range(m):
        t, h = ("2", "1") if i in direction_flips else ("1", "2")
        edges.append((f"e{i}", t, h))
    g = digraph(edges)
    pos = {"1": (0.0, 0.0), "2": (4.0, 0.0)}
    bends = {f"e{i}": [(2.0, float(m - 1 - 2 * i))] for i in range(m)}
    return didrawing_from_positions(g, pos, bends)


def doubled_triangle() -> Didrawing:
    """The clockwise triangle with a reverse twin bowed outside each edge."""
    g = digraph([
        ("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1"),
        ("ra", "2", "1"), ("rb", "3", "2"), ("rc", "1", "3"),
    ])
    pos = {"1": (0.0, 2.0), "2": (2.0, -1.0), "3": (-2.0, -1.0)}
    bends = {"ra": [(1.6, 0.8)], "rb": [(0.0, -1.6)], "rc": [(-1.6, 0.8)]}
    return didrawing_from_positions(g, pos, bends)


def two_digons() -> Didrawing:
    """Two digons chained through a shared middle vertex: u => v => w."""
    g = digraph([("a", "u", "v"), ("b", "u", "v"), ("c", "v", "w"), ("d", "v", "w")])
    pos = {"u": (-3.0, 0.0), "v": (0.0, 0.0), "w": (3.0, 0.0)}
    bends = {"a": [(-1.5, 1.0)], "b": [(-1.5, -1.0)],
             "c": [(1.5, 1.0)], "d": [(1.5, -1.0)]}
    return didrawing_from_positions(g, pos, bends)


def hub_grid(cols: int = 2, rows: int = 6) -> Didrawing:
    """A cols x rows grid whose rows and columns all close through one hub.

    Grid vertex g{i}.{j} sits in row i (1 at the top) and column j (1 at
    the left).  Column j runs upward for odd j and downward for even j,
    entering from the hub as ci{j}, through mids c{j}.{t}, leaving as
    co{j}.  Row i runs rightward for odd i, leftward for even i, with
    ri{i}, r{i}.{t}, ro{i}.  The hub v lies in the outer face, so the
    columns form a ring of size cols through v and the rows one of size
    rows.
    """
    def gv(i: int, j: int) -> str:
        return f"g{i}.{j}"

    vertices = ["v"] + [gv(i, j)
                        for i in range(1, rows + 1) for j in range(1, cols + 1)]
    edges: list[tuple[str, str, str]] = []
    for j in range(1, cols + 1):
        if j % 2:
            edges.append((f"ci{j}", "v", gv(rows, j)))
            edges += [(f"c{j}.{t}", gv(t + 1, j), gv(t, j))
                      for t in range(1, rows)]
            edges.append((f"co{j}", gv(1, j), "v"))
        else:
            edges.append((f"ci{j}", "v", gv(1, j)))
            edges += [(f"c{j}.{t}", gv(t, j), gv(t + 1, j))
                      for t in range(1, rows)]
            edges.append((f"co{j}", gv(rows, j), "v"))
    for i in range(1, rows + 1):
        if i % 2:
            edges.append((f"ri{i}", "v", gv(i, 1)))
            edges += [(f"r{i}.{t}", gv(i, t), gv(i, t + 1))
                      for t in range(1, cols)]
            edges.append((f"ro{i}", gv(i, cols), "v"))
        else:
            edges.append((f"ri{i}", "v", gv(i, cols)))
            edges += [(f"r{i}.{t}", gv(i, t + 1), gv(i, t))
                      for t in range(1, cols)]
            edges.append((f"ro{i}", gv(i, 1), "v"))

    rotations: dict[str, list[tuple[str, str]]] = {}
    for i in range(1, rows + 1):
        for j in range(1, cols + 1):
            if j % 2:
                north = (f"co{j}", "T") if i == 1 else (f"c{j}.{i - 1}", "T")
                south = (f"ci{j}", "H") if i == rows else (f"c{j}.{i}", "H")
            else:
                north = (f"ci{j}", "H") if i == 1 else (f"c{j}.{i - 1}", "H")
                south = (f"co{j}", "T") if i == rows else (f"c{j}.{i}", "T")
            if j == cols:
                east = (f"ro{i}", "T") if i % 2 else (f"ri{i}", "H")
            else:
                east = (f"r{i}.{j}", "T" if i % 2 else "H")
            if j == 1:
                west = (f"ri{i}", "H") if i % 2 else (f"ro{i}", "T")
            else:
                west = (f"r{i}.{j - 1}", "H" if i % 2 else "T")
            rotations[gv(i, j)] = [north, east, south, west]
    # clockwise around the hub = anticlockwise along the grid's boundary
    hub: list[tuple[str, str]] = []
    for i in range(1, rows + 1):             # left side, top to bottom
        hub.append((f"ri{i}", "T") if i % 2 else (f"ro{i}", "H"))
    for j in range(1, cols + 1):             # bottom, left to right
        hub.append((f"ci{j}", "T") if j % 2 else (f"co{j}", "H"))
    for i in range(rows, 0, -1):             # right side, bottom to top
        hub.append((f"ro{i}", "H") if i % 2 else (f"ri{i}", "T"))
    for j in range(cols, 0, -1):             # top, right to left
        hub.append((f"co{j}", "H") if j % 2 else (f"ci{j}", "T"))
    rotations["v"] = hub
    return build_didrawing(vertices, edges, rotations)


def hub_grid_column(j: int, rows: int = 6) -> list[str]:
    """Edge ids of hub_grid's column j cycle, hub exit first."""
    mids = range(rows - 1, 0, -1) if j % 2 else range(1, rows)
    return [f"ci{j}"] + [f"c{j}.{t}" for t in mids] + [f"co{j}"]


def hub_grid_row(i: int, cols: int = 2) -> list[str]:
    """Edge ids of hub_grid's row i cycle, hub exit first."""
    mids = range(1, cols) if i % 2 else range(cols - 1, 0, -1)
    return [f"ri{i}"] + [f"r{i}.{t}" for t in mids] + [f"ro{i}"]


def nested_lenses() -> Didrawing:
    """Two nested directed lens cycles through v and u.

    The outer cycle runs clockwise (out along the top, back along the
    bottom), the inner one anticlockwise.  That opposite winding is what
    puts their darts in ring position at v and lets them nest rather
    than cross at u.
    """
    g = digraph([("a", "v", "u"), ("b", "u", "v"),
                 ("c", "v", "u"), ("d", "u", "v")])
    pos = {"v": (0.0, 0.0), "u": (4.0, 0.0)}
    bends = {"a": [(2.0, 3.0)], "b": [(2.0, -3.0)],
             "c": [(2.0, -1.0)], "d": [(2.0, 1.0)]}
    return didrawing_from_positions(g, pos, bends)
