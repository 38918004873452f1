"""Directed multigraphs with string ids.

This is the embedding-free layer: vertices, directed edges, connectivity.
``Didrawing`` in :mod:`diwallkit.core` pairs one of these with a rotation
system.  Loops and parallel edges are legal here; operations whose
definitions require looplessness reject them individually.

Vertices and edges are kept sorted by id, so every derived iteration order
is deterministic.  The exhaustive searches elsewhere in the package rely on
that determinism for reproducible witnesses.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator


@dataclass(frozen=True, slots=True)
class Edge:
    """A directed edge ``tail -> head``."""

    id: str
    tail: str
    head: str

    @property
    def is_loop(self) -> bool:
        return self.tail == self.head

    def ends(self) -> tuple[str, str]:
        return (self.tail, self.head)

    def other_end(self, v: str) -> str:
        if v == self.tail:
            return self.head
        if v == self.head:
            return self.tail
        raise ValueError(f"vertex {v!r} is not an end of edge {self.id!r}")

    def reversed(self) -> Edge:
        return Edge(self.id, self.head, self.tail)


EdgeLike = Edge | tuple[str, str, str]


def _as_edge(e: EdgeLike) -> Edge:
    if isinstance(e, Edge):
        return e
    eid, tail, head = e
    return Edge(str(eid), str(tail), str(head))


class Digraph:
    """Immutable directed multigraph.

    Args:
        vertices: vertex ids; pass None to use exactly the edge endpoints.
        edges: Edge objects or (id, tail, head) triples.

    Raises:
        ValueError: on duplicate edge ids or unknown endpoints.
    """

    __slots__ = ("_vertices", "_edges", "_out", "_in")

    def __init__(self, vertices: Iterable[str] | None, edges: Iterable[EdgeLike] = ()):
        es = [_as_edge(e) for e in edges]
        if vertices is None:
            vs = sorted({x for e in es for x in (e.tail, e.head)})
        else:
            vs = sorted({str(v) for v in vertices})
        vset = set(vs)
        emap: dict[str, Edge] = {}
        for e in sorted(es, key=lambda e: e.id):
            if e.id in emap:
                raise ValueError(f"duplicate edge id {e.id!r}")
            if e.tail not in vset or e.head not in vset:
                raise ValueError(f"edge {e.id!r} has an endpoint outside the vertex set")
            emap[e.id] = e
        out: dict[str, list[str]] = {v: [] for v in vs}
        inn: dict[str, list[str]] = {v: [] for v in vs}
        for e in emap.values():
            out[e.tail].append(e.id)
            inn[e.head].append(e.id)
        self._vertices = tuple(vs)
        self._edges = emap
        self._out = {v: tuple(ids) for v, ids in out.items()}
        self._in = {v: tuple(ids) for v, ids in inn.items()}

    # -- basic access ------------------------------------------------------

    @property
    def vertices(self) -> tuple[str, ...]:
        return self._vertices

    @property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(self._edges.values())

    @property
    def edge_ids(self) -> tuple[str, ...]:
        return tuple(self._edges)

    def edge(self, eid: str) -> Edge:
        return self._edges[eid]

    def has_edge(self, eid: str) -> bool:
        return eid in self._edges

    def has_vertex(self, v: str) -> bool:
        return v in self._out

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def m(self) -> int:
        return len(self._edges)

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, m={self.m})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._vertices, tuple(self._edges.values())))

    # -- incidence ---------------------------------------------------------

    def out_edges(self, v: str) -> tuple[Edge, ...]:
        return tuple(self._edges[i] for i in self._out[v])

    def in_edges(self, v: str) -> tuple[Edge, ...]:
        return tuple(self._edges[i] for i in self._in[v])

    def incident_edges(self, v: str) -> tuple[Edge, ...]:
        """All edges with v as an endpoint; loops listed once."""
        ids = sorted(set(self._out[v]) | set(self._in[v]))
        return tuple(self._edges[i] for i in ids)

    def out_degree(self, v: str) -> int:
        return len(self._out[v])

    def in_degree(self, v: str) -> int:
        return len(self._in[v])

    def degree(self, v: str) -> int:
        # a loop counts twice, once per end
        return len(self._out[v]) + len(self._in[v])

    def out_neighbors(self, v: str) -> tuple[str, ...]:
        return tuple(sorted({self._edges[i].head for i in self._out[v]}))

    def in_neighbors(self, v: str) -> tuple[str, ...]:
        return tuple(sorted({self._edges[i].tail for i in self._in[v]}))

    def neighbors(self, v: str) -> tuple[str, ...]:
        """Distinct underlying neighbors, v itself excluded even on loops."""
        both = {e.other_end(v) for e in self.incident_edges(v)}
        both.discard(v)
        return tuple(sorted(both))

    def loops(self) -> tuple[Edge, ...]:
        return tuple(e for e in self._edges.values() if e.is_loop)

    @property
    def has_loops(self) -> bool:
        return any(e.is_loop for e in self._edges.values())

    # -- rebuilding --------------------------------------------------------

    def reverse(self) -> Digraph:
        return Digraph(self._vertices, [e.reversed() for e in self._edges.values()])

    def without_loops(self) -> Digraph:
        return Digraph(self._vertices, [e for e in self._edges.values() if not e.is_loop])

    def delete_edges(self, ids: Iterable[str]) -> Digraph:
        drop = set(ids)
        return Digraph(self._vertices, [e for e in self._edges.values() if e.id not in drop])

    def delete_vertices(self, vs: Iterable[str]) -> Digraph:
        drop = set(vs)
        keep = [v for v in self._vertices if v not in drop]
        edges = [e for e in self._edges.values() if e.tail not in drop and e.head not in drop]
        return Digraph(keep, edges)

    def induced(self, vs: Iterable[str]) -> Digraph:
        keep = set(vs)
        edges = [e for e in self._edges.values() if e.tail in keep and e.head in keep]
        return Digraph(sorted(keep), edges)

    def merge(self, group: Iterable[str], new_id: str, *, keep_loops: bool = False) -> Digraph:
        """Identify all vertices of ``group`` into a single vertex ``new_id``.

        Edges inside the group are dropped, or kept as loops at ``new_id``
        when keep_loops is set.  Edge ids are preserved, which lets callers
        lift paths and cuts back through a chain of contractions.
        """
        g = set(group)
        unknown = g - set(self._vertices)
        if unknown:
            raise ValueError(f"cannot merge unknown vertices {sorted(unknown)}")
        if new_id not in g and new_id in self._out:
            raise ValueError(f"merge target {new_id!r} collides with an existing vertex")

        def remap(v: str) -> str:
            return new_id if v in g else v

        edges = []
        for e in self._edges.values():
            t, h = remap(e.tail), remap(e.head)
            if t == new_id and h == new_id and not keep_loops:
                continue
            edges.append(Edge(e.id, t, h))
        keep = [v for v in self._vertices if v not in g]
        return Digraph(keep + [new_id], edges)

    def relabel(self, vertex_map: dict[str, str] | None = None,
                edge_map: dict[str, str] | None = None) -> Digraph:
        vm = vertex_map or {}
        em = edge_map or {}

        def rv(v: str) -> str:
            return vm.get(v, v)

        edges = [Edge(em.get(e.id, e.id), rv(e.tail), rv(e.head))
                 for e in self._edges.values()]
        return Digraph([rv(v) for v in self._vertices], edges)

    # -- connectivity ------------------------------------------------------

    def reachable(self, start: str, *, forward: bool = True) -> frozenset[str]:
        """Vertices reachable from start by directed paths (or by reverse ones)."""
        seen = {start}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            nxt = self.out_neighbors(x) if forward else self.in_neighbors(x)
            for y in nxt:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return frozenset(seen)

    def weak_components(self) -> tuple[frozenset[str], ...]:
        seen: set[str] = set()
        comps = []
        for v in self._vertices:
            if v in seen:
                continue
            comp = {v}
            queue = deque([v])
            while queue:
                x = queue.popleft()
                for e in self.incident_edges(x):
                    y = e.other_end(x)
                    if y not in comp:
                        comp.add(y)
                        queue.append(y)
            seen |= comp
            comps.append(frozenset(comp))
        return tuple(comps)

    def is_weakly_connected(self) -> bool:
        return len(self.weak_components()) <= 1

    def is_strongly_connected(self) -> bool:
        if self.n == 0:
            return True
        root = self._vertices[0]
        return (len(self.reachable(root, forward=True)) == self.n
                and len(self.reachable(root, forward=False)) == self.n)

    def is_k_weak(self, k: int) -> bool:
        """Underlying graph connected even after removing any < k vertices."""
        if not self.is_weakly_connected():
            return False
        for r in range(1, k):
            if r >= self.n:
                break
            for cut in combinations(self._vertices, r):
                if not self.delete_vertices(cut).is_weakly_connected():
                    return False
        return True

    def bridges(self) -> frozenset[str]:
        """Edge ids whose removal disconnects their underlying component.

        Parallel edges shield each other and loops are never bridges.
        """
        disc: dict[str, int] = {}
        low: dict[str, int] = {}
        out: set[str] = set()
        counter = 0
        for root in self._vertices:
            if root in disc:
                continue
            # iterative DFS over the underlying multigraph, tracking the
            # entering edge id so a parallel edge still works as a back edge
            stack: list[tuple[str, str | None, Iterator[Edge]]] = [
                (root, None, iter(self.incident_edges(root)))]
            disc[root] = low[root] = counter
            counter += 1
            while stack:
                v, in_edge, it = stack[-1]
                advanced = False
                for e in it:
                    if e.is_loop or e.id == in_edge:
                        continue
                    w = e.other_end(v)
                    if w not in disc:
                        disc[w] = low[w] = counter
                        counter += 1
                        stack.append((w, e.id, iter(self.incident_edges(w))))
                        advanced = True
                        break
                    low[v] = min(low[v], disc[w])
                if advanced:
                    continue
                stack.pop()
                if stack:
                    parent = stack[-1][0]
                    low[parent] = min(low[parent], low[v])
                    if low[v] > disc[parent]:
                        assert in_edge is not None
                        out.add(in_edge)
        return frozenset(out)

    def is_weakly_two_edge_connected(self) -> bool:
        return self.is_weakly_connected() and not self.bridges()

    def directed_path(self, u: str, v: str) -> tuple[Edge, ...] | None:
        """A shortest directed u->v path as an edge tuple; None if unreachable."""
        if u == v:
            return ()
        prev: dict[str, Edge] = {}
        seen = {u}
        queue = deque([u])
        while queue:
            x = queue.popleft()
            for e in self.out_edges(x):
                y = e.head
                if y in seen:
                    continue
                seen.add(y)
                prev[y] = e
                if y == v:
                    path = []
                    while y != u:
                        path.append(prev[y])
                        y = prev[y].tail
                    return tuple(reversed(path))
                queue.append(y)
        return None

    def strong_components(self) -> tuple[frozenset[str], ...]:
        """Strongly connected components, ordered by least member."""
        index: dict[str, int] = {}
        lowlink: dict[str, int] = {}
        on_stack: set[str] = set()
        stack: list[str] = []
        comps: list[frozenset[str]] = []
        counter = 0

        for root in self._vertices:
            if root in index:
                continue
            work: list[tuple[str, Iterator[str]]] = [(root, iter(self.out_neighbors(root)))]
            index[root] = lowlink[root] = counter
            counter += 1
            stack.append(root)
            on_stack.add(root)
            while work:
                v, it = work[-1]
                advanced = False
                for w in it:
                    if w not in index:
                        index[w] = lowlink[w] = counter
                        counter += 1
                        stack.append(w)
                        on_stack.add(w)
                        work.append((w, iter(self.out_neighbors(w))))
                        advanced = True
                        break
                    if w in on_stack:
                        lowlink[v] = min(lowlink[v], index[w])
                if advanced:
                    continue
                work.pop()
                if work:
                    parent = work[-1][0]
                    lowlink[parent] = min(lowlink[parent], lowlink[v])
                if lowlink[v] == index[v]:
                    comp = set()
                    while True:
                        w = stack.pop()
                        on_stack.discard(w)
                        comp.add(w)
                        if w == v:
                            break
                    comps.append(frozenset(comp))
        return tuple(sorted(comps, key=min))


def digraph(edges: Iterable[EdgeLike], vertices: Iterable[str] = ()) -> Digraph:
    """Convenience constructor used heavily by tests and generators."""
    es = [_as_edge(e) for e in edges]
    vs = set(vertices) | {x for e in es for x in (e.tail, e.head)}
    return Digraph(vs, es)
