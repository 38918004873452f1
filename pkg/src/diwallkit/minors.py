"""Directed contraction operators and small-scale semi-strong minor testing.

Two contraction operators act on digraphs and didrawings alike.  A
butterfly contraction collapses a non-loop edge uv provided u has
out-degree one or v has in-degree one; on a didrawing the merged vertex
splices the two rotations at the removed darts, so the drawing survives.
A strong contraction collapses a vertex set whose induced subdigraph is
strongly connected; the induced edges vanish.  On a didrawing this keeps
the drawing exactly when every outside attachment sits in a single face
of the collapsed piece, since only then does shrinking it to a point
leave a sphere; otherwise the embedding is dropped with a warning and an
abstract digraph comes back.

A digraph H counts as a semi-strong minor of G when some directed
subdivision of H can be reached from a subdigraph of G by strong
contractions.  ``is_semi_strong_minor`` decides this exactly at desk
scale by enumerating partitions of V(G) into strongly connected pieces
and searching each quotient for a subdivision of H.

Two characterizations are deliberately NOT relied on anywhere in this
package, and are recorded here as conjectures: the didrawings obtainable
from diwalls by deleting and butterfly-contracting are expected to be
exactly those whose in-darts and out-darts form at most two interleaved
runs around every vertex, and the digraphs obtainable that way from
semi-grids are expected to be those drawable with all in-edges and
out-edges of each vertex in two disjoint angular intervals.  The test
suite spot-checks tiny instances; no operation assumes either claim.
"""

from __future__ import annotations

import itertools
import os
import warnings
from dataclasses import dataclass

from .core import Dart, Didrawing, HEAD, TAIL
from .digraph import Digraph
from .errors import HasLoop, NotButterfly, NotStrong, ScaleExceeded
from .walls import embeds

__all__ = ["ContractionStep", "EmbeddingDropped", "LoopCreated", "contract",
           "is_semi_strong_minor"]

_SCALE_G_VERTICES = 10
_SCALE_H_EDGES = 6


class LoopCreated(UserWarning):
    """A contraction produced loops; most operations upstream reject them."""


class EmbeddingDropped(UserWarning):
    """A strong contraction pinched the drawing; the result is abstract."""


# -- contraction steps -------------------------------------------------------

@dataclass(frozen=True)
class ContractionStep:
    """One replayable contraction: what was collapsed and into which name.

    Build with the ``butterfly`` and ``strong`` classmethods.  The merged
    vertex is called ``name`` when given, else the least collapsed vertex
    name, so replaying a recorded sequence is deterministic.
    """

    kind: str
    edge: str | None = None
    vertices: frozenset[str] = frozenset()
    name: str | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        if self.kind == "butterfly":
            if self.edge is None or self.vertices:
                raise ValueError("butterfly step takes exactly one edge")
        elif self.kind == "strong":
            if self.edge is not None or not self.vertices:
                raise ValueError("strong step takes a non-empty vertex set")
        else:
            raise ValueError(f"unknown contraction kind {self.kind!r}")

    @classmethod
    def butterfly(cls, edge: str, *, name: str | None = None) -> ContractionStep:
        return cls("butterfly", edge=edge, name=name)

    @classmethod
    def strong(cls, vertices, *, name: str | None = None) -> ContractionStep:
        return cls("strong", vertices=frozenset(vertices), name=name)


def _graph_of(g) -> Digraph:
    return g.graph if isinstance(g, Didrawing) else g


def _merged_name(step: ContractionStep, collapsed, existing) -> str:
    name = step.name if step.name is not None else min(collapsed)
    if name in existing and name not in collapsed:
        raise ValueError(f"merged name {name!r} collides with a vertex")
    return name


def _splice(d: Didrawing, eid: str, name: str) -> Didrawing:
    """Contract one non-loop edge of a didrawing, keeping the drawing.

    The merged rotation reads u's darts clockwise from just past the
    contracted tail dart, then v's from just past the head dart; that is
    the cyclic order around the shrunken edge.
    """
    e = d.graph.edge(eid)
    u, v = e.tail, e.head
    ru = list(d.rotation[u])
    rv = list(d.rotation[v])
    i = ru.index(Dart(eid, TAIL))
    j = rv.index(Dart(eid, HEAD))
    merged = tuple(ru[i + 1:] + ru[:i] + rv[j + 1:] + rv[:j])
    rot = {x: darts for x, darts in d.rotation.items() if x not in (u, v)}
    rot[name] = merged
    graph = d.graph.delete_edges([eid]).merge((u, v), name, keep_loops=True)
    return Didrawing(graph, rot, loops_allowed=True)


def _without_edges(d: Didrawing, ids) -> Didrawing:
    drop = set(ids)
    rot = {v: tuple(x for x in darts if x.edge not in drop)
           for v, darts in d.rotation.items()}
    return Didrawing(d.graph.delete_edges(drop), rot,
                     loops_allowed=d.loops_allowed)


def _attachment_faces(d: Didrawing, part: frozenset[str]) -> set[str] | None:
    """Faces of the collapsed piece that hold outside attachments.

    Returns None when some vertex of the piece carries no induced dart
    (cannot happen for a strongly connected piece of two or more
    vertices).  Each outside dart lives in the corner just before the
    next induced dart clockwise, and that corner belongs to the face of
    that dart in the piece's own drawing.
    """
    sub = d.graph.induced(sorted(part))
    ids = set(sub.edge_ids)
    rot = {v: tuple(x for x in d.rotation[v] if x.edge in ids) for v in part}
    if any(not darts for darts in rot.values()):
        return None
    piece = Didrawing(sub, rot, loops_allowed=True)
    faces: set[str] = set()
    for v in part:
        inner = rot[v]
        full = d.rotation[v]
        for pos, dart in enumerate(full):
            if dart.edge in ids:
                continue
            after = next(full[(pos + t) % len(full)]
                         for t in range(1, len(full) + 1)
                         if full[(pos + t) % len(full)].edge in ids)
            faces.add(piece.region_of(after).id)
    return faces


def _spanning_tree(g: Digraph, part: frozenset[str]) -> list[str]:
    """Edge ids of a breadth-first spanning tree of the induced piece."""
    sub = g.induced(sorted(part))
    root = min(part)
    seen = {root}
    queue = [root]
    tree: list[str] = []
    while queue:
        x = queue.pop(0)
        for e in sorted(sub.incident_edges(x), key=lambda e: e.id):
            y = e.other_end(x)
            if y not in seen:
                seen.add(y)
                queue.append(y)
                tree.append(e.id)
    return tree


def _contract_strong_drawing(d: Didrawing, part: frozenset[str],
                             name: str) -> Didrawing:
    """Collapse a clean strongly connected piece inside the drawing.

    Contracting a spanning tree edge by edge shrinks the piece to one
    vertex; the leftover induced edges are then loops bounding empty
    discs, so deleting them is the rest of the collapse.
    """
    inner = min(part)
    induced_ids = set(d.graph.induced(sorted(part)).edge_ids)
    tree = _spanning_tree(d.graph, part)
    out = d
    for eid in tree:
        out = _splice(out, eid, inner)
    out = _without_edges(out, induced_ids - set(tree))
    if name != inner:
        out = out.relabel({inner: name})
    return out


def contract(g, step: ContractionStep):
    """Apply one contraction step; didrawings keep their drawing when it
    survives the collapse.

    Butterfly steps splice rotations and always return a didrawing for a
    didrawing input; antiparallel edges of the contracted one become
    loops, kept and announced with a LoopCreated warning.  Strong steps
    drop every induced edge; when the outside attaches to more than one
    face of the collapsed piece the sphere would pinch, so the embedding
    is dropped with an EmbeddingDropped warning and a plain digraph is
    returned.

    Raises NotButterfly or NotStrong when the step's invariant fails,
    ValueError for unknown edges or vertices or a colliding merged name.
    """
    drawing = isinstance(g, Didrawing)
    gg = _graph_of(g)
    if step.kind == "butterfly":
        if not gg.has_edge(step.edge):
            raise ValueError(f"unknown edge {step.edge!r}")
        e = gg.edge(step.edge)
        if e.is_loop:
            raise NotButterfly(f"edge {e.id!r} is a loop")
        if gg.out_degree(e.tail) != 1 and gg.in_degree(e.head) != 1:
            raise NotButterfly(
                f"edge {e.id!r}: tail out-degree {gg.out_degree(e.tail)} "
                f"and head in-degree {gg.in_degree(e.head)} are both above one")
        name = _merged_name(step, {e.tail, e.head}, gg.vertices)
        if drawing:
            out = _splice(g, e.id, name)
            after = out.graph
        else:
            out = after = gg.delete_edges([e.id]).merge(
                (e.tail, e.head), name, keep_loops=True)
        new_loops = {l.id for l in after.loops()} - {l.id for l in gg.loops()}
        if new_loops:
            warnings.warn(LoopCreated(
                "contraction created loops: " + ", ".join(sorted(new_loops))))
        return out

    part = step.vertices
    for v in part:
        if not gg.has_vertex(v):
            raise ValueError(f"unknown vertex {v!r}")
    induced = gg.induced(sorted(part))
    if not induced.is_strongly_connected():
        raise NotStrong(f"{sorted(part)} does not induce a strongly "
                        "connected subdigraph")
    name = _merged_name(step, part, gg.vertices)
    if len(part) == 1:
        sole = next(iter(part))
        doomed = [e.id for e in gg.incident_edges(sole) if e.is_loop]
        if drawing:
            out = _without_edges(g, doomed) if doomed else g
            return out.relabel({sole: name}) if name != sole else out
        out = gg.delete_edges(doomed) if doomed else gg
        return out.relabel({sole: name}) if name != sole else out
    if not drawing:
        return gg.merge(part, name, keep_loops=False)
    faces = _attachment_faces(g, part)
    if faces is not None and len(faces) <= 1:
        out = _contract_strong_drawing(g, part, name)
        assert out.graph == gg.merge(part, name, keep_loops=False)
        return out
    warnings.warn(EmbeddingDropped(
        f"collapsing {sorted(part)} would pinch the sphere; "
        "returning an abstract digraph"))
    return gg.merge(part, name, keep_loops=False)


# -- semi-strong minor search ------------------------------------------------

def _partitions(g: Digraph, pool: tuple[str, ...], memo: dict):
    """Partitions of the pool into strongly-connected-induced pieces.

    The all-singleton partition comes first; pieces grow from there, so a
    hit needing no contraction at all is found immediately.
    """
    if not pool:
        yield ()
        return
    head, rest = pool[0], pool[1:]
    for r in range(len(rest) + 1):
        for extra in itertools.combinations(rest, r):
            part = frozenset((head,) + extra)
            ok = memo.get(part)
            if ok is None:
                ok = len(part) == 1 or \
                    g.induced(sorted(part)).is_strongly_connected()
                memo[part] = ok
            if not ok:
                continue
            left = tuple(x for x in rest if x not in part)
            for more in _partitions(g, left, memo):
                yield (part,) + more


def is_semi_strong_minor(h, g, *, force: bool = False) -> bool:
    """Decide whether some directed subdivision of H is reachable from a
    subdigraph of G by strong contractions.

    Exhaustive at desk scale: every partition of V(G) into pieces with
    strongly connected induced subdigraphs is contracted, and each
    quotient is searched for a subdigraph isomorphic to a subdivision of
    H.  Absence is conclusive.  Guarded by ScaleExceeded beyond desk
    scale unless ``force`` or DIWALLKIT_SCALE_OVERRIDE is set; loopy
    patterns are rejected, since a piece's own edges never survive the
    collapse here and a kept-loop witness could be missed.
    """
    hh, gg = _graph_of(h), _graph_of(g)
    if hh.has_loops:
        raise HasLoop("semi-strong minor search requires a loopless pattern")
    override = force or os.environ.get(
        "DIWALLKIT_SCALE_OVERRIDE", "") not in ("", "0")
    if not override and (gg.n > _SCALE_G_VERTICES or hh.m > _SCALE_H_EDGES):
        raise ScaleExceeded(
            f"minor guard: |V(G)| = {gg.n} > {_SCALE_G_VERTICES} or "
            f"|E(H)| = {hh.m} > {_SCALE_H_EDGES}; pass force=True or set "
            "DIWALLKIT_SCALE_OVERRIDE=1")
    if hh.n == 0:
        return True
    if hh.n > gg.n or hh.m > gg.m:
        return False
    memo: dict[frozenset[str], bool] = {}
    for parts in _partitions(gg, tuple(sorted(gg.vertices)), memo):
        q = gg
        for part in parts:
            if len(part) > 1:
                q = q.merge(part, min(part))
        if embeds(q, hh, force=True) is not None:
            return True
    return False
