"""Pattern multicuts between two vertices of a digraph.

A pattern is a nonempty sequence of signs.  A multicut for (u, v) with
pattern pi is an ordered partition (A_0, ..., A_k) of the vertices with
u in A_0 and v in A_k, no edges between parts that are two or more levels
apart, and, across each consecutive cut, only one permitted direction:
pi_i = +1 forbids edges from A_i back to A_{i-1}, pi_i = -1 forbids edges
from A_{i-1} forward into A_i.  Loops never matter.

On a single path the situation is an exact dichotomy: a path between u and
v admits a multicut with an alternating pattern pi exactly when it has no
concatenation with pattern -pi, and :func:`path_case` produces whichever
certificate applies.  :func:`find_multicut` decides general digraphs by a
contraction recursion and never guesses: every multicut it returns passes
:func:`verify_multicut` first, and in the witness-producing variant every
absence comes with a u-v path on which no multicut with the pattern exists.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import Didrawing
from .digraph import Digraph, Edge
from .errors import (
    InvalidMulticut,
    NotAlternating,
    NotOneWeak,
    NotPath,
    SameVertex,
)

__all__ = [
    "Pattern",
    "Path",
    "Multicut",
    "Concatenation",
    "path_case",
    "find_multicut",
    "find_multicut_with_witness",
    "verify_multicut",
    "connectify",
    "crossing_profile",
]


# -- patterns --------------------------------------------------------------


@dataclass(frozen=True)
class Pattern:
    """A nonempty sequence of +1/-1 terms."""

    terms: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "terms", tuple(self.terms))
        if not self.terms:
            raise ValueError("a pattern has at least one term")
        if any(t not in (1, -1) for t in self.terms):
            raise ValueError(f"pattern terms must be +1 or -1, got {self.terms}")

    @classmethod
    def parse(cls, text: str) -> Pattern:
        """Build a pattern from a string of '+' and '-' characters."""
        if not text or any(c not in "+-" for c in text):
            raise ValueError(f"cannot parse pattern from {text!r}")
        return cls(tuple(1 if c == "+" else -1 for c in text))

    def __str__(self) -> str:
        return "".join("+" if t == 1 else "-" for t in self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    @property
    def negated(self) -> Pattern:
        return Pattern(tuple(-t for t in self.terms))

    @property
    def is_alternating(self) -> bool:
        return all(a != b for a, b in zip(self.terms, self.terms[1:]))

    @property
    def plus_plus(self) -> Pattern:
        """The pattern extended by a new first and last term.

        Both added terms oppose their neighbor, so an alternating pattern
        stays alternating.
        """
        return Pattern((-self.terms[0],) + self.terms + (-self.terms[-1],))


# -- paths and certificates ------------------------------------------------


@dataclass(frozen=True)
class Path:
    """A simple path recorded as a traversal, edges in either direction.

    ``vertices`` lists the visited vertices in order; ``edges[i]`` connects
    ``vertices[i]`` and ``vertices[i+1]`` but may point either way.  The
    sign of a step is +1 when the edge points along the traversal.
    """

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        if not self.vertices:
            raise NotPath("a path visits at least one vertex")
        if len(self.vertices) != len(self.edges) + 1:
            raise NotPath("a path on n edges visits n+1 vertices")
        if len(set(self.vertices)) != len(self.vertices):
            raise NotPath("a path does not repeat vertices")
        for i, e in enumerate(self.edges):
            if {e.tail, e.head} != {self.vertices[i], self.vertices[i + 1]}:
                raise NotPath(
                    f"edge {e.id!r} does not connect "
                    f"{self.vertices[i]!r} and {self.vertices[i + 1]!r}")

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def first(self) -> str:
        return self.vertices[0]

    @property
    def last(self) -> str:
        return self.vertices[-1]

    @property
    def signs(self) -> tuple[int, ...]:
        return tuple(1 if e.tail == self.vertices[i] else -1
                     for i, e in enumerate(self.edges))

    def reversed(self) -> Path:
        return Path(self.vertices[::-1], self.edges[::-1])

    def as_digraph(self) -> Digraph:
        return Digraph(self.vertices, self.edges)


@dataclass(frozen=True)
class Multicut:
    """An ordered vertex partition certifying a pattern multicut."""

    parts: tuple[frozenset[str], ...]
    pattern: Pattern

    def __post_init__(self) -> None:
        object.__setattr__(self, "parts",
                           tuple(frozenset(p) for p in self.parts))

    def level_of(self, vertex: str) -> int:
        for i, p in enumerate(self.parts):
            if vertex in p:
                return i
        raise KeyError(vertex)


@dataclass(frozen=True)
class Concatenation:
    """A split of a path into directed segments realizing a sign pattern.

    Segment i runs between breakpoints q_{i-1} and q_i and is stored in the
    direction of its arrows: from q_{i-1} when its sign is +1, from q_i
    when it is -1.  Zero-length segments are allowed and carry either sign.
    """

    breakpoints: tuple[str, ...]
    segments: tuple[Path, ...]
    signs: Pattern

    def __post_init__(self) -> None:
        object.__setattr__(self, "breakpoints", tuple(self.breakpoints))
        object.__setattr__(self, "segments", tuple(self.segments))
        if len(self.segments) != len(self.signs):
            raise ValueError("one sign per segment")
        if len(self.breakpoints) != len(self.segments) + 1:
            raise ValueError("t segments need t+1 breakpoints")
        for i, (seg, s) in enumerate(zip(self.segments, self.signs)):
            a, b = self.breakpoints[i], self.breakpoints[i + 1]
            if any(x == -1 for x in seg.signs):
                raise ValueError(f"segment {i} is not a directed path")
            want = (a, b) if s == 1 else (b, a)
            if (seg.first, seg.last) != want:
                raise ValueError(
                    f"segment {i} runs {seg.first}->{seg.last}, "
                    f"expected {want[0]}->{want[1]}")


# -- the path case ---------------------------------------------------------


def _runs(signs: Sequence[int]) -> list[tuple[int, int, int]]:
    """Maximal same-sign stretches as (sign, first edge, last edge)."""
    out: list[tuple[int, int, int]] = []
    for i, s in enumerate(signs):
        if out and out[-1][0] == s:
            out[-1] = (s, out[-1][1], i)
        else:
            out.append((s, i, i))
    return out


def _segment(p: Path, first: int, last: int, sign: int) -> Path:
    seg = Path(p.vertices[first:last + 2], p.edges[first:last + 1])
    return seg if sign == 1 else seg.reversed()


def _fit_concatenation(p: Path, want: Pattern) -> Concatenation | None:
    """A concatenation of p with exactly the signs of ``want``, if any.

    Only meaningful for alternating targets: maximal runs then embed
    consecutively or not at all.
    """
    assert want.is_alternating
    runs = _runs(p.signs)
    m = len(runs)
    if m == 0:
        at = p.vertices[0]
        zero = Path((at,), ())
        return Concatenation((at,) * (len(want) + 1), (zero,) * len(want), want)
    delta = 0 if runs[0][0] == want.terms[0] else 1
    if delta + m > len(want):
        return None
    breakpoints = [p.vertices[0]]
    segments = []
    for j in range(1, len(want) + 1):
        if delta < j <= delta + m:
            sign, first, last = runs[j - delta - 1]
            assert sign == want.terms[j - 1]
            segments.append(_segment(p, first, last, sign))
            breakpoints.append(p.vertices[last + 1])
        else:
            at = breakpoints[-1]
            segments.append(Path((at,), ()))
            breakpoints.append(at)
    assert breakpoints[-1] == p.vertices[-1]
    return Concatenation(tuple(breakpoints), tuple(segments), want)


def _oriented_between(p: Path, u: str, v: str) -> Path:
    if (p.first, p.last) == (u, v):
        return p
    if (p.first, p.last) == (v, u):
        return p.reversed()
    raise NotPath(f"path runs {p.first}->{p.last}, not between {u!r} and {v!r}")


def path_case(p: Path, u: str, v: str, pi: Pattern) -> Multicut | Concatenation:
    """Decide a path: multicut with pattern pi, or concatenation with -pi.

    Exactly one of the two certificates exists, and the returned multicut
    has interval parts separated by one crossing edge per level.
    """
    if not isinstance(p, Path):
        raise NotPath(f"expected a Path, got {type(p).__name__}")
    if not pi.is_alternating:
        raise NotAlternating(f"pattern {pi} is not alternating")
    p = _oriented_between(p, u, v)

    fit = _fit_concatenation(p, pi.negated)
    if fit is not None:
        return fit

    signs = p.signs
    runs = _runs(signs)
    k = len(pi)
    if runs[0][0] == pi.terms[0]:
        xs = [runs[j][1] for j in range(k)]
    else:
        xs = [runs[j + 1][1] for j in range(k)]
    for j, x in enumerate(xs):
        assert signs[x] == pi.terms[j]
    bounds = [0] + [x + 1 for x in xs] + [len(p.vertices)]
    parts = tuple(frozenset(p.vertices[bounds[i]:bounds[i + 1]])
                  for i in range(k + 1))
    mc = Multicut(parts, pi)
    assert verify_multicut(p.as_digraph(), u, v, pi, mc)
    return mc


# -- the general recursion -------------------------------------------------


def _reversed_traversal_of(edges: Sequence[Edge], start: str) -> Path:
    """The directed edge sequence from ``start``, repackaged end-to-start."""
    verts = [start]
    for e in edges:
        verts.append(e.head if e.tail == verts[-1] else e.tail)
    return Path(tuple(reversed(verts)), tuple(reversed(edges)))


def _solve(g: Digraph, u: str, v: str,
           pi: tuple[int, ...]) -> tuple[frozenset[str], ...] | Path:
    """Multicut parts for pattern pi, or a witness path admitting none.

    g is loopless and weakly connected, u != v.
    """
    k = len(pi)
    if pi[-1] == -1:
        res = _solve(g.reverse(), u, v, tuple(-t for t in pi))
        if isinstance(res, Path):
            # same path in g; re-fetch the edge objects by id
            return Path(res.vertices, tuple(g.edge(e.id) for e in res.edges))
        return res

    if k == 1:
        reach = g.reachable(v)
        if u in reach:
            back = g.directed_path(v, u)
            assert back is not None
            return _reversed_traversal_of(back, v)
        return (frozenset(g.vertices) - reach, frozenset(reach))

    # k >= 2: any edge between u and v kills every multicut, since parts
    # two or more levels apart may not touch
    direct = [e for e in g.edges if {e.tail, e.head} == {u, v}]
    if direct:
        e = min(direct, key=lambda e: e.id)
        return Path((u, v), (e,))

    out_v = g.out_edges(v)
    if out_v:
        # contract the least edge leaving v; with pi_k = +1 its head can
        # only ever sit in A_k next to v
        e = min(out_v, key=lambda e: e.id)
        w = e.head
        assert w not in (u, v)
        h = g.merge({v, w}, v)
        res = _solve(h, u, v, pi)
        if isinstance(res, Path):
            lifted = [g.edge(f.id) for f in res.edges]
            prev = res.vertices[-2]
            last = lifted[-1]
            z = last.head if last.tail == prev else last.tail
            if z == v:
                return Path(res.vertices, tuple(lifted))
            assert z == w
            return Path(res.vertices[:-1] + (w, v), tuple(lifted) + (e,))
        parts = list(res)
        assert v in parts[-1]
        parts[-1] = parts[-1] | {w}
        return tuple(parts)

    # v is a sink: identify it with its in-neighborhood and shorten pi
    neigh = frozenset(g.in_neighbors(v))
    assert neigh and u not in neigh
    h = g.merge(neigh | {v}, v)
    res = _solve(h, u, v, pi[:-1])
    if isinstance(res, Path):
        lifted = [g.edge(f.id) for f in res.edges]
        prev = res.vertices[-2]
        last = lifted[-1]
        z = last.head if last.tail == prev else last.tail
        if z == v:
            return Path(res.vertices, tuple(lifted))
        assert z in neigh
        hop = min((f for f in g.out_edges(z) if f.head == v),
                  key=lambda f: f.id)
        return Path(res.vertices[:-1] + (z, v), tuple(lifted) + (hop,))
    parts = list(res)
    assert v in parts[-1]
    parts[-1] = (parts[-1] - {v}) | neigh
    parts.append(frozenset({v}))
    return tuple(parts)


def _as_digraph(g: Didrawing | Digraph) -> Digraph:
    return g.graph if isinstance(g, Didrawing) else g


def find_multicut_with_witness(g: Didrawing | Digraph, u: str, v: str,
                               pi: Pattern) -> Multicut | Path:
    """A multicut with pattern pi, or a u-v path that admits none."""
    g = _as_digraph(g)
    if u == v:
        raise SameVertex(f"need distinct endpoints, got {u!r} twice")
    for x in (u, v):
        if not g.has_vertex(x):
            raise ValueError(f"vertex {x!r} is not in the graph")
    if not g.is_weakly_connected():
        raise NotOneWeak("multicuts are defined on weakly connected digraphs")

    res = _solve(g.without_loops(), u, v, pi.terms)
    if isinstance(res, Path):
        assert {res.first, res.last} == {u, v}
        if pi.is_alternating:
            check = path_case(res, u, v, pi)
            assert isinstance(check, Concatenation)
        return res
    mc = Multicut(res, pi)
    assert verify_multicut(g, u, v, pi, mc)
    return mc


def find_multicut(g: Didrawing | Digraph, u: str, v: str,
                  pi: Pattern) -> Multicut | None:
    """A multicut with pattern pi when one exists, else None."""
    res = find_multicut_with_witness(g, u, v, pi)
    return res if isinstance(res, Multicut) else None


# -- validation and repair -------------------------------------------------


def _multicut_problem(g: Digraph, pi: Pattern,
                      mc: Multicut) -> str | None:
    """Why mc is not a pattern-pi partition of g, or None if it is one."""
    if mc.pattern != pi:
        return f"multicut pattern {mc.pattern} differs from {pi}"
    if len(mc.parts) != len(pi) + 1:
        return "part count does not match the pattern length"
    seen: set[str] = set()
    for p in mc.parts:
        if p & seen:
            return "parts overlap"
        seen |= p
    if seen != set(g.vertices):
        return "parts do not cover the vertex set"
    level = {x: i for i, p in enumerate(mc.parts) for x in p}
    for e in g.edges:
        if e.is_loop:
            continue
        lt, lh = level[e.tail], level[e.head]
        if abs(lt - lh) >= 2:
            return f"edge {e.id!r} spans levels {lt} and {lh}"
        if lh == lt + 1 and pi.terms[lh - 1] == -1:
            return f"edge {e.id!r} crosses level {lh} forward, forbidden"
        if lt == lh + 1 and pi.terms[lt - 1] == 1:
            return f"edge {e.id!r} crosses level {lt} backward, forbidden"
    return None


def verify_multicut(g: Didrawing | Digraph, u: str, v: str, pi: Pattern,
                    mc: Multicut) -> bool:
    """Check a multicut certificate; never raises on bad certificates."""
    g = _as_digraph(g)
    if not isinstance(mc, Multicut):
        return False
    if _multicut_problem(g, pi, mc) is not None:
        return False
    return u in mc.parts[0] and v in mc.parts[-1]


def _crossing_count(g: Digraph, parts: Sequence[set[str]]) -> int:
    level = {x: i for i, p in enumerate(parts) for x in p}
    return sum(1 for e in g.edges
               if not e.is_loop and level[e.tail] != level[e.head])


def connectify(g: Didrawing | Digraph, mc: Multicut, *,
               u: str | None = None, v: str | None = None) -> Multicut:
    """Rebuild a multicut so every prefix and suffix union is connected.

    Repeatedly moves a connected component of a disconnected prefix
    A_0+...+A_{i-1} into A_i (and symmetrically for suffixes), choosing the
    lexicographically least movable component.  Each move strictly lowers
    the number of crossing edges, so the loop terminates.  The components
    holding ``u`` and ``v`` stay put; by default the anchors are the least
    vertices of the end parts.
    """
    g = _as_digraph(g)
    if not g.is_weakly_connected():
        raise NotOneWeak("connectify needs a weakly connected digraph")
    problem = _multicut_problem(g, mc.pattern, mc)
    if problem is not None:
        raise InvalidMulticut(problem)
    if not mc.parts[0] or not mc.parts[-1]:
        raise InvalidMulticut("end parts are empty")
    anchor_u = min(mc.parts[0]) if u is None else u
    anchor_v = min(mc.parts[-1]) if v is None else v
    if anchor_u not in mc.parts[0]:
        raise InvalidMulticut(f"{anchor_u!r} is not in the first part")
    if anchor_v not in mc.parts[-1]:
        raise InvalidMulticut(f"{anchor_v!r} is not in the last part")

    parts = [set(p) for p in mc.parts]
    k = len(parts) - 1
    crossings = _crossing_count(g, parts)

    def components(vs: set[str]) -> list[frozenset[str]]:
        return list(g.induced(vs).weak_components())

    changed = True
    while changed:
        changed = False
        for i in range(1, k + 1):
            prefix = set().union(*parts[:i])
            comps = components(prefix)
            if len(comps) <= 1:
                continue
            movable = [c for c in comps if anchor_u not in c]
            y = min(movable, key=lambda c: tuple(sorted(c)))
            for j in range(i):
                parts[j] -= y
            parts[i] |= y
            now = _crossing_count(g, parts)
            assert now < crossings
            crossings = now
            changed = True
        for i in range(k, 0, -1):
            suffix = set().union(*parts[i:])
            comps = components(suffix)
            if len(comps) <= 1:
                continue
            movable = [c for c in comps if anchor_v not in c]
            y = min(movable, key=lambda c: tuple(sorted(c)))
            for j in range(i, k + 1):
                parts[j] -= y
            parts[i - 1] |= y
            now = _crossing_count(g, parts)
            assert now < crossings
            crossings = now
            changed = True

    out = Multicut(tuple(frozenset(p) for p in parts), mc.pattern)
    assert _multicut_problem(g, mc.pattern, out) is None
    for i in range(1, k + 1):
        assert g.induced(set().union(*out.parts[:i])).is_weakly_connected()
        assert g.induced(set().union(*out.parts[i:])).is_weakly_connected()
    return out


def crossing_profile(p: Path, mc: Multicut) -> tuple[int, ...]:
    """How many edges of the path cross each consecutive cut of mc."""
    level = {x: i for i, part in enumerate(mc.parts) for x in part}
    missing = [x for x in p.vertices if x not in level]
    if missing:
        raise InvalidMulticut(f"path vertices {missing} are not in any part")
    counts = [0] * len(mc.pattern)
    for i, e in enumerate(p.edges):
        la, lb = level[p.vertices[i]], level[p.vertices[i + 1]]
        if la == lb:
            continue
        if abs(la - lb) >= 2:
            raise InvalidMulticut(
                f"path edge {e.id!r} spans levels {la} and {lb}")
        counts[max(la, lb) - 1] += 1
    return tuple(counts)
