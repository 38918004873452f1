"""Pattern multicuts: path dichotomy, general recursion, repairs."""

from __future__ import annotations

import itertools

import pytest

from diwallkit import (
    Concatenation,
    Digraph,
    InvalidMulticut,
    Multicut,
    NotAlternating,
    NotOneWeak,
    NotPath,
    Path,
    Pattern,
    SameVertex,
    connectify,
    crossing_profile,
    digraph,
    find_multicut,
    find_multicut_with_witness,
    path_case,
    verify_multicut,
)
from diwallkit.multicut import _fit_concatenation

from _oracles import digraph_multicut_exists_bruteforce, path_has_pattern_multicut


def sign_path(signs: tuple[int, ...]) -> tuple[Digraph, Path]:
    """A path q0..qn whose i-th edge points forward iff signs[i] == +1."""
    edges = []
    for i, s in enumerate(signs):
        a, b = f"q{i}", f"q{i + 1}"
        edges.append((f"e{i}", a, b) if s == 1 else (f"e{i}", b, a))
    g = digraph(edges, vertices=[f"q{i}" for i in range(len(signs) + 1)])
    p = Path(tuple(f"q{i}" for i in range(len(signs) + 1)),
             tuple(g.edge(f"e{i}") for i in range(len(signs))))
    return g, p


def all_patterns(max_len: int) -> list[Pattern]:
    out = []
    for k in range(1, max_len + 1):
        for terms in itertools.product((1, -1), repeat=k):
            out.append(Pattern(terms))
    return out


def alternating_patterns(max_len: int) -> list[Pattern]:
    return [p for p in all_patterns(max_len) if p.is_alternating]


def small_digraphs(n: int, max_edges: int):
    """Weakly connected digraphs on exactly n labeled vertices, simple arcs."""
    verts = [str(i + 1) for i in range(n)]
    arcs = [(a, b) for a in verts for b in verts if a != b]
    for r in range(n - 1, max_edges + 1):
        for combo in itertools.combinations(arcs, r):
            g = digraph([(f"e{i}", a, b) for i, (a, b) in enumerate(combo)],
                        vertices=verts)
            if g.is_weakly_connected():
                yield g


# -- Pattern ---------------------------------------------------------------


def test_pattern_basics():
    p = Pattern.parse("+-+")
    assert p.terms == (1, -1, 1)
    assert str(p) == "+-+"
    assert len(p) == 3
    assert p.negated == Pattern.parse("-+-")
    assert p.is_alternating
    assert not Pattern.parse("++-").is_alternating
    assert p.plus_plus == Pattern.parse("-+-+-")
    assert Pattern.parse("-").plus_plus == Pattern.parse("+-+")


def test_pattern_rejects_garbage():
    with pytest.raises(ValueError):
        Pattern.parse("")
    with pytest.raises(ValueError):
        Pattern.parse("+x")
    with pytest.raises(ValueError):
        Pattern(())
    with pytest.raises(ValueError):
        Pattern((2,))


# -- Path ------------------------------------------------------------------


def test_path_signs_and_reversal():
    g, p = sign_path((1, -1, 1))
    assert p.signs == (1, -1, 1)
    assert p.reversed().signs == (-1, 1, -1)
    assert p.reversed().vertices == tuple(reversed(p.vertices))
    assert p.as_digraph().m == 3


def test_path_validation():
    g, _ = sign_path((1, 1))
    e0, e1 = g.edge("e0"), g.edge("e1")
    with pytest.raises(NotPath):
        Path(("q0", "q2"), (e0,))  # edge does not connect these
    with pytest.raises(NotPath):
        Path(("q0", "q1"), (e0, e1))  # length mismatch
    with pytest.raises(NotPath):
        Path(("q0", "q1", "q0"), (e0, e0))  # repeats a vertex
    with pytest.raises(NotPath):
        Path((), ())
    assert len(Path(("q0",), ())) == 0  # zero-length is fine


# -- path_case: pinned examples --------------------------------------------


def spec_path(kind: str) -> tuple[Digraph, Path]:
    if kind == "forward":  # u -> a -> v
        g = digraph([("e1", "u", "a"), ("e2", "a", "v")])
    else:  # u -> a <- v
        g = digraph([("e1", "u", "a"), ("e2", "v", "a")])
    p = Path(("u", "a", "v"), (g.edge("e1"), g.edge("e2")))
    return g, p


def test_path_case_forward_path_minus_pattern():
    _, p = spec_path("forward")
    res = path_case(p, "u", "v", Pattern.parse("-"))
    assert isinstance(res, Concatenation)
    assert res.signs == Pattern.parse("+")
    assert res.breakpoints == ("u", "v")
    (seg,) = res.segments
    assert seg.vertices == ("u", "a", "v")


def test_path_case_bent_path_two_level_multicut():
    _, p = spec_path("bent")
    res = path_case(p, "u", "v", Pattern.parse("+-"))
    assert isinstance(res, Multicut)
    assert res.parts == (frozenset({"u"}), frozenset({"a"}), frozenset({"v"}))


def test_path_case_forward_path_plus_pattern():
    _, p = spec_path("forward")
    res = path_case(p, "u", "v", Pattern.parse("+"))
    assert isinstance(res, Multicut)
    assert res.parts == (frozenset({"u"}), frozenset({"a", "v"}))


def test_path_case_accepts_reversed_traversal():
    _, p = spec_path("forward")
    res = path_case(p.reversed(), "u", "v", Pattern.parse("+"))
    assert isinstance(res, Multicut)
    assert res.parts == (frozenset({"u"}), frozenset({"a", "v"}))


def test_path_case_zero_length():
    p = Path(("u",), ())
    res = path_case(p, "u", "u", Pattern.parse("+-"))
    assert isinstance(res, Concatenation)
    assert all(len(s) == 0 for s in res.segments)


def test_path_case_errors():
    _, p = spec_path("forward")
    with pytest.raises(NotAlternating):
        path_case(p, "u", "v", Pattern.parse("++"))
    with pytest.raises(NotPath):
        path_case(p, "u", "a", Pattern.parse("+"))  # endpoints mismatch
    with pytest.raises(NotPath):
        path_case("u->a->v", "u", "v", Pattern.parse("+"))


# -- path_case: exclusivity sweep ------------------------------------------


def reassembled_edge_ids(c: Concatenation) -> list[str]:
    out = []
    for seg, s in zip(c.segments, c.signs):
        ids = [e.id for e in seg.edges]
        out.extend(ids if s == 1 else reversed(ids))
    return out


def test_path_case_matches_oracle_exhaustively():
    for n in range(1, 7):
        for signs in itertools.product((1, -1), repeat=n):
            _, p = sign_path(signs)
            for pi in alternating_patterns(4):
                res = path_case(p, "q0", f"q{n}", pi)
                admits = path_has_pattern_multicut(signs, pi.terms)
                if admits:
                    assert isinstance(res, Multicut)
                    assert verify_multicut(p.as_digraph(), "q0", f"q{n}", pi, res)
                    # interval parts crossed exactly once per level
                    assert crossing_profile(p, res) == (1,) * len(pi)
                else:
                    assert isinstance(res, Concatenation)
                    assert res.signs == pi.negated
                    assert res.breakpoints[0] == "q0"
                    assert res.breakpoints[-1] == f"q{n}"
                    assert reassembled_edge_ids(res) == [f"e{i}" for i in range(n)]


# -- find_multicut ---------------------------------------------------------


def test_find_multicut_pinned_examples():
    g = digraph([("e1", "u", "a"), ("e2", "a", "v")])
    assert find_multicut(g, "u", "v", Pattern.parse("-")) is None
    mc = find_multicut(g, "u", "v", Pattern.parse("+"))
    assert mc is not None
    assert mc.parts == (frozenset({"u", "a"}), frozenset({"v"}))

    w = find_multicut_with_witness(g, "u", "v", Pattern.parse("-"))
    assert isinstance(w, Path)
    assert w.vertices == ("u", "a", "v")
    assert w.signs == (1, 1)
    assert w.edges == (g.edge("e1"), g.edge("e2"))


def test_find_multicut_matches_bruteforce_on_small_digraphs():
    pats = all_patterns(3)
    for n, max_edges in [(2, 2), (3, 4)]:
        for g in small_digraphs(n, max_edges):
            verts = g.vertices
            for u, v in itertools.permutations(verts, 2):
                for pi in pats:
                    got = find_multicut_with_witness(g, u, v, pi)
                    expect = digraph_multicut_exists_bruteforce(g, u, v, pi.terms)
                    if expect:
                        assert isinstance(got, Multicut)
                        assert verify_multicut(g, u, v, pi, got)
                    else:
                        assert isinstance(got, Path)
                        assert {got.first, got.last} == {u, v}
                        for e in got.edges:
                            assert g.edge(e.id) == e
                        assert not path_has_pattern_multicut(got.signs, pi.terms)


def test_find_multicut_with_parallel_and_opposite_edges():
    cases = [
        digraph([("a", "u", "v"), ("b", "u", "v")]),
        digraph([("a", "u", "v"), ("b", "v", "u")]),
        digraph([("a", "u", "x"), ("b", "u", "x"), ("c", "x", "v"),
                 ("d", "v", "x")]),
    ]
    for g in cases:
        for pi in all_patterns(3):
            got = find_multicut(g, "u", "v", pi)
            expect = digraph_multicut_exists_bruteforce(g, "u", "v", pi.terms)
            assert (got is not None) == expect
            if got is not None:
                assert verify_multicut(g, "u", "v", pi, got)


def test_find_multicut_ignores_loops():
    g = digraph([("a", "u", "x"), ("b", "x", "v"), ("l", "x", "x")])
    mc = find_multicut(g, "u", "v", Pattern.parse("+"))
    assert mc is not None
    assert verify_multicut(g, "u", "v", Pattern.parse("+"), mc)


def test_reversal_symmetry():
    for g in small_digraphs(3, 3):
        for u, v in [("1", "2"), ("2", "3")]:
            for pi in all_patterns(2):
                a = find_multicut(g, u, v, pi) is not None
                b = find_multicut(g.reverse(), u, v, pi.negated) is not None
                assert a == b


def test_find_multicut_errors():
    g = digraph([("a", "1", "2")], vertices=["1", "2", "z"])
    with pytest.raises(NotOneWeak):
        find_multicut(g, "1", "2", Pattern.parse("+"))
    h = digraph([("a", "1", "2")])
    with pytest.raises(SameVertex):
        find_multicut(h, "1", "1", Pattern.parse("+"))
    with pytest.raises(ValueError):
        find_multicut(h, "1", "zz", Pattern.parse("+"))


# -- connectify ------------------------------------------------------------


def test_connectify_fixed_point():
    g = digraph([("e1", "u", "a"), ("e2", "a", "v")])
    mc = Multicut((frozenset({"u", "a"}), frozenset({"v"})), Pattern.parse("+"))
    out = connectify(g, mc, u="u", v="v")
    assert out.parts == mc.parts
    assert out.pattern == mc.pattern


def test_connectify_moves_stranded_component():
    g = digraph([("a", "u", "v"), ("b", "x", "v")])
    mc = Multicut((frozenset({"u", "x"}), frozenset({"v"})), Pattern.parse("+"))
    out = connectify(g, mc, u="u", v="v")
    assert out.parts == (frozenset({"u"}), frozenset({"v", "x"}))


def test_connectify_sweep_properties():
    pats = all_patterns(3)
    checked = 0
    for g in small_digraphs(3, 4):
        for u, v in itertools.permutations(g.vertices, 2):
            for pi in pats:
                mc = find_multicut(g, u, v, pi)
                if mc is None:
                    continue
                before = sum(
                    1 for e in g.edges
                    if not e.is_loop and mc.level_of(e.tail) != mc.level_of(e.head))
                out = connectify(g, mc, u=u, v=v)
                after = sum(
                    1 for e in g.edges
                    if not e.is_loop and out.level_of(e.tail) != out.level_of(e.head))
                assert after <= before
                assert out.pattern == pi
                assert verify_multicut(g, u, v, pi, out)
                k = len(pi)
                for i in range(1, k + 1):
                    pre = set().union(*out.parts[:i])
                    suf = set().union(*out.parts[i:])
                    assert g.induced(pre).is_weakly_connected()
                    assert g.induced(suf).is_weakly_connected()
                checked += 1
    assert checked > 100


def test_connectify_rejects_invalid():
    g = digraph([("e1", "u", "a"), ("e2", "a", "v")])
    bad = Multicut((frozenset({"u"}), frozenset({"a", "v"})), Pattern.parse("-"))
    with pytest.raises(InvalidMulticut):
        connectify(g, bad)
    overlap = Multicut((frozenset({"u", "a"}), frozenset({"a", "v"})),
                       Pattern.parse("+"))
    with pytest.raises(InvalidMulticut):
        connectify(g, overlap)


# -- verify_multicut -------------------------------------------------------


def test_verify_multicut_rules():
    g = digraph([("e1", "u", "a"), ("e2", "a", "v")])
    pi = Pattern.parse("+-")
    good = Multicut((frozenset({"u"}), frozenset({"a", "v"})), Pattern.parse("+"))
    assert verify_multicut(g, "u", "v", Pattern.parse("+"), good)
    # gap violation: u and v two levels apart joined through a missing part
    gap = Multicut((frozenset({"u", "a"}), frozenset(), frozenset({"v"})), pi)
    assert not verify_multicut(g, "u", "v", pi, gap)
    # wrong direction across the first cut
    assert not verify_multicut(
        g, "u", "v", Pattern.parse("-"),
        Multicut((frozenset({"u"}), frozenset({"a", "v"})), Pattern.parse("-")))
    # pattern mismatch between argument and certificate
    assert not verify_multicut(g, "u", "v", pi, good)
    # endpoints in wrong parts
    assert not verify_multicut(g, "v", "u", Pattern.parse("+"), good)


# -- crossing profile ------------------------------------------------------


def enumerate_path_multicuts(signs: tuple[int, ...], pi: Pattern):
    """All valid level assignments of the sign path, as Multicuts."""
    n = len(signs)
    k = len(pi)
    names = [f"q{i}" for i in range(n + 1)]
    for combo in itertools.product(range(k + 1), repeat=n - 1) if n > 1 else [()]:
        levels = (0,) + combo + (k,)
        ok = set(levels) == set(range(k + 1))
        for i, s in enumerate(signs):
            if not ok:
                break
            a, b = levels[i], levels[i + 1]
            if a == b:
                continue
            if abs(a - b) >= 2:
                ok = False
            elif b == a + 1:
                ok = s == pi.terms[a]
            else:
                ok = s == -pi.terms[b]
        if ok:
            parts = [set() for _ in range(k + 1)]
            for x, ell in zip(names, levels):
                parts[ell].add(x)
            yield Multicut(tuple(frozenset(p) for p in parts), pi)


def test_every_multicut_crosses_once_given_plusplus_concatenation():
    hits = 0
    for n in range(1, 6):
        for signs in itertools.product((1, -1), repeat=n):
            _, p = sign_path(signs)
            for pi in alternating_patterns(3):
                if _fit_concatenation(p, pi.plus_plus) is None:
                    continue
                for mc in enumerate_path_multicuts(signs, pi):
                    assert crossing_profile(p, mc) == (1,) * len(pi)
                    hits += 1
    assert hits > 50


def test_crossing_profile_counts():
    _, p = sign_path((1, -1, 1))
    pi = Pattern.parse("+")
    mc = Multicut((frozenset({"q0", "q1", "q2"}), frozenset({"q3"})), pi)
    assert crossing_profile(p, mc) == (1,)
    with pytest.raises(InvalidMulticut):
        crossing_profile(p, Multicut((frozenset({"q0"}), frozenset({"q3"})), pi))
