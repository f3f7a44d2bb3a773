import random

import numpy as np
import pytest

from conftest import bridge
from oracle import joins_for

from coxclosure.errors import NoJoin, NoJoinWithinCap
from coxclosure.matrix import preset
from coxclosure.orders import (JoinTrace, bruhat_graph, bruhat_leq, graph_to_dot, join_brute, join_R, lower_set,
                               meet_R, restrict_labels, weak_leq)
from coxclosure.system import build_system, system_for


@pytest.mark.parametrize("name", ["A3", "B3", "H3"])
def test_weak_order_matches_oracle(name):
    b = bridge(name)
    G, W = b.G, b.W
    for u in range(G.size):
        for v in range(G.size):
            assert weak_leq(W, b.elements[u], b.elements[v]) == G.weak_leq(u, v)


@pytest.mark.parametrize("name", ["A3", "B3", "H3", "A4", "D4"])
def test_join_and_meet_match_oracle(name):
    b = bridge(name)
    G, W = b.G, b.W
    L = G.lower_matrix()
    for u in range(G.size):
        joins = joins_for(L, u)
        for v in range(G.size):
            assert joins[v] >= 0
            assert join_R(W, b.elements[u], b.elements[v]) == b.elements[joins[v]]
    # meets: greatest common lower bound, found as the last common lower bound in BFS order
    rng = random.Random(1)
    for _ in range(500):
        u, v = rng.randrange(G.size), rng.randrange(G.size)
        common = np.nonzero(L[u] & L[v])[0]
        m = common[-1]
        assert all(L[m, x] for x in common)
        assert meet_R(W, b.elements[u], b.elements[v]) == b.elements[m]


def test_join_examples(A3):
    e = A3.identity
    assert join_R(A3, e, e) == e
    w0 = A3.long_element()
    u = A3.element("rs")
    assert join_R(A3, u, w0) == w0
    assert join_R(A3, u, u) == u
    assert A3.format(join_R(A3, A3.element("r"), A3.element("t"))) == "rt"
    assert join_R(A3, A3.element("r"), A3.element("s")) == A3.dihedral_long_element(0, 1)


def test_join_with_bound_and_trace(H3):
    u, v = H3.element("rs"), H3.element("ts")
    bound = H3.long_element()
    trace = JoinTrace()
    j = join_R(H3, u, v, bound, trace)
    assert j == join_R(H3, u, v)
    assert trace.iterations >= 1
    with pytest.raises(ValueError):
        join_R(H3, u, v, H3.element("r"))


def test_join_in_infinite_dihedral():
    W = build_system(preset("AINF"), depth_cap=10)
    with pytest.raises(NoJoin):
        join_R(W, W.element("s"), W.element("t"))
    assert W.format(join_R(W, W.element("s"), W.element("st"))) == "st"
    with pytest.raises(NoJoinWithinCap):
        join_brute(W, W.element("s"), W.element("t"), 6)


def test_join_in_infinite_group_with_finite_parabolic():
    # affine A2: every pair of generators generates a finite dihedral group
    from coxclosure.matrix import CoxeterMatrix
    m = CoxeterMatrix(3, ((1, 3, 3), (3, 1, 3), (3, 3, 1)), ("r", "s", "t"), "affineA2")
    W = build_system(m, depth_cap=12)
    u, v = W.element("r"), W.element("s")
    assert W.format(join_R(W, u, v)) == "rsr"
    assert join_brute(W, u, v, 5) == join_R(W, u, v)


@pytest.mark.parametrize("name", ["A3", "H3"])
def test_join_brute_agrees(name):
    W = system_for(name)
    rng = random.Random(5)
    cap = len(W.long_element())
    for _ in range(200):
        u, v = W.element_at(rng.randrange(W.order)), W.element_at(rng.randrange(W.order))
        assert join_brute(W, u, v, cap) == join_R(W, u, v)


def test_lower_set(A3):
    w = A3.element("rst")
    assert sorted(A3.format(x) for x in lower_set(A3, w)) == ["e", "r", "rs", "rst"]


def _bruhat_oracle(G):
    """reach[u] = set of v with a Bruhat-graph path u -> v."""
    reach = []
    for u in range(G.size):
        seen = {u}
        stack = [u]
        while stack:
            x = stack.pop()
            for t in G.refl:
                y = G.mul(x, t)
                if G.length[y] > G.length[x] and y not in seen:
                    seen.add(y)
                    stack.append(y)
        reach.append(seen)
    return reach


@pytest.mark.parametrize("name", ["A3", "B3"])
def test_bruhat_order_matches_oracle(name):
    b = bridge(name)
    reach = _bruhat_oracle(b.G)
    for u in range(b.G.size):
        for v in range(b.G.size):
            assert bruhat_leq(b.W, b.elements[u], b.elements[v]) == (v in reach[u])


def test_bruhat_vs_weak():
    W = system_for("A2")
    s, ts = W.element("s"), W.element("ts")
    assert bruhat_leq(W, s, ts)
    assert not weak_leq(W, s, ts)
    assert bruhat_leq(W, W.identity, W.long_element())


def test_bruhat_graph_edges(A3):
    verts = A3.enumerate_ball(6).items
    g = bruhat_graph(A3, verts)
    edges = {(u, v) for u, v, _ in g.edges}
    assert not any((v, u) in edges for u, v in edges)
    # every edge goes up by a reflection
    for u, v, r in g.edges:
        assert len(v) > len(u)
        assert A3.mul_reflection(u, r) == v
    # 24 elements, each with 6 reflection neighbours, each edge counted once
    assert len(g.edges) == 24 * 6 // 2


def test_restrict_and_dot(A3):
    A = A3.parse_reflection_set("r, rstsr, t")
    g = restrict_labels(bruhat_graph(A3, A3.enumerate_ball(6).items), A)
    assert all(r in A for _, _, r in g.edges)
    dot = graph_to_dot(A3, g, "omega")
    assert dot.startswith("digraph omega {")
    assert '"e" -> "r" [label="r"];' in dot
    assert dot.rstrip().endswith("}")
