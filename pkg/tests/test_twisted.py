import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from coxclosure.errors import NoConnectingReflection
from coxclosure.matrix import preset
from coxclosure.system import build_system, system_for
from coxclosure.twisted import (TwistDescriptor, Verdict, check_acyclic, is_initial_section_finite, twisted_edge,
                                twisted_graph, twisted_inversion, twisted_length, twisted_length_table, twisted_leq,
                                twisted_member)

A2_ELEMENTS = ["e", "s", "t", "st", "ts", "sts"]


@pytest.fixture
def A2():
    return system_for("A2")


@pytest.fixture
def AINF():
    return build_system(preset("AINF"), depth_cap=12)


def test_a2_length_tables(A2):
    A = TwistDescriptor.finite(A2.element("st"))
    B = TwistDescriptor.explicit(A2.parse_reflection_set("s, t"))
    e = A2.identity
    assert [twisted_length(A2, A, e, A2.element(w)) for w in A2_ELEMENTS] == [0, -1, 1, 0, -2, -1]
    assert [twisted_length(A2, B, e, A2.element(w)) for w in A2_ELEMENTS] == [0, -1, -1, 0, 0, -1]


def test_empty_twist_is_length(H3):
    A = TwistDescriptor.finite(H3.identity)
    table = twisted_length_table(H3, A, H3.enumerate_ball(15).items)
    assert all(v == len(H3.element(k)) for k, v in table.items())
    assert twisted_inversion(H3, A, H3.element("rst")) == H3.inversion_set(H3.element("rst"))


def test_twisted_inversion_of_inversion_set(H3):
    # N(u) twisted by w is N(wu)
    rng = random.Random(4)
    for _ in range(50):
        u, w = H3.element_at(rng.randrange(120)), H3.element_at(rng.randrange(120))
        A = TwistDescriptor.finite(u)
        assert twisted_inversion(H3, A, w) == H3.inversion_set(H3.multiply(w, u))


def test_a2_graphs(A2):
    A = TwistDescriptor.finite(A2.element("st"))
    assert check_acyclic(A2, A).verdict == "acyclic"
    ts, t = A2.element("ts"), A2.element("t")
    for w in A2_ELEMENTS:
        x = A2.element(w)
        assert twisted_leq(A2, A, ts, x) == Verdict.YES
        assert twisted_leq(A2, A, x, t) == Verdict.YES
    B = TwistDescriptor.explicit(A2.parse_reflection_set("s, t"))
    res = check_acyclic(A2, B)
    assert res.verdict == "cycle"
    assert res.cycle[0] == res.cycle[-1]
    for u, v in zip(res.cycle, res.cycle[1:]):
        assert twisted_edge(A2, B, u, v)
    # the cycle e -> sts -> ts -> t -> e
    cyc = [A2.element(w) for w in ["e", "sts", "ts", "t", "e"]]
    assert all(twisted_edge(A2, B, u, v) for u, v in zip(cyc, cyc[1:]))


def test_twisted_edge_errors(A2):
    A = TwistDescriptor.finite(A2.element("st"))
    with pytest.raises(NoConnectingReflection):
        twisted_edge(A2, A, A2.identity, A2.element("st"))


def test_twisted_graph_reverses_labels(A2):
    A = TwistDescriptor.explicit(A2.parse_reflection_set("s"))
    g = twisted_graph(A2, A, A2.enumerate_ball(3).items)
    s = A2.parse_reflection_set("s")
    for u, v, r in g.edges:
        assert (len(v) < len(u)) == (r in s)
    assert g.reversed_labels == s


def test_infinite_dihedral_lengths(AINF):
    A = TwistDescriptor.infinite_dihedral(AINF, 0, 9)
    e = AINF.identity
    got = [twisted_length(AINF, A, e, AINF.element(w)) for w in ["s", "ts", "sts", "t", "st", "tst", "stst"]]
    assert got == [-1, -2, -3, 1, 2, 3, 4]
    members = AINF.format_reflection_set(A.listed(AINF))
    assert members == ["s", "sts", "ststs", "stststs", "ststststs"]
    inv = twisted_inversion(AINF, A, AINF.element("st"))
    # N(st) = {s, sts} and st A ts holds the longer reflections starting with s
    assert AINF.format_reflection_set(inv) == members
    inv = twisted_inversion(AINF, A, AINF.element("t"))
    assert AINF.format_reflection_set(inv) == ["t", "tst", "tstst", "tststst", "tstststst"]
    assert twisted_leq(AINF, A, AINF.element("s"), AINF.identity, 4) == Verdict.YES
    assert twisted_leq(AINF, A, AINF.identity, AINF.element("s"), 4) == Verdict.UNKNOWN
    assert check_acyclic(AINF, A, 4).verdict == "unknown"


def test_infinite_dihedral_descriptor_validation(A2, AINF):
    with pytest.raises(ValueError):
        TwistDescriptor.infinite_dihedral(A2, 0, 4)
    with pytest.raises(ValueError):
        TwistDescriptor.infinite_dihedral(AINF, 0, -1)
    A = TwistDescriptor.infinite_dihedral(AINF, 0, 3)
    with pytest.raises(ValueError):
        A.finite_ids(AINF)


def test_recognition(H3):
    for i in range(H3.order):
        w = H3.element_at(i)
        witness = is_initial_section_finite(H3, H3.inversion_set(w))
        assert witness == w
    seen = {H3.inversion_set(H3.element_at(i)) for i in range(H3.order)}
    rng = random.Random(8)
    for _ in range(300):
        k = rng.randrange(1, 6)
        A = frozenset(rng.sample(list(H3.reflection_ids), k))
        got = is_initial_section_finite(H3, A)
        assert (got is not None) == (A in seen)


def test_recognition_exhaustive_a3(A3):
    seen = {A3.inversion_set(A3.element_at(i)) for i in range(A3.order)}
    for k in range(7):
        for combo in itertools.combinations(A3.reflection_ids, k):
            A = frozenset(combo)
            got = is_initial_section_finite(A3, A)
            if got is None:
                assert A not in seen
            else:
                assert A3.inversion_set(got) == A


@settings(max_examples=200, deadline=None)
@given(seed=st.integers(0, 2**32), name=st.sampled_from(["A3", "B3", "H3"]))
def test_membership_and_lengths(seed, name):
    W = system_for(name)
    rng = random.Random(seed)
    A = TwistDescriptor.explicit({r for r in W.reflection_ids if rng.random() < 0.4})
    u, v, w = (W.element_at(rng.randrange(W.order)) for _ in range(3))
    t = rng.choice(list(W.reflection_ids))
    inv = twisted_inversion(W, A, w)
    assert (t in inv) == twisted_member(W, A, w, t)
    assert twisted_length(W, A, u, v) + twisted_length(W, A, v, w) == twisted_length(W, A, u, w)
    assert twisted_length(W, A, u, v) == -twisted_length(W, A, v, u)


def test_descriptor_rejects_unknown_kind():
    with pytest.raises(ValueError):
        TwistDescriptor("witness")
    with pytest.raises(ValueError):
        TwistDescriptor("finite")
