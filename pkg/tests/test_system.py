import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import bridge

from coxclosure.errors import InfiniteBond, RootDepthExceeded, UnknownGenerator
from coxclosure.matrix import INF, CoxeterMatrix, load_matrix, preset
from coxclosure.system import CoxeterSystem, build_system, system_for

FINITE = ["A3", "B3", "H3", "A4", "D4", "B4", "F4", "A5"]


def test_preset_bonds():
    assert preset("A3").bonds == ((1, 3, 2), (3, 1, 3), (2, 3, 1))
    assert preset("H3").bonds[0][1] == 5
    assert preset("I2(7)").bonds == ((1, 7), (7, 1))
    assert preset("AINF").bonds == ((1, INF), (INF, 1))
    d4 = preset("D4").bonds
    assert sorted(m for i in range(4) for j in range(i + 1, 4) if (m := d4[i][j]) == 3) == [3, 3, 3]


def test_matrix_validation():
    with pytest.raises(ValueError):
        CoxeterMatrix(2, ((1, 3), (2, 1)), ("s", "t"))
    with pytest.raises(ValueError):
        CoxeterMatrix(2, ((1, 1), (1, 1)), ("s", "t"))
    with pytest.raises(ValueError):
        CoxeterMatrix(2, ((1, 3), (3, 1)), ("s", "s"))
    with pytest.raises(ValueError):
        preset("Q7")


def test_matrix_file_round_trip(tmp_path):
    m = preset("B3")
    path = tmp_path / "b3.json"
    path.write_text(json.dumps(m.to_json()))
    back = load_matrix(path)
    assert back.bonds == m.bonds and back.generator_names == m.generator_names


@pytest.mark.parametrize("name, order, reflections", [
    ("A1", 2, 1), ("A2", 6, 3), ("A3", 24, 6), ("A4", 120, 10), ("A5", 720, 15), ("B3", 48, 9),
    ("B4", 384, 16), ("D4", 192, 12), ("H3", 120, 15), ("H4", 14400, 60), ("F4", 1152, 24),
    ("I2(7)", 14, 7),
])
def test_group_orders(name, order, reflections):
    W = system_for(name)
    assert W.complete
    assert W.order == order
    assert W.num_roots == reflections
    assert len(W.long_element()) == reflections


@pytest.mark.parametrize("name", FINITE)
def test_inversion_sets_match_oracle(name):
    b = bridge(name)
    for i in range(b.G.size):
        assert b.W.inversion_set(b.elements[i]) == b.roots(b.G.inversions(i))


@pytest.mark.parametrize("name", ["A3", "H3", "F4"])
def test_products_match_oracle(name):
    b = bridge(name)
    W, G = b.W, b.G
    rng = random.Random(7)
    for _ in range(300):
        i, j = rng.randrange(G.size), rng.randrange(G.size)
        assert W.multiply(b.elements[i], b.elements[j]) == b.elements[G.mul(i, j)]
        assert W.inverse(b.elements[i]) == b.elements[G.inv(i)]


@pytest.mark.parametrize("name", ["A3", "H3", "F4", "B4"])
def test_table_and_generic_paths_agree(name):
    W = system_for(name)
    G = build_system(preset(name), use_table=False)
    assert G.table is None
    rng = random.Random(3)
    for _ in range(200):
        word = [rng.randrange(W.rank) for _ in range(rng.randrange(30))]
        a, b = W.element(word), G.element(word)
        assert a == b
        assert W.inversion_set(a) == G.inversion_set(b)
        assert W.left_descents(a) == G.left_descents(b)


def test_parse_and_format(A3):
    w = A3.element("rts")
    assert A3.format(w) == "rts"
    assert A3.element("r t s") == A3.element(["r", "t", "s"]) == w
    assert A3.element("rr") == A3.identity
    assert A3.format(A3.identity) == "e"
    assert A3.element("e") == A3.identity
    assert A3.element("tr") == A3.element("rt")
    with pytest.raises(UnknownGenerator):
        A3.element("rx")


def test_multichar_generator_names():
    W = system_for("A5")
    w = W.element("s1 s2 s1")
    assert W.format(w) == "s1 s2 s1"
    assert W.element("s1s2s1") == w
    assert len(w) == 3


def test_reflections_and_parsing(A3):
    A = A3.parse_reflection_set("r, rstsr, t")
    assert A3.format_reflection_set(A) == ["r", "t", "rstsr"]
    assert A3.format_reflection_set(A3.inversion_set(A3.element("rts"))) == ["r", "t", "rstsr"]
    assert A3.format_reflection_set(A3.parse_reflection_set("")) == []
    with pytest.raises(ValueError):
        A3.parse_reflection_set("rs")


def test_reflection_round_trip(H3):
    for r in H3.reflection_ids:
        t = H3.reflection_element(r)
        assert H3.reflection_from_element(t).root_id == r
        assert len(t) % 2 == 1
        assert H3.multiply(t, t) == H3.identity


def test_dihedral_long_element():
    W = system_for("B3")
    assert W.format(W.dihedral_long_element(0, 1)) == "rsrs"
    assert W.format(W.dihedral_long_element(0, 2)) == "rt"
    with pytest.raises(InfiniteBond):
        system_for("AINF", 8).dihedral_long_element(0, 1)


def test_coset_decomposition(A3):
    for i in range(A3.order):
        w = A3.element_at(i)
        x, y = A3.coset_decompose(w, {0, 1})
        assert A3.multiply(x, y) == w
        assert len(x) + len(y) == len(w)
        assert A3.support(y) <= {0, 1}
        assert not (A3.right_descents(x) & {0, 1})


def test_infinite_dihedral_registry():
    W = build_system(preset("AINF"), depth_cap=4)
    assert not W.complete
    assert W.num_roots == 8
    w = W.element("stst")
    assert len(w) == 4
    assert W.format_reflection_set(W.inversion_set(w)) == ["s", "sts", "ststs", "stststs"]
    with pytest.raises(RootDepthExceeded):
        W.inversion_set(W.element("stststststst"))
    # products stay exact beyond the registry
    assert len(W.element("st" * 20)) == 40


def test_ball_enumeration():
    W = build_system(preset("AINF"), depth_cap=8)
    ball = W.enumerate_ball(3)
    assert [W.format(x) for x in ball.items] == ["e", "s", "t", "st", "ts", "sts", "tst"]
    assert not ball.complete
    assert system_for("A2").enumerate_ball(10).complete


def _random_word(W, rng, n):
    return [rng.randrange(W.rank) for _ in range(n)]


@pytest.mark.parametrize("name", ["A4", "B3", "H3", "D4"])
@settings(max_examples=150, deadline=None)
@given(seed=st.integers(0, 2**32))
def test_cocycle_and_length(name, seed):
    W = system_for(name)
    rng = random.Random(seed)
    u = W.element(_random_word(W, rng, 12))
    v = W.element(_random_word(W, rng, 12))
    uv = W.multiply(u, v)
    # N(uv) = N(u) xor u N(v) u^-1
    conj = frozenset(W.conjugate_root(u, r) for r in W.inversion_set(v))
    assert W.inversion_set(uv) == W.inversion_set(u) ^ conj
    assert len(W.inversion_set(uv)) == len(uv)


def test_custom_matrix_system():
    m = CoxeterMatrix(3, ((1, 4, 2), (4, 1, 3), (2, 3, 1)), ("a", "b", "c"), "mine")
    W = CoxeterSystem(m)
    assert W.order == 48
    assert W.format(W.element("abab")) == "abab"
