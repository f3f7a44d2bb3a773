import itertools
import random

import pytest

from coxclosure.closure import bruhat_preclosure
from coxclosure.errors import NotTypeA
from coxclosure.system import system_for
from coxclosure.type_a import (Permutation, Transposition, element_from_perm, inversion_pairs, perm_from_element,
                               preclosure_type_a, root_of_transposition, transposition_of_root, type_a_rank)


def test_permutation_validation():
    with pytest.raises(ValueError):
        Permutation((1, 1, 2))
    with pytest.raises(ValueError):
        Transposition(2, 2)


def test_right_action_convention():
    W = system_for("A2")
    assert perm_from_element(W, W.element("st")).images == (3, 1, 2)
    assert perm_from_element(W, W.element("s")).images == (2, 1, 3)
    assert perm_from_element(W, W.long_element()).images == (3, 2, 1)


@pytest.mark.parametrize("name", ["A2", "A3", "A4"])
def test_round_trip_and_inversions(name):
    W = system_for(name)
    n = type_a_rank(W)
    perms = set()
    for i in range(W.order):
        w = W.element_at(i)
        p = perm_from_element(W, w)
        perms.add(p.images)
        assert element_from_perm(W, p) == w
        # inversion pairs of w are the transpositions of N(w)
        got = {transposition_of_root(W, r) for r in W.inversion_set(w)}
        assert got == set(inversion_pairs(p))
        assert len(inversion_pairs(p)) == len(w)
    assert perms == set(itertools.permutations(range(1, n + 2)))


def test_transposition_round_trip():
    W = system_for("A4")
    for r in W.reflection_ids:
        assert root_of_transposition(W, transposition_of_root(W, r)) == r
    with pytest.raises(ValueError):
        root_of_transposition(W, Transposition(1, 7))


def test_not_type_a():
    with pytest.raises(NotTypeA):
        type_a_rank(system_for("B3"))


def test_chain_preclosure():
    A = {Transposition(1, 2), Transposition(2, 3), Transposition(3, 4)}
    assert preclosure_type_a(3, A) == frozenset(Transposition(a, b) for a in range(1, 5) for b in range(a + 1, 5))
    assert preclosure_type_a(3, {Transposition(1, 3), Transposition(2, 4)}) == {
        Transposition(1, 3), Transposition(2, 4)}
    assert preclosure_type_a(2, set()) == frozenset()


@pytest.mark.parametrize("name", ["A2", "A3"])
def test_agrees_with_generic_exhaustive(name):
    W = system_for(name)
    n = type_a_rank(W)
    ids = list(W.reflection_ids)
    trans = {r: transposition_of_root(W, r) for r in ids}
    for k in range(len(ids) + 1):
        for combo in itertools.combinations(ids, k):
            got = preclosure_type_a(n, {trans[r] for r in combo})
            want = {trans[r] for r in bruhat_preclosure(W, combo).closure}
            assert got == want


def test_agrees_with_generic_sampled():
    W = system_for("A5")
    ids = list(W.reflection_ids)
    trans = {r: transposition_of_root(W, r) for r in ids}
    rng = random.Random(9)
    for _ in range(200):
        A = [r for r in ids if rng.random() < 0.3]
        assert preclosure_type_a(5, {trans[r] for r in A}) == {trans[r] for r in bruhat_preclosure(W, A).closure}
