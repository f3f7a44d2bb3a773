"""
Type A as permutations.

Elements of A_n are permutations of 1..n+1 in one-line notation.  Right
multiplication by s_i swaps the values i and i+1, so ``st`` in A2 is
[3, 1, 2].  Reflections are transpositions (a, b) with a < b; the
inversion set of w corresponds to the position pairs i < j with w(i) > w(j).

In type A the preclosure of a set of transpositions is transitive closure
along increasing chains: (a, b) is added when a = c0 < c1 < ... < cm = b
with every (c_{k-1}, c_k) in the set.

>>> preclosure_type_a(2, {Transposition(1, 2), Transposition(2, 3)}) == {
...     Transposition(1, 2), Transposition(2, 3), Transposition(1, 3)}
True
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import NotTypeA
from .matrix import preset
from .system import CoxeterSystem, GroupElement

__all__ = [
    "Permutation",
    "Transposition",
    "type_a_rank",
    "perm_from_element",
    "element_from_perm",
    "inversion_pairs",
    "transposition_of_root",
    "root_of_transposition",
    "preclosure_type_a",
]


@dataclass(frozen=True)
class Permutation:
    """One-line notation: images[i - 1] = w(i)."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"{list(self.images)} is not a permutation of 1..{len(self.images)}")

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __len__(self) -> int:
        return len(self.images)


@dataclass(frozen=True, order=True)
class Transposition:
    a: int
    b: int

    def __post_init__(self):
        if not 1 <= self.a < self.b:
            raise ValueError(f"transposition needs 1 <= a < b, got ({self.a}, {self.b})")


def type_a_rank(W: CoxeterSystem) -> int:
    """n for a system of type A_n in the standard generator order, else NotTypeA."""
    n = W.rank
    if n > 8 or W.matrix.bonds != preset(f"A{n}").bonds:
        raise NotTypeA(f"{W.name} is not of type A_{n} with generators in path order")
    return n


def perm_from_element(W: CoxeterSystem, w: GroupElement) -> Permutation:
    n = type_a_rank(W)
    images = list(range(1, n + 2))
    where = [-1] + list(range(n + 1))  # where[v] = 0-based position of value v
    for s in w.word:
        i, j = where[s + 1], where[s + 2]
        images[i], images[j] = images[j], images[i]
        where[s + 1], where[s + 2] = j, i
    return Permutation(tuple(images))


def element_from_perm(W: CoxeterSystem, p: Permutation) -> GroupElement:
    n = type_a_rank(W)
    if len(p) != n + 1:
        raise ValueError(f"A_{n} acts on {n + 1} letters, got {len(p)}")
    images = list(p.images)
    suffix = []
    while True:
        pos = {v: i for i, v in enumerate(images)}
        # right descent s_i: value i+1 sits left of value i
        i = next((v for v in range(1, n + 1) if pos[v + 1] < pos[v]), None)
        if i is None:
            break
        images[pos[i]], images[pos[i + 1]] = i + 1, i
        suffix.append(i - 1)
    return W.element(tuple(reversed(suffix)))


def inversion_pairs(p: Permutation) -> frozenset[Transposition]:
    m = len(p)
    return frozenset(Transposition(i, j) for i in range(1, m + 1) for j in range(i + 1, m + 1) if p(i) > p(j))


def transposition_of_root(W: CoxeterSystem, r: int) -> Transposition:
    p = perm_from_element(W, W.reflection_element(r))
    moved = [i for i in range(1, len(p) + 1) if p(i) != i]
    return Transposition(moved[0], moved[1])


def root_of_transposition(W: CoxeterSystem, t: Transposition) -> int:
    n = type_a_rank(W)
    if t.b > n + 1:
        raise ValueError(f"transposition {t} is out of range for A_{n}")
    images = list(range(1, n + 2))
    images[t.a - 1], images[t.b - 1] = t.b, t.a
    return W.reflection_from_element(element_from_perm(W, Permutation(tuple(images)))).root_id


def preclosure_type_a(n: int, A: Iterable[Transposition]) -> frozenset[Transposition]:
    """All (a, b) joined by an increasing chain of transpositions from A."""
    arcs: dict[int, list[int]] = {}
    for t in A:
        if t.b > n + 1:
            raise ValueError(f"transposition ({t.a}, {t.b}) is out of range for A_{n}")
        arcs.setdefault(t.a, []).append(t.b)
    out = set()
    for a in range(1, n + 2):
        seen = set()
        stack = list(arcs.get(a, ()))
        while stack:
            b = stack.pop()
            if b in seen:
                continue
            seen.add(b)
            stack.extend(arcs.get(b, ()))
        out.update(Transposition(a, b) for b in seen)
    return frozenset(out)
