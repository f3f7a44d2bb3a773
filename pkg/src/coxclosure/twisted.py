"""
Twisted inversion sets, twisted length and twisted Bruhat graphs.

For a set A of reflections the twisted Bruhat graph reverses every Bruhat
graph edge whose label lies in A.  The twisted inversion set of w is
``w.A = N(w) xor w A w^-1``; a reflection t lies in it exactly when
``(t in N(w)) != (w^-1 t w in A)``, which is how membership is tested here, so
infinite sets A only need a membership oracle.

>>> from coxclosure.matrix import preset
>>> from coxclosure.system import build_system
>>> W = build_system(preset("A2"))
>>> A = TwistDescriptor.finite(W.element("st"))
>>> [twisted_length(W, A, W.identity, W.element(x)) for x in ["e", "s", "t", "st", "ts", "sts"]]
[0, -1, 1, 0, -2, -1]
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Union

from .errors import NoConnectingReflection
from .matrix import INF
from .orders import reflection_neighbours
from .system import CoxeterSystem, GroupElement

__all__ = [
    "Verdict",
    "TwistDescriptor",
    "TwistedGraph",
    "CycleCheck",
    "twisted_member",
    "twisted_inversion",
    "twisted_length",
    "twisted_edge",
    "twisted_graph",
    "twisted_leq",
    "is_initial_section_finite",
    "check_acyclic",
    "twisted_length_table",
]


class Verdict(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class TwistDescriptor:
    """A set A of reflections, given by a witness, a generator, or explicitly.

    * ``finite``: A = N(witness), an initial section.
    * ``infinite_dihedral``: in the rank-2 system with an infinite bond, the
      reflections whose reduced words start with ``generator``.
    * ``explicit``: an arbitrary finite set of root ids.

    ``truncation_length`` bounds the reflections listed for infinite kinds.
    """

    kind: str
    witness: GroupElement | None = None
    generator: int | None = None
    ids: frozenset[int] | None = None
    claimed_initial: bool = False
    truncation_length: int | None = None

    def __post_init__(self):
        if self.kind not in ("finite", "explicit", "infinite_dihedral"):
            raise ValueError(f"unknown twist kind {self.kind!r}")
        if self.kind == "finite" and self.witness is None:
            raise ValueError("a finite twist needs a witness element")
        if self.kind == "explicit" and self.ids is None:
            raise ValueError("an explicit twist needs a set of root ids")
        if self.kind == "infinite_dihedral" and self.generator is None:
            raise ValueError("the infinite dihedral family needs a generator")

    @classmethod
    def finite(cls, witness: GroupElement) -> "TwistDescriptor":
        return cls("finite", witness=witness, claimed_initial=True)

    @classmethod
    def infinite_dihedral(cls, W: CoxeterSystem, generator: int, truncation_length: int) -> "TwistDescriptor":
        if W.rank != 2 or W.matrix.m(0, 1) != INF:
            raise ValueError("the infinite dihedral family needs the rank-2 system with an infinite bond")
        if truncation_length < 0:
            raise ValueError("truncation length must be non-negative")
        return cls("infinite_dihedral", generator=generator, claimed_initial=True,
                   truncation_length=truncation_length)

    @classmethod
    def explicit(cls, ids: Iterable[int], claimed_initial: bool = False) -> "TwistDescriptor":
        return cls("explicit", ids=frozenset(ids), claimed_initial=claimed_initial)

    @property
    def is_finite(self) -> bool:
        return self.kind != "infinite_dihedral"

    def finite_ids(self, W: CoxeterSystem) -> frozenset[int]:
        if self.kind == "finite":
            return W.inversion_set(self.witness)
        if self.kind == "explicit":
            return self.ids
        raise ValueError("the infinite dihedral family has no finite id set")

    def contains(self, W: CoxeterSystem, r: int) -> bool:
        """Membership of the reflection with root id r (any root id, exact)."""
        if self.kind == "explicit":
            return r in self.ids
        if self.kind == "finite":
            return W.act_root(W.inverse(self.witness), r) < 0
        # t_r starts with the generator iff that generator is a left descent
        return W.act_root(W.reflection_element(r), self.generator) < 0

    def listed(self, W: CoxeterSystem) -> frozenset[int]:
        """The finite set itself, or its reflections up to the truncation length."""
        if self.is_finite:
            return self.finite_ids(W)
        refl = W.enumerate_reflections(self.truncation_length).items
        return frozenset(t.root_id for t in refl if self.contains(W, t.root_id))


Twist = Union[TwistDescriptor, Iterable[int]]


def _twist(A: Twist) -> TwistDescriptor:
    if isinstance(A, TwistDescriptor):
        return A
    return TwistDescriptor.explicit(A)


def twisted_member(W: CoxeterSystem, A: Twist, w: GroupElement, r: int) -> bool:
    """Whether the reflection t_r lies in w.A."""
    A = _twist(A)
    x = W.act_root(W.inverse(w), r)
    return (x < 0) != A.contains(W, x if x >= 0 else ~x)


def twisted_inversion(W: CoxeterSystem, A: Twist, w: GroupElement) -> frozenset[int]:
    """w.A = N(w) xor w A w^-1.

    For infinite kinds the result is listed for reflections up to the
    descriptor's truncation length (each listed membership is exact).
    """
    A = _twist(A)
    if A.is_finite:
        n = W.inversion_set(w)
        conj = frozenset(W.conjugate_root(w, r) for r in A.finite_ids(W))
        out = n ^ conj
        for r in out:
            W._check_registry(r)
        return out
    refl = W.enumerate_reflections(A.truncation_length).items
    return frozenset(t.root_id for t in refl if twisted_member(W, A, w, t.root_id))


def twisted_length(W: CoxeterSystem, A: Twist, v: GroupElement, w: GroupElement) -> int:
    """l_A(v, w) = l(w v^-1) - 2 |N(v w^-1) meet v.A|."""
    A = _twist(A)
    vinv = W.inverse(v)
    x = W.multiply(w, vinv)
    inv_roots = W.inversion_mask(W.inverse(x))
    count = 0
    r_mask = inv_roots
    while r_mask:
        low = r_mask & -r_mask
        r = low.bit_length() - 1
        if twisted_member(W, A, v, r):
            count += 1
        r_mask ^= low
    return len(x) - 2 * count


def twisted_edge(W: CoxeterSystem, A: Twist, u: GroupElement, v: GroupElement) -> bool:
    """Whether u -> v is an edge of the twisted Bruhat graph of A."""
    A = _twist(A)
    t = W.reflection_from_element(W.multiply(W.inverse(u), v))
    if t is None:
        raise NoConnectingReflection(f"{W.format(v)} is not {W.format(u)} times a reflection")
    if A.contains(W, t.root_id):
        return len(u) > len(v)
    return len(u) < len(v)


@dataclass(frozen=True)
class TwistedGraph:
    """Twisted Bruhat graph on a finite vertex set; edges are (source, target, root id)."""

    vertices: tuple[GroupElement, ...]
    edges: tuple[tuple[GroupElement, GroupElement, int], ...]
    reversed_labels: frozenset[int]

    def successors(self) -> dict[GroupElement, list[GroupElement]]:
        out: dict[GroupElement, list[GroupElement]] = {x: [] for x in self.vertices}
        for u, v, _ in self.edges:
            out[u].append(v)
        return out


def _window(W: CoxeterSystem, length_window: int | None) -> tuple[list[GroupElement], bool]:
    if length_window is None:
        if W.table is None:
            raise ValueError("a length window is required for infinite groups")
        length_window = W.table.length[-1]
    ball = W.enumerate_ball(length_window)
    return ball.items, ball.complete


def twisted_graph(W: CoxeterSystem, A: Twist, vertices: Iterable[GroupElement]) -> TwistedGraph:
    A = _twist(A)
    verts = tuple(sorted(set(vertices), key=lambda x: x.sort_key))
    vset = set(verts)
    edges = []
    labels_in_A = set()
    for u in verts:
        for v, r in reflection_neighbours(W, u, vset):
            inside = A.contains(W, r)
            if inside:
                labels_in_A.add(r)
            if (len(v) > len(u)) != inside:
                edges.append((u, v, r))
    return TwistedGraph(verts, tuple(edges), frozenset(labels_in_A))


def twisted_leq(W: CoxeterSystem, A: Twist, u: GroupElement, v: GroupElement,
                length_window: int | None = None) -> Verdict:
    """Is there a directed path u -> v in the twisted graph?

    The search stays among elements of length <= length_window.  A negative
    answer is exact (NO) only when that ball is the whole group.
    """
    if u == v:
        return Verdict.YES
    verts, complete = _window(W, length_window)
    vset = set(verts)
    if u not in vset or v not in vset:
        return Verdict.UNKNOWN
    A = _twist(A)
    seen = {u}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        for y, r in reflection_neighbours(W, x, vset):
            if y in seen or (len(y) > len(x)) == A.contains(W, r):
                continue
            if y == v:
                return Verdict.YES
            seen.add(y)
            queue.append(y)
    return Verdict.NO if complete else Verdict.UNKNOWN


def is_initial_section_finite(W: CoxeterSystem, A: Iterable[int]) -> GroupElement | None:
    """A witness w with N(w) = A, or None when A is not an inversion set.

    Peels off the smallest simple reflection s in A and recurses on s(A - {s})s.
    """
    current = set(A)
    word = []
    while current:
        simple = [r for r in current if r < W.rank]
        if not simple:
            return None
        s = min(simple)
        current.discard(s)
        current = {W._act_signed(s, r) for r in current}
        word.append(s)
    return W.element(word)


@dataclass(frozen=True)
class CycleCheck:
    verdict: str  # "acyclic", "cycle" or "unknown"
    cycle: tuple[GroupElement, ...] = ()


def check_acyclic(W: CoxeterSystem, A: Twist, length_window: int | None = None) -> CycleCheck:
    """Look for a directed cycle in the twisted graph on the length window.

    Vertices are tried in (length, lex) order and successors in ascending
    root id, so the reported cycle is deterministic.  Without a cycle the
    answer is exact only when the window covers the whole group.
    """
    verts, complete = _window(W, length_window)
    graph = twisted_graph(W, A, verts)
    succ = graph.successors()
    edge_label = {(u, v): r for u, v, r in graph.edges}
    for x in succ:
        succ[x].sort(key=lambda y: edge_label[(x, y)])
    state: dict[GroupElement, int] = {}  # 1 on stack, 2 done
    for root in graph.vertices:
        if root in state:
            continue
        path = [root]
        state[root] = 1
        iters = [iter(succ[root])]
        while iters:
            nxt = next(iters[-1], None)
            if nxt is None:
                state[path.pop()] = 2
                iters.pop()
                continue
            st = state.get(nxt)
            if st == 1:
                start = path.index(nxt)
                return CycleCheck("cycle", tuple(path[start:]) + (nxt,))
            if st is None:
                state[nxt] = 1
                path.append(nxt)
                iters.append(iter(succ[nxt]))
    return CycleCheck("acyclic" if complete else "unknown")


def twisted_length_table(W: CoxeterSystem, A: Twist, elements: Iterable[GroupElement]) -> dict[str, int]:
    """l_A(w) keyed by canonical word."""
    e = W.identity
    return {W.format(w): twisted_length(W, A, e, w) for w in elements}
