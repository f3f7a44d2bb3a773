"""
The Bruhat preclosure of a set of reflections and its iterates.

For A a set of reflections, [A] is the set of reflections t reachable from
the identity by a path e -> u1 -> ... -> t in the Bruhat graph whose edge
labels all lie in A.  The preclosure is extensive and monotone but not
idempotent in general; iterating it to a fixpoint gives the infinite closure.

Reachability is a breadth-first search keyed by canonical elements.  Vertices
are expanded in (length, lex) order and labels in ascending root id, so the
recorded witness paths are deterministic.

>>> from coxclosure.matrix import preset
>>> from coxclosure.system import build_system
>>> W = build_system(preset("A2"))
>>> res = bruhat_preclosure(W, W.parse_reflection_set("s, t"))
>>> W.format_reflection_set(res.closure)
['s', 't', 'sts']
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import TruncationUnsound
from .system import CoxeterSystem, GroupElement, bits

__all__ = [
    "PreclosureResult",
    "default_cap",
    "bruhat_preclosure",
    "iterate_preclosure",
    "infinite_closure",
    "is_closed",
    "preclosure_mask",
    "infinite_closure_mask",
]


@dataclass(frozen=True)
class PreclosureResult:
    closure: frozenset[int]
    reachable: frozenset[GroupElement]
    witness_paths: dict[int, tuple[int, ...]] = field(compare=False)
    truncated: bool
    length_cap_used: int
    iterations: int = 1
    # closure of every iterate, starting with the input set
    history: tuple[frozenset[int], ...] = field(default=(), compare=False)


def default_cap(W: CoxeterSystem, length_cap: int | None) -> int:
    if length_cap is not None:
        if length_cap < 0:
            raise ValueError("length cap must be non-negative")
        return length_cap
    if W.complete:
        # finite group: the longest element has length |T|
        return W.num_roots
    raise ValueError("an explicit length cap is required for infinite groups")


def _check_labels(W: CoxeterSystem, A: Iterable[int]) -> frozenset[int]:
    A = frozenset(A)
    for r in A:
        W._check_registry(r)
    return A


def _search_table(W: CoxeterSystem, A: frozenset[int], cap: int):
    tab = W.table
    labels = sorted(A)
    length = tab.length
    parent = {0: None}
    heap = [0]
    truncated = False
    while heap:
        u = heapq.heappop(heap)
        row = tab.refl_row(u)
        lu = length[u]
        for r in labels:
            v = row[r]
            if length[v] > lu and v not in parent:
                if length[v] > cap:
                    truncated = True
                    continue
                parent[v] = (u, r)
                heapq.heappush(heap, v)
    return parent, truncated


def _search_generic(W: CoxeterSystem, A: frozenset[int], cap: int):
    labels = sorted(A)
    e = W.identity
    parent = {e: None}
    heap = [(e.sort_key, e)]
    truncated = False
    while heap:
        _, u = heapq.heappop(heap)
        for r in labels:
            if W.act_root(u, r) < 0:
                continue
            v = W.mul_reflection(u, r)
            if v in parent:
                continue
            if len(v) > cap:
                truncated = True
                continue
            parent[v] = (u, r)
            heapq.heappush(heap, (v.sort_key, v))
    return parent, truncated


def _path(parent: dict, v) -> tuple[int, ...]:
    labels = []
    while parent[v] is not None:
        v, r = parent[v]
        labels.append(r)
    return tuple(reversed(labels))


def bruhat_preclosure(W: CoxeterSystem, A: Iterable[int], length_cap: int | None = None) -> PreclosureResult:
    """One application of the preclosure, searching elements of length <= length_cap.

    The cap defaults to the length of the longest element in a finite group.
    ``truncated`` is set when some A-edge left the searched ball, in which
    case ``closure`` is only a lower bound.
    """
    A = _check_labels(W, A)
    cap = default_cap(W, length_cap)
    witness: dict[int, tuple[int, ...]] = {}
    if W.table is not None:
        tab = W.table
        parent, truncated = _search_table(W, A, cap)
        reachable = frozenset(GroupElement(tab.words[i]) for i in parent)
        for i in parent:
            r = tab.root_of.get(i)
            if r is not None:
                witness[r] = _path(parent, i)
    else:
        parent, truncated = _search_generic(W, A, cap)
        reachable = frozenset(parent)
        for v in parent:
            t = W.reflection_from_element(v)
            if t is not None:
                witness[t.root_id] = _path(parent, v)
    return PreclosureResult(frozenset(witness), reachable, witness, truncated, cap, 1, (A, frozenset(witness)))


def iterate_preclosure(W: CoxeterSystem, A: Iterable[int], n: int, length_cap: int | None = None) -> PreclosureResult:
    """The preclosure applied n times.  n = 0 returns A unchanged.

    Reachable vertices and witness paths describe the last application (its
    labels are the previous iterate).  ``truncated`` is set if any application
    was truncated.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    A = _check_labels(W, A)
    cap = default_cap(W, length_cap)
    if n == 0:
        return PreclosureResult(A, frozenset(), {}, False, cap, 0, (A,))
    history = [A]
    truncated = False
    res = None
    current = A
    for _ in range(n):
        res = bruhat_preclosure(W, current, cap)
        truncated |= res.truncated
        current = res.closure
        history.append(current)
    return PreclosureResult(current, res.reachable, res.witness_paths, truncated, cap, n, tuple(history))


def infinite_closure(W: CoxeterSystem, A: Iterable[int], length_cap: int | None = None) -> PreclosureResult:
    """Iterate the preclosure to a fixpoint.

    ``iterations`` counts every application including the final one that
    confirms stability.  Raises TruncationUnsound if any application was
    truncated, since the fixpoint would then not be justified.
    """
    A = _check_labels(W, A)
    cap = default_cap(W, length_cap)
    history = [A]
    current = A
    iterations = 0
    while True:
        res = bruhat_preclosure(W, current, cap)
        iterations += 1
        if res.truncated:
            raise TruncationUnsound(f"preclosure iterate {iterations} was truncated at length {cap}")
        if res.closure == current:
            return PreclosureResult(current, res.reachable, res.witness_paths, False, cap, iterations, tuple(history))
        current = res.closure
        history.append(current)


def is_closed(W: CoxeterSystem, A: Iterable[int], length_cap: int | None = None) -> bool:
    """True iff [A] = A.

    A truncated search that already found a reflection outside A still
    answers False; a truncated search that found nothing new raises
    TruncationUnsound, even if it missed members of A.
    """
    A = _check_labels(W, A)
    res = bruhat_preclosure(W, A, length_cap)
    if res.closure - A:
        return False
    if res.truncated:
        raise TruncationUnsound("preclosure search was truncated; cannot certify closedness")
    return True


# -- bitmask variants for exhaustive sweeps over finite groups -----------------


# groups larger than this use a level-by-level numpy search
VECTOR_THRESHOLD = 2048


def _reach_vectorized(tab, labels: list[int]) -> int:
    arr = tab.refl_array()[:, labels]
    length = tab.length_array
    seen = np.zeros(tab.size, dtype=bool)
    seen[0] = True
    frontier = np.zeros(1, dtype=np.int32)
    while frontier.size:
        nxt = arr[frontier].ravel()
        up = length[nxt] > np.repeat(length[frontier], len(labels))
        nxt = nxt[up]
        nxt = np.unique(nxt[~seen[nxt]])
        seen[nxt] = True
        frontier = nxt
    hit = seen[np.asarray(tab.refl_index)]
    out = 0
    for r in np.nonzero(hit)[0].tolist():
        out |= 1 << r
    return out


def preclosure_mask(W: CoxeterSystem, mask: int) -> int:
    """[A] as a root bitmask, for a finite system with an element table."""
    cache = W.memo.setdefault("preclosure", {})
    got = cache.get(mask)
    if got is not None:
        return got
    tab = W.table
    labels = bits(mask)
    if tab.size > VECTOR_THRESHOLD and labels:
        out = _reach_vectorized(tab, labels)
    else:
        length = tab.length
        refl_row = tab.refl_row
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            row = refl_row(u)
            lu = length[u]
            for r in labels:
                v = row[r]
                if v not in seen and length[v] > lu:
                    seen.add(v)
                    stack.append(v)
        root_of = tab.root_of
        out = 0
        for v in seen:
            r = root_of.get(v)
            if r is not None:
                out |= 1 << r
    if len(cache) > 1_000_000:
        cache.clear()
    cache[mask] = out
    return out


def infinite_closure_mask(W: CoxeterSystem, mask: int) -> tuple[int, int]:
    """(fixpoint mask, iterations including the confirming pass)."""
    iterations = 0
    while True:
        nxt = preclosure_mask(W, mask)
        iterations += 1
        if nxt == mask:
            return mask, iterations
        mask = nxt
