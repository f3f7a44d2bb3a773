"""
Right weak order, Bruhat graph and Bruhat order.

The weak order is containment of inversion sets (equivalently, the prefix
order on reduced words).  Joins are computed by the dihedral-completion
algorithm: keep a running element ``a`` and a stack of pending elements; at
each step move from the meet ``x`` of ``a`` and the top ``b`` to
``x w_{s,t}``, where ``xs <= b`` and ``xt <= a`` are covers of ``x``.

>>> from coxclosure.matrix import preset
>>> from coxclosure.system import build_system
>>> W = build_system(preset("A2"))
>>> W.format(join_R(W, W.element("s"), W.element("t")))
'sts'
>>> W.format(meet_R(W, W.element("st"), W.element("sts")))
'st'
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from .errors import IterationCapExceeded, JoinAnomaly, NoJoin, NoJoinWithinCap
from .matrix import INF
from .system import CoxeterSystem, GroupElement, bits

__all__ = [
    "weak_leq",
    "lower_set",
    "meet_R",
    "join_R",
    "join_brute",
    "JoinTrace",
    "BruhatGraphSlice",
    "bruhat_graph",
    "reflection_neighbours",
    "restrict_labels",
    "bruhat_leq",
    "graph_to_dot",
]

# iteration cap for infinite systems queried without an upper bound
DEFAULT_JOIN_ITERATIONS = 100_000


def weak_leq(W: CoxeterSystem, u: GroupElement, v: GroupElement) -> bool:
    """u <=_R v, i.e. N(u) is contained in N(v)."""
    if len(u) > len(v):
        return False
    return W.inversion_mask(u) & ~W.inversion_mask(v) == 0


def lower_set(W: CoxeterSystem, w: GroupElement) -> frozenset[GroupElement]:
    """The interval [e, w] of the right weak order."""
    t = W.table
    if t is not None:
        return frozenset(GroupElement(t.words[i]) for i in bits(t.lower_mask(t.index[w.word])))
    seen = {w}
    queue = deque([w])
    while queue:
        x = queue.popleft()
        for s in W.right_descents(x):
            y = W.multiply(x, GroupElement((s,)))
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def meet_R(W: CoxeterSystem, u: GroupElement, v: GroupElement) -> GroupElement:
    """The largest element below both u and v in the weak order."""
    t = W.table
    if t is not None:
        common = t.lower_mask(t.index[u.word]) & t.lower_mask(t.index[v.word])
        return GroupElement(t.words[common.bit_length() - 1])
    common = lower_set(W, u) & lower_set(W, v)
    return max(common, key=lambda x: x.sort_key)


def _upper_cover_below(W: CoxeterSystem, x: GroupElement, bound: GroupElement) -> int | None:
    # smallest s with x < xs <=_R bound
    for s in range(W.rank):
        if W.act_root(x, s) >= 0:
            xs = W.multiply(x, GroupElement((s,)))
            if weak_leq(W, xs, bound):
                return s
    return None


@dataclass
class JoinTrace:
    """Step log of one run of :func:`join_R` (for inspection and tests)."""

    steps: list[tuple[int, str, str, str]] = field(default_factory=list)
    max_stack: int = 0

    @property
    def iterations(self) -> int:
        return len(self.steps)


def join_R(W: CoxeterSystem, u: GroupElement, v: GroupElement, upper_bound: GroupElement | None = None,
           trace: JoinTrace | None = None) -> GroupElement:
    """Join of u and v in the right weak order.

    Raises :class:`NoJoin` when a dihedral completion meets an infinite bond
    or leaves ``lower_set(upper_bound)``.  For infinite systems without an
    ``upper_bound`` the loop runs under a fixed iteration cap.
    """
    if upper_bound is not None and not (weak_leq(W, u, upper_bound) and weak_leq(W, v, upper_bound)):
        raise ValueError("upper_bound must lie above both arguments")
    if W.table is not None and trace is None:
        t = W.table
        return GroupElement(t.words[join_index(W, t.index[u.word], t.index[v.word])])
    if weak_leq(W, v, u):
        return u
    if weak_leq(W, u, v):
        return v
    if upper_bound is not None:
        cap = len(lower_set(W, upper_bound))
    elif W.table is not None:
        cap = W.table.size
    else:
        cap = DEFAULT_JOIN_ITERATIONS
    a = u
    stack = [v]
    iterations = 0
    while stack:
        b = stack[-1]
        # the stack discipline can leave a comparable pair on top; settle it directly
        if weak_leq(W, b, a):
            stack.pop()
            if trace is not None:
                trace.steps.append((0, W.format(a), W.format(b), W.format(a)))
            continue
        if weak_leq(W, a, b):
            a = b
            stack.pop()
            if trace is not None:
                trace.steps.append((0, W.format(a), W.format(b), W.format(a)))
            continue
        iterations += 1
        if iterations > cap:
            raise IterationCapExceeded(f"join did not finish within {cap} iterations")
        x = meet_R(W, a, b)
        s = _upper_cover_below(W, x, b)
        t = _upper_cover_below(W, x, a)
        if W.matrix.m(s, t) == INF:
            raise NoJoin(f"{W.format(u)} and {W.format(v)} have no join: infinite bond "
                         f"between {W.names[min(s, t)]} and {W.names[max(s, t)]}")
        c = W.multiply(x, W.dihedral_long_element(min(s, t), max(s, t)))
        if upper_bound is not None and not weak_leq(W, c, upper_bound):
            raise NoJoin(f"dihedral completion {W.format(c)} escapes the upper bound")
        a_below = weak_leq(W, a, c)
        b_below = weak_leq(W, b, c)
        if not a_below and not b_below:
            case = 1
            stack.append(c)
        elif b_below and not a_below:
            case = 2
            stack[-1] = c
        elif a_below and not b_below:
            case = 3
            a = c
        else:
            case = 4
            a = c
            stack.pop()
        if trace is not None:
            trace.steps.append((case, W.format(a), W.format(b), W.format(c)))
            trace.max_stack = max(trace.max_stack, len(stack))
    return a


def _dihedral_words(W: CoxeterSystem) -> dict[tuple[int, int], tuple[int, ...]]:
    words = W.memo.setdefault("dihedral_words", {})
    if not words:
        for s in range(W.rank):
            for t in range(s + 1, W.rank):
                if W.matrix.m(s, t) != INF:
                    words[(s, t)] = W.dihedral_long_element(s, t).word
    return words


def join_index(W: CoxeterSystem, ui: int, vi: int) -> int:
    """:func:`join_R` on element-table indices of a finite system."""
    tab = W.table
    inv, rmul, length = tab.inv_mask, tab.rmul, tab.length
    lower = tab.lower_mask
    dihedral = _dihedral_words(W)
    n = W.rank
    a = ui
    stack = [vi]
    iterations = 0
    while stack:
        b = stack[-1]
        ia, ib = inv[a], inv[b]
        if ib & ~ia == 0:
            stack.pop()
            continue
        if ia & ~ib == 0:
            a = b
            stack.pop()
            continue
        iterations += 1
        if iterations > tab.size:
            raise IterationCapExceeded(f"join did not finish within {tab.size} iterations")
        x = (lower(a) & lower(b)).bit_length() - 1
        lx = length[x]
        row = rmul[x]
        s = next(g for g in range(n) if length[row[g]] > lx and inv[row[g]] & ~ib == 0)
        t = next(g for g in range(n) if length[row[g]] > lx and inv[row[g]] & ~ia == 0)
        c = tab.walk(x, dihedral[(s, t) if s < t else (t, s)])
        ic = inv[c]
        a_below = ia & ~ic == 0
        b_below = ib & ~ic == 0
        if not a_below and not b_below:
            stack.append(c)
        elif b_below and not a_below:
            stack[-1] = c
        elif a_below and not b_below:
            a = c
        else:
            a = c
            stack.pop()
    return a


def join_brute(W: CoxeterSystem, u: GroupElement, v: GroupElement, length_cap: int) -> GroupElement:
    """Join by exhaustive search over the ball of radius ``length_cap``."""
    nu, nv = W.inversion_mask(u), W.inversion_mask(v)
    need = nu | nv
    uppers = [w for w in W.enumerate_ball(length_cap).items if need & ~W.inversion_mask(w) == 0]
    if not uppers:
        raise NoJoinWithinCap(f"no common upper bound of length <= {length_cap}")
    minimal = [m for m in uppers
               if not any(w != m and W.inversion_mask(w) & ~W.inversion_mask(m) == 0 for w in uppers)]
    if len(minimal) != 1:
        raise JoinAnomaly(f"{len(minimal)} minimal upper bounds: {[W.format(m) for m in minimal]}")
    return minimal[0]


@dataclass(frozen=True)
class BruhatGraphSlice:
    """Bruhat graph on a finite vertex set.  Edges are (source, target, root id)."""

    vertices: tuple[GroupElement, ...]
    edges: tuple[tuple[GroupElement, GroupElement, int], ...]
    label_filter: frozenset[int] | None = None


def reflection_neighbours(W: CoxeterSystem, u: GroupElement,
                          vertices: Iterable[GroupElement]) -> list[tuple[GroupElement, int]]:
    """Pairs (ut, t) with ut among ``vertices``, for every reflection t.

    With a complete registry this walks T; otherwise each candidate v is
    tested directly (u^-1 v must be a reflection), and a connecting reflection
    outside the registry raises RootDepthExceeded.
    """
    if W.complete:
        vset = vertices if isinstance(vertices, (set, frozenset)) else set(vertices)
        out = []
        for r in W.reflection_ids:
            v = W.mul_reflection(u, r)
            if v in vset:
                out.append((v, r))
        return out
    ui = W.inverse(u)
    out = []
    for v in vertices:
        if (len(v) - len(u)) % 2 == 0:
            continue
        t = W.reflection_from_element(W.multiply(ui, v))
        if t is not None:
            out.append((v, t.root_id))
    out.sort(key=lambda p: p[1])
    return out


def bruhat_graph(W: CoxeterSystem, vertices: Iterable[GroupElement]) -> BruhatGraphSlice:
    """All edges u -> ut (t a reflection, l(ut) > l(u)) between the given vertices."""
    verts = tuple(sorted(set(vertices), key=lambda x: x.sort_key))
    vset = set(verts)
    edges = []
    for u in verts:
        for v, r in reflection_neighbours(W, u, vset):
            if len(v) > len(u):
                edges.append((u, v, r))
    return BruhatGraphSlice(verts, tuple(edges))


def restrict_labels(graph: BruhatGraphSlice, A: Iterable[int]) -> BruhatGraphSlice:
    A = frozenset(A)
    if graph.label_filter is not None:
        A = A & graph.label_filter
    return BruhatGraphSlice(graph.vertices, tuple(e for e in graph.edges if e[2] in A), A)


def bruhat_leq(W: CoxeterSystem, u: GroupElement, v: GroupElement) -> bool:
    """u <= v in Bruhat order: a directed Bruhat-graph path from u to v exists."""
    if u == v:
        return True
    if len(u) >= len(v):
        return False
    ball = set(W.enumerate_ball(len(v)).items)
    seen = {u}
    frontier = [u]
    while frontier:
        nxt = []
        for x in frontier:
            for y, _ in reflection_neighbours(W, x, ball):
                if len(y) > len(x) and y not in seen:
                    if y == v:
                        return True
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return False


def _dot_quote(text: str) -> str:
    return '"' + text.replace('"', '\\"') + '"'


def graph_to_dot(W: CoxeterSystem, graph: BruhatGraphSlice, name: str = "bruhat",
                 reversed_labels: Iterable[int] = ()) -> str:
    """Graphviz source: nodes ranked by length, edges labelled by reflections.

    Edges whose label is in ``reversed_labels`` are drawn dashed (used for
    twisted graphs, where those edges have been reversed).
    """
    rev = frozenset(reversed_labels)
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    by_len: dict[int, list[GroupElement]] = {}
    for x in graph.vertices:
        by_len.setdefault(len(x), []).append(x)
    for ln in sorted(by_len):
        nodes = " ".join(_dot_quote(W.format(x)) for x in by_len[ln])
        lines.append(f"  {{ rank=same; {nodes} }}")
    for src, dst, r in graph.edges:
        attrs = f"label={_dot_quote(W.format_reflection(r))}"
        if r in rev:
            attrs += ", style=dashed"
        lines.append(f"  {_dot_quote(W.format(src))} -> {_dot_quote(W.format(dst))} [{attrs}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
