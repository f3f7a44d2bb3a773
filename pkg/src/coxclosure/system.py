"""
Coxeter systems from their matrices: roots, reflections, elements in
ShortLex normal form, lengths, descents and inversion sets.

Roots live in the geometric representation over an exact real cyclotomic
field.  Field arithmetic is only needed while enumerating the positive roots;
afterwards each simple reflection acts on root ids through an integer table,
and every element computation is a sequence of table lookups.

Signed root ids: a positive root has id ``r >= 0``; its negative is ``~r``.
The simple root of generator ``i`` has id ``i``.  Roots of depth up to the
system's ``depth_cap`` form the *registry*.  Deeper roots are created on
demand for internal computations, but any public result that names a
reflection outside the registry raises :class:`RootDepthExceeded`.

>>> W = build_system(preset("A2"))
>>> W.format(W.element("s t s t"))
'ts'
>>> sorted(W.format_reflection(r) for r in W.inversion_set(W.element("s t")))
['s', 'sts']
"""
from __future__ import annotations

import threading
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import InfiniteBond, RootDepthExceeded, UnknownGenerator
from .field import FieldElement, RealCyclotomicField
from .matrix import INF, CoxeterMatrix, preset

__all__ = [
    "GroupElement",
    "Reflection",
    "Enumeration",
    "CoxeterSystem",
    "build_system",
    "system_for",
    "bits",
]

IDENTITY_TOKEN = "e"


def bits(mask: int) -> list[int]:
    """Positions of the set bits of ``mask``, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True)
class GroupElement:
    """An element of W stored as its ShortLex-least reduced word (generator indices)."""

    word: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.word)

    @property
    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (len(self.word), self.word)

    def __lt__(self, other: "GroupElement") -> bool:
        return self.sort_key < other.sort_key


@dataclass(frozen=True)
class Reflection:
    root_id: int
    element: GroupElement


class Enumeration(NamedTuple):
    items: list
    complete: bool


class _ElementTable:
    """Every element of a finite W, indexed in (length, ShortLex) order."""

    def __init__(self, system: "CoxeterSystem", max_size: int):
        n = system.rank
        act = system._act_signed
        ident = tuple(range(n))
        keys = [ident]
        key_index = {ident: 0}
        dist = [0]
        lmul_raw: list[list[int]] = []
        i = 0
        while i < len(keys):
            k = keys[i]
            row = []
            for s in range(n):
                k2 = tuple(act(s, r) for r in k)
                j = key_index.get(k2)
                if j is None:
                    if len(keys) >= max_size:
                        raise OverflowError("group too large for an element table")
                    j = len(keys)
                    key_index[k2] = j
                    keys.append(k2)
                    dist.append(dist[i] + 1)
                row.append(j)
            lmul_raw.append(row)
            i += 1
        size = len(keys)
        words_raw: list[tuple[int, ...]] = [()] * size
        for w in range(1, size):  # BFS order is length order
            d = dist[w]
            for s in range(n):
                v = lmul_raw[w][s]
                if dist[v] < d:
                    words_raw[w] = (s,) + words_raw[v]
                    break
        order = sorted(range(size), key=lambda w: (dist[w], words_raw[w]))
        new_of = [0] * size
        for new, old in enumerate(order):
            new_of[old] = new
        self.size = size
        self.words = [words_raw[old] for old in order]
        self.length = [dist[old] for old in order]
        self.index = {wd: i for i, wd in enumerate(self.words)}
        self.lmul = [[new_of[j] for j in lmul_raw[old]] for old in order]
        self.inv = [0] * size
        for w, wd in enumerate(self.words):
            cur = 0
            for s in wd:
                cur = self.lmul[cur][s]
            self.inv[w] = cur
        self.rmul = [[self.inv[self.lmul[self.inv[w]][s]] for s in range(n)] for w in range(size)]

        nroots = system.num_roots
        self.inv_mask = [0] * size
        self.root_perm: list[tuple[int, ...]] = [tuple(range(nroots))] * size
        for w in range(1, size):
            s = self.words[w][0]
            rest = self.lmul[w][s]
            m = 1 << s
            for r in bits(self.inv_mask[rest]):
                m |= 1 << act(s, r)
            self.inv_mask[w] = m
            self.root_perm[w] = tuple(act(s, x) for x in self.root_perm[rest])

        self.refl_index = [0] * nroots
        for r in range(nroots):
            parent = system._root_parent[r]
            if parent is None:
                self.refl_index[r] = self.lmul[0][r]
            else:
                pr, s = parent
                self.refl_index[r] = self.lmul[self.rmul[self.refl_index[pr]][s]][s]
        self.root_of = {w: r for r, w in enumerate(self.refl_index)}
        self._rrow: list[list[int] | None] = [None] * size
        self._lower: dict[int, int] = {}
        self._refl_array = None
        self.length_array = np.asarray(self.length, dtype=np.int32)

    def walk(self, start: int, letters: Iterable[int]) -> int:
        """Index of start * s1 * s2 * ... (right multiplication)."""
        rm = self.rmul
        cur = start
        for s in letters:
            cur = rm[cur][s]
        return cur

    def refl_row(self, w: int) -> list[int]:
        """Indices of w*t for every reflection t, indexed by root id."""
        row = self._rrow[w]
        if row is None:
            words = self.words
            row = [self.walk(w, words[t]) for t in self.refl_index]
            self._rrow[w] = row
        return row

    def mul(self, u: int, v: int) -> int:
        return self.walk(u, self.words[v])

    def refl_array(self):
        """Dense numpy array of refl_row for every element, built on first use."""
        arr = self._refl_array
        if arr is None:
            rmul = np.asarray(self.rmul, dtype=np.int32)
            arr = np.empty((self.size, len(self.refl_index)), dtype=np.int32)
            for r, t in enumerate(self.refl_index):
                col = np.arange(self.size, dtype=np.int32)
                for s in self.words[t]:
                    col = rmul[col, s]
                arr[:, r] = col
            self._refl_array = arr
        return arr

    def lower_mask(self, w: int) -> int:
        """Bitmask over element indices of the weak-order interval [e, w]."""
        got = self._lower.get(w)
        if got is not None:
            return got
        stack = [w]
        while stack:
            x = stack[-1]
            if x in self._lower:
                stack.pop()
                continue
            pending = False
            m = 1 << x
            lx = self.length[x]
            for y in self.rmul[x]:
                if self.length[y] < lx:
                    ym = self._lower.get(y)
                    if ym is None:
                        stack.append(y)
                        pending = True
                    else:
                        m |= ym
            if not pending:
                self._lower[x] = m
                stack.pop()
        return self._lower[w]


class CoxeterSystem:
    """An immutable Coxeter system built from a :class:`CoxeterMatrix`.

    Use :func:`build_system` rather than calling the constructor directly.
    """

    def __init__(self, matrix: CoxeterMatrix, depth_cap: int = 64, max_table_size: int = 200_000,
                 use_table: bool = True):
        if depth_cap < 1:
            raise ValueError("depth_cap must be at least 1")
        self.matrix = matrix
        self.rank = n = matrix.rank
        self.names = matrix.generator_names
        self.name = matrix.name
        self.depth_cap = depth_cap
        self._name_index = {g: i for i, g in enumerate(self.names)}
        self._compact = all(len(g) == 1 for g in self.names)
        self.field = RealCyclotomicField.for_bonds(matrix.finite_bonds())
        K = self.field
        half = Fraction(1, 2)
        self.gram: list[list[FieldElement]] = [
            [
                K(1) if i == j else K(-1) if matrix.m(i, j) == INF else -(K.two_cos_pi_over(matrix.m(i, j)) * half)
                for j in range(n)
            ]
            for i in range(n)
        ]
        self._lock = threading.RLock()

        # positive roots, breadth first by depth
        self._roots: list[tuple[FieldElement, ...]] = []
        self._root_key: dict[tuple, int] = {}
        self._root_depth: list[int] = []
        self._root_parent: list[tuple[int, int] | None] = []
        for i in range(n):
            self._add_root(tuple(K(1) if j == i else K(0) for j in range(n)), 1, None)
        queue = deque(range(n))
        truncated = False
        while queue:
            r = queue.popleft()
            for s in range(n):
                if r == s:
                    continue
                c = self._pairing(r, s)
                if c.sign() < 0:
                    if self._root_depth[r] >= depth_cap:
                        truncated = True
                        continue
                    vec = self._reflect_vec(r, s, c)
                    if self._key(vec) not in self._root_key:
                        queue.append(self._add_root(vec, self._root_depth[r] + 1, (r, s)))
        self.num_roots = len(self._roots)
        self.complete = not truncated

        self._act: list[list[int | None]] = [[None] * self.num_roots for _ in range(n)]
        for s in range(n):
            for r in range(self.num_roots):
                self._act_pos(s, r)

        self._table: _ElementTable | None = None
        if self.complete and use_table:
            try:
                self._table = _ElementTable(self, max_table_size)
            except OverflowError:
                self._table = None
        self._canon_cache: dict[tuple[int, ...], tuple[int, ...]] = {}
        self._beta_cache: dict[tuple[int, ...], tuple[int, ...]] = {}
        self._root_words: dict[int, tuple[int, ...]] = {}
        # memo tables filled lazily by the order and closure modules
        self.memo: dict[str, dict] = {}

    # -- roots ----------------------------------------------------------------

    @staticmethod
    def _key(vec: Sequence[FieldElement]) -> tuple:
        return tuple(x.coeffs for x in vec)

    def _add_root(self, vec, depth: int, parent) -> int:
        rid = len(self._roots)
        self._roots.append(tuple(vec))
        self._root_key[self._key(vec)] = rid
        self._root_depth.append(depth)
        self._root_parent.append(parent)
        if hasattr(self, "_act"):
            for row in self._act:
                row.append(None)
        return rid

    def _pairing(self, r: int, s: int) -> FieldElement:
        vec = self._roots[r]
        acc = self.field.zero
        for i, x in enumerate(vec):
            if not x.is_zero():
                acc = acc + x * self.gram[i][s]
        return acc

    def _reflect_vec(self, r: int, s: int, c: FieldElement | None = None):
        if c is None:
            c = self._pairing(r, s)
        vec = list(self._roots[r])
        vec[s] = vec[s] - c * 2
        return tuple(vec)

    def _act_pos(self, s: int, r: int) -> int:
        """Signed id of s(beta_r) for a positive root r."""
        got = self._act[s][r]
        if got is not None:
            return got
        with self._lock:
            got = self._act[s][r]
            if got is not None:
                return got
            if r == s:
                got = ~s
            else:
                c = self._pairing(r, s)
                vec = self._reflect_vec(r, s, c)
                got = self._root_key.get(self._key(vec))
                if got is None:
                    up = c.sign() < 0
                    got = self._add_root(vec, self._root_depth[r] + (1 if up else -1), (r, s) if up else None)
            self._act[s][r] = got
            return got

    def _act_signed(self, s: int, r: int) -> int:
        if r >= 0:
            x = self._act[s][r]
            return x if x is not None else self._act_pos(s, r)
        x = self._act[s][~r]
        return ~(x if x is not None else self._act_pos(s, ~r))

    def _apply(self, word: Sequence[int], r: int) -> int:
        """Signed id of w(beta) where w is the product of ``word`` and beta has signed id r."""
        act = self._act
        for s in reversed(word):
            if r >= 0:
                x = act[s][r]
                r = x if x is not None else self._act_pos(s, r)
            else:
                x = act[s][~r]
                r = ~(x if x is not None else self._act_pos(s, ~r))
        return r

    def root(self, root_id: int) -> tuple[FieldElement, ...]:
        """Coordinates of a positive root in the basis of simple roots."""
        self._check_registry(root_id)
        return self._roots[root_id]

    def root_depth(self, root_id: int) -> int:
        return self._root_depth[root_id]

    def _check_registry(self, root_id: int) -> int:
        if not 0 <= root_id < self.num_roots:
            raise RootDepthExceeded(
                f"root {root_id} is outside the registry of {self.num_roots} roots (depth cap {self.depth_cap})")
        return root_id

    @property
    def is_finite(self) -> bool:
        return self.complete

    @property
    def order(self) -> int:
        if self._table is None:
            raise ValueError("order is only available for finite groups with an element table")
        return self._table.size

    @property
    def table(self) -> _ElementTable | None:
        return self._table

    # -- words and parsing ----------------------------------------------------

    def parse_word(self, text: str | Sequence[str]) -> tuple[int, ...]:
        """Generator indices of a word.

        Accepts whitespace-separated names (``"r s t"``) or run-together
        names (``"rst"``, ``"s1s2"``), split by longest match.
        ``""`` and ``"e"`` denote the identity.
        """
        if isinstance(text, str):
            chunks = text.split()
        else:
            chunks = list(text)
        out: list[int] = []
        for chunk in chunks:
            if chunk in self._name_index:
                out.append(self._name_index[chunk])
            elif chunk == IDENTITY_TOKEN:
                continue
            else:
                out.extend(self._split_chunk(chunk))
        return tuple(out)

    def _split_chunk(self, chunk: str) -> list[int]:
        out = []
        names = sorted(self._name_index, key=len, reverse=True)
        i = 0
        while i < len(chunk):
            name = next((n for n in names if chunk.startswith(n, i)), None)
            if name is None:
                raise UnknownGenerator(f"unknown generator in {chunk!r}; generators are {list(self.names)}")
            out.append(self._name_index[name])
            i += len(name)
        return out

    def format_word(self, word: Sequence[int]) -> str:
        if not word:
            return IDENTITY_TOKEN
        sep = "" if self._compact else " "
        return sep.join(self.names[s] for s in word)

    def format(self, w: GroupElement) -> str:
        return self.format_word(w.word)

    def format_reflection(self, root_id: int) -> str:
        return self.format(self.reflection_element(root_id))

    # -- canonical forms -------------------------------------------------------

    def _betas(self, word: Sequence[int]) -> list[int]:
        """Roots s1...s_{i-1}(alpha_{s_i}) of a word (the inversion roots when it is reduced)."""
        return [self._apply(word[:j], word[j]) for j in range(len(word))]

    def _reduce(self, letters: Iterable[int]) -> list[int]:
        x: list[int] = []
        betas: list[int] = []
        for s in letters:
            g = self._apply(x, s)
            if g >= 0:
                x.append(s)
                betas.append(g)
            else:
                del x[betas.index(~g)]
                betas = self._betas(x)
        return x

    def _shortlex(self, betas: list[int]) -> tuple[int, ...]:
        n = self.rank
        out = []
        while betas:
            s = min(b for b in betas if b < n)
            i = betas.index(s)
            out.append(s)
            betas = [self._act_signed(s, b) for j, b in enumerate(betas) if j != i]
        return tuple(out)

    def _canon(self, letters: Sequence[int]) -> tuple[int, ...]:
        letters = tuple(letters)
        if self._table is not None:
            return self._table.words[self._table.walk(0, letters)]
        got = self._canon_cache.get(letters)
        if got is None:
            got = self._shortlex(self._betas(self._reduce(letters)))
            if len(self._canon_cache) > 500_000:
                self._canon_cache.clear()
            self._canon_cache[letters] = got
        return got

    def _inv_roots(self, w: GroupElement) -> tuple[int, ...]:
        got = self._beta_cache.get(w.word)
        if got is None:
            got = tuple(self._betas(w.word))
            if len(self._beta_cache) > 500_000:
                self._beta_cache.clear()
            self._beta_cache[w.word] = got
        return got

    # -- elements --------------------------------------------------------------

    @property
    def identity(self) -> GroupElement:
        return GroupElement(())

    def element(self, word: str | Sequence[str] | Sequence[int]) -> GroupElement:
        """Canonical element equal to the product of a word (names or indices)."""
        if isinstance(word, str) or (word and isinstance(next(iter(word)), str)):
            letters = self.parse_word(word)
        else:
            letters = tuple(word)
            if any(not 0 <= s < self.rank for s in letters):
                raise UnknownGenerator(f"generator index out of range in {letters}")
        return GroupElement(self._canon(letters))

    element_from_word = element

    def index(self, w: GroupElement) -> int:
        """Position of w in the element table (finite groups only)."""
        return self._table.index[w.word]

    def element_at(self, i: int) -> GroupElement:
        return GroupElement(self._table.words[i])

    def multiply(self, u: GroupElement, v: GroupElement) -> GroupElement:
        if self._table is not None:
            t = self._table
            return GroupElement(t.words[t.walk(t.index[u.word], v.word)])
        return GroupElement(self._canon(u.word + v.word))

    def inverse(self, w: GroupElement) -> GroupElement:
        if self._table is not None:
            t = self._table
            return GroupElement(t.words[t.inv[t.index[w.word]]])
        return GroupElement(self._canon(w.word[::-1]))

    def length(self, w: GroupElement) -> int:
        return len(w.word)

    def support(self, w: GroupElement) -> frozenset[int]:
        return frozenset(w.word)

    def left_descents(self, w: GroupElement) -> frozenset[int]:
        """Generators s with l(sw) < l(w)."""
        if self._table is not None:
            return frozenset(s for s in bits(self._table.inv_mask[self._table.index[w.word]]) if s < self.rank)
        return frozenset(b for b in self._inv_roots(w) if b < self.rank)

    def right_descents(self, w: GroupElement) -> frozenset[int]:
        """Generators s with l(ws) < l(w), i.e. w(alpha_s) negative."""
        return frozenset(s for s in range(self.rank) if self._apply(w.word, s) < 0)

    def inversion_mask(self, w: GroupElement) -> int:
        """N(w) as a bitmask over root ids (may include roots beyond the registry)."""
        if self._table is not None:
            return self._table.inv_mask[self._table.index[w.word]]
        m = 0
        for b in self._inv_roots(w):
            m |= 1 << b
        return m

    def inversion_set(self, w: GroupElement) -> frozenset[int]:
        """N(w) = {t : l(tw) < l(w)} as root ids."""
        out = frozenset(bits(self.inversion_mask(w)))
        for r in out:
            self._check_registry(r)
        return out

    def act_root(self, w: GroupElement, r: int) -> int:
        """Signed id of w(beta_r)."""
        if self._table is not None and r >= 0:
            return self._table.root_perm[self._table.index[w.word]][r]
        return self._apply(w.word, r)

    def conjugate_root(self, w: GroupElement, r: int) -> int:
        """Root id of the reflection w t_r w^-1."""
        x = self.act_root(w, r)
        return x if x >= 0 else ~x

    def conjugate_mask(self, w: GroupElement, mask: int) -> int:
        if self._table is not None:
            perm = self._table.root_perm[self._table.index[w.word]]
            out = 0
            for r in bits(mask):
                x = perm[r]
                out |= 1 << (x if x >= 0 else ~x)
            return out
        out = 0
        for r in bits(mask):
            out |= 1 << self.conjugate_root(w, r)
        return out

    def is_up(self, w: GroupElement, r: int) -> bool:
        """True iff l(w t_r) > l(w), decided by the sign of w(beta_r)."""
        return self.act_root(w, r) >= 0

    def mul_reflection(self, w: GroupElement, r: int) -> GroupElement:
        if self._table is not None:
            t = self._table
            return GroupElement(t.words[t.refl_row(t.index[w.word])[r]])
        return GroupElement(self._canon(w.word + self.reflection_element(r).word))

    # -- reflections ------------------------------------------------------------

    def reflection_element(self, root_id: int) -> GroupElement:
        """The reflection t_beta as a group element (works for any known root id)."""
        if self._table is not None and root_id < self.num_roots:
            return GroupElement(self._table.words[self._table.refl_index[root_id]])
        word = self._root_words.get(root_id)
        if word is None:
            word = self._root_words[root_id] = self._canon(self._descend(root_id))
        return GroupElement(word)

    def _descend(self, root_id: int) -> tuple[int, ...]:
        # beta = s1...sk(alpha_i) with each step lowering depth; t_beta = s1..sk si sk..s1
        letters: list[int] = []
        r = root_id
        while r >= self.rank:
            s = next(s for s in range(self.rank) if self._pairing(r, s).sign() > 0)
            letters.append(s)
            r = self._act_pos(s, r)
        return tuple(letters) + (r,) + tuple(reversed(letters))

    def reflection(self, root_id: int) -> Reflection:
        self._check_registry(root_id)
        return Reflection(root_id, self.reflection_element(root_id))

    def _reflection_root(self, w: GroupElement) -> int | None:
        if self._table is not None:
            return self._table.root_of.get(self._table.index[w.word])
        if not w.word or self.inverse(w) != w:
            return None
        fixed = [b for b in self._inv_roots(w) if self._apply(w.word, b) == ~b]
        return fixed[0] if len(fixed) == 1 else None

    def reflection_from_element(self, w: GroupElement) -> Reflection | None:
        """The reflection equal to w, or None when w is not a reflection."""
        r = self._reflection_root(w)
        if r is None:
            return None
        self._check_registry(r)
        return Reflection(r, w)

    reflection_from_word = reflection_from_element

    def reflection_to_element(self, t: Reflection) -> GroupElement:
        return self.reflection_element(t.root_id)

    @property
    def reflection_ids(self) -> range:
        """Root ids of the registry (all of T when the registry is complete)."""
        return range(self.num_roots)

    def enumerate_ball(self, length_cap: int) -> Enumeration:
        """Elements of length <= length_cap sorted by (length, lex)."""
        if length_cap < 0:
            return Enumeration([], False)
        if self._table is not None:
            t = self._table
            items = [GroupElement(wd) for wd, ln in zip(t.words, t.length) if ln <= length_cap]
            return Enumeration(items, length_cap >= t.length[-1])
        layer = [self.identity]
        out = [self.identity]
        for _ in range(length_cap):
            nxt = set()
            for w in layer:
                for s in range(self.rank):
                    if self._apply(w.word, s) >= 0:
                        nxt.add(self._canon(w.word + (s,)))
            layer = [GroupElement(wd) for wd in sorted(nxt, key=lambda x: (len(x), x))]
            out.extend(layer)
            if not layer:
                break
        grows = any(self._apply(w.word, s) >= 0 for w in layer for s in range(self.rank))
        return Enumeration(out, not grows)

    def enumerate_reflections(self, length_cap: int) -> Enumeration:
        """Reflections of length <= length_cap sorted by (length, lex)."""
        if self._table is not None:
            t = self._table
            refl = sorted((GroupElement(t.words[t.refl_index[r]]), r) for r in range(self.num_roots))
            items = [Reflection(r, w) for w, r in refl if len(w) <= length_cap]
            return Enumeration(items, len(items) == self.num_roots)
        ball = self.enumerate_ball(length_cap)
        items = []
        for w in ball.items:
            r = self._reflection_root(w)
            if r is not None:
                items.append(Reflection(self._check_registry(r), w))
        return Enumeration(items, ball.complete)

    # -- parabolic pieces -------------------------------------------------------

    def coset_decompose(self, w: GroupElement, subset: Iterable[int]) -> tuple[GroupElement, GroupElement]:
        """(x, y) with w = x y, y in W_I and x the minimal representative of w W_I."""
        subset = sorted(set(subset))
        x = w
        while True:
            desc = [s for s in subset if self._apply(x.word, s) < 0]
            if not desc:
                break
            x = self.multiply(x, GroupElement((desc[0],)))
        y = self.multiply(self.inverse(x), w)
        return x, y

    def dihedral_long_element(self, s: int, t: int) -> GroupElement:
        m = self.matrix.m(s, t)
        if s == t:
            return GroupElement((s,))
        if m == INF:
            raise InfiniteBond(f"m({self.names[s]},{self.names[t]}) is infinite")
        return self.element([s if i % 2 == 0 else t for i in range(m)])

    def long_element(self) -> GroupElement:
        if self._table is None:
            raise ValueError("long element needs a finite group")
        return GroupElement(self._table.words[-1])

    # -- reflection sets ----------------------------------------------------------

    def parse_reflection_set(self, text: str) -> frozenset[int]:
        """Comma-separated words, each a reflection in the registry."""
        out = set()
        for part in text.split(","):
            if not part.strip():
                continue
            w = self.element(part)
            t = self.reflection_from_element(w)
            if t is None:
                raise ValueError(f"{part.strip()!r} is not a reflection")
            out.add(t.root_id)
        return frozenset(out)

    def sorted_reflections(self, ids: Iterable[int]) -> list[int]:
        return sorted(ids, key=lambda r: self.reflection_element(r).sort_key)

    def format_reflection_set(self, ids: Iterable[int]) -> list[str]:
        return [self.format_reflection(r) for r in self.sorted_reflections(ids)]

    def mask_of(self, ids: Iterable[int]) -> int:
        m = 0
        for r in ids:
            m |= 1 << r
        return m

    def __repr__(self):
        kind = f"finite, |W|={self._table.size}" if self._table else ("complete roots" if self.complete else "infinite")
        return f"CoxeterSystem({self.name}, rank={self.rank}, {kind})"


def build_system(matrix: CoxeterMatrix, depth_cap: int = 64, **kwargs) -> CoxeterSystem:
    """Build the system for ``matrix``; roots are enumerated up to ``depth_cap``."""
    return CoxeterSystem(matrix, depth_cap, **kwargs)


_SYSTEMS: dict[tuple, CoxeterSystem] = {}
_SYSTEMS_LOCK = threading.Lock()


def system_for(name: str, depth_cap: int = 64) -> CoxeterSystem:
    """Shared, cached system for a preset name."""
    key = (name.upper(), depth_cap)
    with _SYSTEMS_LOCK:
        if key not in _SYSTEMS:
            _SYSTEMS[key] = build_system(preset(name), depth_cap)
        return _SYSTEMS[key]
