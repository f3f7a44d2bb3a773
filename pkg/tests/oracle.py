"""
Brute-force model of a finite Coxeter group, independent of the package.

The group is generated by floating-point reflection matrices of the geometric
representation.  Elements are found by breadth-first search, so lengths and
ShortLex-least words come straight from the Cayley graph.  Inversion sets,
the weak order and the Bruhat preclosure are computed from their
definitions: t is an inversion of w when l(tw) < l(w), u <=_R w when
l(u) + l(u^-1 w) = l(w), and A-paths step u -> ut with l(ut) > l(u).
"""
import math
from collections import deque

import numpy as np


class MatrixGroup:
    def __init__(self, bonds, max_size=20000):
        n = len(bonds)
        gram = np.empty((n, n))
        for i in range(n):
            for j in range(n):
                m = bonds[i][j]
                gram[i, j] = 1.0 if i == j else -math.cos(math.pi / m)
        gens = []
        for i in range(n):
            g = np.eye(n)
            g[i, :] -= 2 * gram[i, :]
            gens.append(g)
        self.rank = n
        self.gens = gens
        ident = np.eye(n)
        self.mats = [ident]
        self.words = [()]
        self.index = {self._key(ident): 0}
        self.right = []  # right[i][s] = index of w_i s
        queue = deque([0])
        while queue:
            i = queue.popleft()
            row = []
            for s in range(n):
                m = self.mats[i] @ gens[s]
                k = self._key(m)
                j = self.index.get(k)
                if j is None:
                    j = len(self.mats)
                    if j >= max_size:
                        raise ValueError("group too large for the oracle")
                    self.index[k] = j
                    self.mats.append(m)
                    self.words.append(self.words[i] + (s,))
                    queue.append(j)
                row.append(j)
            self.right.append(row)
        self.size = len(self.mats)
        self.length = [len(w) for w in self.words]
        self.refl = sorted({self.mul(self.mul(w, self.gen_index(s)), self.inv(w))
                            for w in range(self.size) for s in range(n)},
                           key=lambda i: (self.length[i], self.words[i]))

    @staticmethod
    def _key(m):
        return tuple(np.round(m, 6).ravel().tolist())

    def gen_index(self, s):
        return self.right[0][s]

    def lookup(self, m):
        return self.index[self._key(m)]

    def mul(self, a, b):
        return self.lookup(self.mats[a] @ self.mats[b])

    def inv(self, a):
        return self.lookup(np.linalg.inv(self.mats[a]))

    def of_word(self, word):
        i = 0
        for s in word:
            i = self.right[i][s]
        return i

    def inversions(self, w):
        return frozenset(t for t in self.refl if self.length[self.mul(t, w)] < self.length[w])

    def weak_leq(self, u, w):
        return self.length[u] + self.length[self.mul(self.inv(u), w)] == self.length[w]

    def lower_matrix(self):
        """L[w, x] is True iff x <=_R w, built by removing right descents."""
        L = np.zeros((self.size, self.size), dtype=bool)
        for w in range(self.size):  # BFS order, so lengths are non-decreasing
            L[w, w] = True
            for s in range(self.rank):
                ws = self.right[w][s]
                if self.length[ws] < self.length[w]:
                    L[w] |= L[ws]
        return L

    def preclosure(self, A):
        A = list(A)
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for t in A:
                v = self.mul(u, t)
                if v not in seen and self.length[v] > self.length[u]:
                    seen.add(v)
                    stack.append(v)
        rs = set(self.refl)
        return frozenset(v for v in seen if v in rs)


def joins_for(L, u):
    """Least common upper bound of u and every v, or -1 where none is least.

    Candidates are columns of L; since indices are in BFS order the first
    common upper bound has minimal length, and it is accepted only if it lies
    below every other common upper bound.
    """
    common = L[:, u][:, None] & L  # common[w, v]: u, v <= w
    first = common.argmax(axis=0)
    least = ~(common & ~L[:, first]).any(axis=0)
    return np.where(least, first, -1)
