"""Coxeter matrices, the built-in presets and the JSON matrix file format."""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path

__all__ = ["INF", "CoxeterMatrix", "preset", "PRESET_NAMES", "load_matrix"]

# bond value meaning m_st = infinity; files encode it as 0
INF = 0

PRESET_NAMES = (
    "A1", "A2", "A3", "A4", "A5", "B3", "B4", "D4", "H3", "H4", "F4", "I2(m)", "AINF",
)


@dataclass(frozen=True)
class CoxeterMatrix:
    rank: int
    bonds: tuple[tuple[int, ...], ...]
    generator_names: tuple[str, ...]
    name: str = "custom"

    def __post_init__(self):
        n = self.rank
        if n < 1:
            raise ValueError("rank must be positive")
        if len(self.bonds) != n or any(len(row) != n for row in self.bonds):
            raise ValueError(f"bond matrix must be {n}x{n}")
        if len(self.generator_names) != n:
            raise ValueError(f"need {n} generator names")
        if len(set(self.generator_names)) != n:
            raise ValueError("generator names must be distinct")
        for g in self.generator_names:
            if not g or any(ch.isspace() for ch in g) or "," in g:
                raise ValueError(f"invalid generator name {g!r}")
        for i in range(n):
            if self.bonds[i][i] != 1:
                raise ValueError("diagonal bonds must be 1")
            for j in range(n):
                m = self.bonds[i][j]
                if m != self.bonds[j][i]:
                    raise ValueError("bond matrix must be symmetric")
                if i != j and not (m == INF or m >= 2):
                    raise ValueError(f"off-diagonal bond m[{i}][{j}]={m} must be >= 2 or 0 (infinity)")

    def m(self, i: int, j: int) -> int:
        return self.bonds[i][j]

    def finite_bonds(self) -> list[int]:
        return [m for row in self.bonds for m in row if m != INF]

    def to_json(self) -> dict:
        return {"rank": self.rank, "generators": list(self.generator_names), "m": [list(r) for r in self.bonds]}

    @classmethod
    def from_json(cls, data: dict, name: str = "custom") -> "CoxeterMatrix":
        try:
            rank = int(data["rank"])
            gens = tuple(str(g) for g in data["generators"])
            bonds = tuple(tuple(int(x) for x in row) for row in data["m"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed Coxeter matrix file: {exc}") from exc
        return cls(rank, bonds, gens, name)


def load_matrix(path: str | Path) -> CoxeterMatrix:
    with open(path) as fh:
        return CoxeterMatrix.from_json(json.load(fh), name=Path(path).stem)


def _default_names(n: int) -> tuple[str, ...]:
    if n == 1:
        return ("s",)
    if n == 2:
        return ("s", "t")
    if n <= 4:
        return ("r", "s", "t", "u")[:n]
    return tuple(f"s{i}" for i in range(1, n + 1))


def _from_edges(n: int, edges: dict[tuple[int, int], int], name: str) -> CoxeterMatrix:
    bonds = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
    for (i, j), m in edges.items():
        bonds[i][j] = bonds[j][i] = m
    return CoxeterMatrix(n, tuple(tuple(r) for r in bonds), _default_names(n), name)


def preset(name: str) -> CoxeterMatrix:
    """Return a named Coxeter matrix.

    Families: A<n>, B<n>, D<n> (n <= 8), E6-E8, F4, H3, H4, I2(m), AINF.
    Generators follow the conventions used in the worked examples:
    A3 has r-s-t with (rs)^3 = (st)^3 = e, H3 has (rs)^5 = (st)^3 = e,
    F4 has (rs)^3 = (st)^4 = (tu)^3 = e.
    """
    key = name.strip().upper()
    if key == "AINF":
        return _from_edges(2, {(0, 1): INF}, "AINF")
    m = re.fullmatch(r"I2\(?(\d+)\)?", key)
    if m:
        k = int(m.group(1))
        if k < 2:
            raise ValueError("I2(m) needs m >= 2")
        return _from_edges(2, {(0, 1): k}, f"I2({k})")
    m = re.fullmatch(r"([ABDEFH])(\d+)", key)
    if not m:
        raise ValueError(f"unknown group preset {name!r}")
    family, n = m.group(1), int(m.group(2))
    if n < 1 or n > 8:
        raise ValueError(f"unsupported rank {n}")
    path = {(i, i + 1): 3 for i in range(n - 1)}
    if family == "A":
        return _from_edges(n, path, key)
    if family == "B" and n >= 2:
        path[(0, 1)] = 4
        return _from_edges(n, path, key)
    if family == "D" and n >= 4:
        # path s1 - ... - s_{n-2} forking into s_{n-1} and s_n
        edges = {(i, i + 1): 3 for i in range(n - 3)}
        edges[(n - 3, n - 2)] = edges[(n - 3, n - 1)] = 3
        return _from_edges(n, edges, key)
    if family == "E" and 6 <= n <= 8:
        edges = {(0, 2): 3, (1, 3): 3, (2, 3): 3}
        edges.update({(i, i + 1): 3 for i in range(3, n - 1)})
        return _from_edges(n, edges, key)
    if family == "F" and n == 4:
        return _from_edges(4, {(0, 1): 3, (1, 2): 4, (2, 3): 3}, "F4")
    if family == "H" and n in (3, 4):
        path[(0, 1)] = 5
        return _from_edges(n, path, key)
    raise ValueError(f"unknown group preset {name!r}")
