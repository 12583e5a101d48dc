"""Exchange matrices, ice quivers and matrix mutation.

Vertices and mutation directions are 1-based in the public API, matching the
JSON formats; rows/columns are 0-based internally.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


class QuiverError(ValueError):
    """An ice quiver or exchange matrix violates its structural conditions."""


def sgn(x: int) -> int:
    return (x > 0) - (x < 0)


def pos(x: int) -> int:
    return x if x > 0 else 0


@dataclass(frozen=True)
class ExchangeMatrix:
    """An ``n x r`` integer matrix whose top ``r x r`` block is antisymmetric."""

    rows: tuple[tuple[int, ...], ...]
    r: int

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        if not 1 <= self.r <= len(rows):
            raise QuiverError(f"need 1 <= r <= n, got r={self.r}, n={len(rows)}")
        for i, row in enumerate(rows):
            if len(row) != self.r:
                raise QuiverError(f"row {i + 1} has {len(row)} entries, expected {self.r}")
        for i in range(self.r):
            for j in range(i, self.r):
                if rows[i][j] != -rows[j][i]:
                    raise QuiverError(
                        f"principal part not antisymmetric at ({i + 1},{j + 1}): "
                        f"{rows[i][j]} vs {rows[j][i]}"
                    )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], r: int | None = None) -> "ExchangeMatrix":
        rows = [list(row) for row in rows]
        if r is None:
            r = len(rows[0]) if rows else 0
        return cls(tuple(tuple(row) for row in rows), r)

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    @property
    def principal(self) -> tuple[tuple[int, ...], ...]:
        return self.rows[: self.r]

    @property
    def complementary(self) -> tuple[tuple[int, ...], ...]:
        return self.rows[self.r :]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.rows)

    def to_array(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.int64).reshape(self.n, self.r)

    def is_principal(self) -> bool:
        """True when ``n = 2r`` and the complementary part is the identity."""
        if self.n != 2 * self.r:
            return False
        return all(
            self.rows[self.r + i][j] == (1 if i == j else 0)
            for i in range(self.r)
            for j in range(self.r)
        )

    def permuted(self, order: Sequence[int]) -> "ExchangeMatrix":
        """Relabel mutable indices: new index ``k`` is old index ``order[k]``.

        Frozen rows keep their positions; only their columns move.
        """
        idx = list(order) + list(range(self.r, self.n))
        rows = tuple(tuple(self.rows[i][order[j]] for j in range(self.r)) for i in idx)
        return ExchangeMatrix(rows, self.r)

    def to_json(self) -> dict:
        return {"n": self.n, "r": self.r, "rows": [list(row) for row in self.rows]}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    def __str__(self):
        return json.dumps([list(row) for row in self.rows])


def matrix_mutate(b: ExchangeMatrix, s: int) -> ExchangeMatrix:
    """Mutate in direction ``s`` (1-based)."""
    if not 1 <= s <= b.r:
        raise QuiverError(f"direction {s} out of range 1..{b.r}")
    k = s - 1
    rows = b.rows
    out = []
    for i, row in enumerate(rows):
        bik = row[k]
        if i == k:
            out.append(tuple(-x for x in row))
            continue
        new = []
        for j, bij in enumerate(row):
            if j == k:
                new.append(-bij)
            else:
                new.append(bij + sgn(bik) * pos(bik * rows[k][j]))
        out.append(tuple(new))
    return ExchangeMatrix(tuple(out), b.r)


def principal_extend(b: ExchangeMatrix | Sequence[Sequence[int]]) -> ExchangeMatrix:
    """Stack the ``r x r`` identity under the principal part (framing arrows ``r+i -> i``)."""
    top = b.principal if isinstance(b, ExchangeMatrix) else tuple(tuple(row) for row in b)
    r = len(top)
    ident = tuple(tuple(1 if i == j else 0 for j in range(r)) for i in range(r))
    return ExchangeMatrix(tuple(top) + ident, r)


@dataclass(frozen=True)
class IceQuiver:
    """Quiver on vertices ``1..vertices`` with frozen set and an arrow multiset."""

    vertices: int
    arrows: tuple[tuple[int, int], ...]
    frozen: frozenset[int] = frozenset()

    def __post_init__(self):
        arrows = tuple(sorted((int(a), int(b)) for a, b in self.arrows))
        object.__setattr__(self, "arrows", arrows)
        object.__setattr__(self, "frozen", frozenset(int(v) for v in self.frozen))
        if self.vertices < 1:
            raise QuiverError("a quiver needs at least one vertex")
        for v in self.frozen:
            if not 1 <= v <= self.vertices:
                raise QuiverError(f"frozen vertex {v} out of range")
        seen = set(arrows)
        for a, b in arrows:
            if not (1 <= a <= self.vertices and 1 <= b <= self.vertices):
                raise QuiverError(f"arrow {a}->{b} has an endpoint out of range")
            if a == b:
                raise QuiverError(f"loop at vertex {a}")
            if (b, a) in seen:
                raise QuiverError(f"2-cycle between {a} and {b}")
            if a in self.frozen and b in self.frozen:
                raise QuiverError(f"arrow {a}->{b} between frozen vertices")

    @property
    def r(self) -> int:
        return self.vertices - len(self.frozen)

    @property
    def mutable(self) -> list[int]:
        return [v for v in range(1, self.vertices + 1) if v not in self.frozen]

    def multiplicity(self, a: int, b: int) -> int:
        return sum(1 for x in self.arrows if x == (a, b))

    def opposite(self) -> "IceQuiver":
        return IceQuiver(self.vertices, tuple((b, a) for a, b in self.arrows), self.frozen)

    def to_json(self) -> dict:
        return {
            "vertices": self.vertices,
            "frozen": sorted(self.frozen),
            "arrows": [list(a) for a in self.arrows],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def quiver_to_matrix(q: IceQuiver) -> ExchangeMatrix:
    r = q.r
    if q.frozen != frozenset(range(r + 1, q.vertices + 1)):
        raise QuiverError("frozen vertices must be the last ones, r+1..n")
    counts = Counter(q.arrows)
    rows = []
    for i in range(1, q.vertices + 1):
        rows.append(tuple(counts[(i, j)] - counts[(j, i)] for j in range(1, r + 1)))
    return ExchangeMatrix(tuple(rows), r)


def matrix_to_quiver(b: ExchangeMatrix) -> IceQuiver:
    arrows = []
    for i in range(b.n):
        for j in range(b.r):
            v = b.rows[i][j]
            if v > 0:
                arrows.extend([(i + 1, j + 1)] * v)
            elif v < 0 and i >= b.r:
                # frozen row, negative entry: arrows from mutable j to frozen i
                arrows.extend([(j + 1, i + 1)] * (-v))
    return IceQuiver(b.n, tuple(arrows), frozenset(range(b.r + 1, b.n + 1)))


def is_acyclic(q: IceQuiver | ExchangeMatrix) -> bool:
    """Topological-order check on the mutable subquiver."""
    if isinstance(q, ExchangeMatrix):
        q = matrix_to_quiver(q)
    verts = set(q.mutable)
    succ: dict[int, list[int]] = {v: [] for v in verts}
    indeg = {v: 0 for v in verts}
    for a, b in q.arrows:
        if a in verts and b in verts:
            succ[a].append(b)
            indeg[b] += 1
    ready = [v for v in verts if indeg[v] == 0]
    seen = 0
    while ready:
        v = ready.pop()
        seen += 1
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
    return seen == len(verts)


def quiver_from_arrows(vertices: int, arrows: Iterable[Sequence[int]], frozen: Iterable[int] = ()) -> IceQuiver:
    return IceQuiver(vertices, tuple((a, b) for a, b in arrows), frozenset(frozen))
