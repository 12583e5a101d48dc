"""Representations of acyclic quivers over the integers.

A representation assigns ``F^{d_i}`` to each vertex and an integer matrix of
shape ``d_{t(a)} x d_{s(a)}`` to each arrow ``a``, so the same data reduces
modulo every prime.  Quiver-Grassmannian Euler characteristics come from
point counts over ``F_p`` at several primes, interpolated in ``q`` and
evaluated at ``q = 1``.

Cluster variables of the principal pattern of ``Q`` correspond to right
modules over the path algebra of ``Q``, i.e. to representations of the
opposite quiver; :func:`match_against_traversal` uses that convention.
"""

from __future__ import annotations

import itertools
import logging
import os
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import _kernels, linalg
from .invariants import extract_F_polynomial, f_vector
from .laurent import LaurentPoly
from .quiver import IceQuiver, QuiverError, is_acyclic, quiver_to_matrix
from .seeds import principal_seed, traverse_exchange_graph

log = logging.getLogger(__name__)

MAX_TOTAL_DIM = 8
MAX_VERTEX_DIM = 3


class EnumerationBoundError(ValueError):
    pass


class InterpolationError(ArithmeticError):
    """Point counts are not given by one polynomial in ``q`` of the expected degree."""

    def __init__(self, msg: str, counts: dict[int, int]):
        super().__init__(msg)
        self.counts = counts


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("CLUSTER_FORGE_THREADS", "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class QuiverRep:
    quiver: IceQuiver
    dim: tuple[int, ...]
    maps: tuple[tuple[int, int, tuple[tuple[int, ...], ...]], ...] = field(default=())

    def __post_init__(self):
        q = self.quiver
        if q.frozen:
            raise QuiverError("representations live on quivers without frozen vertices")
        if not is_acyclic(q):
            raise QuiverError("representations need an acyclic quiver")
        dim = tuple(int(x) for x in self.dim)
        object.__setattr__(self, "dim", dim)
        if len(dim) != q.vertices or min(dim) < 0:
            raise ValueError(f"dimension vector {dim} does not fit {q.vertices} vertices")
        maps = []
        for s, t, m in self.maps:
            m = tuple(tuple(int(x) for x in row) for row in m)
            if len(m) != dim[t - 1] or any(len(row) != dim[s - 1] for row in m):
                raise ValueError(f"matrix on arrow {s}->{t} must have shape {dim[t - 1]}x{dim[s - 1]}")
            maps.append((int(s), int(t), m))
        object.__setattr__(self, "maps", tuple(maps))
        if Counter((s, t) for s, t, _ in maps) != Counter(q.arrows):
            raise ValueError("arrow matrices do not match the arrows of the quiver")

    @classmethod
    def zero(cls, q: IceQuiver) -> "QuiverRep":
        return cls(q, (0,) * q.vertices, tuple((s, t, ()) for s, t in q.arrows))

    def matrix(self, k: int) -> np.ndarray:
        s, t, m = self.maps[k]
        return np.array(m, dtype=np.int64).reshape(self.dim[t - 1], self.dim[s - 1])

    @property
    def total_dim(self) -> int:
        return sum(self.dim)

    def to_json(self) -> dict:
        return {
            "quiver": self.quiver.to_json(),
            "dim": list(self.dim),
            "arrows": [{"from": s, "to": t, "matrix": [list(row) for row in m]} for s, t, m in self.maps],
        }


def direct_sum(m: QuiverRep, n: QuiverRep) -> QuiverRep:
    _same_quiver(m, n)
    dim = tuple(a + b for a, b in zip(m.dim, n.dim))
    maps = []
    for k, (s, t, _) in enumerate(m.maps):
        block = np.zeros((dim[t - 1], dim[s - 1]), dtype=np.int64)
        block[: m.dim[t - 1], : m.dim[s - 1]] = m.matrix(k)
        block[m.dim[t - 1] :, m.dim[s - 1] :] = n.matrix(k)
        maps.append((s, t, block.tolist()))
    return QuiverRep(m.quiver, dim, tuple(maps))


def euler_form(q: IceQuiver, d: Sequence[int], e: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(d, e)) - sum(d[s - 1] * e[t - 1] for s, t in q.arrows)


def _same_quiver(m: QuiverRep, n: QuiverRep):
    if m.quiver != n.quiver or [(s, t) for s, t, _ in m.maps] != [(s, t) for s, t, _ in n.maps]:
        raise ValueError("representations of different quivers")


def hom_dim(m: QuiverRep, n: QuiverRep) -> int:
    """Dimension of the space of intertwiners ``phi_v: M_v -> N_v``."""
    _same_quiver(m, n)
    offsets = list(itertools.accumulate((n.dim[v] * m.dim[v] for v in range(len(m.dim))), initial=0))
    unknowns = offsets[-1]
    if unknowns == 0:
        return 0

    def idx(v: int, i: int, j: int) -> int:
        return offsets[v] + i * m.dim[v] + j

    rows = []
    for (s, t, ma), (_, _, na) in zip(m.maps, n.maps):
        s0, t0 = s - 1, t - 1
        # N_a phi_s - phi_t M_a = 0, entry (i, j)
        for i in range(n.dim[t0]):
            for j in range(m.dim[s0]):
                row = [0] * unknowns
                for k in range(n.dim[s0]):
                    row[idx(s0, k, j)] += na[i][k]
                for k in range(m.dim[t0]):
                    row[idx(t0, i, k)] -= ma[k][j]
                rows.append(row)
    return unknowns - linalg.rank(rows) if rows else unknowns


def ext1_dim(m: QuiverRep, n: QuiverRep) -> int:
    e = hom_dim(m, n) - euler_form(m.quiver, m.dim, n.dim)
    if e < 0:
        raise ArithmeticError(f"negative Ext^1 dimension {e}: inconsistent input")
    return e


def is_rigid(m: QuiverRep) -> bool:
    return ext1_dim(m, m) == 0


def _check_bounds(m: QuiverRep, e: Sequence[int], max_total: int, max_dim: int):
    if len(e) != len(m.dim):
        raise ValueError("dimension vector length mismatch")
    if any(not 0 <= x <= d for x, d in zip(e, m.dim)):
        raise ValueError(f"need 0 <= e <= dim M, got e={tuple(e)}, dim={m.dim}")
    if m.total_dim > max_total or max(m.dim, default=0) > max_dim:
        raise EnumerationBoundError(
            f"dimension vector {m.dim} exceeds the enumeration bound (total <= {max_total}, each <= {max_dim})"
        )


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % k for k in range(2, int(p ** 0.5) + 1))


def count_submodules_mod_p(
    m: QuiverRep,
    e: Sequence[int],
    p: int,
    max_total: int = MAX_TOTAL_DIM,
    max_dim: int = MAX_VERTEX_DIM,
    use_numba: bool | None = None,
) -> int:
    """Number of ``F_p``-points of the quiver Grassmannian ``Gr_e(M)``."""
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    e = tuple(int(x) for x in e)
    _check_bounds(m, e, max_total, max_dim)
    nv = len(m.dim)
    spaces = [_kernels.rref_subspaces(m.dim[v], e[v], p) for v in range(nv)]
    sizes = [b.shape[0] for b, _ in spaces]
    operands: list = []
    touched = set()
    for k, (s, t, _) in enumerate(m.maps):
        src, _ = spaces[s - 1]
        tgt, piv = spaces[t - 1]
        mat = m.matrix(k) % p
        c = _kernels.compat(src, mat, tgt, piv, p, use_numba=use_numba).astype(np.int64)
        operands += [c, [s - 1, t - 1]]
        touched.update((s - 1, t - 1))
    total = 1
    for v in range(nv):
        if v not in touched:
            total *= sizes[v]
    if operands:
        total *= int(np.einsum(*operands, [], optimize=True))
    return total


@lru_cache(maxsize=None)
def _primes(count: int, start: int = 2) -> tuple[int, ...]:
    out = []
    p = start
    while len(out) < count:
        if _is_prime(p):
            out.append(p)
        p += 1
    return tuple(out)


def grassmannian_dimension_bound(m: QuiverRep, e: Sequence[int]) -> int:
    return sum(x * (d - x) for x, d in zip(e, m.dim))


def _lagrange_at(points: Sequence[tuple[int, int]], x: int) -> Fraction:
    total = Fraction(0)
    for k, (xk, yk) in enumerate(points):
        term = Fraction(yk)
        for j, (xj, _) in enumerate(points):
            if j != k:
                term *= Fraction(x - xj, xk - xj)
        total += term
    return total


def grassmannian_euler_char(
    m: QuiverRep,
    e: Sequence[int],
    primes: Sequence[int] | None = None,
    use_numba: bool | None = None,
) -> int:
    """Euler characteristic of ``Gr_e(M)`` from point counts over finite fields.

    The count is assumed polynomial in ``q`` of degree at most
    ``sum e_i (d_i - e_i)``; ``D + 1`` primes fix it and one more prime
    checks it.  ``primes`` overrides the default (the first ``D + 2``
    primes) and must contain at least ``D + 2`` entries.
    """
    e = tuple(int(x) for x in e)
    _check_bounds(m, e, MAX_TOTAL_DIM, MAX_VERTEX_DIM)
    deg = grassmannian_dimension_bound(m, e)
    if primes is None:
        primes = _primes(deg + 2)
    primes = tuple(primes)
    if len(primes) < deg + 2 or len(set(primes)) != len(primes):
        raise ValueError(f"need {deg + 2} distinct primes, got {primes}")

    def count(p):
        return count_submodules_mod_p(m, e, p, use_numba=use_numba)

    workers = min(thread_count(), len(primes))
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            values = list(pool.map(count, primes))
    else:
        values = [count(p) for p in primes]
    counts = dict(zip(primes, values))
    points = list(zip(primes[: deg + 1], values[: deg + 1]))
    for p, c in zip(primes[deg + 1 :], values[deg + 1 :]):
        if _lagrange_at(points, p) != c:
            raise InterpolationError(f"point counts of Gr_{e} are not polynomial of degree <= {deg}: {counts}", counts)
    chi = _lagrange_at(points, 1)
    if chi.denominator != 1:
        raise InterpolationError(f"non-integral Euler characteristic {chi}", counts)
    return int(chi)


def module_F_polynomial(m: QuiverRep, use_numba: bool | None = None) -> LaurentPoly:
    """Generating function ``sum_e chi(Gr_e(M)) y^e`` of submodule Grassmannians."""
    terms = {}
    for e in itertools.product(*(range(d + 1) for d in m.dim)):
        chi = grassmannian_euler_char(m, e, use_numba=use_numba)
        if chi:
            terms[e] = chi
    return LaurentPoly(terms, len(m.dim))


# -- projective presentations --------------------------------------------------


def _paths(q: IceQuiver) -> dict[tuple[int, int], list[tuple[int, ...]]]:
    """Paths ``i -> j`` as tuples of arrow indices into ``q.arrows`` (trivial paths included)."""
    out: dict[tuple[int, int], list[tuple[int, ...]]] = {(i, i): [()] for i in range(1, q.vertices + 1)}
    changed = True
    frontier = {(i, i): [()] for i in range(1, q.vertices + 1)}
    while changed:
        changed = False
        nxt: dict[tuple[int, int], list[tuple[int, ...]]] = {}
        for (i, j), paths in frontier.items():
            for a, (s, t) in enumerate(q.arrows):
                if s == j:
                    nxt.setdefault((i, t), []).extend(p + (a,) for p in paths)
        for key, paths in nxt.items():
            out.setdefault(key, []).extend(paths)
            changed = True
        frontier = nxt
    return out


def path_counts(q: IceQuiver) -> list[list[int]]:
    """``counts[i][j]`` = number of paths from vertex ``i+1`` to ``j+1``; row ``i`` is ``dim P_{i+1}``."""
    paths = _paths(q)
    n = q.vertices
    return [[len(paths.get((i, j), [])) for j in range(1, n + 1)] for i in range(1, n + 1)]


def projective_rep(q: IceQuiver, i: int) -> QuiverRep:
    """The indecomposable projective ``P_i``: basis of ``(P_i)_j`` = paths from ``i`` to ``j``."""
    paths = _paths(q)
    basis = {j: paths.get((i, j), []) for j in range(1, q.vertices + 1)}
    maps = []
    for a, (s, t) in enumerate(q.arrows):
        pos_t = {p: k for k, p in enumerate(basis[t])}
        mat = [[0] * len(basis[s]) for _ in basis[t]]
        for col, p in enumerate(basis[s]):
            mat[pos_t[p + (a,)]][col] = 1
        maps.append((s, t, mat))
    return QuiverRep(q, tuple(len(basis[j]) for j in range(1, q.vertices + 1)), tuple(maps))


def simple_rep(q: IceQuiver, i: int) -> QuiverRep:
    dim = tuple(1 if j == i else 0 for j in range(1, q.vertices + 1))
    return QuiverRep(q, dim, tuple((s, t, [[0] * dim[s - 1] for _ in range(dim[t - 1])]) for s, t in q.arrows))


def top_dimensions(m: QuiverRep) -> tuple[int, ...]:
    """``dim M_v`` minus the rank of all arrows into ``v``."""
    out = []
    for v in range(1, len(m.dim) + 1):
        d = m.dim[v - 1]
        incoming = [m.matrix(k) for k, (s, t, _) in enumerate(m.maps) if t == v]
        if d == 0 or not incoming:
            out.append(d)
            continue
        stacked = np.hstack(incoming).tolist()
        out.append(d - linalg.rank(stacked) if stacked and stacked[0] else d)
    return tuple(out)


def g_from_presentation(m: QuiverRep) -> tuple[int, ...]:
    """Index ``[P_0] - [P_1]`` of the minimal projective presentation of ``M``."""
    top = top_dimensions(m)
    proj = path_counts(m.quiver)
    n = len(m.dim)
    cover = [sum(top[i] * proj[i][j] for i in range(n)) for j in range(n)]
    kernel = [c - d for c, d in zip(cover, m.dim)]
    # dimension vectors of the P_j form a basis; solve sum_j k_j dim P_j = dim K
    cols = [[proj[j][v] for j in range(n)] for v in range(n)]
    sol = linalg.solve(cols, kernel)
    if sol is None or any(x.denominator != 1 or x < 0 for x in sol):
        raise ArithmeticError(f"kernel dimension {kernel} is not a sum of projectives")
    return tuple(t - int(k) for t, k in zip(top, sol))


# -- comparison with the exchange graph ------------------------------------------


@dataclass
class MatchReport:
    ok: bool
    module_side: list[str]
    variable_side: list[str]
    missing: list[str] = field(default_factory=list)
    extra: list[str] = field(default_factory=list)
    dim_mismatches: list[dict] = field(default_factory=list)
    invalid_reps: list[dict] = field(default_factory=list)


def match_against_traversal(q: IceQuiver, reps: Sequence[QuiverRep], max_seeds: int = 10_000) -> MatchReport:
    """Compare module F-polynomials with F-polynomials of non-initial cluster variables.

    ``reps`` are rigid indecomposable representations of ``q.opposite()``.
    The principal pattern of ``q`` must close within ``max_seeds``.
    """
    if not is_acyclic(q):
        raise QuiverError("match_against_traversal needs an acyclic quiver")
    op = q.opposite()
    invalid = []
    for k, rep in enumerate(reps):
        if rep.quiver != op:
            raise ValueError(f"representation {k} is not a representation of the opposite quiver")
        if hom_dim(rep, rep) != 1 or not is_rigid(rep):
            invalid.append({"index": k, "dim": list(rep.dim)})

    report = traverse_exchange_graph(principal_seed(quiver_to_matrix(q)), max_seeds)
    if report.finite is not True:
        raise RuntimeError(f"principal pattern did not close within {max_seeds} seeds")
    b = report.root.matrix
    initial = set(report.initial_variable_ids())
    var_F = Counter(
        extract_F_polynomial(z, b) for v, z in enumerate(report.variables) if v not in initial
    )
    mod_F = Counter()
    mismatches = []
    for rep in reps:
        f = module_F_polynomial(rep)
        mod_F[f] += 1
        if f_vector(f) != rep.dim:
            mismatches.append({"dim": list(rep.dim), "f": list(f_vector(f)), "F": f.render("y")})
    missing = sorted(f.render("y") for f in (var_F - mod_F).elements())
    extra = sorted(f.render("y") for f in (mod_F - var_F).elements())
    return MatchReport(
        ok=not (missing or extra or mismatches or invalid),
        module_side=sorted(f.render("y") for f in mod_F.elements()),
        variable_side=sorted(f.render("y") for f in var_F.elements()),
        missing=missing,
        extra=extra,
        dim_mismatches=mismatches,
        invalid_reps=invalid,
    )
