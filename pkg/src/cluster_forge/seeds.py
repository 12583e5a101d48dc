"""Seeds, the exchange relation, and exchange-graph traversal."""

from __future__ import annotations

import itertools
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .laurent import LaurentPoly, NonExactDivision, lp_exact_divide
from .quiver import ExchangeMatrix, QuiverError, matrix_mutate, principal_extend

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Seed:
    matrix: ExchangeMatrix
    cluster: tuple[LaurentPoly, ...]
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        if len(self.cluster) != self.matrix.n:
            raise ValueError(f"cluster has {len(self.cluster)} entries, matrix has {self.matrix.n} rows")
        for z in self.cluster:
            if z.nvars != self.matrix.n:
                raise ValueError("cluster entries must be Laurent polynomials in the n initial variables")
        if self.names is not None and len(self.names) != self.matrix.n:
            raise ValueError("need one name per initial variable")

    @classmethod
    def initial(cls, matrix: ExchangeMatrix, names: Sequence[str] | None = None) -> "Seed":
        n = matrix.n
        cluster = tuple(LaurentPoly.var(i, n) for i in range(1, n + 1))
        return cls(matrix, cluster, tuple(names) if names is not None else None)

    @property
    def n(self) -> int:
        return self.matrix.n

    @property
    def r(self) -> int:
        return self.matrix.r

    @property
    def mutable(self) -> tuple[LaurentPoly, ...]:
        return self.cluster[: self.r]

    def render(self, z: LaurentPoly) -> str:
        return z.render(names=self.names)


def validate_sequence(seq: Iterable[int], r: int) -> tuple[int, ...]:
    seq = tuple(int(k) for k in seq)
    for k in seq:
        if not 1 <= k <= r:
            raise QuiverError(f"direction {k} out of range 1..{r}")
    return seq


def exchange_monomials(seed: Seed, k: int) -> tuple[LaurentPoly, LaurentPoly]:
    """The two products of the exchange relation in direction ``k`` (1-based)."""
    n = seed.n
    plus = LaurentPoly.one(n)
    minus = LaurentPoly.one(n)
    for i, row in enumerate(seed.matrix.rows):
        b = row[k - 1]
        if b > 0:
            plus = plus * seed.cluster[i] ** b
        elif b < 0:
            minus = minus * seed.cluster[i] ** (-b)
    return plus, minus


def seed_mutate(seed: Seed, k: int) -> Seed:
    if not 1 <= k <= seed.r:
        raise QuiverError(f"direction {k} out of range 1..{seed.r}")
    plus, minus = exchange_monomials(seed, k)
    try:
        new = lp_exact_divide(plus + minus, seed.cluster[k - 1])
    except NonExactDivision as exc:
        log.error("exchange relation in direction %d is not Laurent", k)
        raise exc
    cluster = list(seed.cluster)
    cluster[k - 1] = new
    return Seed(matrix_mutate(seed.matrix, k), tuple(cluster), seed.names)


def apply_sequence(seed: Seed, seq: Iterable[int]) -> Seed:
    for k in validate_sequence(seq, seed.r):
        seed = seed_mutate(seed, k)
    return seed


def principal_seed(seed: Seed | ExchangeMatrix) -> Seed:
    """Initial seed with principal coefficients for the principal part of ``seed``."""
    b = seed.matrix if isinstance(seed, Seed) else seed
    if b.is_principal():
        return Seed.initial(b)
    return Seed.initial(principal_extend(b))


def _canonical_order(seed: Seed) -> list[int]:
    return sorted(range(seed.r), key=lambda i: seed.cluster[i].sort_key())


def canonical_form(seed: Seed):
    """Hashable key identifying a seed up to relabelling of mutable indices.

    Cluster variables of one seed are pairwise distinct, so sorting the
    mutable entries picks out the permutation minimizing the key
    ``(cluster entries, permuted matrix)``; frozen entries never move.
    """
    order = _canonical_order(seed)
    return (
        tuple(seed.cluster[i].sort_key() for i in order),
        seed.matrix.permuted(order).rows,
    )


@dataclass
class ExchangeGraphReport:
    """Result of a breadth-first exploration of the exchange graph.

    ``seeds[v]`` is the labelled seed obtained by applying ``paths[v]`` to the
    root.  ``adjacency[(v, k)] = (w, j)`` means mutating ``seeds[v]`` in
    direction ``k`` gives ``seeds[w]`` with the new variable sitting in slot
    ``j``; the map is an involution on (seed, direction) pairs.
    ``finite`` is ``True`` once the closure is reached, ``None`` if the
    budget ran out first.
    """

    root: Seed
    seeds: list[Seed] = field(default_factory=list)
    paths: list[tuple[int, ...]] = field(default_factory=list)
    parent: list[int | None] = field(default_factory=list)
    via: list[int | None] = field(default_factory=list)
    adjacency: dict[tuple[int, int], tuple[int, int]] = field(default_factory=dict)
    variables: list[LaurentPoly] = field(default_factory=list)
    variable_index: dict[LaurentPoly, int] = field(default_factory=dict)
    first_slot: list[tuple[int, int]] = field(default_factory=list)
    clusters: list[tuple[int, ...]] = field(default_factory=list)
    finite: bool | None = None

    @property
    def seed_count(self) -> int:
        return len(self.seeds)

    @property
    def variable_count(self) -> int:
        return len(self.variables)

    def cluster_sets(self) -> set[frozenset[int]]:
        return {frozenset(c) for c in self.clusters}

    def variable_path(self, v: int) -> tuple[tuple[int, ...], int]:
        """Mutation sequence and 1-based slot where variable ``v`` first appears."""
        node, slot = self.first_slot[v]
        return self.paths[node], slot + 1

    def initial_variable_ids(self) -> list[int]:
        return [self.variable_index[z] for z in self.root.mutable]


def _register(report: ExchangeGraphReport, seed: Seed, node: int) -> tuple[int, ...]:
    ids = []
    for slot, z in enumerate(seed.mutable):
        v = report.variable_index.get(z)
        if v is None:
            v = len(report.variables)
            report.variables.append(z)
            report.variable_index[z] = v
            report.first_slot.append((node, slot))
        ids.append(v)
    return tuple(ids)


def traverse_exchange_graph(
    s0: Seed,
    max_seeds: int = 10_000,
    directions: Sequence[int] | None = None,
    stop: Callable[[ExchangeGraphReport], bool] | None = None,
) -> ExchangeGraphReport:
    """Breadth-first exploration over unlabelled seeds.

    ``directions`` fixes the order in which neighbours are tried (default
    ``1..r``).  ``stop`` is consulted after each completed BFS level; a true
    return ends the exploration early with ``finite=None``.
    """
    if max_seeds < 1:
        raise ValueError("max_seeds must be at least 1")
    r = s0.r
    order = validate_sequence(directions if directions is not None else range(1, r + 1), r)
    if sorted(order) != list(range(1, r + 1)):
        raise ValueError("directions must be a permutation of 1..r")

    report = ExchangeGraphReport(root=s0)
    keys: dict = {}

    def add(seed: Seed, path, parent, via) -> int:
        node = len(report.seeds)
        keys[canonical_form(seed)] = node
        report.seeds.append(seed)
        report.paths.append(path)
        report.parent.append(parent)
        report.via.append(via)
        report.clusters.append(_register(report, seed, node))
        return node

    add(s0, (), None, None)
    level = deque([0])
    exhausted = False
    while level and not exhausted:
        nxt: deque[int] = deque()
        for v in level:
            seed = report.seeds[v]
            for k in order:
                if (v, k) in report.adjacency:
                    continue
                mutated = seed_mutate(seed, k)
                key = canonical_form(mutated)
                w = keys.get(key)
                if w is None:
                    if len(report.seeds) >= max_seeds:
                        exhausted = True
                        continue
                    w = add(mutated, report.paths[v] + (k,), v, k)
                    nxt.append(w)
                new_var = mutated.cluster[k - 1]
                j = report.seeds[w].mutable.index(new_var) + 1
                report.adjacency[(v, k)] = (w, j)
                report.adjacency[(w, j)] = (v, k)
        level = nxt
        if stop is not None and level and stop(report):
            log.info("exploration stopped early after %d seeds", report.seed_count)
            return report
    report.finite = None if exhausted else True
    return report


def collect_cluster_monomials(report: ExchangeGraphReport, degree_bound: int) -> list[LaurentPoly]:
    """All distinct products of variables from one explored cluster, of total degree <= bound."""
    n = report.root.n
    out = []
    for exps in cluster_monomial_exponents(report, degree_bound):
        m = LaurentPoly.one(n)
        for v, k in exps:
            m = m * report.variables[v] ** k
        out.append(m)
    return out


def cluster_monomial_exponents(report: ExchangeGraphReport, degree_bound: int) -> list[tuple[tuple[int, int], ...]]:
    """Cluster monomials as sorted ``(variable id, power)`` tuples, deduplicated."""
    if degree_bound < 0:
        raise ValueError("degree bound must be nonnegative")
    found = set()
    for cluster in report.clusters:
        ids = sorted(cluster)
        for powers in itertools.product(range(degree_bound + 1), repeat=len(ids)):
            if sum(powers) <= degree_bound:
                found.add(tuple((v, k) for v, k in zip(ids, powers) if k))
    return sorted(found, key=lambda m: (sum(k for _, k in m), m))
