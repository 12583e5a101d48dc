"""g-vectors, F-polynomials, f-, d- and h-vectors, and conjecture checkers.

All checkers run on the principal-coefficient pattern of the seed's
principal part.  Identifying "the same cluster variable" in patterns rooted
at other seeds is structural: the variable's defining mutation sequence is
replayed from the new root.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Sequence

from . import linalg
from .laurent import LaurentPoly, lp_substitute
from .quiver import ExchangeMatrix, matrix_mutate, pos, principal_extend
from .seeds import (
    ExchangeGraphReport,
    Seed,
    apply_sequence,
    cluster_monomial_exponents,
    collect_cluster_monomials,
    principal_seed,
    seed_mutate,
    traverse_exchange_graph,
)
from .tropical import tropical_eval

log = logging.getLogger(__name__)

KINDS = ("5.4", "6.10", "7.2", "7.10", "7.12", "7.17", "sign-coherence")


class RankDeficient(ValueError):
    pass


class NoValidBasePoint(ValueError):
    pass


class NotPrincipal(ValueError):
    pass


# -- single-variable invariants ---------------------------------------------


def extract_g_vector(z: LaurentPoly, b: ExchangeMatrix) -> tuple[int, ...]:
    """g-vector of ``z = R(yhat) * x^g`` with ``yhat_j = prod_i x_i^{b_ij}``."""
    if z.nvars != b.n:
        raise ValueError(f"polynomial has {z.nvars} variables, matrix has {b.n} rows")
    if z.is_zero():
        raise NoValidBasePoint("the zero polynomial has no g-vector")
    if linalg.rank(b.rows) != b.r:
        raise RankDeficient(f"exchange matrix has rank < {b.r}")
    r = b.r
    if b.is_principal():
        # F has constant term 1, and yhat^e has frozen exponent e, so the
        # base point is the unique monomial with no frozen variables
        base = [e for e, _ in z.terms if not any(e[r:])]
        if len(base) != 1:
            raise NoValidBasePoint(f"{z} has {len(base)} monomials free of frozen variables")
        return base[0][:r]
    # a base point g needs every exponent a of z to satisfy a - g = B e_a
    # with e_a a nonnegative integer vector; the frozen part of g is dropped
    exps = [e for e, _ in z.terms]

    def admissible(a0):
        for a in exps:
            sol = linalg.solve(b.rows, [x - y for x, y in zip(a, a0)])
            if sol is None or any(s.denominator != 1 or s < 0 for s in sol):
                return False
        return True

    found = [a0 for a0 in exps if admissible(a0)]
    if len(found) != 1:
        raise NoValidBasePoint(f"{z} has {len(found)} admissible base points")
    return found[0][:r]


def extract_F_polynomial(z: LaurentPoly, b: ExchangeMatrix) -> LaurentPoly:
    """Specialize ``x_1..x_r`` to 1 and rename the frozen ``x_{r+j}`` to ``y_j``."""
    if not b.is_principal():
        raise NotPrincipal("F-polynomials need principal coefficients")
    r = b.r
    one = LaurentPoly.one(r)
    images = [one] * r + [LaurentPoly.var(j, r) for j in range(1, r + 1)]
    f = lp_substitute(z, images).as_laurent()
    if not f.is_zero() and min(f.min_exponents()) < 0:
        raise ValueError(f"F-polynomial {f.render('y')} has a negative exponent")
    return f


def f_vector(f: LaurentPoly) -> tuple[int, ...]:
    r = f.nvars
    images = [[-1 if i == j else 0 for j in range(r)] for i in range(r)]
    return tuple(-v for v in tropical_eval(f, images))


def denominator_vector(z: LaurentPoly, r: int | None = None) -> tuple[int, ...]:
    if z.is_zero():
        raise ValueError("the zero polynomial has no denominator vector")
    lows = z.min_exponents()
    r = len(lows) if r is None else r
    return tuple(-e for e in lows[:r])


def reconstruct(f: LaurentPoly, g: Sequence[int], b: ExchangeMatrix) -> LaurentPoly:
    """``F(yhat_1..yhat_r) * x^g`` with ``yhat_j = prod_i x_i^{b_ij}``; g is padded with zeros."""
    n = b.n
    yhat = [LaurentPoly.monomial(b.column(j)) for j in range(b.r)]
    gfull = tuple(g) + (0,) * (n - len(g))
    return lp_substitute(f, yhat).as_laurent().shift(gfull)


def componentwise_ge(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x >= y for x, y in zip(a, b))


# -- re-rooted principal patterns --------------------------------------------


@dataclass
class VariableRecord:
    variable: int
    sequence: tuple[int, ...]
    slot: int
    z: LaurentPoly
    g: tuple[int, ...]
    F: LaurentPoly
    f: tuple[int, ...]
    d: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "sequence": list(self.sequence),
            "slot": self.slot,
            "z": str(self.z),
            "g": list(self.g),
            "F": self.F.render("y"),
            "f": list(self.f),
            "d": list(self.d),
        }


class Rerooter:
    """Cluster variables of an explored graph, seen from other initial seeds.

    ``report`` must come from a principal-coefficient root.  For a root path
    ``tau`` the principal pattern of ``mu_tau(B)`` is started, walked back
    along ``reversed(tau)`` to the original root vertex and then along the
    BFS tree, so every variable id maps to its expression in the new pattern.
    """

    def __init__(self, report: ExchangeGraphReport):
        if not report.root.matrix.is_principal():
            raise NotPrincipal("re-rooting needs a principal-coefficient report")
        self.report = report
        self.r = report.root.r
        self._base = ExchangeMatrix(report.root.matrix.principal, self.r)
        self._cache: dict[tuple[int, ...], tuple[ExchangeMatrix, list[LaurentPoly]]] = {}

    def principal_part(self, root_path: Sequence[int]) -> ExchangeMatrix:
        b = self._base
        for k in root_path:
            b = matrix_mutate(b, k)
        return b

    def variables(self, root_path: Sequence[int]) -> tuple[ExchangeMatrix, list[LaurentPoly]]:
        key = tuple(root_path)
        if key not in self._cache:
            rep = self.report
            start = Seed.initial(principal_extend(self.principal_part(key)))
            seeds: list[Seed] = [apply_sequence(start, reversed(key))]
            for node in range(1, rep.seed_count):
                seeds.append(seed_mutate(seeds[rep.parent[node]], rep.via[node]))
            zs = [seeds[node].cluster[slot] for node, slot in rep.first_slot]
            self._cache[key] = (start.matrix, zs)
        return self._cache[key]

    def g_and_F(self, root_path: Sequence[int], v: int) -> tuple[tuple[int, ...], LaurentPoly]:
        b, zs = self.variables(root_path)
        return extract_g_vector(zs[v], b), extract_F_polynomial(zs[v], b)


def h_vectors(rer: Rerooter, v: int, l: int, root_path: Sequence[int] = ()) -> tuple[int, int]:
    """``(h_l, h_l')`` of variable ``v`` for mutation direction ``l`` at the root ``root_path``.

    ``h_l`` evaluates the F-polynomial of the pattern at the root with
    ``y_l -> u^-1`` and ``y_j -> u^{[-b_lj]_+}``; ``h_l'`` evaluates the
    F-polynomial of the pattern rooted one step further in direction ``l``
    with ``y_j -> u^{[b_lj]_+}``.  Both use the principal part at the root.
    """
    r = rer.r
    b = rer.principal_part(root_path).rows
    _, f_here = rer.g_and_F(root_path, v)
    _, f_next = rer.g_and_F(tuple(root_path) + (l,), v)
    img_here = [[-1] if j == l - 1 else [pos(-b[l - 1][j])] for j in range(r)]
    img_next = [[-1] if j == l - 1 else [pos(b[l - 1][j])] for j in range(r)]
    return tropical_eval(f_here, img_here)[0], tropical_eval(f_next, img_next)[0]


def g_vector_mutation(g: Sequence[int], b: Sequence[Sequence[int]], l: int) -> tuple[int, ...]:
    """Piecewise-linear transformation of a g-vector under mutation of the initial seed at ``l``."""
    k = l - 1
    gl = g[k]
    out = []
    for j, gj in enumerate(g):
        if j == k:
            out.append(-gl)
        else:
            bjl = b[j][k]
            out.append(gj + pos(bjl) * gl - bjl * min(gl, 0))
    return tuple(out)


# -- checkers ------------------------------------------------------------------


@dataclass
class InvariantReport:
    kind: str
    holds: bool
    complete: bool
    seeds: int
    variables: int
    witnesses: list[dict] = field(default_factory=list)
    records: list[VariableRecord] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def summary(self) -> dict:
        return {
            "kind": self.kind,
            "holds": self.holds,
            "complete": self.complete,
            "seeds": self.seeds,
            "variables": self.variables,
            "witnesses": len(self.witnesses),
            **self.details,
        }


def variable_records(report: ExchangeGraphReport) -> list[VariableRecord]:
    b = report.root.matrix
    r = b.r
    out = []
    for v, z in enumerate(report.variables):
        seq, slot = report.variable_path(v)
        f = extract_F_polynomial(z, b)
        out.append(VariableRecord(v, seq, slot, z, extract_g_vector(z, b), f, f_vector(f), denominator_vector(z, r)))
    return out


def _f_vs_d(rec: VariableRecord, initial: set[int]) -> dict | None:
    if rec.variable in initial:
        return None
    if rec.f == rec.d:
        return None
    return {**rec.to_json(), "f_ge_d": componentwise_ge(rec.f, rec.d)}


def _check_sign_coherence(report: ExchangeGraphReport) -> list[dict]:
    bad = []
    for node, seed in enumerate(report.seeds):
        for j in range(seed.r):
            col = [row[j] for row in seed.matrix.complementary]
            if any(x > 0 for x in col) and any(x < 0 for x in col):
                bad.append({"sequence": list(report.paths[node]), "column": j + 1, "entries": col})
    return bad


def check_conjecture(
    kind: str,
    seed: Seed | ExchangeMatrix,
    max_seeds: int = 10_000,
    degree: int = 2,
    stop_on_violation: bool = True,
) -> InvariantReport:
    """Run one checker over the principal pattern of ``seed``.

    ``holds`` is the verdict on the explored part of the pattern;
    ``complete`` says whether the whole exchange graph was explored.  With
    ``stop_on_violation`` the per-variable and per-seed checks stop at the
    end of the BFS level where the first counterexample shows up.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    root = principal_seed(seed)
    local = kind in ("5.4", "7.17", "sign-coherence")
    seen_vars = [0]
    seen_seeds = [0]
    hits: list[dict] = []
    initial_ids: set[int] = set()

    def scan(rep: ExchangeGraphReport) -> bool:
        initial_ids.update(rep.initial_variable_ids())
        if kind == "sign-coherence":
            sub = ExchangeGraphReport(root=rep.root, seeds=rep.seeds[seen_seeds[0]:], paths=rep.paths[seen_seeds[0]:])
            hits.extend(_check_sign_coherence(sub))
            seen_seeds[0] = rep.seed_count
        else:
            b = rep.root.matrix
            for v in range(seen_vars[0], rep.variable_count):
                z = rep.variables[v]
                seq, slot = rep.variable_path(v)
                f = extract_F_polynomial(z, b)
                rec = VariableRecord(v, seq, slot, z, extract_g_vector(z, b), f, f_vector(f), denominator_vector(z, b.r))
                if kind == "5.4" and f.constant_term() != 1:
                    hits.append({**rec.to_json(), "constant_term": f.constant_term()})
                elif kind == "7.17":
                    w = _f_vs_d(rec, initial_ids)
                    if w is not None:
                        hits.append(w)
            seen_vars[0] = rep.variable_count
        return bool(hits) and stop_on_violation

    report = traverse_exchange_graph(root, max_seeds, stop=scan if local else None)
    complete = report.finite is True
    if local:
        scan(report)
        records = variable_records(report)
        details = {}
        if kind == "7.17":
            details["f_ge_d"] = all(w["f_ge_d"] for w in hits)
        return InvariantReport(kind, not hits, complete, report.seed_count, report.variable_count, hits, records, details)

    records = variable_records(report)
    if kind == "7.2":
        hits, details = _check_independence(report, degree)
    elif kind == "7.10":
        hits, details = _check_g_injective(report, records, degree)
    else:
        rer = Rerooter(report)
        hits, details = (_check_g_mutation if kind == "7.12" else _check_h_vectors)(report, rer)
    return InvariantReport(kind, not hits, complete, report.seed_count, report.variable_count, hits, records, details)


def _check_independence(report: ExchangeGraphReport, degree: int) -> tuple[list[dict], dict]:
    monomials = collect_cluster_monomials(report, degree)
    support = sorted({e for m in monomials for e in m.as_dict()})
    col = {e: j for j, e in enumerate(support)}
    rows = []
    for m in monomials:
        row = [0] * len(support)
        for e, c in m.as_dict().items():
            row[col[e]] = c
        rows.append(row)
    rk = linalg.rank(rows)
    details = {"monomials": len(monomials), "rank": rk, "degree": degree}
    hits = [] if rk == len(monomials) else [{"monomials": len(monomials), "rank": rk}]
    return hits, details


def _check_g_injective(report: ExchangeGraphReport, records: list[VariableRecord], degree: int):
    hits = []
    by_g: dict[tuple[int, ...], int] = {}
    for rec in records:
        other = by_g.setdefault(rec.g, rec.variable)
        if other != rec.variable:
            hits.append({"type": "shared-g", "g": list(rec.g), "variables": [str(report.variables[other]), str(rec.z)]})
    mono_g: dict[tuple[int, ...], tuple] = {}
    exps = cluster_monomial_exponents(report, degree)
    for m in exps:
        g = [0] * report.root.r
        for v, k in m:
            g = [a + k * b for a, b in zip(g, records[v].g)]
        g = tuple(g)
        other = mono_g.setdefault(g, m)
        if other != m:
            hits.append({"type": "shared-monomial-g", "g": list(g), "monomials": [list(map(list, other)), list(map(list, m))]})
    dets = set()
    for node, cluster in enumerate(report.clusters):
        d = linalg.det([list(records[v].g) for v in cluster])
        dets.add(d)
        if abs(d) != 1:
            hits.append({"type": "det", "sequence": list(report.paths[node]), "det": d})
    return hits, {"cluster_monomials": len(exps), "determinants": sorted(dets)}


def _edges(report: ExchangeGraphReport):
    for node, path in enumerate(report.paths):
        for l in range(1, report.root.r + 1):
            yield node, path, l


def _check_g_mutation(report: ExchangeGraphReport, rer: Rerooter):
    hits = []
    checked = 0
    for node, path, l in _edges(report):
        b = rer.principal_part(path).rows
        for v in range(report.variable_count):
            g, _ = rer.g_and_F(path, v)
            g2, _ = rer.g_and_F(path + (l,), v)
            predicted = g_vector_mutation(g, b, l)
            checked += 1
            if predicted != g2:
                hits.append({"root": list(path), "direction": l, "z": str(report.variables[v]),
                             "g": list(g), "g_next": list(g2), "predicted": list(predicted)})
    return hits, {"checked": checked}


def _check_h_vectors(report: ExchangeGraphReport, rer: Rerooter):
    hits = []
    checked = 0
    for node, path, l in _edges(report):
        for v in range(report.variable_count):
            g, _ = rer.g_and_F(path, v)
            h, h2 = h_vectors(rer, v, l, path)
            gl = g[l - 1]
            checked += 1
            if h != min(0, gl) or h2 != -pos(gl):
                hits.append({"root": list(path), "direction": l, "z": str(report.variables[v]),
                             "g": list(g), "h": h, "h_prime": h2})
    return hits, {"checked": checked}
