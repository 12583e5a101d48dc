import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cluster_forge.laurent import LaurentPoly
from cluster_forge.quiver import ExchangeMatrix, QuiverError, principal_extend
from cluster_forge.seeds import (
    Seed,
    apply_sequence,
    canonical_form,
    cluster_monomial_exponents,
    collect_cluster_monomials,
    principal_seed,
    seed_mutate,
    traverse_exchange_graph,
)
from conftest import A2, A3, A4, TRIANGLE


def lp(terms, n):
    return LaurentPoly(terms, n)


def test_a2_first_mutation():
    s = seed_mutate(Seed.initial(A2), 1)
    assert s.cluster[0].render() == "x1^-1 + x1^-1*x2"
    assert s.cluster[1] == LaurentPoly.var(2, 2)


def test_counterexample_sequence():
    s = apply_sequence(Seed.initial(TRIANGLE), [3, 2, 1])
    x1, x2, x3 = (LaurentPoly.var(i, 3) for i in (1, 2, 3))
    num = x1**2 + 2 * x1 * x2 + x2**2 + x3
    assert s.cluster[0] * x1 * x2 * x3 == num


def test_empty_and_double_sequences():
    s = Seed.initial(TRIANGLE)
    assert apply_sequence(s, []) == s
    assert apply_sequence(s, [1, 1]) == s


def test_sequence_range():
    with pytest.raises(QuiverError):
        apply_sequence(Seed.initial(A2), [3])


def test_frozen_entries_never_change():
    s = Seed.initial(principal_extend(A3))
    for k in (1, 2, 3, 1, 2):
        s = seed_mutate(s, k)
        assert s.cluster[3:] == tuple(LaurentPoly.var(i, 6) for i in (4, 5, 6))


def test_canonical_form_permutation_invariant():
    s = Seed.initial(A3)
    order = [2, 0, 1]
    swapped = Seed(s.matrix.permuted(order), tuple(s.cluster[i] for i in order))
    assert canonical_form(swapped) == canonical_form(s)
    assert canonical_form(apply_sequence(s, [2, 2])) == canonical_form(s)


def test_canonical_form_is_minimum_over_permutations():
    import itertools

    s = apply_sequence(Seed.initial(A3), [1, 3, 2])

    def key(order):
        return (tuple(s.cluster[i].sort_key() for i in order), s.matrix.permuted(order).rows)

    assert canonical_form(s) == min(key(p) for p in itertools.permutations(range(3)))


def test_a2_pentagon():
    rep = traverse_exchange_graph(Seed.initial(A2))
    assert (rep.seed_count, rep.variable_count, rep.finite) == (5, 5, True)
    assert len({canonical_form(s) for s in rep.seeds}) == 5


def test_a2_principal_laurent():
    rep = traverse_exchange_graph(principal_seed(A2))
    assert rep.finite and rep.seed_count == 5
    for z in rep.variables:
        assert all(k >= 0 for k in z.min_exponents()[2:])


def test_rank_one_zero_matrix():
    rep = traverse_exchange_graph(Seed.initial(ExchangeMatrix.from_rows([[0]])))
    assert rep.seed_count == 2
    assert set(rep.variables) == {LaurentPoly.var(1, 1), lp({(-1,): 2}, 1)}


@pytest.mark.parametrize("b, seeds, variables", [(A2, 5, 5), (A3, 14, 9), (A4, 42, 14)])
def test_finite_type_counts(b, seeds, variables):
    for s0 in (Seed.initial(b), principal_seed(b)):
        rep = traverse_exchange_graph(s0)
        assert (rep.seed_count, rep.variable_count, rep.finite) == (seeds, variables, True)


def test_budget_gives_unknown():
    rep = traverse_exchange_graph(Seed.initial(TRIANGLE), max_seeds=40)
    assert rep.finite is None and rep.seed_count == 40
    with pytest.raises(ValueError):
        traverse_exchange_graph(Seed.initial(A2), max_seeds=0)


def test_adjacency_involution_and_edges():
    rep = traverse_exchange_graph(principal_seed(A3))
    assert len(rep.adjacency) == rep.seed_count * 3
    for (v, k), (w, j) in rep.adjacency.items():
        assert rep.adjacency[(w, j)] == (v, k)
        back = seed_mutate(seed_mutate(rep.seeds[v], k), k)
        assert back == rep.seeds[v]
        assert canonical_form(seed_mutate(rep.seeds[v], k)) == canonical_form(rep.seeds[w])


@pytest.mark.parametrize("order", [(1, 2, 3), (3, 1, 2), (2, 3, 1)])
def test_traversal_independent_of_direction_order(order):
    base = traverse_exchange_graph(principal_seed(A3))
    rep = traverse_exchange_graph(principal_seed(A3), directions=order)
    assert rep.seed_count == base.seed_count
    assert set(rep.variables) == set(base.variables)
    key = lambda r: {frozenset(r.variables[v] for v in c) for c in r.clusters}
    assert key(rep) == key(base)


def test_cluster_monomials():
    rep = traverse_exchange_graph(Seed.initial(A2))
    assert collect_cluster_monomials(rep, 0) == [LaurentPoly.one(2)]
    deg1 = collect_cluster_monomials(rep, 1)
    assert set(deg1[1:]) == set(rep.variables) and len(deg1) == 6
    # five clusters of two variables: 5 pairs + 5 squares + 1 + 5 variables
    assert len(cluster_monomial_exponents(rep, 2)) == 1 + 5 + 10


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(1, 3), max_size=8))
def test_seed_involution_and_laurent(seq):
    s = apply_sequence(principal_seed(A3), seq)
    for k in (1, 2, 3):
        assert seed_mutate(seed_mutate(s, k), k) == s
    # mutation went through exact division, so entries are Laurent; with
    # principal coefficients they are also polynomial in the frozen variables
    for z in s.cluster:
        assert all(e >= 0 for e in z.min_exponents()[3:])


def test_names_render():
    s = Seed.initial(A2, ["a", "b"])
    assert s.render(seed_mutate(s, 1).cluster[0]) == "a^-1 + a^-1*b"
    with pytest.raises(ValueError):
        Seed.initial(A2, ["a"])
