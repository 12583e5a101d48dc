import pytest

from cluster_forge.invariants import (
    KINDS,
    NoValidBasePoint,
    NotPrincipal,
    RankDeficient,
    Rerooter,
    check_conjecture,
    componentwise_ge,
    denominator_vector,
    extract_F_polynomial,
    extract_g_vector,
    f_vector,
    g_vector_mutation,
    h_vectors,
    reconstruct,
    variable_records,
)
from cluster_forge.laurent import LaurentPoly
from cluster_forge.quiver import ExchangeMatrix, matrix_mutate, principal_extend
from cluster_forge.seeds import Seed, apply_sequence, principal_seed, seed_mutate, traverse_exchange_graph
from conftest import A2, A3, A4, FIVE_BY_TWO, TRIANGLE

y1, y2, y3 = (LaurentPoly.var(j, 3) for j in (1, 2, 3))
COUNTEREXAMPLE_F = 1 + (1 + y1 + y1 * y2) * y3 + y1 * y2 * y3**2


def counterexample_variable():
    s = apply_sequence(principal_seed(TRIANGLE), [3, 2, 1])
    return s.cluster[0], principal_extend(TRIANGLE)


class TestSingleVariable:
    def test_initial_variables(self):
        b = principal_extend(A3)
        for i in (1, 2, 3):
            z = LaurentPoly.var(i, 6)
            g = extract_g_vector(z, b)
            assert g == tuple(1 if j == i else 0 for j in (1, 2, 3))
            assert extract_F_polynomial(z, b) == 1
            assert denominator_vector(z, 3) == tuple(-1 if j == i else 0 for j in (1, 2, 3))

    def test_a2_first_mutation(self):
        b = principal_extend(A2)
        z = seed_mutate(Seed.initial(b), 1).cluster[0]
        assert z.render() == "x1^-1*x2 + x1^-1*x3"
        assert extract_g_vector(z, b) == (-1, 1)
        f = extract_F_polynomial(z, b)
        assert f == 1 + LaurentPoly.var(1, 2)
        assert f_vector(f) == (1, 0)
        assert reconstruct(f, (-1, 1), b) == z

    def test_counterexample(self):
        z, b = counterexample_variable()
        f = extract_F_polynomial(z, b)
        assert f == COUNTEREXAMPLE_F
        assert f_vector(f) == (1, 1, 2)
        assert denominator_vector(z, 3) == (1, 1, 1)
        g = extract_g_vector(z, b)
        assert reconstruct(f, g, b) == z

    def test_denominator_of_coefficient_free_variable(self):
        z = seed_mutate(Seed.initial(A2), 1).cluster[0]
        assert denominator_vector(z) == (1, 0)

    def test_f_vector_small_cases(self):
        assert f_vector(LaurentPoly.one(3)) == (0, 0, 0)
        assert f_vector(1 + y1) == (1, 0, 0)

    def test_rank_deficient(self):
        with pytest.raises(RankDeficient):
            extract_g_vector(LaurentPoly.var(1, 1), ExchangeMatrix.from_rows([[0]]))

    def test_not_principal(self):
        with pytest.raises(NotPrincipal):
            extract_F_polynomial(LaurentPoly.var(1, 5), FIVE_BY_TWO)

    def test_no_base_point(self):
        b = principal_extend(A2)
        x1, x2 = LaurentPoly.var(1, 4), LaurentPoly.var(2, 4)
        with pytest.raises(NoValidBasePoint):
            extract_g_vector(x1 + x2, b)

    def test_general_solver_agrees_with_principal_shortcut(self):
        # principal coefficients with frozen rows listed in reverse order
        b = principal_extend(A3)
        swapped = ExchangeMatrix(b.rows[:3] + b.rows[3:][::-1], 3)
        assert not swapped.is_principal()
        rep = traverse_exchange_graph(Seed.initial(b))
        rep2 = traverse_exchange_graph(Seed.initial(swapped))
        for node, seed in enumerate(rep.seeds):
            twin = apply_sequence(Seed.initial(swapped), rep.paths[node])
            for z, z2 in zip(seed.mutable, twin.mutable):
                assert extract_g_vector(z, b) == extract_g_vector(z2, swapped)
        assert rep2.variable_count == rep.variable_count

    def test_general_full_rank_matrix(self):
        rep = traverse_exchange_graph(Seed.initial(FIVE_BY_TWO))
        gs = {extract_g_vector(z, FIVE_BY_TWO) for z in rep.variables}
        assert len(gs) == rep.variable_count


@pytest.mark.parametrize("b", [A2, A3, A4], ids=["A2", "A3", "A4"])
def test_reconstruction_and_inequalities(b):
    rep = traverse_exchange_graph(principal_seed(b))
    pb = rep.root.matrix
    for rec in variable_records(rep):
        assert reconstruct(rec.F, rec.g, pb) == rec.z
        assert rec.F.constant_term() == 1
        assert componentwise_ge(rec.f, rec.d)


def test_reconstruction_on_infinite_pattern():
    rep = traverse_exchange_graph(principal_seed(TRIANGLE), max_seeds=40)
    for rec in variable_records(rep):
        assert reconstruct(rec.F, rec.g, rep.root.matrix) == rec.z
        assert componentwise_ge(rec.f, rec.d)


class TestRerooting:
    def test_variables_match_at_root(self):
        rep = traverse_exchange_graph(principal_seed(A3))
        _, zs = Rerooter(rep).variables(())
        assert zs == rep.variables

    def test_rerooted_pattern_is_principal_for_mutated_matrix(self):
        rep = traverse_exchange_graph(principal_seed(A3))
        b, _ = Rerooter(rep).variables((2,))
        assert b == principal_extend(matrix_mutate(A3, 2))

    def test_h_vectors_small_cases(self):
        rep = traverse_exchange_graph(principal_seed(A2))
        rer = Rerooter(rep)
        x2 = rep.variable_index[LaurentPoly.var(2, 4)]
        assert h_vectors(rer, x2, 1) == (0, 0)
        x1p = rep.variable_index[seed_mutate(rep.root, 1).cluster[0]]
        assert h_vectors(rer, x1p, 1) == (-1, 0)

    def test_requires_principal_report(self):
        with pytest.raises(NotPrincipal):
            Rerooter(traverse_exchange_graph(Seed.initial(A2)))


def test_g_vector_mutation_rule():
    b = A2.rows
    assert g_vector_mutation((1, 0), b, 1) == (-1, 0)
    assert g_vector_mutation((0, 1), b, 1) == (0, 1)
    assert g_vector_mutation((-1, 1), b, 1) == (1, 0)


class TestCheckers:
    @pytest.mark.parametrize("kind", [k for k in KINDS if k != "7.17"])
    @pytest.mark.parametrize("b", [A2, A3], ids=["A2", "A3"])
    def test_finite_types_pass(self, kind, b):
        rep = check_conjecture(kind, b)
        assert rep.holds and rep.complete, rep.witnesses[:3]

    @pytest.mark.parametrize("b", [A2, A3, A4], ids=["A2", "A3", "A4"])
    def test_acyclic_f_equals_d(self, b):
        rep = check_conjecture("7.17", b)
        assert rep.holds and rep.complete

    def test_independence_degree_two(self):
        rep = check_conjecture("7.2", A2, degree=2)
        assert rep.details["rank"] == rep.details["monomials"] == 16

    def test_counterexample_witness(self):
        rep = check_conjecture("7.17", TRIANGLE, max_seeds=10_000)
        assert not rep.holds
        w = rep.witnesses[0]
        assert (w["f"], w["d"], w["f_ge_d"]) == ([1, 1, 2], [1, 1, 1], True)
        assert w["F"] == COUNTEREXAMPLE_F.render("y")

    def test_full_scan_runs_to_budget(self):
        early = check_conjecture("7.17", TRIANGLE, max_seeds=60)
        full = check_conjecture("7.17", TRIANGLE, max_seeds=60, stop_on_violation=False)
        assert early.seeds < full.seeds == 60
        assert not full.holds and not full.complete and full.details["f_ge_d"]

    @pytest.mark.parametrize("kind", ["5.4", "sign-coherence", "7.10"])
    def test_partial_exploration_is_flagged(self, kind):
        rep = check_conjecture(kind, TRIANGLE, max_seeds=50)
        assert rep.holds and not rep.complete and rep.seeds == 50

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            check_conjecture("1.1", A2)

    def test_summary_shape(self):
        s = check_conjecture("7.10", A2).summary()
        assert s["determinants"] == [-1, 1] and s["holds"] is True
