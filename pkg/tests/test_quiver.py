import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cluster_forge.quiver import (
    ExchangeMatrix,
    IceQuiver,
    QuiverError,
    is_acyclic,
    matrix_mutate,
    matrix_to_quiver,
    principal_extend,
    quiver_to_matrix,
)
from conftest import A2, FIVE_BY_TWO, TRIANGLE, TRIANGLE_QUIVER


@st.composite
def exchange_matrices(draw, max_r=4, max_frozen=3):
    r = draw(st.integers(1, max_r))
    frozen = draw(st.integers(0, max_frozen))
    b = [[0] * r for _ in range(r)]
    for i in range(r):
        for j in range(i + 1, r):
            v = draw(st.integers(-3, 3))
            b[i][j], b[j][i] = v, -v
    rows = b + [[draw(st.integers(-3, 3)) for _ in range(r)] for _ in range(frozen)]
    return ExchangeMatrix.from_rows(rows, r)


def test_a2_mutation():
    assert matrix_mutate(A2, 1).rows == ((0, -1), (1, 0))


def test_five_by_two_involution():
    for s in (1, 2):
        assert matrix_mutate(matrix_mutate(FIVE_BY_TWO, s), s) == FIVE_BY_TWO


def test_zero_matrix_fixed():
    z = ExchangeMatrix.from_rows([[0, 0], [0, 0], [0, 0]], 2)
    assert matrix_mutate(z, 1) == z


def test_direction_range():
    with pytest.raises(QuiverError):
        matrix_mutate(A2, 3)


def test_antisymmetry_enforced():
    with pytest.raises(QuiverError):
        ExchangeMatrix.from_rows([[0, 1], [1, 0]])


@given(exchange_matrices(), st.data())
def test_mutation_involution(b, data):
    s = data.draw(st.integers(1, b.r))
    assert matrix_mutate(matrix_mutate(b, s), s) == b


@given(exchange_matrices(), st.lists(st.integers(1, 4), max_size=6))
def test_antisymmetry_preserved(b, seq):
    for s in seq:
        if s <= b.r:
            b = matrix_mutate(b, s)  # the constructor re-validates antisymmetry
    assert all(b.rows[i][j] == -b.rows[j][i] for i in range(b.r) for j in range(b.r))


@given(exchange_matrices(), st.data())
def test_mutation_commutes_with_permutation(b, data):
    order = data.draw(st.permutations(range(b.r)))
    s = data.draw(st.integers(1, b.r))
    permuted = b.permuted(order)
    # new index k is old index order[k]
    new_s = order.index(s - 1) + 1
    assert matrix_mutate(permuted, new_s) == matrix_mutate(b, s).permuted(order)


def test_quiver_to_matrix_examples():
    assert quiver_to_matrix(IceQuiver(2, ((1, 2),))) == A2
    assert TRIANGLE.rows == ((0, 2, -1), (-2, 0, 1), (1, -1, 0))
    assert quiver_to_matrix(IceQuiver(3, ())).rows == ((0,) * 3,) * 3


def test_matrix_to_quiver_examples():
    assert matrix_to_quiver(A2).arrows == ((1, 2),)
    assert matrix_to_quiver(TRIANGLE) == TRIANGLE_QUIVER
    assert TRIANGLE_QUIVER.multiplicity(1, 2) == 2


@given(exchange_matrices())
def test_matrix_round_trip(b):
    assert quiver_to_matrix(matrix_to_quiver(b)) == b


@given(exchange_matrices())
def test_quiver_round_trip(b):
    q = matrix_to_quiver(b)
    assert matrix_to_quiver(quiver_to_matrix(q)) == q


@pytest.mark.parametrize(
    "arrows, frozen",
    [(((1, 1),), ()), (((1, 2), (2, 1)), ()), (((2, 3),), (2, 3))],
    ids=["loop", "two-cycle", "frozen-frozen"],
)
def test_invalid_quivers(arrows, frozen):
    with pytest.raises(QuiverError):
        IceQuiver(3, arrows, frozenset(frozen))


def test_principal_extend():
    assert principal_extend(A2).rows == ((0, 1), (-1, 0), (1, 0), (0, 1))
    assert principal_extend([[0]]).rows == ((0,), (1,))
    assert principal_extend(A2).is_principal()
    assert not FIVE_BY_TWO.is_principal()


def test_acyclicity():
    assert is_acyclic(IceQuiver(2, ((1, 2),)))
    assert not is_acyclic(TRIANGLE_QUIVER)
    assert is_acyclic(IceQuiver(1, ()))
    # frozen vertices do not count towards cycles
    assert is_acyclic(IceQuiver(3, ((1, 2), (2, 3), (3, 1)), frozenset({3})))


def test_opposite_is_involution():
    for q in (TRIANGLE_QUIVER, IceQuiver(4, ((3, 1), (1, 2), (4, 2)))):
        assert q.opposite().opposite() == q
        assert quiver_to_matrix(q.opposite()).rows == tuple(tuple(-x for x in row) for row in quiver_to_matrix(q).rows)


def test_all_a3_orientations_acyclic():
    for flips in itertools.product([False, True], repeat=2):
        arrows = [(2, 1) if flips[0] else (1, 2), (3, 2) if flips[1] else (2, 3)]
        assert is_acyclic(IceQuiver(3, tuple(arrows)))
