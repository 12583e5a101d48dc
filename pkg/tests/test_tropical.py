import pytest
from hypothesis import given
from hypothesis import strategies as st

from cluster_forge.laurent import LaurentPoly
from cluster_forge.tropical import TropicalElement, tropical_eval

M = 3
elements = st.tuples(*[st.integers(-20, 20)] * M).map(TropicalElement.of)


@given(elements, elements, elements)
def test_sum_associative(a, b, c):
    assert (a + b) + c == a + (b + c)


@given(elements, elements)
def test_sum_commutative(a, b):
    assert a + b == b + a


@given(elements)
def test_sum_idempotent(a):
    assert a + a == a


@given(elements, elements, elements)
def test_distributive(a, b, c):
    assert a * (b + c) == a * b + a * c


@given(elements)
def test_unit_and_inverse(a):
    one = TropicalElement.one(M)
    assert a * one == a
    assert a / a == one
    assert a**2 == a * a


def test_componentwise_min():
    a = TropicalElement.of((2, 1))
    b = TropicalElement.of((1, 3))
    assert (a + b).exponents == (1, 1)
    assert (a + b).render() == "u1^1*u2^1"
    assert TropicalElement.one(2).render() == "1"


def test_mismatched_generators():
    with pytest.raises(ValueError):
        TropicalElement.of((1,)) + TropicalElement.of((1, 2))


def _f_polynomial():
    y1, y2, y3 = (LaurentPoly.var(j, 3) for j in (1, 2, 3))
    return 1 + (1 + y1 + y1 * y2) * y3 + y1 * y2 * y3**2


def test_f_vector_of_counterexample():
    images = [[-1, 0, 0], [0, -1, 0], [0, 0, -1]]
    assert tropical_eval(_f_polynomial(), images) == (-1, -1, -2)


def test_constant_is_unit():
    assert tropical_eval(LaurentPoly.one(2), [[5, -3], [1, 1]]) == (0, 0)


polys = st.dictionaries(st.tuples(*[st.integers(0, 3)] * 3), st.integers(1, 4), min_size=1, max_size=5).map(
    lambda d: LaurentPoly(d, 3)
)
image_vectors = st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=3, max_size=3)


@given(polys, image_vectors)
def test_matches_semiring_evaluation(p, images):
    # evaluate term by term with the semiring operations
    total = None
    for e, _ in p.terms:
        term = TropicalElement.one(2)
        for k, img in zip(e, images):
            term = term * TropicalElement.of(img) ** k
        total = term if total is None else total + term
    assert tropical_eval(p, images) == total.exponents


def test_rejects_negative_exponents_and_zero():
    with pytest.raises(ValueError):
        tropical_eval(LaurentPoly.var(1, 1) ** -1, [[1]])
    with pytest.raises(ValueError):
        tropical_eval(LaurentPoly.zero(1), [[1]])
