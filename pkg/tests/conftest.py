import pytest

from cluster_forge.quiver import ExchangeMatrix, IceQuiver, quiver_to_matrix
from cluster_forge.reps import QuiverRep

A2 = ExchangeMatrix.from_rows([[0, 1], [-1, 0]])
A3 = quiver_to_matrix(IceQuiver(3, ((1, 2), (2, 3))))
# 3 -> 1 -> 2 <- 4
A4 = quiver_to_matrix(IceQuiver(4, ((3, 1), (1, 2), (4, 2))))
# 3 -> 1, 1 => 2, 2 -> 3
TRIANGLE_QUIVER = IceQuiver(3, ((3, 1), (1, 2), (1, 2), (2, 3)))
TRIANGLE = quiver_to_matrix(TRIANGLE_QUIVER)
FIVE_BY_TWO = ExchangeMatrix.from_rows([[0, -1], [1, 0], [-1, 0], [0, -1], [0, 1]], 2)


def thin_rep(q: IceQuiver, dim) -> QuiverRep:
    """Representation with 0/1 dimensions and identity maps wherever both ends are nonzero."""
    maps = []
    for s, t in q.arrows:
        ds, dt = dim[s - 1], dim[t - 1]
        maps.append((s, t, [[1] * ds for _ in range(dt)] if ds and dt else [[0] * ds for _ in range(dt)]))
    return QuiverRep(q, tuple(dim), tuple(maps))


@pytest.fixture
def a2_indecomposables():
    """The three indecomposables of 2 -> 1, the opposite of the A2 quiver 1 -> 2."""
    op = IceQuiver(2, ((2, 1),))
    return [thin_rep(op, d) for d in [(1, 0), (0, 1), (1, 1)]]


@pytest.fixture
def a3_indecomposables():
    """The six interval modules of 3 -> 2 -> 1, the opposite of 1 -> 2 -> 3."""
    op = IceQuiver(3, ((2, 1), (3, 2)))
    dims = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (0, 1, 1), (1, 1, 1)]
    return [thin_rep(op, d) for d in dims]


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(test_acceptance.RESULTS[n][1])
