"""Time the subspace-compatibility kernel with numba and with numpy.

    python3 benchmarks/bench_kernels.py [--repeat N]

Also times a full quiver-Grassmannian Euler characteristic through the
backend chosen by ``CLUSTER_FORGE_NUMBA`` (unset or 1: numba, 0: numpy).
"""

import argparse
import time

import numpy as np

from cluster_forge import _kernels
from cluster_forge.quiver import IceQuiver
from cluster_forge.reps import QuiverRep, grassmannian_euler_char


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def kernel_case(d, e, p, seed=0):
    rng = np.random.default_rng(seed)
    src, _ = _kernels.rref_subspaces(d, e, p)
    tgt, piv = _kernels.rref_subspaces(d, e, p)
    mat = rng.integers(0, p, size=(d, d), dtype=np.int64)
    return src, mat, tgt, piv, p


def kronecker_rep():
    # Kronecker quiver, dimension (2, 2), maps identity and a Jordan block
    q = IceQuiver(2, ((1, 2), (1, 2)))
    return QuiverRep(q, (2, 2), ((1, 2, [[1, 0], [0, 1]]), (1, 2, [[1, 1], [0, 1]])))


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    backends = [("numpy", False)]
    if _kernels.NUMBA_AVAILABLE:
        backends.insert(0, ("numba", True))
        _kernels.compat(*kernel_case(2, 1, 2), use_numba=True)  # compile once

    print(f"{'case':<22}" + "".join(f"{name:>12}" for name, _ in backends))
    for d, e, p in [(3, 1, 5), (3, 2, 7), (4, 2, 5), (4, 2, 7)]:
        case = kernel_case(d, e, p)
        row = [best_of(lambda: _kernels.compat(*case, use_numba=flag), args.repeat) for _, flag in backends]
        n = case[0].shape[0]
        print(f"{f'Gr({e},{d}) p={p} [{n}x{n}]':<22}" + "".join(f"{t * 1e3:>10.2f}ms" for t in row))

    rep = kronecker_rep()
    backend = "numba" if _kernels.USE_NUMBA else "numpy"
    elapsed = best_of(lambda: grassmannian_euler_char(rep, (1, 1)), args.repeat)
    chi = grassmannian_euler_char(rep, (1, 1))
    print(f"Kronecker Gr_(1,1) chi={chi} via {backend}: {elapsed * 1e3:.1f}ms")


if __name__ == "__main__":
    main()
