"""Hot loops of finite-field point counting.

The subspace-containment test behind quiver-Grassmannian point counts is the
only numeric inner loop of the package.  It ships as a numba kernel and as a
pure-numpy implementation; ``CLUSTER_FORGE_NUMBA=0`` forces the numpy path
(also used automatically when numba is not importable).
"""

from __future__ import annotations

import itertools
import os
from functools import lru_cache

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is an optional accelerator
    numba = None

NUMBA_AVAILABLE = numba is not None
USE_NUMBA = NUMBA_AVAILABLE and os.environ.get("CLUSTER_FORGE_NUMBA", "1") != "0"


@lru_cache(maxsize=None)
def rref_subspaces(d: int, e: int, p: int) -> tuple[np.ndarray, np.ndarray]:
    """All ``e``-dimensional subspaces of ``F_p^d`` as reduced row-echelon bases.

    Returns ``(bases, pivots)`` with shapes ``(N, e, d)`` and ``(N, e)``.
    """
    if not 0 <= e <= d:
        raise ValueError(f"no {e}-dimensional subspaces of a {d}-dimensional space")
    bases = []
    pivots = []
    for piv in itertools.combinations(range(d), e):
        free = [(k, c) for k in range(e) for c in range(piv[k] + 1, d) if c not in piv]
        for values in itertools.product(range(p), repeat=len(free)):
            m = np.zeros((e, d), dtype=np.int64)
            for k, c in enumerate(piv):
                m[k, c] = 1
            for (k, c), v in zip(free, values):
                m[k, c] = v
            bases.append(m)
            pivots.append(piv)
    out_b = np.array(bases, dtype=np.int64).reshape(len(bases), e, d)
    out_p = np.array(pivots, dtype=np.int64).reshape(len(pivots), e)
    out_b.setflags(write=False)
    out_p.setflags(write=False)
    return out_b, out_p


def compat_numpy(src: np.ndarray, mat: np.ndarray, tgt: np.ndarray, tgt_piv: np.ndarray, p: int) -> np.ndarray:
    """``out[i, j]`` is True iff ``mat`` maps subspace ``src[i]`` into ``tgt[j]`` over ``F_p``."""
    ns, nt = src.shape[0], tgt.shape[0]
    out = np.zeros((ns, nt), dtype=np.bool_)
    # images of the source basis vectors, shape (ns, es, dt)
    img = np.einsum("ied,td->iet", src, mat) % p
    for j in range(nt):
        coeff = img[:, :, tgt_piv[j]]
        resid = (img - coeff @ tgt[j]) % p
        out[:, j] = ~resid.reshape(ns, resid.shape[1] * resid.shape[2]).any(axis=1)
    return out


if NUMBA_AVAILABLE:

    @numba.njit(cache=False, nogil=True)
    def compat_numba(src, mat, tgt, tgt_piv, p):  # pragma: no cover - compiled
        ns, es, ds = src.shape
        nt, et, dt = tgt.shape
        out = np.zeros((ns, nt), dtype=np.bool_)
        img = np.zeros((es, dt), dtype=np.int64)
        w = np.zeros(dt, dtype=np.int64)
        for i in range(ns):
            for a in range(es):
                for t in range(dt):
                    acc = 0
                    for s in range(ds):
                        acc += mat[t, s] * src[i, a, s]
                    img[a, t] = acc % p
            for j in range(nt):
                ok = True
                for a in range(es):
                    for t in range(dt):
                        w[t] = img[a, t]
                    for k in range(et):
                        c = w[tgt_piv[j, k]]
                        if c:
                            for t in range(dt):
                                w[t] = (w[t] - c * tgt[j, k, t]) % p
                    for t in range(dt):
                        if w[t]:
                            ok = False
                            break
                    if not ok:
                        break
                out[i, j] = ok
        return out

else:  # pragma: no cover
    compat_numba = None


def compat(src, mat, tgt, tgt_piv, p, use_numba: bool | None = None) -> np.ndarray:
    if use_numba is None:
        use_numba = USE_NUMBA
    if use_numba:
        if compat_numba is None:
            raise RuntimeError("numba is not available")
        return compat_numba(src, np.ascontiguousarray(mat, dtype=np.int64), tgt, tgt_piv, p)
    return compat_numpy(src, mat, tgt, tgt_piv, p)
