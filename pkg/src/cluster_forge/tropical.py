"""The tropical semifield on generators ``u_1..u_m``.

Elements are Laurent monomials ``u^a``; multiplication adds exponent vectors
and the tropical sum takes the componentwise minimum.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .laurent import LaurentPoly


@dataclass(frozen=True)
class TropicalElement:
    exponents: tuple[int, ...]

    @classmethod
    def one(cls, m: int) -> "TropicalElement":
        return cls((0,) * m)

    @classmethod
    def of(cls, exps: Sequence[int]) -> "TropicalElement":
        return cls(tuple(int(e) for e in exps))

    def _check(self, other: "TropicalElement"):
        if len(self.exponents) != len(other.exponents):
            raise ValueError("tropical elements over different generator sets")

    def __mul__(self, other: "TropicalElement") -> "TropicalElement":
        self._check(other)
        return TropicalElement(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def __truediv__(self, other: "TropicalElement") -> "TropicalElement":
        self._check(other)
        return TropicalElement(tuple(a - b for a, b in zip(self.exponents, other.exponents)))

    def __add__(self, other: "TropicalElement") -> "TropicalElement":
        self._check(other)
        return TropicalElement(tuple(min(a, b) for a, b in zip(self.exponents, other.exponents)))

    def __pow__(self, k: int) -> "TropicalElement":
        return TropicalElement(tuple(k * a for a in self.exponents))

    def render(self, prefix: str = "u") -> str:
        parts = [f"{prefix}{j + 1}^{a}" for j, a in enumerate(self.exponents) if a]
        return "*".join(parts) if parts else "1"


def tropical_eval(p: LaurentPoly, images: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Evaluate a subtraction-free polynomial in ``Trop(u)`` at ``y_j -> u^{images[j]}``.

    Coefficients are irrelevant in the tropical semifield; the result is the
    exponent vector ``min_e sum_j e_j * images[j]`` over the monomials ``e``
    of ``p``.
    """
    if p.is_zero():
        raise ValueError("the zero polynomial has no tropical value")
    if len(images) != p.nvars:
        raise ValueError(f"expected {p.nvars} images, got {len(images)}")
    exps = np.array([e for e, _ in p.terms], dtype=np.int64).reshape(len(p), p.nvars)
    if (exps < 0).any():
        raise ValueError("tropical evaluation needs nonnegative exponents")
    img = np.array(images, dtype=np.int64)
    if img.ndim != 2:
        raise ValueError("images must be a list of equal-length exponent vectors")
    return tuple(int(v) for v in (exps @ img).min(axis=0))
