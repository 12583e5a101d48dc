"""Sparse multivariate Laurent polynomials with integer coefficients.

A polynomial is a mapping from exponent tuples (negative entries allowed) to
nonzero Python integers.  Terms are always emitted in one global order:
ascending total degree, ties broken lexicographically with ``x1`` dominant
(``x1^-1*x2`` comes before ``x1^-1*x3``).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from operator import add
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

Exponents = tuple[int, ...]

# products with fewer term pairs stay on the plain dict path
_PACKED_MIN_PAIRS = 256
_INT64_SAFE = 1 << 62


def term_order_key(exps: Exponents):
    return (sum(exps), tuple(-e for e in exps))


class NonExactDivision(ArithmeticError):
    """Raised when a division that must be exact leaves a remainder.

    In the exchange relation this means either a bug or a genuine failure
    of the Laurent phenomenon, so the operands are kept for inspection.
    """

    def __init__(self, numerator: "LaurentPoly", denominator: "LaurentPoly", detail: str = ""):
        self.numerator = numerator
        self.denominator = denominator
        msg = f"({numerator}) is not divisible by ({denominator})"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class SubstitutionError(ArithmeticError):
    pass


class _Radix:
    """Mixed-radix integer codes for exponent vectors in a box ``lo <= e < lo + widths``.

    ``x1`` is the most significant digit, so comparing codes compares
    exponent vectors lexicographically.
    """

    __slots__ = ("lo", "widths", "strides", "size")

    def __init__(self, lo: Sequence[int], widths: Sequence[int]):
        self.lo = tuple(lo)
        self.widths = tuple(widths)
        strides = [1] * len(widths)
        for i in range(len(widths) - 2, -1, -1):
            strides[i] = strides[i + 1] * widths[i + 1]
        self.strides = tuple(strides)
        self.size = strides[0] * widths[0] if widths else 1

    def encode(self, e: Exponents, lo: Sequence[int] | None = None) -> int:
        lo = self.lo if lo is None else lo
        return sum((x - l) * s for x, l, s in zip(e, lo, self.strides))

    def encode_all(self, exps: Iterable[Exponents], lo: Sequence[int]) -> list[int]:
        exps = list(exps)
        if self.size < _INT64_SAFE:
            arr = np.array(exps, dtype=np.int64).reshape(len(exps), len(self.lo)) - np.array(lo, dtype=np.int64)
            return (arr @ np.array(self.strides, dtype=np.int64)).tolist()
        return [self.encode(e, lo) for e in exps]

    def digits(self, code: int) -> list[int]:
        out = []
        for s in self.strides:
            d, code = divmod(code, s)
            out.append(d)
        return out

    def decode(self, code: int) -> Exponents:
        return tuple(d + l for d, l in zip(self.digits(code), self.lo))


def _bounds(terms: Mapping[Exponents, int]) -> tuple[Exponents, Exponents]:
    cols = list(zip(*terms))
    return tuple(map(min, cols)), tuple(map(max, cols))


def _packed_product(a: Mapping[Exponents, int], b: Mapping[Exponents, int]) -> dict[Exponents, int]:
    lo_a, hi_a = _bounds(a)
    lo_b, hi_b = _bounds(b)
    radix = _Radix(
        tuple(map(add, lo_a, lo_b)),
        tuple(ha - la + hb - lb + 1 for la, ha, lb, hb in zip(lo_a, hi_a, lo_b, hi_b)),
    )
    ka = radix.encode_all(a, lo_a)
    kb = radix.encode_all(b, lo_b)
    ca = list(a.values())
    cb = list(b.values())
    bound = max(map(abs, ca)) * max(map(abs, cb)) * min(len(ca), len(cb))
    if radix.size < _INT64_SAFE and bound < _INT64_SAFE:
        codes = (np.array(ka, dtype=np.int64)[:, None] + np.array(kb, dtype=np.int64)[None, :]).ravel()
        coeffs = (np.array(ca, dtype=np.int64)[:, None] * np.array(cb, dtype=np.int64)[None, :]).ravel()
        order = np.argsort(codes, kind="stable")
        codes = codes[order]
        starts = np.flatnonzero(np.r_[True, codes[1:] != codes[:-1]])
        sums = np.add.reduceat(coeffs[order], starts)
        keep = sums != 0
        keys = codes[starts][keep]
        digits = (keys[:, None] // np.array(radix.strides, dtype=np.int64)) % np.array(radix.widths, dtype=np.int64)
        digits += np.array(radix.lo, dtype=np.int64)
        return {tuple(row): int(c) for row, c in zip(digits.tolist(), sums[keep].tolist())}
    acc: dict[int, int] = {}
    for k2, c2 in zip(kb, cb):
        for k1, c1 in zip(ka, ca):
            k = k1 + k2
            acc[k] = acc.get(k, 0) + c1 * c2
    return {radix.decode(k): c for k, c in acc.items() if c}


class LaurentPoly:
    """Immutable sparse Laurent polynomial in ``nvars`` variables."""

    __slots__ = ("_terms", "nvars", "_hash", "_sorted")

    def __init__(self, terms: Mapping[Exponents, int] | Iterable[tuple[Exponents, int]] = (), nvars: int = 1):
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exponents, int] = {}
        for exps, c in items:
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise ValueError(f"exponent vector {exps} has length {len(exps)}, expected {nvars}")
            acc[exps] = acc.get(exps, 0) + int(c)
        self._terms = {e: c for e, c in acc.items() if c != 0}
        self.nvars = nvars
        self._hash = None
        self._sorted = None

    @classmethod
    def _raw(cls, terms: dict[Exponents, int], nvars: int) -> "LaurentPoly":
        # trusted constructor: keys already validated, zeros already dropped
        obj = cls.__new__(cls)
        obj._terms = terms
        obj.nvars = nvars
        obj._hash = None
        obj._sorted = None
        return obj

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls._raw({}, nvars)

    @classmethod
    def constant(cls, c: int, nvars: int) -> "LaurentPoly":
        return cls._raw({(0,) * nvars: int(c)} if c else {}, nvars)

    @classmethod
    def one(cls, nvars: int) -> "LaurentPoly":
        return cls.constant(1, nvars)

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff: int = 1) -> "LaurentPoly":
        exps = tuple(int(e) for e in exps)
        return cls._raw({exps: int(coeff)} if coeff else {}, len(exps))

    @classmethod
    def var(cls, i: int, nvars: int) -> "LaurentPoly":
        """The variable ``x_i`` (1-based)."""
        if not 1 <= i <= nvars:
            raise ValueError(f"variable index {i} out of range 1..{nvars}")
        exps = [0] * nvars
        exps[i - 1] = 1
        return cls.monomial(exps)

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> tuple[tuple[Exponents, int], ...]:
        """Terms in canonical order."""
        if self._sorted is None:
            self._sorted = tuple((e, self._terms[e]) for e in sorted(self._terms, key=term_order_key))
        return self._sorted

    def as_dict(self) -> dict[Exponents, int]:
        return dict(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self):
        return iter(self.terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_unit(self) -> bool:
        """True for ``+-x^a``, the invertible elements of the Laurent ring."""
        return len(self._terms) == 1 and abs(next(iter(self._terms.values()))) == 1

    def coefficient(self, exps: Sequence[int]) -> int:
        return self._terms.get(tuple(exps), 0)

    def constant_term(self) -> int:
        return self._terms.get((0,) * self.nvars, 0)

    def min_exponents(self) -> Exponents:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return tuple(map(min, zip(*self._terms)))

    def max_exponents(self) -> Exponents:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return tuple(map(max, zip(*self._terms)))

    def sort_key(self):
        return (self.nvars, self.terms)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise ValueError(f"variable-count mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly._raw(out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()}, self.nvars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._terms, other._terms
        if not a or not b:
            return LaurentPoly.zero(self.nvars)
        if len(a) * len(b) >= _PACKED_MIN_PAIRS and self.nvars:
            return LaurentPoly._raw(_packed_product(a, b), self.nvars)
        if len(a) < len(b):
            a, b = b, a
        out: dict[Exponents, int] = {}
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple(map(add, ea, eb))
                out[e] = out.get(e, 0) + ca * cb
        return LaurentPoly._raw({e: c for e, c in out.items() if c}, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_unit():
                raise ValueError("negative powers are only defined for units +-x^a")
            ((e, c),) = self._terms.items()
            return LaurentPoly._raw({tuple(k * x for x in e): c ** (-k)}, self.nvars)
        result = LaurentPoly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def shift(self, exps: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial ``x^exps``."""
        exps = tuple(exps)
        return LaurentPoly._raw({tuple(map(add, e, exps)): c for e, c in self._terms.items()}, self.nvars)

    def __eq__(self, other):
        if isinstance(other, int):
            return self._terms == ({(0,) * self.nvars: other} if other else {})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    # -- rendering ----------------------------------------------------------

    def render(self, prefix: str = "x", names: Sequence[str] | None = None) -> str:
        if not self._terms:
            return "0"
        if names is None:
            names = [f"{prefix}{i + 1}" for i in range(self.nvars)]
        out = []
        for idx, (e, c) in enumerate(self.terms):
            factors = []
            for name, k in zip(names, e):
                if k == 1:
                    factors.append(name)
                elif k:
                    factors.append(f"{name}^{k}")
            mono = "*".join(factors)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if idx == 0:
                out.append(body if c > 0 else f"-{body}")
            else:
                out.append(f" + {body}" if c > 0 else f" - {body}")
        return "".join(out)

    def render_fraction(self, prefix: str = "x", names: Sequence[str] | None = None) -> str:
        """Render as ``(polynomial)/(monomial)``, e.g. ``(x3 + x1^2)/(x1*x2)``."""
        if not self._terms:
            return "0"
        den = tuple(max(0, -k) for k in self.min_exponents())
        if not any(den):
            return self.render(prefix, names)
        num = self.shift(den).render(prefix, names)
        if len(self._terms) > 1:
            num = f"({num})"
        return f"{num}/({LaurentPoly.monomial(den).render(prefix, names)})"

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"LaurentPoly({self.render()!r}, nvars={self.nvars})"


@dataclass(frozen=True)
class RationalFn:
    """Quotient ``num / den`` of Laurent polynomials (``den`` nonzero)."""

    num: LaurentPoly
    den: LaurentPoly

    def __post_init__(self):
        if self.den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if self.num.nvars != self.den.nvars:
            raise ValueError("variable-count mismatch")

    @property
    def nvars(self) -> int:
        return self.num.nvars

    @classmethod
    def of(cls, p: LaurentPoly) -> "RationalFn":
        return cls(p, LaurentPoly.one(p.nvars))

    def is_laurent(self) -> bool:
        return self.den.is_unit()

    def as_laurent(self) -> LaurentPoly:
        if not self.den.is_monomial():
            raise ValueError(f"denominator {self.den} is not a monomial")
        return lp_exact_divide(self.num, self.den)

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"


def lp_arith(a: LaurentPoly, b: LaurentPoly, kind: str) -> LaurentPoly:
    if a.nvars != b.nvars:
        raise ValueError(f"variable-count mismatch: {a.nvars} vs {b.nvars}")
    if kind == "add":
        return a + b
    if kind == "mul":
        return a * b
    raise ValueError(f"unknown kind {kind!r}")


def lp_exact_divide(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly:
    """Return ``q`` with ``q * den == num``; raise :class:`NonExactDivision` otherwise."""
    if num.nvars != den.nvars:
        raise ValueError(f"variable-count mismatch: {num.nvars} vs {den.nvars}")
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    n = num.nvars
    if num.is_zero():
        return LaurentPoly.zero(n)
    if den.is_monomial():
        ((de, dc),) = den._terms.items()
        out = {}
        for e, c in num._terms.items():
            q, rem = divmod(c, dc)
            if rem:
                raise NonExactDivision(num, den, "coefficient not divisible")
            out[tuple(x - y for x, y in zip(e, de))] = q
        return LaurentPoly._raw(out, n)

    # clear denominators: both operands become ordinary polynomials in the
    # box [0, nmax - nmin], encoded as mixed-radix integers in lex order
    nmin, nmax = _bounds(num._terms)
    dmin, dmax = _bounds(den._terms)
    nrange = [b - a for a, b in zip(nmin, nmax)]
    drange = [b - a for a, b in zip(dmin, dmax)]
    # Newton polytopes add under multiplication, so the quotient lives in a
    # box of size nrange - drange
    qrange = [a - b for a, b in zip(nrange, drange)]
    if min(qrange) < 0:
        raise NonExactDivision(num, den, "divisor has a wider exponent range")
    radix = _Radix((0,) * n, [r + 1 for r in nrange])
    rem = dict(zip(radix.encode_all(num._terms, nmin), num._terms.values()))
    dterms = list(zip(radix.encode_all(den._terms, dmin), den._terms.values()))
    lead, lead_c = max(dterms)
    lead_digits = radix.digits(lead)
    heap = [-k for k in rem]
    heapq.heapify(heap)
    quot: dict[int, int] = {}
    while rem:
        k = -heapq.heappop(heap)
        c = rem.get(k)
        if c is None:
            continue
        qd = [a - b for a, b in zip(radix.digits(k), lead_digits)]
        if any(not 0 <= x <= m for x, m in zip(qd, qrange)):
            raise NonExactDivision(num, den, "leading monomial not divisible")
        qc, r = divmod(c, lead_c)
        if r:
            raise NonExactDivision(num, den, "coefficient not divisible")
        qk = k - lead  # digitwise difference, no borrows since qd >= 0
        quot[qk] = qc
        for dk, dc in dterms:
            t = qk + dk  # digits stay within nrange, so no carries
            v = rem.get(t, 0) - qc * dc
            if v:
                if t not in rem:
                    heapq.heappush(heap, -t)
                rem[t] = v
            else:
                rem.pop(t, None)
    offset = [a - b for a, b in zip(nmin, dmin)]
    return LaurentPoly._raw(
        {tuple(d + o for d, o in zip(radix.digits(k), offset)): c for k, c in quot.items()}, n
    )


def _power(p: LaurentPoly, k: int, cache: dict) -> LaurentPoly:
    key = (id(p), k)
    if key not in cache:
        cache[key] = p ** k
    return cache[key]


Image = Union[LaurentPoly, RationalFn]


def lp_substitute(p: LaurentPoly, images: Sequence[Image]) -> RationalFn:
    """Substitute ``x_i -> images[i]`` and return the reduced composite.

    Images may live in a different ring than ``p`` but must share one
    variable count.  Negative exponents are cleared by multiplying through;
    the cleared factors are then removed by exact division.  A non-unit
    image raised to a negative power whose factor does not cancel is an
    error.
    """
    if len(images) != p.nvars:
        raise ValueError(f"expected {p.nvars} images, got {len(images)}")
    if not images:
        raise ValueError("cannot substitute into a polynomial in zero variables")
    fracs = [im if isinstance(im, RationalFn) else RationalFn.of(im) for im in images]
    m = fracs[0].nvars
    if any(f.nvars != m for f in fracs):
        raise ValueError("images must share one variable count")
    if p.is_zero():
        return RationalFn.of(LaurentPoly.zero(m))
    lo, hi = p.min_exponents(), p.max_exponents()
    num_shift = []  # extra power of the numerator image
    den_shift = []  # extra power of the denominator image
    for f, a, b in zip(fracs, lo, hi):
        num_shift.append(0 if f.num.is_unit() else max(0, -a))
        den_shift.append(0 if f.den.is_unit() else max(0, b))
    cache: dict = {}
    total = LaurentPoly.zero(m)
    for e, c in p._terms.items():
        term = LaurentPoly.constant(c, m)
        for f, k, sn, sd in zip(fracs, e, num_shift, den_shift):
            if k + sn:
                term = term * _power(f.num, k + sn, cache)
            if sd - k:
                term = term * _power(f.den, sd - k, cache)
        total = total + term
    cleared = LaurentPoly.one(m)
    for f, sn, sd in zip(fracs, num_shift, den_shift):
        if sn:
            cleared = cleared * _power(f.num, sn, cache)
        if sd:
            cleared = cleared * _power(f.den, sd, cache)
    try:
        return RationalFn.of(lp_exact_divide(total, cleared))
    except NonExactDivision:
        if any(num_shift):
            raise SubstitutionError(
                f"non-unit image substituted into a negative exponent of {p} does not cancel"
            ) from None
        return RationalFn(total, cleared)
