"""Finite MV-algebras as products of Łukasiewicz chains.

Every element of ``S_{n_1} × … × S_{n_k}`` is stored as its vector of integer
numerators; coordinate ``j`` stands for ``numerator_j / n_j``.  All
arithmetic is on integers, so equality is exact.

A second, extensional form (:class:`TableMvAlgebra`) keeps the full ``⊕``
table and the ``*`` vector.  It exists so that axioms can be checked by brute
force without trusting the product formulae.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Iterable, Iterator

import numpy as np

from .errors import CapExceededError, InvalidOperatorError, SignatureMismatch
from .reports import LawReport

# Largest carrier swept by the O(m^3) axiom checks.
TABLE_CAP = 256


@dataclass(frozen=True)
class ChainSignature:
    """Orders ``[n_1, …, n_k]`` of the chains in a product ``S_{n_1} × … × S_{n_k}``."""

    orders: tuple[int, ...]

    def __post_init__(self):
        orders = tuple(int(n) for n in self.orders)
        if not orders:
            raise ValueError("a signature needs at least one chain")
        if any(n < 1 for n in orders):
            raise ValueError(f"chain orders must be positive, got {list(orders)}")
        object.__setattr__(self, "orders", orders)

    def __len__(self) -> int:
        return len(self.orders)

    def __iter__(self) -> Iterator[int]:
        return iter(self.orders)

    def __getitem__(self, j: int) -> int:
        return self.orders[j]

    @property
    def is_boolean(self) -> bool:
        return all(n == 1 for n in self.orders)

    @property
    def size(self) -> int:
        return math.prod(n + 1 for n in self.orders)

    def __str__(self) -> str:
        return "×".join(f"S{n}" for n in self.orders)


def as_signature(x) -> ChainSignature:
    if isinstance(x, ChainSignature):
        return x
    if isinstance(x, ProductMvAlgebra):
        return x.signature
    return ChainSignature(tuple(x))


@dataclass(frozen=True)
class MvElement:
    signature: ChainSignature
    numerators: tuple[int, ...]

    def __post_init__(self):
        nums = tuple(int(a) for a in self.numerators)
        if len(nums) != len(self.signature):
            raise SignatureMismatch(
                f"{len(nums)} coordinates given for signature {self.signature}")
        for a, n in zip(nums, self.signature):
            if not 0 <= a <= n:
                raise ValueError(f"numerator {a} outside 0..{n}")
        object.__setattr__(self, "numerators", nums)

    @property
    def values(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(a, n) for a, n in zip(self.numerators, self.signature))

    @property
    def is_boolean(self) -> bool:
        return all(a in (0, n) for a, n in zip(self.numerators, self.signature))

    def __str__(self) -> str:
        return "(" + ", ".join(str(v) for v in self.values) + ")"


def _same(a: MvElement, b: MvElement) -> ChainSignature:
    if a.signature != b.signature:
        raise SignatureMismatch(f"{a.signature} vs {b.signature}")
    return a.signature


def oplus(a: MvElement, b: MvElement) -> MvElement:
    sig = _same(a, b)
    return MvElement(sig, tuple(min(x + y, n) for x, y, n in zip(a.numerators, b.numerators, sig)))


def star(a: MvElement) -> MvElement:
    return MvElement(a.signature, tuple(n - x for x, n in zip(a.numerators, a.signature)))


def odot(a: MvElement, b: MvElement) -> MvElement:
    return star(oplus(star(a), star(b)))


def join(a: MvElement, b: MvElement) -> MvElement:
    return MvElement(_same(a, b), tuple(map(max, a.numerators, b.numerators)))


def meet(a: MvElement, b: MvElement) -> MvElement:
    return MvElement(_same(a, b), tuple(map(min, a.numerators, b.numerators)))


def leq(a: MvElement, b: MvElement) -> bool:
    _same(a, b)
    return all(x <= y for x, y in zip(a.numerators, b.numerators))


def partial_add(a: MvElement, b: MvElement) -> MvElement | None:
    """``a + b``, defined only when ``a ≤ b*``; ``None`` otherwise."""
    if not leq(a, star(b)):
        return None
    return oplus(a, b)


def nmul(a: MvElement, n: int) -> MvElement | None:
    """``n·a`` built by repeated partial addition; ``None`` when some step is undefined."""
    if n < 0:
        raise ValueError("n must be non-negative")
    acc = MvElement(a.signature, (0,) * len(a.signature))
    for _ in range(n):
        acc = partial_add(acc, a)
        if acc is None:
            return None
    return acc


class ProductMvAlgebra:
    """The algebra ``S_{n_1} × … × S_{n_k}``; elements enumerate lexicographically."""

    def __init__(self, orders):
        self.signature = as_signature(orders)

    def __repr__(self) -> str:
        return f"ProductMvAlgebra({list(self.signature.orders)})"

    def __eq__(self, other) -> bool:
        return isinstance(other, ProductMvAlgebra) and other.signature == self.signature

    def __hash__(self) -> int:
        return hash(self.signature)

    @property
    def size(self) -> int:
        return self.signature.size

    @property
    def is_boolean(self) -> bool:
        return self.signature.is_boolean

    @property
    def zero(self) -> MvElement:
        return MvElement(self.signature, (0,) * len(self.signature))

    @property
    def one(self) -> MvElement:
        return MvElement(self.signature, self.signature.orders)

    def element(self, *values) -> MvElement:
        """Build an element from its rational coordinate values."""
        nums = []
        for v, n in zip(values, self.signature, strict=True):
            q = Fraction(v) * n
            if q.denominator != 1:
                raise ValueError(f"{v} is not in S{n}")
            nums.append(int(q))
        return MvElement(self.signature, tuple(nums))

    def elements(self) -> Iterator[MvElement]:
        for nums in product(*(range(n + 1) for n in self.signature)):
            yield MvElement(self.signature, nums)

    @cached_property
    def _strides(self) -> tuple[int, ...]:
        strides, acc = [], 1
        for n in reversed(self.signature.orders):
            strides.append(acc)
            acc *= n + 1
        return tuple(reversed(strides))

    def index(self, a: MvElement) -> int:
        if a.signature != self.signature:
            raise SignatureMismatch(f"{a.signature} vs {self.signature}")
        return sum(x * s for x, s in zip(a.numerators, self._strides))

    def numerator_array(self) -> np.ndarray:
        """All elements as an ``(m, k)`` integer array, rows in :meth:`elements` order."""
        grids = np.meshgrid(*(np.arange(n + 1) for n in self.signature), indexing="ij")
        return np.stack([g.ravel() for g in grids], axis=1).astype(np.int64)

    def index_array(self, nums: np.ndarray) -> np.ndarray:
        return nums @ np.asarray(self._strides, dtype=np.int64)

    def to_table(self) -> "TableMvAlgebra":
        if self.size > 4096:
            raise CapExceededError(f"{self.size} elements is too many for a table")
        nums = self.numerator_array()
        orders = np.asarray(self.signature.orders, dtype=np.int64)
        sums = np.minimum(nums[:, None, :] + nums[None, :, :], orders)
        plus = self.index_array(sums)
        neg = self.index_array(orders - nums)
        return TableMvAlgebra(
            oplus=tuple(map(tuple, plus.tolist())),
            star=tuple(neg.tolist()),
            zero=0,
        )

    def is_weakly_divisible_at(self, n: int) -> bool:
        """Probe: is there ``v`` with ``n·v = 1``?  Decided by exhausting the carrier."""
        one = self.one
        return any(nmul(v, n) == one for v in self.elements())


@dataclass(frozen=True)
class TableMvAlgebra:
    """An MV-algebra given extensionally on the carrier ``0..m-1``."""

    oplus: tuple[tuple[int, ...], ...]
    star: tuple[int, ...]
    zero: int

    def __post_init__(self):
        m = len(self.star)
        object.__setattr__(self, "oplus", tuple(tuple(int(c) for c in row) for row in self.oplus))
        object.__setattr__(self, "star", tuple(int(c) for c in self.star))
        if m == 0:
            raise ValueError("empty carrier")
        if len(self.oplus) != m or any(len(row) != m for row in self.oplus):
            raise ValueError(f"oplus must be a {m}×{m} table")
        if not all(0 <= c < m for row in self.oplus for c in row) or not all(0 <= c < m for c in self.star):
            raise ValueError("table entries must index the carrier")
        if not 0 <= self.zero < m:
            raise ValueError("zero must index the carrier")

    @property
    def size(self) -> int:
        return len(self.star)

    @property
    def one(self) -> int:
        return self.star[self.zero]

    @cached_property
    def plus_array(self) -> np.ndarray:
        return np.asarray(self.oplus, dtype=np.int64)

    @cached_property
    def star_array(self) -> np.ndarray:
        return np.asarray(self.star, dtype=np.int64)

    @cached_property
    def odot_array(self) -> np.ndarray:
        s = self.star_array
        return s[self.plus_array[s[:, None], s[None, :]]]

    def odot(self, x: int, y: int) -> int:
        return int(self.odot_array[x, y])

    def leq(self, x: int, y: int) -> bool:
        return self.oplus[self.star[x]][y] == self.one


def check_mv_axioms(alg: TableMvAlgebra, cap: int = TABLE_CAP) -> LawReport:
    """Sweep the MV-algebra axioms, reporting the first violation of each law."""
    m = alg.size
    if m > cap:
        raise CapExceededError(f"carrier of {m} elements exceeds cap {cap}")
    P, S, z, one = alg.plus_array, alg.star_array, alg.zero, alg.one
    r = np.arange(m)
    report = LawReport("MV-algebra axioms")

    def first(bad: np.ndarray, fmt) -> str | None:
        hits = np.argwhere(bad)
        return None if len(hits) == 0 else fmt(*map(int, hits[0]))

    report.results["x⊕y=y⊕x"] = first(P != P.T, lambda x, y: f"x={x}, y={y}")
    lhs = P[P]                                  # (x⊕y)⊕z
    rhs = P[r[:, None, None], P[None, :, :]]    # x⊕(y⊕z)
    report.results["(x⊕y)⊕z=x⊕(y⊕z)"] = first(lhs != rhs, lambda x, y, z_: f"x={x}, y={y}, z={z_}")
    report.results["x⊕0=x"] = first(P[:, z] != r, lambda x: f"x={x}: x⊕0={P[x, z]}")
    report.results["(x*)*=x"] = first(S[S] != r, lambda x: f"x={x}: (x*)*={S[S[x]]}")
    report.results["x⊕1=1"] = first(P[:, one] != one, lambda x: f"x={x}: x⊕1={P[x, one]}")
    lhs = P[r[:, None], S[P[r[:, None], S[None, :]]]]
    report.results["x⊕(x⊕y*)*=y⊕(y⊕x*)*"] = first(lhs != lhs.T, lambda x, y: f"x={x}, y={y}")
    return report


@dataclass(frozen=True)
class AlgebraHom:
    """A homomorphism between product algebras, given by coordinate sources.

    ``h(a)_q = a_{λ(q)}`` as rational values, where ``λ = source_of``.  The chain
    hom ``S_n → S_m`` exists iff ``n | m``, hence the divisibility check.
    """

    source: ChainSignature
    target: ChainSignature
    source_of: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "source", as_signature(self.source))
        object.__setattr__(self, "target", as_signature(self.target))
        lam = tuple(int(i) for i in self.source_of)
        object.__setattr__(self, "source_of", lam)
        if len(lam) != len(self.target):
            raise InvalidOperatorError(f"need {len(self.target)} coordinate sources, got {len(lam)}")
        for q, i in enumerate(lam):
            if not 0 <= i < len(self.source):
                raise InvalidOperatorError(f"source coordinate {i} out of range")
            if self.target[q] % self.source[i]:
                raise InvalidOperatorError(
                    f"divisibility: n={self.source[i]} of source coordinate {i} "
                    f"does not divide n={self.target[q]} of target coordinate {q}")

    def __call__(self, a: MvElement) -> MvElement:
        if a.signature != self.source:
            raise SignatureMismatch(f"{a.signature} vs {self.source}")
        return MvElement(self.target, tuple(
            a.numerators[i] * (self.target[q] // self.source[i])
            for q, i in enumerate(self.source_of)))

    def then(self, other: "AlgebraHom") -> "AlgebraHom":
        """``other ∘ self``."""
        if other.source != self.target:
            raise SignatureMismatch(f"cannot compose {self.target} with {other.source}")
        return AlgebraHom(self.source, other.target,
                          tuple(self.source_of[i] for i in other.source_of))

    @classmethod
    def identity(cls, sig) -> "AlgebraHom":
        sig = as_signature(sig)
        return cls(sig, sig, tuple(range(len(sig))))


def is_homomorphism(fn, source: ProductMvAlgebra) -> bool:
    """Extensional hom test of a callable on a product algebra (all pairs)."""
    elems = list(source.elements())
    if any(fn(source.zero).numerators):
        return False
    for a in elems:
        if fn(star(a)) != star(fn(a)):
            return False
    return all(fn(oplus(a, b)) == oplus(fn(a), fn(b)) for a in elems for b in elems)


# ---------------------------------------------------------------- ideals

@dataclass(frozen=True)
class CoordinateIdeal:
    """The ideal ``{x : x_j = 0 for j in zero_coords}`` of a product algebra."""

    signature: ChainSignature
    zero_coords: frozenset[int]

    def __contains__(self, a: MvElement) -> bool:
        return all(a.numerators[j] == 0 for j in self.zero_coords)

    def members(self) -> list[MvElement]:
        return [a for a in ProductMvAlgebra(self.signature).elements() if a in self]

    @property
    def is_proper(self) -> bool:
        return bool(self.zero_coords)


def maximal_ideals_and_radical(alg: ProductMvAlgebra) -> tuple[list[CoordinateIdeal], CoordinateIdeal]:
    sig = alg.signature
    maximal = [CoordinateIdeal(sig, frozenset([j])) for j in range(len(sig))]
    radical = CoordinateIdeal(sig, frozenset().union(*(I.zero_coords for I in maximal)))
    return maximal, radical


def is_semisimple(alg: ProductMvAlgebra) -> bool:
    _, rad = maximal_ideals_and_radical(alg)
    return rad.members() == [alg.zero]


def _is_ideal(alg: TableMvAlgebra, members: frozenset[int]) -> bool:
    if not members:
        return False
    for b in members:
        for a in range(alg.size):
            if alg.leq(a, b) and a not in members:
                return False
    return all(alg.oplus[a][b] in members for a in members for b in members)


def table_ideals_by_subsets(alg: TableMvAlgebra, limit: int = 16) -> list[frozenset[int]]:
    """All ideals, found by testing every subset of the carrier."""
    m = alg.size
    if m > limit:
        raise CapExceededError(f"2^{m} subsets exceeds the limit 2^{limit}")
    found = []
    for mask in range(1, 1 << m):
        members = frozenset(i for i in range(m) if mask >> i & 1)
        if _is_ideal(alg, members):
            found.append(members)
    return found


def table_ideals(alg: TableMvAlgebra) -> list[frozenset[int]]:
    """All ideals of a finite algebra; each is generated by a single element.

    A finite ideal contains the ⊕ of its members, so the ideal generated by
    each element (the down-set of its ⊕-powers) already lists them all.
    """
    out = set()
    for a in range(alg.size):
        p = a
        while (q := alg.oplus[p][a]) != p:
            p = q
        out.add(frozenset(x for x in range(alg.size) if alg.leq(x, p)))
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def maximal_among(ideals: Iterable[frozenset[int]], size: int) -> list[frozenset[int]]:
    proper = [I for I in ideals if len(I) < size]
    return [I for I in proper if not any(I < J for J in proper)]
