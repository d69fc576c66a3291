"""States on finite product algebras and the affine picture of ``A``.

A state on ``S_{n_1} × … × S_{n_k}`` is a convex combination of the ``k``
coordinate evaluations, stored by its barycentric weights.  Affine functions
on the state simplex are stored by their values at the vertices, which
determine them completely.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from .mv import ChainSignature, MvElement, ProductMvAlgebra, oplus, odot
from .operators import OperatorSpec
from .reports import LawReport


def _frac(v) -> Fraction:
    if type(v) is Fraction:
        return v
    if isinstance(v, float):
        raise TypeError(f"refusing float {v!r}; pass an int, Fraction or 'p/q' string")
    return Fraction(v)


@dataclass(frozen=True)
class RationalState:
    """Barycentric weights over the extremal states (equivalently, a point of a simplex)."""

    weights: tuple[Fraction, ...]

    def __post_init__(self):
        w = tuple(_frac(x) for x in self.weights)
        if not w:
            raise ValueError("a state needs at least one weight")
        if any(x < 0 for x in w) or sum(w) != 1:
            raise ValueError(f"weights must be non-negative and sum to 1, got {[str(x) for x in w]}")
        object.__setattr__(self, "weights", w)

    @classmethod
    @functools.lru_cache(maxsize=None)
    def vertex(cls, k: int, j: int) -> "RationalState":
        return cls(tuple(Fraction(int(i == j)) for i in range(k)))

    @classmethod
    def mix(cls, lam, s1: "RationalState", s2: "RationalState") -> "RationalState":
        lam = _frac(lam)
        return cls(tuple(lam * a + (1 - lam) * b for a, b in zip(s1.weights, s2.weights, strict=True)))

    def __len__(self) -> int:
        return len(self.weights)

    @property
    def is_extremal(self) -> bool:
        return sorted(self.weights)[-1] == 1

    def __str__(self) -> str:
        return "(" + ", ".join(str(w) for w in self.weights) + ")"


SimplexPoint = RationalState


@dataclass(frozen=True)
class ExtremalState:
    """The coordinate evaluation ``x ↦ x_j``."""

    signature: ChainSignature
    coordinate: int

    def __call__(self, a: MvElement) -> Fraction:
        return a.values[self.coordinate]

    @property
    def as_state(self) -> RationalState:
        return RationalState.vertex(len(self.signature), self.coordinate)

    def value_set(self) -> list[Fraction]:
        n = self.signature[self.coordinate]
        return [Fraction(i, n) for i in range(n + 1)]


def extremal_states(A: ProductMvAlgebra) -> list[ExtremalState]:
    return [ExtremalState(A.signature, j) for j in range(len(A.signature))]


def evaluate(s: RationalState, a: MvElement) -> Fraction:
    if len(s) != len(a.signature):
        raise ValueError(f"state of dimension {len(s)} on an element of dimension {len(a.signature)}")
    return sum((w * v for w, v in zip(s.weights, a.values)), Fraction(0))


def value_set(s: RationalState, A: ProductMvAlgebra) -> set[Fraction]:
    return {evaluate(s, a) for a in A.elements()}


def is_state(s: RationalState, A: ProductMvAlgebra) -> bool:
    """``s(1) = 1`` and ``s(a⊕b) = s(a)+s(b)`` whenever ``a⊙b = 0``, swept over all pairs."""
    if evaluate(s, A.one) != 1:
        return False
    elems = list(A.elements())
    zero = A.zero
    return all(
        evaluate(s, oplus(a, b)) == evaluate(s, a) + evaluate(s, b)
        for a in elems for b in elems if odot(a, b) == zero)


def is_state_morphism(s, A: ProductMvAlgebra) -> bool:
    """``s(a⊕b) = min(s(a)+s(b), 1)`` on all pairs; ``s`` is any callable on elements."""
    elems = list(A.elements())
    return all(s(oplus(a, b)) == min(s(a) + s(b), 1) for a in elems for b in elems)


def kernel(s: RationalState, A: ProductMvAlgebra) -> frozenset[MvElement]:
    return frozenset(a for a in A.elements() if evaluate(s, a) == 0)


def discrete_state_decomposition(s: RationalState, sig: ChainSignature) -> list[tuple[Fraction, ExtremalState]]:
    """Positive weights with their extremal states.

    Every state representable here has rational weights, hence is discrete.
    """
    return [(w, ExtremalState(sig, j)) for j, w in enumerate(s.weights) if w]


def discreteness_level(s: RationalState, A: ProductMvAlgebra) -> int:
    """Least ``n`` with ``s(A) ⊆ {0, 1/n, …, 1}``."""
    return math.lcm(*(v.denominator for v in value_set(s, A)))


# ------------------------------------------------------- affine functions

@dataclass(frozen=True)
class AffineFunctionElement:
    """An affine ``[0,1]``-valued function on a simplex, by its vertex values."""

    values: tuple[Fraction, ...]

    def __post_init__(self):
        v = tuple(_frac(x) for x in self.values)
        if not all(0 <= x <= 1 for x in v):
            raise ValueError(f"vertex values must lie in [0,1], got {[str(x) for x in v]}")
        object.__setattr__(self, "values", v)

    def __len__(self) -> int:
        return len(self.values)

    def __call__(self, x: RationalState) -> Fraction:
        if len(x) != len(self):
            raise ValueError("dimension mismatch")
        return sum((w * f for w, f in zip(x.weights, self.values) if w and f), Fraction(0))

    def oplus(self, other: "AffineFunctionElement") -> "AffineFunctionElement":
        return AffineFunctionElement(tuple(min(a + b, 1) for a, b in zip(self.values, other.values, strict=True)))

    def star(self) -> "AffineFunctionElement":
        return AffineFunctionElement(tuple(1 - a for a in self.values))

    def odot(self, other: "AffineFunctionElement") -> "AffineFunctionElement":
        return self.star().oplus(other.star()).star()

    def join(self, other: "AffineFunctionElement") -> "AffineFunctionElement":
        return AffineFunctionElement(tuple(map(max, self.values, other.values)))

    def leq(self, other: "AffineFunctionElement") -> bool:
        return all(a <= b for a, b in zip(self.values, other.values, strict=True))

    def __str__(self) -> str:
        return "[" + ", ".join(str(v) for v in self.values) + "]"


def hat(a: MvElement) -> AffineFunctionElement:
    """``â(s) = s(a)``, recorded by evaluating ``a`` at each extremal state."""
    k = len(a.signature)
    return AffineFunctionElement(tuple(evaluate(RationalState.vertex(k, j), a) for j in range(k)))


@dataclass(frozen=True)
class AffineSelfMap:
    """Affine ``g`` on a simplex fixed by its vertex map ``σ``: ``g(e_j) = e_{σ(j)}``."""

    sigma: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "sigma", tuple(int(i) for i in self.sigma))
        k = len(self.sigma)
        if not all(0 <= i < k for i in self.sigma):
            raise ValueError("vertex map leaves the simplex")

    def __call__(self, s: RationalState) -> RationalState:
        out = [Fraction(0)] * len(self.sigma)
        for j, w in enumerate(s.weights):
            if w:
                out[self.sigma[j]] += w
        return RationalState(tuple(out))

    @property
    def is_idempotent(self) -> bool:
        return all(self.sigma[i] == i for i in self.sigma)


def barycentric(state_fn, sig: ChainSignature) -> RationalState:
    """Recover the weights of a state given only as a function on elements.

    ``s(δ_i) = w_i`` for the Boolean atom ``δ_i`` that is ``1`` at ``i`` only.
    """
    k = len(sig)
    atoms = [MvElement(sig, tuple(sig[j] if j == i else 0 for j in range(k))) for i in range(k)]
    return RationalState(tuple(state_fn(d) for d in atoms))


def _vertex_index(s: RationalState) -> int:
    if not s.is_extremal:
        raise ValueError(f"{s} is not a vertex")
    return s.weights.index(1)


def induced_affine_g(tau: OperatorSpec) -> AffineSelfMap:
    """``g(s) = s∘τ``, built from the images of the extremal states."""
    sig = tau.signature
    k = len(sig)
    images = []
    for j in range(k):
        e = RationalState.vertex(k, j)
        images.append(_vertex_index(barycentric(lambda a: evaluate(e, tau(a)), sig)))
    return AffineSelfMap(tuple(images))


def check_induced_g(tau: OperatorSpec, samples: Iterable[RationalState] = ()) -> LawReport:
    """Sweep the properties of ``g(s) = s∘τ`` on vertices and the given sample states."""
    A = tau.algebra
    g = induced_affine_g(tau)
    k = len(A.signature)
    elems = list(A.elements())
    pts = [RationalState.vertex(k, j) for j in range(k)] + list(samples)
    report = LawReport("induced affine map g(s)=s∘τ")

    def first(cases):
        return next((c for c in cases), None)

    report.results["g(s)=s∘τ"] = first(
        f"s={s}, a={a}" for s in pts for a in elems if evaluate(g(s), a) != evaluate(s, tau(a)))
    report.results["g∘g=g"] = None if g.is_idempotent else f"σ={list(g.sigma)}"
    report.results["g(∂ₑS) ⊆ ∂ₑS"] = first(
        f"j={j}" for j in range(k) if not g(RationalState.vertex(k, j)).is_extremal)
    report.results["g affine"] = first(
        f"s1={s1}, s2={s2}" for s1, s2 in zip(pts, pts[1:])
        if g(RationalState.mix(Fraction(1, 3), s1, s2)) != RationalState.mix(Fraction(1, 3), g(s1), g(s2)))
    report.results["g(s)(a) ∈ s(A) for extremal s"] = first(
        f"j={e.coordinate}, a={a}" for e in extremal_states(A) for a in elems
        if evaluate(g(e.as_state), a) not in set(e.value_set()))
    return report


# ------------------------------------------------------------------ M(A)

@dataclass
class MAlgebra:
    """``M(A)``: vertex-value vectors with value ``j`` in ``S_{n_j}``."""

    signature: ChainSignature
    elements: list[AffineFunctionElement]
    report: LawReport

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, f: AffineFunctionElement) -> bool:
        return len(f) == len(self.signature) and all(
            (v * n).denominator == 1 for v, n in zip(f.values, self.signature))


def _scaled(fs: Sequence[AffineFunctionElement], L: int) -> np.ndarray:
    out = np.empty((len(fs), len(fs[0])), dtype=np.int64)
    for r, f in enumerate(fs):
        for c, v in enumerate(f.values):
            q = v * L
            if q.denominator != 1:
                raise ValueError(f"{v} is not a multiple of 1/{L}")
            out[r, c] = int(q)
    return out


def _first_bad_pair(ok_rows) -> str | None:
    for i, row in ok_rows:
        bad = np.flatnonzero(~row)
        if len(bad):
            return f"a#{i}, b#{int(bad[0])}"
    return None


def build_M_of_A(A: ProductMvAlgebra) -> MAlgebra:
    """Construct ``M(A)`` and check that ``hat`` is an MV-isomorphism onto it.

    The pair sweep runs on integers scaled by ``lcm(n_j)``: ``M(A)`` values via
    ``hat`` on one side, chain numerators on the other.
    """
    sig = A.signature
    chains = [[Fraction(i, n) for i in range(n + 1)] for n in sig]
    elements = [AffineFunctionElement(v) for v in product(*chains)]
    hats = [hat(a) for a in A.elements()]
    report = LawReport(f"hat: {sig} → M(A)")
    report.results["hat injective"] = None if len(set(hats)) == len(hats) else "two elements share a hat"
    report.results["hat onto M(A)"] = None if set(hats) == set(elements) else "some affine function is missed"

    L = math.lcm(*sig.orders)
    H = _scaled(hats, L)
    N = A.numerator_array()
    n = np.asarray(sig.orders, dtype=np.int64)
    report.results["hat(0)=0"] = None if not H[A.index(A.zero)].any() else "hat(0)≠0"
    neg = A.index_array(n - N)
    report.results["hat(a*)=hat(a)*"] = _first_bad_pair(
        [(0, np.all(H[neg] == L - H, axis=1))])

    def rows():
        for i in range(len(N)):
            idx = A.index_array(np.minimum(N[i] + N, n))
            yield i, np.all(H[idx] == np.minimum(H[i] + H, L), axis=1)

    report.results["hat(a⊕b)=hat(a)⊕hat(b)"] = _first_bad_pair(rows())
    return MAlgebra(sig, elements, report)


def tau_g(f: AffineFunctionElement, g: AffineSelfMap) -> AffineFunctionElement:
    """``τ_g(f) = f∘g``, evaluated at the image of each vertex."""
    k = len(f)
    return AffineFunctionElement(tuple(f(g(RationalState.vertex(k, j))) for j in range(k)))


def tau_g_and_intertwine(tau: OperatorSpec) -> LawReport:
    """Check ``τ_g`` is a state-morphism-operator on ``M(A)`` and ``hat∘τ = τ_g∘hat``.

    ``τ_g`` is applied through its matrix ``G[j, i] = g(e_j)_i`` on scaled
    integer vertex values; ``τ`` itself through chain numerators.
    """
    A = tau.algebra
    sig = A.signature
    k = len(sig)
    g = induced_affine_g(tau)
    report = LawReport(f"τ_g on M({sig}) for σ={list(tau.sigma)}")
    G = [g(RationalState.vertex(k, j)).weights for j in range(k)]
    D = math.lcm(*(w.denominator for row in G for w in row))
    Gint = np.array([[int(w * D) for w in row] for row in G], dtype=np.int64)

    L = math.lcm(*sig.orders)
    N = A.numerator_array()
    n = np.asarray(sig.orders, dtype=np.int64)
    H = _scaled([hat(a) for a in A.elements()], L)
    TG = H @ Gint.T
    exact = not (TG % D).any()
    report.results["τ_g(M(A)) ⊆ M(A)"] = None if exact and not ((TG // D) % (L // n)).any() else "value off the chain grid"
    TG //= D
    src = list(tau.sigma)
    H_tau = H[A.index_array(N[:, src] * (n // n[src]))]
    bad = np.flatnonzero(~np.all(H_tau == TG, axis=1))
    report.results["hat∘τ=τ_g∘hat"] = None if not len(bad) else f"a#{int(bad[0])}"
    img = A.index_array(TG // (L // n))
    report.results["τ_g∘τ_g=τ_g"] = None if np.array_equal(img[img], img) else "not idempotent"
    report.results["τ_g(0)=0"] = None if img[A.index(A.zero)] == A.index(A.zero) else "τ_g(0)≠0"
    neg = A.index_array(n - N)
    report.results["τ_g(f*)=τ_g(f)*"] = None if np.array_equal(img[neg], neg[img]) else "star not preserved"

    def rows():
        for i in range(len(N)):
            plus = A.index_array(np.minimum(N[i] + N, n))
            both = A.index_array(np.minimum(N[img[i]] + N[img], n))
            yield i, img[plus] == both

    report.results["τ_g(f⊕h)=τ_g(f)⊕τ_g(h)"] = _first_bad_pair(rows())

    def join_rows():
        for i in range(len(N)):
            j = A.index_array(np.maximum(N[i], N))
            yield i, img[j] == A.index_array(np.maximum(N[img[i]], N[img]))

    report.derived["finite joins preserved"] = _first_bad_pair(join_rows())
    return report
