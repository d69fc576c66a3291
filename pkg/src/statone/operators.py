"""Internal states on finite MV-algebras.

Structurally, a state-morphism-operator on a product of chains is a
coordinate copy ``τ(x)_j = x_{σ(j)}`` with ``σ∘σ = σ`` and ``n_{σ(j)} | n_j``:
each coordinate of an endomorphism factors through one projection, and the
chain hom ``S_n → S_m`` exists only when ``n | m``.  Extensionally, an
operator is a :data:`UnaryTable` on a :class:`~statone.mv.TableMvAlgebra`; the
table checks below never look at ``σ`` and so cross-check the structural form.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import combinations, product

import numpy as np

from .errors import CapExceededError, IntertwiningError, InvalidOperatorError, SignatureMismatch
from .mv import (
    AlgebraHom,
    ChainSignature,
    CoordinateIdeal,
    MvElement,
    ProductMvAlgebra,
    TableMvAlgebra,
    as_signature,
)
from .reports import LawReport

UnaryTable = tuple[int, ...]

DEFAULT_TABLE_CAP = 8


def table_cap() -> int:
    """Largest carrier for the ``m^m`` sweep; ``STATONE_TABLE_CAP`` overrides."""
    raw = os.environ.get("STATONE_TABLE_CAP")
    return int(raw) if raw else DEFAULT_TABLE_CAP


def sigma_problem(orders: tuple[int, ...], sigma: tuple[int, ...], idempotent: bool = True) -> str | None:
    """First reason ``sigma`` is not a valid operator source map, or ``None``."""
    k = len(orders)
    if len(sigma) != k:
        return f"sigma has {len(sigma)} entries for {k} coordinates"
    for j, i in enumerate(sigma):
        if not 0 <= i < k:
            return f"range: σ({j})={i} is not a coordinate"
    for j, i in enumerate(sigma):
        if orders[j] % orders[i]:
            return f"divisibility: n_σ({j})=n_{i}={orders[i]} does not divide n_{j}={orders[j]}"
    if idempotent:
        for j, i in enumerate(sigma):
            if sigma[i] != i:
                return f"idempotence: σ(σ({j}))={sigma[i]}≠σ({j})={i}"
    return None


@dataclass(frozen=True)
class OperatorSpec:
    """``τ(x)_j = x_{σ(j)}`` on the product algebra of ``signature``.

    Idempotence is enforced unless ``require_idempotent`` is off, which is only
    useful for building counterexamples.
    """

    signature: ChainSignature
    sigma: tuple[int, ...]
    require_idempotent: bool = field(default=True, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "signature", as_signature(self.signature))
        object.__setattr__(self, "sigma", tuple(int(i) for i in self.sigma))
        problem = sigma_problem(self.signature.orders, self.sigma, self.require_idempotent)
        if problem:
            raise InvalidOperatorError(problem)

    @classmethod
    def identity(cls, sig) -> "OperatorSpec":
        sig = as_signature(sig)
        return cls(sig, tuple(range(len(sig))))

    @property
    def algebra(self) -> ProductMvAlgebra:
        return ProductMvAlgebra(self.signature)

    @property
    def is_idempotent(self) -> bool:
        return all(self.sigma[i] == i for i in self.sigma)

    def __call__(self, a: MvElement) -> MvElement:
        return apply_endo(self, a)

    def table(self) -> tuple[TableMvAlgebra, UnaryTable]:
        """The induced unary table on the table form of the algebra."""
        alg = self.algebra
        return alg.to_table(), tuple(alg.index(self(a)) for a in alg.elements())


def apply_endo(spec: OperatorSpec, a: MvElement) -> MvElement:
    if a.signature != spec.signature:
        raise SignatureMismatch(f"{a.signature} vs {spec.signature}")
    n = spec.signature.orders
    return MvElement(spec.signature, tuple(
        a.numerators[i] * (n[j] // n[i]) for j, i in enumerate(spec.sigma)))


@dataclass(frozen=True)
class StateHom:
    """An MV-homomorphism ``h`` with ``h∘τ = τ′∘h``.

    With ``h = λ``-coordinate copy, both sides send ``a`` to the coordinate
    copy along ``σ∘λ`` and ``λ∘σ′`` respectively, so intertwining is the
    index identity ``σ(λ(q)) = λ(σ′(q))``.
    """

    hom: AlgebraHom
    source: OperatorSpec
    target: OperatorSpec

    def __post_init__(self):
        if self.hom.source != self.source.signature or self.hom.target != self.target.signature:
            raise SignatureMismatch("homomorphism endpoints do not match the operators")
        lam, s, t = self.hom.source_of, self.source.sigma, self.target.sigma
        for q in range(len(lam)):
            if s[lam[q]] != lam[t[q]]:
                raise IntertwiningError(
                    f"h∘τ≠τ′∘h: coordinate {q} reads {s[lam[q]]} on one side, {lam[t[q]]} on the other")

    def __call__(self, a: MvElement) -> MvElement:
        return self.hom(a)

    def then(self, other: "StateHom") -> "StateHom":
        """``other ∘ self``."""
        return StateHom(self.hom.then(other.hom), self.source, other.target)

    @classmethod
    def identity(cls, tau: OperatorSpec) -> "StateHom":
        return cls(AlgebraHom.identity(tau.signature), tau, tau)


# ------------------------------------------------------- extensional checks

def _first(bad: np.ndarray, fmt) -> str | None:
    hits = np.argwhere(bad)
    return None if len(hits) == 0 else fmt(*map(int, hits[0]))


def check_state_operator_axioms(alg: TableMvAlgebra, t: UnaryTable) -> LawReport:
    m = alg.size
    if len(t) != m:
        raise ValueError(f"table has {len(t)} entries for a carrier of {m}")
    P, S, D = alg.plus_array, alg.star_array, alg.odot_array
    T = np.asarray(t, dtype=np.int64)
    z, one = alg.zero, alg.one
    r = np.arange(m)
    x, y = r[:, None], r[None, :]
    report = LawReport("state-operator axioms")
    report.results["(i) τ(0)=0"] = None if T[z] == z else f"τ(0)={T[z]}"
    report.results["(ii) τ(x*)=τ(x)*"] = _first(T[S] != S[T], lambda a: f"x={a}")
    w = D[y, S[D[x, y]]]
    report.results["(iii) τ(x⊕y)=τ(x)⊕τ(y⊙(x⊙y)*)"] = _first(
        T[P] != P[T[x], T[w]], lambda a, b: f"x={a}, y={b}")
    s = P[T[x], T[y]]
    report.results["(iv) τ(τ(x)⊕τ(y))=τ(x)⊕τ(y)"] = _first(T[s] != s, lambda a, b: f"x={a}, y={b}")

    leq = P[S[x], y] == one
    report.derived["τ∘τ=τ"] = _first(T[T] != T, lambda a: f"x={a}")
    report.derived["τ(1)=1"] = None if T[one] == one else f"τ(1)={T[one]}"
    report.derived["x≤y ⇒ τ(x)≤τ(y)"] = _first(
        leq & (P[S[T[x]], T[y]] != one), lambda a, b: f"x={a}, y={b}")
    report.derived["τ(x⊕y)≤τ(x)⊕τ(y)"] = _first(
        P[S[T[P]], P[T[x], T[y]]] != one, lambda a, b: f"x={a}, y={b}")
    image = np.zeros(m, dtype=bool)
    image[T] = True
    closed = image[P] | ~(image[x] & image[y])
    report.derived["τ(A) closed under ⊕"] = _first(~closed, lambda a, b: f"x={a}, y={b}")
    report.derived["τ(A) closed under *"] = _first(image & ~image[S], lambda a: f"x={a}")
    return report


def check_state_morphism(alg: TableMvAlgebra, t: UnaryTable) -> bool:
    """True iff ``t`` is an idempotent MV-endomorphism."""
    P, S = alg.plus_array, alg.star_array
    T = np.asarray(t, dtype=np.int64)
    return bool(
        T[alg.zero] == alg.zero
        and np.array_equal(T[S], S[T])
        and np.array_equal(T[P], P[T[:, None], T[None, :]])
        and np.array_equal(T[T], T)
    )


# ------------------------------------------------------------ enumeration

def enumerate_state_morphism_operators(sig) -> list[OperatorSpec]:
    """All idempotent, divisibility-respecting ``σ``, in lexicographic order.

    An idempotent map is fixed by its image ``F`` plus a choice, for each
    coordinate outside ``F``, of a target inside ``F``.
    """
    sig = as_signature(sig)
    n = sig.orders
    k = len(n)
    found = []
    for size in range(1, k + 1):
        for fixed in combinations(range(k), size):
            options = []
            for j in range(k):
                if j in fixed:
                    options.append((j,))
                else:
                    options.append(tuple(i for i in fixed if n[j] % n[i] == 0))
            for sigma in product(*options):
                found.append(sigma)
    return [OperatorSpec(sig, s) for s in sorted(found)]


@dataclass
class TableSweep:
    """Outcome of sweeping every unary table on a carrier."""

    swept: int
    state_operators: list[UnaryTable]
    state_morphisms: list[UnaryTable]


def sweep_unary_tables(alg: TableMvAlgebra, cap: int | None = None, chunk: int = 1 << 18) -> TableSweep:
    """Test all ``m^m`` unary tables against both operator definitions.

    Tables are decoded from their base-``m`` index in chunks, so output order is
    lexicographic.  Both definitions require ``τ(0)=0`` and ``τ(x*)=τ(x)*``; the
    rest of each is evaluated only on tables passing those two.
    """
    m = alg.size
    cap = table_cap() if cap is None else cap
    if m > cap:
        raise CapExceededError(f"carrier of {m} elements exceeds table cap {cap} ({m}^{m} tables)")
    P, S, D = alg.plus_array, alg.star_array, alg.odot_array
    z = alg.zero
    X, Y = np.divmod(np.arange(m * m), m)
    XY = P[X, Y]
    W = D[Y, S[D[X, Y]]]
    powers = m ** np.arange(m - 1, -1, -1, dtype=np.int64)
    total = m ** m
    ops: list[UnaryTable] = []
    morphs: list[UnaryTable] = []
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        T = (idx[:, None] // powers) % m
        T = T[T[:, z] == z]
        T = T[np.all(T[:, S] == S[T], axis=1)]
        if len(T) == 0:
            continue
        tx, ty = T[:, X], T[:, Y]
        s = P[tx, ty]
        lhs = T[:, XY]
        ax3 = np.all(lhs == P[tx, T[:, W]], axis=1)
        ax4 = np.all(np.take_along_axis(T, s, axis=1) == s, axis=1)
        hom = np.all(lhs == s, axis=1)
        idem = np.all(np.take_along_axis(T, T, axis=1) == T, axis=1)
        ops.extend(map(tuple, T[ax3 & ax4].tolist()))
        morphs.extend(map(tuple, T[hom & idem].tolist()))
    return TableSweep(total, ops, morphs)


def enumerate_state_operators_table(alg: TableMvAlgebra, cap: int | None = None) -> list[UnaryTable]:
    return sweep_unary_tables(alg, cap).state_operators


# ------------------------------------------------------- kernel and image

def kernel_and_image(tau, alg: TableMvAlgebra | None = None):
    """``(Ker τ, τ(A))``.

    For an :class:`OperatorSpec` the kernel is the coordinate ideal vanishing on
    the image of ``σ`` and the image is the list of distinct ``τ(a)``.  For a
    unary table (``alg`` required) both are sets of carrier indices.
    """
    if isinstance(tau, OperatorSpec):
        ker = CoordinateIdeal(tau.signature, frozenset(tau.sigma))
        image = sorted({tau(a) for a in tau.algebra.elements()}, key=lambda e: e.numerators)
        return ker, image
    if alg is None:
        raise ValueError("a unary table needs its algebra")
    ker = frozenset(a for a in range(alg.size) if tau[a] == alg.zero)
    return ker, frozenset(tau)
