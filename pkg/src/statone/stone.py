"""Duality between finite Boolean state algebras and finite spaces with an idempotent.

On a finite Boolean algebra ``2^X`` every ultrafilter is principal,
``F_x = {a : a_x = 1}``, so ultrafilters are stored by their atom ``x``.
Topology is discrete; continuity of a map is replaced by the finite witness
``g⁻¹(u(a)) = u(τ(a))`` that the sweep can actually check.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .certificates import DualityCertificate
from .errors import IntertwiningError, InvalidOperatorError
from .mv import AlgebraHom, ChainSignature, MvElement, ProductMvAlgebra, oplus, star
from .operators import OperatorSpec, StateHom
from .reports import LawReport

ALGEBRA_SIDE = "boolean-algebra"
SPACE_SIDE = "boolean-space"


@dataclass(frozen=True)
class StoneStatePair:
    """A finite discrete space with an idempotent self-map ``g``."""

    points: tuple[str, ...]
    g: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(str(p) for p in self.points))
        object.__setattr__(self, "g", tuple(int(i) for i in self.g))
        n = len(self.points)
        if n == 0:
            raise InvalidOperatorError("a Stone space here needs at least one point")
        if len(set(self.points)) != n:
            raise InvalidOperatorError("point labels must be distinct")
        if len(self.g) != n:
            raise InvalidOperatorError(f"g has {len(self.g)} entries for {n} points")
        for x, y in enumerate(self.g):
            if not 0 <= y < n:
                raise InvalidOperatorError(f"range: g({x})={y} is not a point")
        for x, y in enumerate(self.g):
            if self.g[y] != y:
                raise InvalidOperatorError(f"idempotence: g(g({x}))={self.g[y]}≠g({x})={y}")

    @classmethod
    def indexed(cls, g) -> "StoneStatePair":
        return cls(tuple(str(i) for i in range(len(g))), tuple(g))

    def __len__(self) -> int:
        return len(self.points)

    def preimage(self, subset) -> frozenset[int]:
        """``s_g(A) = g⁻¹(A)``."""
        return frozenset(x for x, y in enumerate(self.g) if y in subset)


@dataclass(frozen=True)
class Ultrafilter:
    """The principal ultrafilter ``F_x = {a : a_x = 1}``."""

    atom: int

    def __contains__(self, a: MvElement) -> bool:
        return a.numerators[self.atom] == 1

    def members(self, B: ProductMvAlgebra) -> frozenset[MvElement]:
        return frozenset(a for a in B.elements() if a in self)


@dataclass(frozen=True)
class SpaceMorphism:
    """``f: Ω → Ω′`` with ``f∘g = g′∘f``."""

    source: StoneStatePair
    target: StoneStatePair
    f: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "f", tuple(int(i) for i in self.f))
        if len(self.f) != len(self.source) or not all(0 <= y < len(self.target) for y in self.f):
            raise InvalidOperatorError("f must map every source point to a target point")
        for x in range(len(self.source)):
            if self.f[self.source.g[x]] != self.target.g[self.f[x]]:
                raise IntertwiningError(f"f(g({x}))={self.f[self.source.g[x]]} but g′(f({x}))={self.target.g[self.f[x]]}")

    def then(self, other: "SpaceMorphism") -> "SpaceMorphism":
        """``other ∘ self``."""
        if other.source != self.target:
            raise ValueError("morphisms are not composable")
        return SpaceMorphism(self.source, other.target, tuple(other.f[y] for y in self.f))

    @classmethod
    def identity(cls, pair: StoneStatePair) -> "SpaceMorphism":
        return cls(pair, pair, tuple(range(len(pair))))


def subset_of(a: MvElement) -> frozenset[int]:
    return frozenset(j for j, v in enumerate(a.numerators) if v)


def element_of(subset, n: int) -> MvElement:
    return MvElement(ChainSignature((1,) * n), tuple(int(j in subset) for j in range(n)))


def all_subsets(n: int) -> list[frozenset[int]]:
    return [frozenset(c) for r in range(n + 1) for c in combinations(range(n), r)]


def _require_boolean(B: ProductMvAlgebra):
    if not B.is_boolean:
        raise ValueError(f"{B.signature} is not a Boolean algebra")


def stone_space(B: ProductMvAlgebra):
    """``(Ω(B), u)`` with ``u(a)`` the set of ultrafilters containing ``a``."""
    _require_boolean(B)
    ultrafilters = [Ultrafilter(x) for x in range(len(B.signature))]

    def u(a: MvElement) -> frozenset[int]:
        return frozenset(F.atom for F in ultrafilters if a in F)

    return ultrafilters, u


@lru_cache(maxsize=None)
def _ultrafilters(B: ProductMvAlgebra) -> dict[frozenset[MvElement], int]:
    return {Ultrafilter(x).members(B): x for x in range(len(B.signature))}


def _identify(members: frozenset[MvElement], B: ProductMvAlgebra) -> int:
    """The atom whose principal ultrafilter has exactly these members."""
    try:
        return _ultrafilters(B)[members]
    except KeyError:
        raise InvalidOperatorError("preimage is not an ultrafilter") from None


def phi_object(tau: OperatorSpec) -> StoneStatePair:
    """``(Ω(B), g)`` with ``g(F) = τ⁻¹(F)``, the preimage found by sweeping ``B``."""
    B = tau.algebra
    _require_boolean(B)
    elems = list(B.elements())
    g = []
    for x in range(len(B.signature)):
        F = Ultrafilter(x)
        g.append(_identify(frozenset(a for a in elems if tau(a) in F), B))
    return StoneStatePair.indexed(g)


def psi_object(pair: StoneStatePair) -> OperatorSpec:
    """``(B(Ω), s_g)`` with ``s_g(A) = g⁻¹(A)``, encoded as the coordinate copy ``σ = g``."""
    n = len(pair)
    spec = OperatorSpec([1] * n, pair.g)
    for A in all_subsets(n):
        if spec(element_of(A, n)) != element_of(pair.preimage(A), n):
            raise AssertionError(f"s_g disagrees with its encoding at {sorted(A)}")
    return spec


def phi_morphism(h: StateHom) -> SpaceMorphism:
    """``φ(h): F′ ↦ h⁻¹(F′)``, from ``φ(B′, τ′)`` to ``φ(B, τ)``."""
    B = h.source.algebra
    _require_boolean(B)
    _require_boolean(h.target.algebra)
    elems = list(B.elements())
    _, u = stone_space(B)
    _, u_prime = stone_space(h.target.algebra)
    f = tuple(
        _identify(frozenset(a for a in elems if h.hom(a) in Ultrafilter(q)), B)
        for q in range(len(h.target.signature)))
    for a in elems:
        if frozenset(q for q, x in enumerate(f) if x in u(a)) != u_prime(h.hom(a)):
            raise AssertionError(f"f⁻¹(u(a)) ≠ u(h(a)) at a={a}")
    return SpaceMorphism(phi_object(h.target), phi_object(h.source), f)


def psi_morphism(f: SpaceMorphism) -> StateHom:
    """``ψ(f): A′ ↦ f⁻¹(A′)``, from ``ψ(Ω′, g′)`` to ``ψ(Ω, g)``."""
    n, n_prime = len(f.source), len(f.target)
    hom = AlgebraHom([1] * n_prime, [1] * n, f.f)
    for A in all_subsets(n_prime):
        pre = frozenset(x for x, y in enumerate(f.f) if y in A)
        if hom(element_of(A, n_prime)) != element_of(pre, n):
            raise AssertionError(f"f⁻¹ disagrees with its encoding at {sorted(A)}")
    return StateHom(hom, psi_object(f.target), psi_object(f.source))


def image_and_preimage_characterizations(tau: OperatorSpec) -> LawReport:
    """Check ``F ∈ g(Ω) ⇔ F∩Ker τ = ∅`` and ``g⁻¹(F) = {H : H ⊇ τ(F)}`` for every ``F``."""
    B = tau.algebra
    _require_boolean(B)
    pair = phi_object(tau)
    elems = list(B.elements())
    kernel = [a for a in elems if tau(a) == B.zero]
    image = set(pair.g)
    report = LawReport("image and preimage of g")
    bad_image = bad_pre = None
    k = len(B.signature)
    for x in range(k):
        F = Ultrafilter(x)
        disjoint = not any(a in F for a in kernel)
        if (x in image) != disjoint and bad_image is None:
            bad_image = f"F_{x}: in image={x in image}, F∩Ker τ empty={disjoint}"
        tau_F = [tau(a) for a in elems if a in F]
        above = frozenset(y for y in range(k) if all(b in Ultrafilter(y) for b in tau_F))
        if above != frozenset(y for y in range(k) if pair.g[y] == x) and bad_pre is None:
            bad_pre = f"F_{x}: g⁻¹(F)≠{{H ⊇ τ(F)}}"
    report.results["F ∈ g(Ω(B)) ⇔ F∩Ker(τ)=∅"] = bad_image
    report.results["g⁻¹(F) = {H : H ⊇ τ(F)}"] = bad_pre
    return report


# ---------------------------------------------------------------- round trips

def _product_doc(tau: OperatorSpec) -> dict:
    return {"kind": "product", "chains": list(tau.signature.orders), "sigma": list(tau.sigma)}


def _stone_doc(pair: StoneStatePair) -> dict:
    return {"kind": "stone", "points": list(pair.points), "g": list(pair.g)}


def verify_algebra_roundtrip(tau: OperatorSpec) -> DualityCertificate:
    """``ψ(φ(B, τ)) ≅ (B, τ)`` via ``u``, with ``u∘τ = s_g∘u``."""
    B = tau.algebra
    _require_boolean(B)
    k = len(B.signature)
    pair = phi_object(tau)
    s_g = psi_object(pair)
    _, u = stone_space(B)
    elems = list(B.elements())
    table = {a: u(a) for a in elems}
    cert = DualityCertificate(
        ALGEBRA_SIDE, _product_doc(tau),
        {"g": list(pair.g),
         "u": [[list(a.numerators), sorted(table[a])] for a in elems]})
    cert.record("u bijective onto B(Ω(B))", set(table.values()) == set(all_subsets(k)) and len(elems) == 2 ** k)
    omega = frozenset(range(k))
    cert.record("u(0)=∅", not table[B.zero])
    for a in elems:
        cert.record("u(a*)=Ω∖u(a)", table[star(a)] == omega - table[a], lambda: str(a))
        cert.record("u∘τ=s_g∘u", table[tau(a)] == pair.preimage(table[a]), lambda: str(a))
        cert.record("s_g(u(a))=u(τ(a))", s_g(element_of(table[a], k)) == element_of(table[tau(a)], k), lambda: str(a))
        for b in elems:
            cert.record("u(a⊕b)=u(a)∪u(b)", table[oplus(a, b)] == table[a] | table[b], lambda: f"{a}, {b}")
    return cert


def verify_space_roundtrip(pair: StoneStatePair) -> DualityCertificate:
    """``φ(ψ(Ω, g)) ≅ (Ω, g)`` via ``v(x) = {A : x ∈ A}``, with ``v∘g = g′∘v``."""
    n = len(pair)
    tau = psi_object(pair)
    back = phi_object(tau)
    B = tau.algebra
    subsets = all_subsets(n)
    v_sets = [frozenset(A for A in subsets if x in A) for x in range(n)]
    v = [_identify(frozenset(element_of(A, n) for A in S), B) for S in v_sets]
    cert = DualityCertificate(
        SPACE_SIDE, _stone_doc(pair),
        {"g_prime": list(back.g),
         "v": [sorted(sorted(A) for A in S) for S in v_sets]})
    cert.record("v bijective onto Ω(B(Ω))", sorted(v) == list(range(len(back))))
    for x in range(n):
        cert.record("v∘g=g′∘v", v[pair.g[x]] == back.g[v[x]], lambda: f"x={pair.points[x]}")
    return cert


def verify_duality(obj) -> DualityCertificate:
    if isinstance(obj, OperatorSpec):
        return verify_algebra_roundtrip(obj)
    if isinstance(obj, StoneStatePair):
        return verify_space_roundtrip(obj)
    raise TypeError(f"no Boolean duality for {type(obj).__name__}")


def replay_algebra_certificate(cert: DualityCertificate) -> list[str]:
    """Re-check ``u`` as a bijective hom with ``u∘τ = s_g∘u`` from stored data."""
    tau = OperatorSpec(cert.subject["chains"], cert.subject["sigma"])
    B = tau.algebra
    k = len(B.signature)
    g = StoneStatePair.indexed(cert.witness["g"])
    u = {MvElement(B.signature, tuple(nums)): frozenset(A) for nums, A in cert.witness["u"]}
    out = []
    if set(u) != set(B.elements()) or len(cert.witness["u"]) != B.size:
        out.append("u is not defined exactly once on every element")
        return out
    if set(u.values()) != set(all_subsets(k)):
        out.append("u is not a bijection onto the clopen algebra")
    omega = frozenset(range(k))
    if u[B.zero]:
        out.append("u(0)≠∅")
    for a in u:
        if u[star(a)] != omega - u[a]:
            out.append(f"u(a*)≠Ω∖u(a) at a={a}")
        if u[tau(a)] != g.preimage(u[a]):
            out.append(f"u(τ(a))≠g⁻¹(u(a)) at a={a}")
        for b in u:
            if u[oplus(a, b)] != u[a] | u[b]:
                out.append(f"u(a⊕b)≠u(a)∪u(b) at a={a}, b={b}")
    return out


def replay_space_certificate(cert: DualityCertificate) -> list[str]:
    """Re-check that ``v`` lists distinct ultrafilters and ``v(g(x)) = s_g⁻¹(v(x))``."""
    pair = StoneStatePair(cert.subject["points"], cert.subject["g"])
    n = len(pair)
    v = [frozenset(frozenset(A) for A in S) for S in cert.witness["v"]]
    out = []
    if len(v) != n:
        return ["v is not defined on every point"]
    subsets = all_subsets(n)
    ultrafilters = {frozenset(A for A in subsets if y in A) for y in range(n)}
    if set(v) != ultrafilters or len(set(v)) != n:
        out.append("v is not a bijection onto the ultrafilters of B(Ω)")
    for x in range(n):
        g_prime_vx = frozenset(A for A in subsets if pair.preimage(A) in v[x])
        if v[pair.g[x]] != g_prime_vx:
            out.append(f"v(g(x))≠g′(v(x)) at x={pair.points[x]}")
    return out
