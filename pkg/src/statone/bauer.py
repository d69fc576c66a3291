"""The functors ``S`` and ``T`` between rational cube algebras and finite Bauer simplices.

A finite Bauer simplex is the standard simplex on ``k`` vertices.  Its algebra
of affine ``[0,1]``-valued functions is realised as the rational cube
``([0,1]∩ℚ)^k`` of vertex values; that algebra is divisible, but it is only
*finitely* complete, since suprema of rational sequences can be irrational.
Certificates carry that label.

Affine objects are stored by vertex data.  Sample-point checks at interior
rational points guard the affine extensions but do not add proof.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .certificates import DualityCertificate
from .errors import IntertwiningError, InvalidOperatorError
from .operators import sigma_problem
from .simplex import AffineFunctionElement, AffineSelfMap, RationalState

ALGEBRA_SIDE = "bauer-algebra"
SPACE_SIDE = "bauer-space"
COMPLETENESS = "finite-complete"
SAMPLES = 100


@dataclass(frozen=True)
class FiniteBauerSimplex:
    vertex_count: int
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.vertex_count < 1:
            raise ValueError("a simplex needs at least one vertex")
        if self.labels is not None and len(self.labels) != self.vertex_count:
            raise ValueError("one label per vertex")

    def vertex(self, j: int) -> RationalState:
        return RationalState.vertex(self.vertex_count, j)

    def vertices(self) -> list[RationalState]:
        return [self.vertex(j) for j in range(self.vertex_count)]

    def label(self, j: int) -> str:
        return self.labels[j] if self.labels else f"v{j}"


def _idempotent_vertex_map(sigma, k: int) -> tuple[int, ...]:
    sigma = tuple(int(i) for i in sigma)
    problem = sigma_problem((1,) * k, sigma)
    if problem:
        raise InvalidOperatorError(problem)
    return sigma


@dataclass(frozen=True)
class BauerObject:
    """``(Ω, g)``: a simplex with an affine idempotent ``g`` that keeps vertices vertices."""

    simplex: FiniteBauerSimplex
    g: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "g", _idempotent_vertex_map(self.g, self.simplex.vertex_count))

    @classmethod
    def standard(cls, g) -> "BauerObject":
        return cls(FiniteBauerSimplex(len(g)), tuple(g))

    @property
    def k(self) -> int:
        return self.simplex.vertex_count

    def __call__(self, x: RationalState) -> RationalState:
        return AffineSelfMap(self.g)(x)


@dataclass(frozen=True)
class CubeAlgebra:
    """``([0,1]∩ℚ)^dim`` with pointwise Łukasiewicz operations."""

    dim: int

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be positive")

    def element(self, *values) -> AffineFunctionElement:
        if len(values) != self.dim:
            raise ValueError(f"need {self.dim} values")
        return AffineFunctionElement(values)

    @property
    def zero(self) -> AffineFunctionElement:
        return AffineFunctionElement((0,) * self.dim)

    @property
    def one(self) -> AffineFunctionElement:
        return AffineFunctionElement((1,) * self.dim)

    def basis(self) -> list[AffineFunctionElement]:
        """The Boolean atoms ``δ_i``; an affine map on the cube is fixed by them."""
        return [AffineFunctionElement(tuple(int(i == j) for j in range(self.dim))) for i in range(self.dim)]

    def divide(self, a: AffineFunctionElement, n: int) -> AffineFunctionElement:
        return AffineFunctionElement(tuple(v / n for v in a.values))

    def is_weakly_divisible_at(self, n: int) -> bool:
        v = self.divide(self.one, n)
        return nmul(v, n) == self.one


def partial_add(a: AffineFunctionElement, b: AffineFunctionElement) -> AffineFunctionElement | None:
    return a.oplus(b) if a.leq(b.star()) else None


def nmul(a: AffineFunctionElement, n: int) -> AffineFunctionElement | None:
    acc = AffineFunctionElement((0,) * len(a))
    for _ in range(n):
        acc = partial_add(acc, a)
        if acc is None:
            return None
    return acc


@dataclass(frozen=True)
class CubeOperator:
    """``τ(f)_j = f_{σ(j)}`` on a cube algebra, ``σ`` idempotent."""

    dim: int
    sigma: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "sigma", _idempotent_vertex_map(self.sigma, self.dim))

    def __call__(self, f: AffineFunctionElement) -> AffineFunctionElement:
        return AffineFunctionElement(tuple(f.values[i] for i in self.sigma))


@dataclass(frozen=True)
class CubeHom:
    """``h(f)_q = f_{λ(q)}`` from ``cube^source_dim`` to ``cube^target_dim``."""

    source_dim: int
    target_dim: int
    source_of: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "source_of", tuple(int(i) for i in self.source_of))
        if len(self.source_of) != self.target_dim or not all(0 <= i < self.source_dim for i in self.source_of):
            raise InvalidOperatorError("every target coordinate needs a source coordinate")

    def __call__(self, f: AffineFunctionElement) -> AffineFunctionElement:
        return AffineFunctionElement(tuple(f.values[i] for i in self.source_of))

    def then(self, other: "CubeHom") -> "CubeHom":
        return CubeHom(self.source_dim, other.target_dim, tuple(self.source_of[i] for i in other.source_of))


@dataclass(frozen=True)
class CubeStateHom:
    """A cube homomorphism with ``h∘τ = τ′∘h``."""

    hom: CubeHom
    source: CubeOperator
    target: CubeOperator

    def __post_init__(self):
        if self.hom.source_dim != self.source.dim or self.hom.target_dim != self.target.dim:
            raise ValueError("homomorphism endpoints do not match the operators")
        lam = self.hom.source_of
        for q in range(len(lam)):
            if self.source.sigma[lam[q]] != lam[self.target.sigma[q]]:
                raise IntertwiningError(f"h∘τ≠τ′∘h at coordinate {q}")

    def __call__(self, f):
        return self.hom(f)

    def then(self, other: "CubeStateHom") -> "CubeStateHom":
        return CubeStateHom(self.hom.then(other.hom), self.source, other.target)

    @classmethod
    def identity(cls, tau: CubeOperator) -> "CubeStateHom":
        return cls(CubeHom(tau.dim, tau.dim, tuple(range(tau.dim))), tau, tau)


@dataclass(frozen=True)
class BauerMorphism:
    """Affine ``p`` sending vertex ``j`` to vertex ``vertex_map[j]``, with ``p∘g = g′∘p``."""

    source: BauerObject
    target: BauerObject
    vertex_map: tuple[int, ...]

    def __post_init__(self):
        pi = tuple(int(i) for i in self.vertex_map)
        object.__setattr__(self, "vertex_map", pi)
        if len(pi) != self.source.k or not all(0 <= i < self.target.k for i in pi):
            raise InvalidOperatorError("vertices must go to vertices")
        for j in range(self.source.k):
            if pi[self.source.g[j]] != self.target.g[pi[j]]:
                raise IntertwiningError(f"p∘g≠g′∘p at vertex {j}")

    def __call__(self, x: RationalState) -> RationalState:
        out = [Fraction(0)] * self.target.k
        for j, w in enumerate(x.weights):
            if w:
                out[self.vertex_map[j]] += w
        return RationalState(tuple(out))

    def then(self, other: "BauerMorphism") -> "BauerMorphism":
        return BauerMorphism(self.source, other.target, tuple(other.vertex_map[i] for i in self.vertex_map))

    @classmethod
    def identity(cls, obj: BauerObject) -> "BauerMorphism":
        return cls(obj, obj, tuple(range(obj.k)))


# ------------------------------------------------------------------ helpers

def _vertex_of(x: RationalState) -> int:
    if not x.is_extremal:
        raise InvalidOperatorError(f"{x} is not a vertex")
    return x.weights.index(1)


def _weights_from_functional(fn, dim: int) -> RationalState:
    """Weights of a state known only as a functional ``f ↦ s(f)`` on the cube."""
    return RationalState(tuple(fn(d) for d in CubeAlgebra(dim).basis()))


def compose(f: AffineFunctionElement, p) -> AffineFunctionElement:
    """``f∘p`` for an affine ``p`` from a ``k``-simplex, evaluated at the vertex images."""
    return AffineFunctionElement(tuple(f(y) for y in _vertex_images(p)))


def _vertex_images(p) -> tuple[RationalState, ...]:
    k = len(p.vertex_map) if isinstance(p, BauerMorphism) else len(p.g)
    return tuple(p(RationalState.vertex(k, j)) for j in range(k))


def random_point(rng: random.Random, k: int) -> RationalState:
    raw = [rng.randint(1, 30) for _ in range(k)]
    total = sum(raw)
    return RationalState(tuple(Fraction(r, total) for r in raw))


def random_element(rng: random.Random, k: int) -> AffineFunctionElement:
    d = rng.randint(1, 12)
    return AffineFunctionElement(tuple(Fraction(rng.randint(0, d), d) for _ in range(k)))


# ----------------------------------------------------------------- functors

def functor_T(obj: BauerObject) -> tuple[CubeAlgebra, CubeOperator]:
    """``T(Ω, g) = (A(Ω), τ_g)`` with ``τ_g(f) = f∘g``.

    ``σ`` is read from ``τ_g(δ_i)_j = δ_i(g(e_j))``, i.e. from composing.
    """
    A = CubeAlgebra(obj.k)
    images = [compose(d, obj) for d in A.basis()]
    sigma = tuple(next(i for i, img in enumerate(images) if img.values[j] == 1) for j in range(obj.k))
    return A, CubeOperator(obj.k, sigma)


def functor_S(A: CubeAlgebra, tau: CubeOperator) -> BauerObject:
    """``S(A, τ) = (S(A), g)`` with ``g(s) = s∘τ``; vertices are coordinate evaluations."""
    if tau.dim != A.dim:
        raise ValueError("operator and algebra differ in dimension")
    g = []
    for j in range(A.dim):
        e = RationalState.vertex(A.dim, j)
        g.append(_vertex_of(_weights_from_functional(lambda f: tau(f)(e), A.dim)))
    return BauerObject.standard(g)


def transport_S(h: CubeStateHom) -> BauerMorphism:
    """``S(h)(s′) = s′∘h``, from ``S(A′, τ′)`` to ``S(A, τ)``."""
    k_prime = h.hom.target_dim
    pi = []
    for q in range(k_prime):
        e = RationalState.vertex(k_prime, q)
        pi.append(_vertex_of(_weights_from_functional(lambda f: h(f)(e), h.hom.source_dim)))
    return BauerMorphism(functor_S(CubeAlgebra(k_prime), h.target),
                         functor_S(CubeAlgebra(h.hom.source_dim), h.source), tuple(pi))


def transport_T(p: BauerMorphism) -> CubeStateHom:
    """``T(p)(f) = f∘p``, from ``T(Ω′, g′)`` to ``T(Ω, g)``."""
    k, k_prime = p.source.k, p.target.k
    images = [compose(d, p) for d in CubeAlgebra(k_prime).basis()]
    lam = tuple(next(i for i, img in enumerate(images) if img.values[j] == 1) for j in range(k))
    return CubeStateHom(CubeHom(k_prime, k, lam), functor_T(p.target)[1], functor_T(p.source)[1])


def evaluation_state(x: RationalState):
    """``p(x)``: the state ``f ↦ f(x)`` on ``A(Ω)``."""
    return lambda f: f(x)


def evaluation_map(obj: BauerObject) -> BauerMorphism:
    """``p: Ω → S(A(Ω))`` with ``p(x)(f) = f(x)``, as a morphism into ``S(T(Ω, g))``."""
    back = functor_S(*functor_T(obj))
    pi = tuple(_vertex_of(_weights_from_functional(evaluation_state(v), obj.k)) for v in obj.simplex.vertices())
    return BauerMorphism(obj, back, pi)


# ---------------------------------------------------------------- round trips

def _q(x) -> str:
    return str(Fraction(x))


def _qs(xs) -> list[str]:
    return [_q(x) for x in xs]


def verify_algebra_roundtrip(tau: CubeOperator, samples: int = SAMPLES, seed: int = 0) -> DualityCertificate:
    """``T∘S(A, τ) ≅ (A, τ)`` via ``hat(a)(s) = s(a)``."""
    A = CubeAlgebra(tau.dim)
    k = tau.dim
    obj = functor_S(A, tau)
    A2, tau2 = functor_T(obj)
    rng = random.Random(seed)
    states = [RationalState.vertex(k, j) for j in range(k)]

    def hat(a: AffineFunctionElement) -> AffineFunctionElement:
        return AffineFunctionElement(tuple(a(s) for s in states))

    elems = [A.zero, A.one] + A.basis() + [random_element(rng, k) for _ in range(samples)]
    cert = DualityCertificate(
        ALGEBRA_SIDE, {"kind": "cube", "dim": k, "sigma": list(tau.sigma)},
        {"g": list(obj.g), "sigma_prime": list(tau2.sigma),
         "hat": []},
        completeness=COMPLETENESS)
    cert.record("S(A,τ) vertex map idempotent", AffineSelfMap(obj.g).is_idempotent)
    cert.record("hat(0)=0", hat(A.zero) == A2.zero)
    hats = [hat(a) for a in elems]
    images = _vertex_images(obj)
    for a, ha in zip(elems, hats):
        cert.witness["hat"].append([_qs(a.values), _qs(ha.values)])
        t_ha = tau2(ha)
        cert.record("hat bijective (vertex values recover a)", ha.values == a.values, lambda: str(a))
        cert.record("hat(a*)=hat(a)*", hat(a.star()) == ha.star(), lambda: str(a))
        cert.record("hat∘τ=τ_g∘hat", hat(tau(a)) == t_ha, lambda: str(a))
        cert.record("τ_g(f)=f∘g", t_ha.values == tuple(ha(y) for y in images), lambda: str(a))
    for (a, ha), (b, hb) in zip(zip(elems, hats), zip(elems[1:] + elems[:1], hats[1:] + hats[:1])):
        cert.record("hat(a⊕b)=hat(a)⊕hat(b)", hat(a.oplus(b)) == ha.oplus(hb), lambda: f"{a}, {b}")
    return cert


def verify_space_roundtrip(obj: BauerObject, samples: int = SAMPLES, seed: int = 0) -> DualityCertificate:
    """``S∘T(Ω, g) ≅ (Ω, g)`` via the evaluation map, with ``p∘g = g′∘p``."""
    k = obj.k
    p = evaluation_map(obj)
    back = p.target
    rng = random.Random(seed)
    pts = obj.simplex.vertices() + [random_point(rng, k) for _ in range(samples)]
    tests = CubeAlgebra(k).basis() + [random_element(rng, k) for _ in range(3)]
    cert = DualityCertificate(
        SPACE_SIDE, {"kind": "bauer", "vertices": k, "g": list(obj.g)},
        {"g_prime": list(back.g), "vertex_map": list(p.vertex_map),
         "points": []},
        completeness=COMPLETENESS)
    cert.record("p bijective on vertices", sorted(p.vertex_map) == list(range(k)))
    g_prime = AffineSelfMap(back.g)
    pxs = [p(x) for x in pts]
    for x, px in zip(pts, pxs):
        cert.witness["points"].append([_qs(x.weights), _qs(px.weights)])
        cert.record("p(x)(f)=f(x)", all(f(px) == f(x) for f in tests), lambda: str(x))
        cert.record("p∘g=g′∘p", p(obj(x)) == g_prime(px), lambda: str(x))
    for i in range(len(pts) - 1):
        lam = Fraction(rng.randint(1, 9), 10)
        cert.record("p affine",
                    p(RationalState.mix(lam, pts[i], pts[i + 1])) == RationalState.mix(lam, pxs[i], pxs[i + 1]),
                    lambda: f"{pts[i]}, {pts[i + 1]}")
    return cert


def verify_bauer_duality(obj, **kw) -> DualityCertificate:
    if isinstance(obj, CubeOperator):
        return verify_algebra_roundtrip(obj, **kw)
    if isinstance(obj, BauerObject):
        return verify_space_roundtrip(obj, **kw)
    raise TypeError(f"no Bauer duality for {type(obj).__name__}")


def replay_algebra_certificate(cert: DualityCertificate) -> list[str]:
    """Recheck stored ``(a, hat(a))`` pairs: vertex evaluation, hom laws and intertwining."""
    tau = CubeOperator(cert.subject["dim"], cert.subject["sigma"])
    k = tau.dim
    tau2 = CubeOperator(k, cert.witness["sigma_prime"])
    g = AffineSelfMap(cert.witness["g"])
    out = []
    if not g.is_idempotent:
        out.append("stored g is not idempotent")
    pairs = [(AffineFunctionElement(tuple(map(Fraction, a))), AffineFunctionElement(tuple(map(Fraction, h))))
             for a, h in cert.witness["hat"]]
    table = dict(pairs)
    for a, h in pairs:
        if h.values != tuple(a(RationalState.vertex(k, j)) for j in range(k)):
            out.append(f"hat({a}) is not s ↦ s(a)")
        if tau2(h).values != tuple(h(g(RationalState.vertex(k, j))) for j in range(k)):
            out.append(f"τ′({h}) is not h∘g")
        if tau(a) in table and table[tau(a)] != tau2(h):
            out.append(f"hat(τ(a))≠τ′(hat(a)) at a={a}")
        if tau2(h).values != tuple(tau(a)(RationalState.vertex(k, j)) for j in range(k)):
            out.append(f"hat∘τ≠τ′∘hat at a={a}")
    return out


def replay_space_certificate(cert: DualityCertificate) -> list[str]:
    """Recheck stored ``(x, p(x))`` pairs: ``p(x)(δ_i) = x_i`` and ``p(g(x)) = g′(p(x))``."""
    obj = BauerObject.standard(cert.subject["g"])
    k = obj.k
    g_prime = AffineSelfMap(cert.witness["g_prime"])
    out = []
    if not g_prime.is_idempotent:
        out.append("stored g′ is not idempotent")
    basis = CubeAlgebra(k).basis()
    stored = {RationalState(tuple(map(Fraction, x))): RationalState(tuple(map(Fraction, px)))
              for x, px in cert.witness["points"]}
    for x, px in stored.items():
        if px.weights != tuple(d(x) for d in basis):
            out.append(f"p({x}) is not f ↦ f(x)")
        gx = obj(x)
        p_gx = RationalState(tuple(d(gx) for d in basis))
        if p_gx != g_prime(px):
            out.append(f"p(g(x))≠g′(p(x)) at x={x}")
    return out
