"""Acceptance gate: one test per criterion, each timed against its budget.

Every test records a ``PASS``/``FAIL criterion N`` line; the lines are echoed
in the pytest terminal summary.  Expected values come from brute-force
oracles in :mod:`oracles`, never from the code under test.
"""
import itertools
import random
import time

from acceptance_log import record
from oracles import boolean_preimage_map, idempotent_maps
from statone.bauer import (
    BauerMorphism,
    BauerObject,
    CubeAlgebra,
    CubeHom,
    CubeOperator,
    CubeStateHom,
    transport_S,
    transport_T,
    verify_bauer_duality,
)
from statone.mv import AlgebraHom, ProductMvAlgebra, TableMvAlgebra, check_mv_axioms
from statone.operators import OperatorSpec, StateHom, enumerate_state_morphism_operators, sweep_unary_tables
from statone.errors import InvalidOperatorError
from statone.simplex import build_M_of_A, tau_g_and_intertwine
from statone.stone import (
    SpaceMorphism,
    StoneStatePair,
    image_and_preimage_characterizations,
    phi_morphism,
    phi_object,
    psi_morphism,
    psi_object,
    verify_duality,
)

IDEMPOTENT_COUNTS = [1, 3, 10, 41, 196]


def random_signatures(count=20, seed=1):
    rng = random.Random(seed)
    return [[rng.randint(1, 6) for _ in range(rng.randint(1, 4))] for _ in range(count)]


def all_boolean_instances():
    return [(k, s) for k in range(1, 6) for s in idempotent_maps(k)]


# ----------------------------------------------------------------- criterion 1

def test_criterion_1_boolean_duality():
    start = time.perf_counter()
    instances = all_boolean_instances()
    counts = [sum(1 for k, _ in instances if k == j) for j in range(1, 6)]
    enumerated = [(k, o.sigma) for k in range(1, 6) for o in enumerate_state_morphism_operators([1] * k)]
    failures = [] if sorted(enumerated) == sorted(instances) else [("enumeration differs from brute force",)]
    for k, sigma in instances:
        alg_cert = verify_duality(OperatorSpec([1] * k, sigma))
        space_cert = verify_duality(StoneStatePair.indexed(sigma))
        if not (alg_cert.passed and space_cert.passed):
            failures.append((sigma, alg_cert.failures[:1], space_cert.failures[:1]))
    elapsed = time.perf_counter() - start
    ok = not failures and counts == IDEMPOTENT_COUNTS
    record(1, ok, elapsed, 10, f"ψφ and φψ round trips on {len(instances)} Boolean instances "
                               f"(per size {counts}), {len(failures)} failures")
    assert ok, failures[:3]
    assert elapsed < 10


# ----------------------------------------------------------------- criterion 2

def test_criterion_2_image_and_preimage():
    start = time.perf_counter()
    failures = []
    for k, sigma in all_boolean_instances():
        tau = OperatorSpec([1] * k, sigma)
        if not image_and_preimage_characterizations(tau).passed:
            failures.append(sigma)
        # independent cross-check of g itself, from subsets of atoms
        if list(phi_object(tau).g) != boolean_preimage_map(k, lambda A: frozenset(x for x in range(k) if sigma[x] in A)):
            failures.append(("g", sigma))
    elapsed = time.perf_counter() - start
    record(2, not failures, elapsed, 10, f"F∈g(Ω) ⇔ F∩Ker τ=∅ and g⁻¹(F)={{H ⊇ τ(F)}} on 251 instances, "
                                        f"{len(failures)} failures")
    assert not failures
    assert elapsed < 10


# ----------------------------------------------------------------- criterion 3

def test_criterion_3_every_state_operator_is_a_morphism():
    start = time.perf_counter()
    found = []
    ok = True
    for k, expected in ((2, 3), (3, 10)):
        A = ProductMvAlgebra([1] * k)
        sweep = sweep_unary_tables(A.to_table(), cap=8)
        structural = {OperatorSpec([1] * k, s).table()[1] for s in idempotent_maps(k)}
        ops, morphs = set(sweep.state_operators), set(sweep.state_morphisms)
        ok &= sweep.swept == (2 ** k) ** (2 ** k)
        ok &= ops == morphs == structural and len(ops) == expected
        found.append(f"{sweep.swept} tables → {len(ops)} operators, {len(morphs)} morphisms")
    elapsed = time.perf_counter() - start
    record(3, ok, elapsed, 60, "; ".join(found))
    assert ok
    assert elapsed < 60


# ----------------------------------------------------------------- criterion 4

def test_criterion_4_finite_representation():
    start = time.perf_counter()
    failures = []
    for orders in random_signatures():
        M = build_M_of_A(ProductMvAlgebra(orders))
        if not M.report.passed or len(M) != ProductMvAlgebra(orders).size:
            failures.append((orders, M.report.failures()))
    elapsed = time.perf_counter() - start
    record(4, not failures, elapsed, 10, f"hat: A → M(A) bijective MV-homomorphism on 20 random signatures, "
                                        f"{len(failures)} failures")
    assert not failures
    assert elapsed < 10


# ----------------------------------------------------------------- criterion 5

def test_criterion_5_intertwining():
    start = time.perf_counter()
    failures, operators = [], 0
    for orders in random_signatures():
        for tau in enumerate_state_morphism_operators(orders):
            operators += 1
            report = tau_g_and_intertwine(tau)
            if not report.passed:
                failures.append((orders, tau.sigma, report.failures()))
    elapsed = time.perf_counter() - start
    record(5, not failures, elapsed, 30, f"hat∘τ = τ_g∘hat for {operators} operators over the 20 algebras, "
                                        f"{len(failures)} failures")
    assert not failures
    assert elapsed < 30


# ----------------------------------------------------------------- criterion 6

def test_criterion_6_bauer_duality():
    start = time.perf_counter()
    failures, instances, points = [], 0, 0
    for k, sigma in all_boolean_instances():
        instances += 1
        alg = verify_bauer_duality(CubeOperator(k, sigma), samples=100)
        space = verify_bauer_duality(BauerObject.standard(sigma), samples=100)
        points += len(space.witness["points"])
        if not (alg.passed and space.passed):
            failures.append((sigma, alg.failures[:1], space.failures[:1]))
    elapsed = time.perf_counter() - start
    record(6, not failures, elapsed, 30, f"T∘S and S∘T on {instances} simplices, {points} points "
                                        f"(vertices + 100 rational samples each), {len(failures)} failures")
    assert not failures
    assert elapsed < 30


# ----------------------------------------------------------------- criterion 7

def _lambda_maps(src_sigma, dst_sigma):
    """Coordinate maps λ: dst → src with σ_src∘λ = λ∘σ_dst."""
    ks, kd = len(src_sigma), len(dst_sigma)
    return [lam for lam in itertools.product(range(ks), repeat=kd)
            if all(src_sigma[lam[q]] == lam[dst_sigma[q]] for q in range(kd))]


def composable_pairs(limit=12, seed=0):
    """``(σ_a, σ_b, σ_c, λ1, λ2)`` with ``λ1``: b → a and ``λ2``: c → b both intertwining."""
    objects = [s for k in range(1, 4) for s in idempotent_maps(k)]
    triples = list(itertools.product(objects, repeat=3))
    random.Random(seed).shuffle(triples)
    out = []
    for a, b, c in triples:
        l1, l2 = _lambda_maps(a, b), _lambda_maps(b, c)
        if l1 and l2 and len(b) > 1:
            out.append((a, b, c, l1[-1], l2[-1]))
        if len(out) == limit:
            break
    return out


def test_criterion_7_functoriality():
    start = time.perf_counter()
    pairs = composable_pairs()
    bad = []
    for a, b, c, lam1, lam2 in pairs:
        ta, tb, tc = (OperatorSpec([1] * len(s), s) for s in (a, b, c))
        h1 = StateHom(AlgebraHom([1] * len(a), [1] * len(b), lam1), ta, tb)
        h2 = StateHom(AlgebraHom([1] * len(b), [1] * len(c), lam2), tb, tc)
        if phi_morphism(h1.then(h2)) != phi_morphism(h2).then(phi_morphism(h1)):
            bad.append(("φ", a, b, c))
        f1, f2 = phi_morphism(h2), phi_morphism(h1)
        if psi_morphism(f1.then(f2)) != psi_morphism(f2).then(psi_morphism(f1)):
            bad.append(("ψ", a, b, c))
        ca, cb, cc = (CubeOperator(len(s), s) for s in (a, b, c))
        k1 = CubeStateHom(CubeHom(len(a), len(b), lam1), ca, cb)
        k2 = CubeStateHom(CubeHom(len(b), len(c), lam2), cb, cc)
        if transport_S(k1.then(k2)) != transport_S(k2).then(transport_S(k1)):
            bad.append(("S", a, b, c))
        p1, p2 = transport_S(k2), transport_S(k1)
        if transport_T(p1.then(p2)) != transport_T(p2).then(transport_T(p1)):
            bad.append(("T", a, b, c))
    identities = 0
    for k in range(1, 4):
        for s in idempotent_maps(k):
            identities += 1
            tau, pair = OperatorSpec([1] * k, s), StoneStatePair.indexed(s)
            cube, obj = CubeOperator(k, s), BauerObject.standard(s)
            if phi_morphism(StateHom.identity(tau)) != SpaceMorphism.identity(phi_object(tau)):
                bad.append(("φ id", s))
            if psi_morphism(SpaceMorphism.identity(pair)) != StateHom.identity(psi_object(pair)):
                bad.append(("ψ id", s))
            if transport_S(CubeStateHom.identity(cube)) != BauerMorphism.identity(obj):
                bad.append(("S id", s))
            if transport_T(BauerMorphism.identity(obj)) != CubeStateHom.identity(cube):
                bad.append(("T id", s))
    elapsed = time.perf_counter() - start
    ok = not bad and len(pairs) >= 10
    record(7, ok, elapsed, 5, f"φ, ψ, S, T reverse composition on {len(pairs)} composable pairs and fix "
                             f"identities on {identities} objects, {len(bad)} failures")
    assert ok, bad[:3]
    assert elapsed < 5


# ----------------------------------------------------------------- criterion 8

def test_criterion_8_negative_controls():
    start = time.perf_counter()
    outcomes = {}
    try:
        OperatorSpec([1, 1], [1, 0])
        outcomes["swap rejected"] = False
    except InvalidOperatorError as exc:
        outcomes["swap rejected"] = str(exc).startswith("idempotence")
    table = ProductMvAlgebra([1]).to_table()
    corrupted = [list(r) for r in table.oplus]
    corrupted[1][1] = 0
    report = check_mv_axioms(TableMvAlgebra(corrupted, table.star, table.zero))
    outcomes["1⊕1 corruption caught by x⊕1=1"] = report.results["x⊕1=1"] is not None
    outcomes["S₂ has no v with 3·v=1"] = not ProductMvAlgebra([2]).is_weakly_divisible_at(3)
    outcomes["cube³ divisible for n ≤ 10"] = all(CubeAlgebra(3).is_weakly_divisible_at(n) for n in range(1, 11))
    elapsed = time.perf_counter() - start
    ok = all(outcomes.values())
    record(8, ok, elapsed, 1, ", ".join(f"{k}: {'yes' if v else 'NO'}" for k, v in outcomes.items()))
    assert ok, outcomes
    assert elapsed < 1


# ----------------------------------------------------------------- criterion 9

OUT_OF_SCOPE = {
    "σ-complete suprema of the function algebra": "rational cube is finite-complete only; certificates say so "
                                                  "(criterion 6)",
    "basically disconnected extreme boundary": "finite discrete boundary, every subset clopen (criteria 1–2)",
    "Baire category and Tietze extension arguments": "vertex-value representation M(A) (criteria 4–5)",
}


def test_criterion_9_infinite_claims_are_out_of_scope():
    start = time.perf_counter()
    cert = verify_bauer_duality(CubeOperator(2, [0, 1]), samples=5)
    # the surrogate is labelled, never passed off as the infinite statement
    ok = cert.completeness == "finite-complete"
    elapsed = time.perf_counter() - start
    detail = "not reproduced, by design: " + "; ".join(f"{k} → {v}" for k, v in OUT_OF_SCOPE.items())
    record(9, ok, elapsed, 5, detail)
    assert ok
