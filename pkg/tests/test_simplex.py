import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import luk_oplus
from statone.mv import ProductMvAlgebra
from statone.operators import OperatorSpec, enumerate_state_morphism_operators
from statone.simplex import (
    AffineFunctionElement,
    RationalState,
    build_M_of_A,
    check_induced_g,
    discrete_state_decomposition,
    discreteness_level,
    evaluate,
    extremal_states,
    hat,
    induced_affine_g,
    is_state,
    is_state_morphism,
    kernel,
    tau_g,
    tau_g_and_intertwine,
    value_set,
)

A1 = ProductMvAlgebra([2, 4, 3])
S = RationalState((Fraction(1, 2), Fraction(1, 4), Fraction(1, 4)))


@st.composite
def rational_states(draw, k):
    raw = draw(st.lists(st.integers(0, 20), min_size=k, max_size=k).filter(any))
    total = sum(raw)
    return RationalState(tuple(Fraction(r, total) for r in raw))


# ----------------------------------------------------------------- states

def test_state_validation():
    with pytest.raises(ValueError):
        RationalState((Fraction(1, 2), Fraction(1, 3)))
    with pytest.raises(ValueError):
        RationalState((Fraction(3, 2), Fraction(-1, 2)))
    with pytest.raises(TypeError):
        RationalState((0.5, 0.5))


def test_evaluation_example():
    a = A1.element(Fraction(1, 2), Fraction(3, 4), Fraction(1, 3))
    assert evaluate(S, a) == Fraction(25, 48)


def test_extremal_states_of_A1():
    es = extremal_states(A1)
    assert len(es) == 3
    assert set(es[1].value_set()) == {Fraction(i, 4) for i in range(5)}
    assert value_set(es[1].as_state, A1) == set(es[1].value_set())
    assert len(extremal_states(ProductMvAlgebra([1]))) == 1


@pytest.mark.parametrize("orders", [[1, 1], [2, 1], [2, 4, 3]])
def test_every_rational_point_is_a_state(orders):
    A = ProductMvAlgebra(orders)
    rng = random.Random(7)
    k = len(orders)
    for _ in range(5):
        raw = [rng.randint(0, 5) for _ in range(k)]
        raw[0] += 1
        s = RationalState(tuple(Fraction(r, sum(raw)) for r in raw))
        assert is_state(s, A)


@pytest.mark.parametrize("orders", [[1, 1], [2, 3], [2, 4, 3]])
def test_state_morphisms_are_exactly_the_vertices(orders):
    A = ProductMvAlgebra(orders)
    k = len(orders)
    for j in range(k):
        e = RationalState.vertex(k, j)
        assert is_state_morphism(lambda a: evaluate(e, a), A)
        # kernel of a state-morphism is the maximal ideal at its coordinate
        assert kernel(e, A) == {a for a in A.elements() if a.numerators[j] == 0}
    mixed = RationalState.mix(Fraction(1, 2), RationalState.vertex(k, 0), RationalState.vertex(k, k - 1))
    assert not is_state_morphism(lambda a: evaluate(mixed, a), A)


def test_decomposition_and_discreteness():
    parts = discrete_state_decomposition(S, A1.signature)
    assert [(w, e.coordinate) for w, e in parts] == [(Fraction(1, 2), 0), (Fraction(1, 4), 1), (Fraction(1, 4), 2)]
    assert [(w, e.coordinate) for w, e in discrete_state_decomposition(RationalState.vertex(3, 1), A1.signature)] \
        == [(1, 1)]
    # s(0, 1/4, 1/3) = 1/16 + 1/12 = 7/48 needs the full denominator
    assert discreteness_level(S, A1) == 48
    assert evaluate(S, A1.element(0, Fraction(1, 4), Fraction(1, 3))) == Fraction(7, 48)


@given(rational_states(3))
def test_decomposition_reassembles(s):
    parts = discrete_state_decomposition(s, A1.signature)
    assert all(w > 0 for w, _ in parts)
    for a in A1.elements():
        assert sum(w * e(a) for w, e in parts) == evaluate(s, a)


@given(rational_states(3))
def test_discreteness_level_by_search(s):
    level = discreteness_level(s, A1)
    values = value_set(s, A1)
    assert all((v * level).denominator == 1 for v in values)
    assert not any(all((v * n).denominator == 1 for v in values) for n in range(1, level))


# --------------------------------------------------------------- induced g

def test_induced_g_example():
    tau = OperatorSpec(A1.signature, [0, 0, 2])
    g = induced_affine_g(tau)
    assert g(S).weights == (Fraction(3, 4), 0, Fraction(1, 4))
    assert induced_affine_g(OperatorSpec.identity(A1.signature)).sigma == (0, 1, 2)


@pytest.mark.parametrize("orders", [[2, 4, 3], [1, 1, 1], [2, 2, 4]])
def test_induced_g_laws(orders):
    for tau in enumerate_state_morphism_operators(orders):
        report = check_induced_g(tau, [S, RationalState((Fraction(1, 3),) * 3)])
        assert report.passed, report


@settings(deadline=None, max_examples=30)
@given(rational_states(3))
def test_g_is_precomposition(s):
    tau = OperatorSpec(A1.signature, [0, 0, 2])
    g = induced_affine_g(tau)
    assert all(evaluate(g(s), a) == evaluate(s, tau(a)) for a in A1.elements())


# ------------------------------------------------------------------ M(A)

def test_M_of_A1():
    M = build_M_of_A(A1)
    assert len(M) == 3 * 5 * 4 == A1.size
    assert M.report.passed, M.report
    M1 = build_M_of_A(ProductMvAlgebra([1]))
    assert {f.values for f in M1.elements} == {(0,), (1,)}


def test_hat_is_vertex_values():
    for a in A1.elements():
        assert hat(a).values == a.values


def test_affine_function_operations():
    f = AffineFunctionElement((Fraction(1, 2), Fraction(3, 4)))
    h = AffineFunctionElement((Fraction(3, 4), 0))
    assert f.oplus(h).values == tuple(luk_oplus(x, y) for x, y in zip(f.values, h.values))
    assert f.star().values == (Fraction(1, 2), Fraction(1, 4))
    x = RationalState((Fraction(1, 3), Fraction(2, 3)))
    assert f(x) == Fraction(1, 6) + Fraction(1, 2)


@pytest.mark.parametrize("seed", range(4))
def test_M_of_A_random_signatures(seed):
    rng = random.Random(seed)
    orders = [rng.randint(1, 6) for _ in range(rng.randint(1, 4))]
    M = build_M_of_A(ProductMvAlgebra(orders))
    assert len(M) == math.prod(n + 1 for n in orders)
    assert M.report.passed, M.report


# ---------------------------------------------------------- intertwining

def test_intertwining_on_A1():
    for tau in enumerate_state_morphism_operators(A1.signature):
        report = tau_g_and_intertwine(tau)
        assert report.passed and report.derived_passed, report


def test_tau_g_pointwise():
    tau = OperatorSpec(A1.signature, [0, 0, 2])
    g = induced_affine_g(tau)
    for a in A1.elements():
        assert tau_g(hat(a), g) == hat(tau(a))
        assert tau_g(tau_g(hat(a), g), g) == tau_g(hat(a), g)
    ident = induced_affine_g(OperatorSpec.identity(A1.signature))
    assert all(tau_g(hat(a), ident) == hat(a) for a in A1.elements())
