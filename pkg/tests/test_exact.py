import random
from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

import randgen as G
from nlbialgebra.errors import DimensionMismatch
from nlbialgebra.exact import (
    Multivector,
    Operator,
    canonical,
    commutator,
    derivation,
    det,
    fmt_multivector,
    iota,
    rational,
    solve_linear,
    wedge,
)


def test_rational_refuses_floats():
    with pytest.raises(TypeError):
        rational(0.5)
    assert rational("6/4") == Fraction(3, 2)
    assert rational(Fraction(0, 5)).denominator == 1


def test_operator_basics():
    n = Operator.from_images([[0, 0, 1], [0, 1, 0], [-1, -1, 1]])
    assert n.column(2) == (-1, -1, 1)
    assert n.T.T == n
    assert n ** 0 == Operator.identity(3)
    assert n @ n.inverse() == Operator.identity(3)
    assert commutator(n, n).is_zero()
    with pytest.raises(DimensionMismatch):
        n @ Operator.identity(2)


@given(st.randoms(use_true_random=False))
def test_operator_composition_associative(rng):
    a, b, c = (G.operator(rng, 3) for _ in range(3))
    assert (a @ b) @ c == a @ (b @ c)
    assert (a @ b).T == b.T @ a.T


def test_multivector_sign_on_access():
    p = Multivector(4, 2, {(1, 2): 1, (0, 3): -1})
    assert p[2, 1] == -1
    assert p[3, 0] == 1
    assert p[1, 1] == 0


def test_wedge_examples():
    x1, x2 = Multivector.basis(3, 0), Multivector.basis(3, 1)
    assert wedge(x1, x1).is_zero()
    assert wedge(x1, x2) == -wedge(x2, x1)
    r = Multivector(4, 2, {(1, 2): 1, (0, 3): -1})
    e2, e3 = (0, 1, 0, 0), (0, 0, 1, 0)
    assert r(e2, e3) == 1


@given(st.randoms(use_true_random=False), st.integers(2, 4))
def test_evaluation_is_alternating(rng, dim):
    k = rng.randint(1, dim)
    p = G.multivector(rng, dim, k)
    etas = [G.vec(rng, dim) for _ in range(k)]
    base = p(*etas)
    for perm in permutations(range(k)):
        sign, _ = canonical(perm)
        assert p(*[etas[i] for i in perm]) == sign * base
    if k >= 2:
        assert p(etas[0], etas[0], *etas[2:]) == 0


def test_iota_identity_and_zero():
    p = Multivector(3, 2, {(0, 1): 2, (1, 2): -1})
    assert iota(Operator.identity(3), p) == 2 * p
    assert iota(Operator.zero(3), p).is_zero()


def test_iota_slotwise_matches_component_formula():
    tn = Operator.from_images([[0, 0, -1], [0, 1, -1], [1, 0, 1]])
    p = Multivector.basis(3, 0, 1)
    out = iota(tn, p)
    e = [tuple(int(i == j) for j in range(3)) for i in range(3)]
    for a in range(3):
        for b in range(3):
            assert out(e[a], e[b]) == p(tn(e[a]), e[b]) + p(e[a], tn(e[b]))


@given(st.randoms(use_true_random=False), st.integers(2, 4))
def test_iota_reverses_commutators(rng, dim):
    a, b = G.operator(rng, dim), G.operator(rng, dim)
    for k in range(min(dim, 3) + 1):
        p = G.multivector(rng, dim, k)
        lhs = iota(commutator(a, b), p)
        rhs = iota(a, iota(b, p)) - iota(b, iota(a, p))
        assert lhs == -rhs


@given(st.randoms(use_true_random=False))
def test_derivation_respects_wedge(rng):
    a = G.operator(rng, 4)
    p, q = G.multivector(rng, 4, 1), G.multivector(rng, 4, 2)
    assert derivation(a, wedge(p, q)) == wedge(derivation(a, p), q) + wedge(p, derivation(a, q))


def test_det_small():
    assert det([[1, 2], [3, 4]]) == -2
    assert det([]) == 1


def test_fmt_multivector():
    p = Multivector(4, 2, {(0, 1): -1, (0, 2): 1, (0, 3): -1, (1, 2): 1})
    assert fmt_multivector(p) == "-X1^X2 + X1^X3 - X1^X4 + X2^X3"
    assert fmt_multivector(Multivector.zero(2, 1)) == "0"


def test_solve_linear_examples():
    s = solve_linear([[1, 0], [0, 1]], [1, 0])
    assert s.particular == (1, 0) and s.nullspace == ()
    s = solve_linear([[0, 0], [0, 0]], [0, 0])
    assert s.particular == (0, 0) and len(s.nullspace) == 2
    s = solve_linear([[1, 2], [2, 4]], [1, 2])
    assert s.particular == (1, 0) and s.nullspace == ((-2, 1),)
    assert solve_linear([[1, 2], [2, 4]], [1, 3]) is None


@given(st.randoms(use_true_random=False), st.integers(1, 5), st.integers(1, 5))
def test_solve_linear_certificates(rng, m, n):
    a = [[G.q(rng) for _ in range(n)] for _ in range(m)]
    b = [G.q(rng) for _ in range(m)]
    s = solve_linear(a, b)
    if s is None:
        return
    assert [sum(x * y for x, y in zip(r, s.particular)) for r in a] == b
    for v in s.nullspace:
        assert all(sum(x * y for x, y in zip(r, v)) == 0 for r in a)
