from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

import randgen as G
from nlbialgebra import catalog
from nlbialgebra.errors import JacobiFailure
from nlbialgebra.lie import StructureTensor, transpose
from nlbialgebra.nijenhuis import deformed_bracket
from nlbialgebra.poisson import (
    LinearPoisson,
    PolyVectorField,
    coordinates,
    euler_top_field,
    hamiltonian_field,
    kks,
    monomials,
    poly,
    solve_hamiltonian,
)

x1, x2, x3 = coordinates(3)


@pytest.fixture
def euler_structures():
    pb = catalog.euler_top()
    dual = transpose(pb.cobracket)
    return kks(dual), kks(deformed_bracket(dual, pb.operator.T))


def table(p):
    return [(i, j, f.as_expr()) for i, j, f in p.table()]


def test_euler_poisson_tables(euler_structures):
    p, pt = euler_structures
    assert table(p) == [(0, 1, -x3), (0, 2, x2), (1, 2, -x1)]
    assert table(pt) == [(0, 1, -x2), (0, 2, x3), (1, 2, -2 * x1)]
    assert p.jacobi_holds() and pt.jacobi_holds()


def test_bracket_of_polynomials(euler_structures):
    p, _ = euler_structures
    assert p(x1, x2).as_expr() == -x3
    assert p(x2, x1).as_expr() == x3
    assert p("x1**2", "x2").as_expr() == -2 * x1 * x3
    assert p(x1**2 + x2**2 + x3**2, x1).is_zero


def test_casimirs(euler_structures):
    p, pt = euler_structures
    for i in range(3):
        g = coordinates(3)[i]
        assert p(x1**2 + x2**2 + x3**2, g).is_zero
        assert pt(x1**2 + x2 * x3, g).is_zero


def test_hamiltonian_of_a_coordinate(euler_structures):
    p, _ = euler_structures
    field = hamiltonian_field(p, x1)
    assert [c.as_expr() for c in field.components] == [0, x3, -x2]


def test_euler_field_is_bi_hamiltonian(euler_structures):
    field = euler_top_field()
    for p in euler_structures:
        sol = solve_hamiltonian(p, field)
        assert sol is not None
        assert hamiltonian_field(p, sol.particular) == field
        for c in sol.casimirs:
            assert hamiltonian_field(p, c).is_zero()
    p, pt = euler_structures
    assert (p + pt).jacobi_holds()


def test_unsolvable_field(euler_structures):
    p, _ = euler_structures
    assert solve_hamiltonian(p, PolyVectorField([1, 0, 0])) is None


def test_kks_rejects_non_lie():
    b = StructureTensor(3, {(0, 1): [1, 0, 0], (0, 2): [1, 0, 0], (1, 2): [0, 1, 0]})
    with pytest.raises(JacobiFailure):
        kks(b)
    assert not LinearPoisson(b).jacobi_holds()


def test_vector_field_evaluation_and_limits():
    f = euler_top_field()
    assert f((1, 2, 3)) == (Fraction(-5), Fraction(4), Fraction(-1))
    assert (2 * f)((1, 0, 0)) == (0, 0, 0)
    with pytest.raises(ValueError):
        PolyVectorField([x1**3, 0, 0])


def test_poly_rejects_floats():
    with pytest.raises(TypeError):
        poly(0.5, 2)
    assert poly(Fraction(1, 3), 2).as_expr() == sympy.Rational(1, 3)


def test_monomials():
    assert monomials(2, 2) == [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]


@given(st.randoms(use_true_random=False))
def test_kks_of_random_lie_algebra(rng):
    b = G.lie_algebra(rng, 3)
    p = kks(b)
    assert p.jacobi_holds()
    f = sum(G.q(rng) * m for m in (x1 * x2, x3**2, x1))
    g = sum(G.q(rng) * m for m in (x2, x1 * x3, x3))
    assert p(f, g) == -p(g, f)
    # Leibniz rule
    assert p(f * x1, g) == p(f, g) * poly(x1, 3) + poly(f, 3) * p(x1, g)


@given(st.randoms(use_true_random=False))
def test_solve_round_trip(rng):
    p = kks(G.lie_algebra(rng, 3))
    h = sum(G.q(rng) * m for m in (x1**2, x2 * x3, x3, x1 * x2))
    field = hamiltonian_field(p, h)
    sol = solve_hamiltonian(p, field)
    assert sol is not None
    assert hamiltonian_field(p, sol.particular) == field
    diff = poly(h, 3) - sol.particular
    # the difference is a Casimir
    assert hamiltonian_field(p, diff).is_zero()
