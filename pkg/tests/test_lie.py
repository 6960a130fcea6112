from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

import randgen as G
from nlbialgebra import catalog
from nlbialgebra.errors import JacobiFailure, UncertifiedBracket
from nlbialgebra.exact import Multivector, Operator, basis_vector, wedge
from nlbialgebra.lie import (
    DUAL,
    Cochain,
    LieAlgebra,
    StructureTensor,
    ad,
    ad_p,
    ad_star,
    as_cochain,
    ce_coboundary,
    cobracket_from_dual,
    dualize,
    format_bracket,
    jacobi_defect,
    require_lie,
    schouten_bivector,
    sharp,
    transpose,
)


def e(n, i):
    return basis_vector(n, i)


def test_structure_tensor_is_antisymmetric():
    b = StructureTensor(3, {(1, 0): {2: 1}})
    assert b.basis_bracket(0, 1) == (0, 0, -1)
    with pytest.raises(ValueError):
        StructureTensor(3, {(1, 1): {0: 1}})


def test_book_algebra_is_lie():
    assert jacobi_defect(catalog.book().algebra.bracket).is_zero()
    assert jacobi_defect(StructureTensor.zero(4)).is_zero()


def test_non_lie_tensor_has_defect():
    b = StructureTensor(3, {(0, 1): [1, 0, 0], (0, 2): [1, 0, 0], (1, 2): [0, 1, 0]})
    d = jacobi_defect(b)
    x = [e(3, i) for i in range(3)]
    terms = [b(b(x[0], x[1]), x[2]), b(b(x[2], x[0]), x[1]), b(b(x[1], x[2]), x[0])]
    assert d.at(0, 1, 2).as_vector() == tuple(sum(t) for t in zip(*terms)) == (-1, 0, 0)
    assert not LieAlgebra(b).jacobi_certified
    with pytest.raises(UncertifiedBracket):
        require_lie(LieAlgebra(b))


def test_cyclic_three_dim_tensor_is_lie():
    # [e0,e1]=e0, [e0,e2]=e1, [e1,e2]=e2: the single cyclic sum cancels.
    b = StructureTensor(3, {(0, 1): [1, 0, 0], (0, 2): [0, 1, 0], (1, 2): [0, 0, 1]})
    assert jacobi_defect(b).is_zero()


@pytest.mark.parametrize("name", catalog.names())
def test_catalog_brackets_are_lie(name):
    pb = catalog.get(name)
    assert pb.algebra.jacobi_certified
    delta = pb.effective_cobracket()
    if delta is not None:
        assert transpose(delta).is_lie


def test_coadjoint_table_of_book_algebra():
    g = catalog.book().algebra
    assert ad_star(g, e(3, 0))(e(3, 1)) == e(3, 1)
    assert ad_star(g, e(3, 0))(e(3, 2)) == e(3, 2)
    assert ad_star(g, e(3, 1))(e(3, 1)) == tuple(-c for c in e(3, 0))
    assert ad_star(g, e(3, 2))(e(3, 2)) == tuple(-c for c in e(3, 0))
    assert ad_star(StructureTensor.zero(3), e(3, 0)).is_zero()


@given(st.randoms(use_true_random=False))
def test_coadjoint_pairing(rng):
    b = G.lie_algebra(rng)
    n = b.dim
    xi, eta, zeta = G.vec(rng, n), G.vec(rng, n), G.vec(rng, n)
    lhs = sum(a * c for a, c in zip(ad_star(b, xi)(eta), zeta))
    rhs = -sum(a * c for a, c in zip(eta, b(xi, zeta)))
    assert lhs == rhs


def test_ad_p_low_degrees():
    g = catalog.book().algebra
    assert ad_p(g, e(3, 0), Multivector.scalar(3, 5)).is_zero()
    x, y = e(3, 0), e(3, 1)
    assert ad_p(g, x, Multivector.from_vector(y)).as_vector() == g.bracket(x, y)


def test_ad_p_matches_cocycle_rearrangement():
    pb = catalog.euler_top()
    g, delta = pb.algebra, pb.cobracket
    x1, x2 = e(3, 0), e(3, 1)
    lhs = ad_p(g, x1, delta.at(1))
    rhs = delta(g.bracket(x1, x2)) + ad_p(g, x2, delta.at(0))
    assert lhs == rhs


@given(st.randoms(use_true_random=False))
def test_ad_p_is_a_derivation_of_wedge(rng):
    b = G.lie_algebra(rng)
    n = b.dim
    xi = G.vec(rng, n)
    p = Multivector.from_vector(G.vec(rng, n))
    q = Multivector.from_vector(G.vec(rng, n))
    assert ad_p(b, xi, wedge(p, q)) == wedge(ad_p(b, xi, p), q) + wedge(p, ad_p(b, xi, q))


def test_zero_cochain_coboundary_is_ad_p():
    pb = catalog.r4_coboundary()
    r = pb.r_matrix
    c = Cochain(4, 0, 2, {(): r})
    d = ce_coboundary(pb.algebra, c)
    for i in range(4):
        assert d.at(i) == ad_p(pb.algebra, e(4, i), r)


def test_trivial_coboundary_of_scalar_cochain():
    g = catalog.book().algebra
    alpha = Cochain(3, 1, 0, {(1,): Multivector.scalar(3, 1)})
    d = ce_coboundary(g, alpha, trivial=True)
    # d alpha(x1, x2) = -alpha([x1, x2]) = -alpha(-x2) = 1
    assert d.at(0, 1) == Multivector.scalar(3, 1)


@given(st.randoms(use_true_random=False), st.integers(0, 2), st.integers(0, 2))
def test_coboundary_squares_to_zero(rng, arity, degree):
    b = G.lie_algebra(rng)
    if degree > b.dim:
        degree = b.dim
    c = G.cochain(rng, b.dim, arity, degree)
    assert ce_coboundary(b, ce_coboundary(b, c)).is_zero()
    if degree == 0:
        assert ce_coboundary(b, ce_coboundary(b, c, trivial=True), trivial=True).is_zero()


def test_cochain_antisymmetry():
    c = Cochain(3, 2, 1, {(0, 1): Multivector.from_vector((1, 0, 0))})
    assert c.at(1, 0) == -c.at(0, 1)
    assert c.at(1, 1).is_zero()


def test_schouten_examples():
    pb = catalog.r4_coboundary()
    assert schouten_bivector(pb.algebra, pb.r_matrix).is_zero()
    assert schouten_bivector(pb.algebra, Multivector.zero(4, 2)).is_zero()


@given(st.randoms(use_true_random=False))
def test_mixed_schouten_polarization(rng):
    b = G.lie_algebra(rng)
    r, s = G.bivector_candidate(rng, b.dim), G.bivector_candidate(rng, b.dim)
    assert schouten_bivector(b, r, r) == schouten_bivector(b, r)
    assert schouten_bivector(b, r, s) == schouten_bivector(b, s, r)
    c = G.q(rng)
    assert schouten_bivector(b, c * r) == (c * c) * schouten_bivector(b, r)


def test_sharp_convention():
    r = Multivector(4, 2, {(1, 2): 1, (0, 3): -1})
    rs = sharp(r)
    for i in range(4):
        for j in range(4):
            assert rs(e(4, i))[j] == r(e(4, i), e(4, j))
    assert rs.T == -rs


def test_dualize_examples():
    pb = catalog.euler_top()
    dual = dualize(pb.algebra, pb.cobracket)
    assert dual.bracket.space == DUAL
    assert format_bracket(dual.bracket) == "[X^1,X^2] = -X^3; [X^1,X^3] = X^2; [X^2,X^3] = -X^1"
    assert dual.bracket == catalog.so3().algebra.bracket.with_space(DUAL)
    assert dualize(pb.algebra, Cochain(3, 1, 2)).bracket.is_zero()
    pb = catalog.solvable22()
    dual = dualize(pb.algebra, pb.cobracket).bracket
    assert dual.basis_bracket(0, 1) == (0, 2, 0, 0)
    assert dual.basis_bracket(2, 3) == (0, 0, 1, 0)


def test_dualize_rejects_non_lie():
    g = StructureTensor.zero(3)
    bad = cobracket_from_dual(StructureTensor(3, {(0, 1): [1, 0, 0], (0, 2): [1, 0, 0], (1, 2): [0, 1, 0]}))
    with pytest.raises(JacobiFailure):
        dualize(g, bad)


@given(st.randoms(use_true_random=False))
def test_transpose_round_trip(rng):
    n = rng.randint(2, 4)
    delta = G.cochain(rng, n, 1, 2)
    assert cobracket_from_dual(transpose(delta)) == delta
    dual = transpose(delta)
    for k in range(n):
        for i, j in combinations(range(n), 2):
            assert dual.basis_bracket(i, j)[k] == delta.at(k)[i, j]


def test_as_cochain_agrees_with_bracket():
    b = catalog.so3().algebra.bracket
    c = as_cochain(b)
    assert c.at(0, 1).as_vector() == b.basis_bracket(0, 1)
    assert ad(b, e(3, 0)).column(1) == b.basis_bracket(0, 1)
