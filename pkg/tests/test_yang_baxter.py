import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

import randgen as G
from nlbialgebra import catalog
from nlbialgebra.bialgebra import NL, is_lie_bialgebra
from nlbialgebra.errors import ConcomitantNonzero, DegenerateR, SkewSymmetryBroken
from nlbialgebra.exact import Multivector, Operator, basis_vector, fmt_multivector
from nlbialgebra.lie import format_bracket, schouten_bivector, sharp, transpose
from nlbialgebra.nijenhuis import deformed_bracket, is_ad_equivariant, torsion
from nlbialgebra.yang_baxter import (
    RMatrix,
    bivector_from_sharp,
    coboundary_classify,
    coboundary_cobracket,
    compose_nr,
    concomitant_r_n,
    n_from_pair,
    nm_r_cobracket,
    r_antihomomorphism_defect,
    r_bracket,
    restricted_torsion_zero,
    rn_identity_failures,
    skew_condition_holds,
)


@pytest.fixture
def r4():
    pb = catalog.r4_coboundary()
    return RMatrix(pb.algebra, pb.r_matrix), pb.operator


def test_r4_bracket_and_operator(r4):
    rm, n = r4
    assert format_bracket(rm.base) == "[X1,X4] = X1; [X3,X4] = X2"
    assert format_bracket(deformed_bracket(rm.base, n)) == "[X1,X4] = X1; [X2,X4] = X1; [X3,X4] = X2"
    tn = n.T
    e = [basis_vector(4, k) for k in range(4)]
    assert [tn(v) for v in e] == [(1, 1, 1, 0), (0, 1, 0, 1), (0, 0, 1, -1), (0, 0, 0, 1)]
    assert torsion(rm.base, n).is_zero()


def test_r4_r_bracket(r4):
    rm, n = r4
    assert rm.cybe_certified and rm.nondegenerate
    assert format_bracket(r_bracket(rm)) == "[X^1,X^2] = -X^3; [X^1,X^4] = X^4"
    assert torsion(r_bracket(rm), n.T).is_zero()


def test_r4_composed_r_matrix(r4):
    rm, n = r4
    assert skew_condition_holds(rm, n)
    out = compose_nr(rm, n)
    assert fmt_multivector(out.r_matrix.r) == "-X1^X2 + X1^X3 - X1^X4 + X2^X3"
    assert out.cybe and out.restricted_torsion_zero
    assert format_bracket(r_bracket(out.r_matrix)) == "[X^1,X^2] = -X^3; [X^1,X^3] = -X^4; [X^1,X^4] = X^4"
    assert coboundary_cobracket(out.r_matrix) == nm_r_cobracket(rm, n)


def test_r4_concomitant_and_equivariance(r4):
    rm, n = r4
    assert concomitant_r_n(rm, n).is_zero()
    assert not is_ad_equivariant(rm.base, n)


def test_r4_sign_of_yang_baxter_map(r4):
    rm, _ = r4
    assert r_antihomomorphism_defect(rm, 1) == []
    # the anti-homomorphism reading fails on this very example
    assert r_antihomomorphism_defect(rm, -1) == [(0, 1), (0, 3)]


def test_coboundary_cobracket_is_bialgebra(r4):
    rm, _ = r4
    delta = coboundary_cobracket(rm)
    assert is_lie_bialgebra(rm.base, delta)
    assert transpose(delta) == r_bracket(rm)


def test_coboundary_classify(r4):
    rm, n = r4
    report = coboundary_classify(rm, n)
    assert report.classification.level == NL
    assert report.hierarchy is not None and report.hierarchy.all_valid
    assert report.concomitant_powers_zero == (True, True, True, True)


def test_n_from_pair_recovers_operator(r4):
    rm, n = r4
    nr = compose_nr(rm, n).r_matrix
    pair = n_from_pair(rm, nr)
    assert pair.n == n
    assert pair.compatible and pair.nijenhuis and pair.rn_identity
    # both sides vanish on a compatible pair, so the other sign holds too
    assert n_from_pair(rm, nr, factor=-2).rn_identity


def test_n_from_pair_with_multiples(r4):
    rm, _ = r4
    assert n_from_pair(rm, rm).n == Operator.identity(4)
    half = RMatrix(rm.base, Multivector(4, 2, {k: c / 2 for k, c in rm.r.items()}))
    assert n_from_pair(rm, half).n == Operator.scalar(4, Fraction(1, 2))


def test_n_from_pair_degenerate(r4):
    rm, _ = r4
    degenerate = RMatrix(rm.base, Multivector(4, 2, {(1, 2): 1}))
    with pytest.raises(DegenerateR):
        n_from_pair(degenerate, rm)


@pytest.mark.parametrize("seed", range(12))
def test_torsion_factor_on_incompatible_pairs(seed, r4):
    rm, _ = r4
    rng = random.Random(seed)
    while True:
        other = G.r4_r_matrix(rng)
        if not schouten_bivector(rm.base, rm.r, other.r).is_zero():
            break
    n = other.r_sharp @ rm.r_sharp.inverse()
    assert not torsion(rm.base, n).is_zero()
    assert rn_identity_failures(rm, other, n, 2) == []
    assert rn_identity_failures(rm, other, n, -2) != []


def test_compose_requires_skew_condition(r4):
    rm, _ = r4
    with pytest.raises(SkewSymmetryBroken):
        compose_nr(rm, Operator([[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]))


def test_compose_requires_vanishing_concomitant(r4):
    rm, _ = r4
    skew = Operator([[0, 0, 0, 0], [0, 0, 0, 1], [0, 0, 0, 0], [0, -1, 0, 0]])
    n = skew @ rm.r_sharp.inverse()
    assert skew_condition_holds(rm, n)
    assert not concomitant_r_n(rm, n).is_zero()
    with pytest.raises(ConcomitantNonzero):
        compose_nr(rm, n)


def test_bivector_from_sharp_round_trip():
    r = Multivector(3, 2, {(0, 1): 2, (1, 2): -1})
    assert bivector_from_sharp(sharp(r)) == r
    with pytest.raises(SkewSymmetryBroken):
        bivector_from_sharp(Operator.identity(3))


@given(st.randoms(use_true_random=False))
def test_yang_baxter_iff_sharp_is_homomorphism(rng):
    b = G.lie_algebra(rng)
    rm = RMatrix(b, G.bivector_candidate(rng, b.dim))
    assert rm.cybe_certified == (r_antihomomorphism_defect(rm, 1) == [])


@given(st.randoms(use_true_random=False))
def test_concomitant_formulas_agree(rng):
    # concomitant_r_n raises if its three evaluations disagree
    b = G.lie_algebra(rng)
    rm = RMatrix(b, G.multivector(rng, b.dim, 2))
    n = G.operator(rng, b.dim)
    c = concomitant_r_n(rm, n)
    assert c.dim == b.dim


@given(st.randoms(use_true_random=False))
def test_composition_in_random_basis(rng):
    b, r, n = G.r4_instance(rng)
    rm = RMatrix(b, r)
    out = compose_nr(rm, n)
    assert out.cybe == restricted_torsion_zero(rm, n)
    assert r_bracket(out.r_matrix) == deformed_bracket(r_bracket(rm), n.T)
    assert coboundary_cobracket(out.r_matrix) == nm_r_cobracket(rm, n)
