"""Linear Poisson structures and quadratic Hamiltonian dynamics.

Polynomials are :class:`sympy.Poly` objects over ``QQ`` in the coordinates
``x1, ..., xd``; coefficients convert losslessly to :class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Sequence

import sympy
from sympy import Poly, QQ

from .errors import DimensionMismatch, JacobiFailure
from .exact import rational, solve_linear
from .lie import LieAlgebra, StructureTensor, bracket_of, jacobi_defect


def coordinates(dim: int) -> tuple:
    return sympy.symbols(f"x1:{dim + 1}")


def poly(expr, dim: int) -> Poly:
    """Coerce ``expr`` (string, sympy expression, number or Poly) to a Poly in ``x1..xd``."""
    gens = coordinates(dim)
    if isinstance(expr, Poly):
        return Poly(expr.as_expr(), *gens, domain=QQ)
    if isinstance(expr, float):
        raise TypeError("refusing float coefficients")
    if isinstance(expr, Fraction):
        expr = sympy.Rational(expr.numerator, expr.denominator)
    if isinstance(expr, str):
        expr = sympy.sympify(expr, locals={str(g): g for g in gens}, rational=True)
    return Poly(expr, *gens, domain=QQ)


def monomials(dim: int, max_degree: int = 2) -> list[tuple[int, ...]]:
    """Exponent vectors of all monomials of total degree at most ``max_degree``, constant first."""
    out = [(0,) * dim]
    for deg in range(1, max_degree + 1):
        for combo in combinations_with_replacement(range(dim), deg):
            e = [0] * dim
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
    return out


class LinearPoisson:
    """Poisson bracket on polynomials with ``{x_i, x_j} = sum_k c_ij^k x_k``."""

    def __init__(self, bracket: StructureTensor):
        self.bracket = bracket
        self.dim = bracket.dim
        self.gens = coordinates(self.dim)
        self._pair = {}
        for i in range(self.dim):
            for j in range(self.dim):
                v = bracket.basis_bracket(i, j)
                self._pair[(i, j)] = poly(sum(sympy.Rational(c.numerator, c.denominator) * x
                                              for c, x in zip(v, self.gens)), self.dim)

    def coordinate_bracket(self, i: int, j: int) -> Poly:
        return self._pair[(i, j)]

    def __call__(self, f, g) -> Poly:
        f, g = poly(f, self.dim), poly(g, self.dim)
        out = poly(0, self.dim)
        df = [f.diff(x) for x in self.gens]
        dg = [g.diff(x) for x in self.gens]
        for i in range(self.dim):
            if df[i].is_zero:
                continue
            for j in range(self.dim):
                if i != j and not dg[j].is_zero:
                    out = out + df[i] * dg[j] * self._pair[(i, j)]
        return out

    def jacobi_holds(self) -> bool:
        """Jacobi identity on all coordinate triples, evaluated on polynomials."""
        x = self.gens
        for i in range(self.dim):
            for j in range(self.dim):
                for k in range(self.dim):
                    s = (self(self(x[i], x[j]), x[k]) + self(self(x[j], x[k]), x[i])
                         + self(self(x[k], x[i]), x[j]))
                    if not s.is_zero:
                        return False
        return True

    def __add__(self, other: LinearPoisson) -> LinearPoisson:
        if other.dim != self.dim:
            raise DimensionMismatch("Poisson structures of different dimension")
        return LinearPoisson(self.bracket.with_space(other.bracket.space) + other.bracket)

    def table(self) -> list[tuple[int, int, Poly]]:
        return [(i, j, self._pair[(i, j)]) for i in range(self.dim) for j in range(i + 1, self.dim)
                if not self._pair[(i, j)].is_zero]


def kks(g: LieAlgebra | StructureTensor) -> LinearPoisson:
    """The linear Poisson structure whose coordinate brackets are the structure constants."""
    b = bracket_of(g)
    if not b.is_lie:
        key, val = jacobi_defect(b).first_nonzero()
        raise JacobiFailure(f"bracket fails Jacobi on basis triple {key}: {val!r}")
    return LinearPoisson(b)


class PolyVectorField:
    """Vector field with polynomial components of total degree at most 2."""

    MAX_DEGREE = 2

    def __init__(self, components: Sequence):
        comps = tuple(components)
        self.dim = len(comps)
        self.components = tuple(poly(c, self.dim) for c in comps)
        for c in self.components:
            if not c.is_zero and c.total_degree() > self.MAX_DEGREE:
                raise ValueError(f"component {c.as_expr()} exceeds degree {self.MAX_DEGREE}")

    def __call__(self, point: Sequence) -> tuple[Fraction, ...]:
        if len(point) != self.dim:
            raise DimensionMismatch("point has wrong length")
        pt = [sympy.Rational(rational(p).numerator, rational(p).denominator) for p in point]
        return tuple(rational(c.eval(tuple(pt)) if self.dim > 1 else c.eval(pt[0])) for c in self.components)

    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.components)

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyVectorField) and self.components == other.components

    def __add__(self, other: PolyVectorField) -> PolyVectorField:
        return PolyVectorField([a + b for a, b in zip(self.components, other.components)])

    def __rmul__(self, c) -> PolyVectorField:
        c = rational(c)
        s = sympy.Rational(c.numerator, c.denominator)
        return PolyVectorField([p * s for p in self.components])

    def __repr__(self) -> str:
        return "PolyVectorField(" + ", ".join(str(c.as_expr()) for c in self.components) + ")"


def hamiltonian_field(p: LinearPoisson, h) -> PolyVectorField:
    """``x_i' = {x_i, H}``."""
    h = poly(h, p.dim)
    return PolyVectorField([p(x, h) for x in p.gens])


def euler_top_field() -> PolyVectorField:
    x1, x2, x3 = coordinates(3)
    return PolyVectorField([x2**2 - x3**2, x1 * (2 * x3 - x2), x1 * (x3 - 2 * x2)])


@dataclass(frozen=True)
class HamiltonianSolutions:
    """Affine family ``particular + span(casimirs)`` of Hamiltonians of degree at most 2."""

    particular: Poly
    casimirs: tuple


def _monomial_poly(e: tuple, dim: int) -> Poly:
    gens = coordinates(dim)
    expr = sympy.Integer(1)
    for x, k in zip(gens, e):
        expr *= x**k
    return poly(expr, dim)


def _coeff_vector(f: PolyVectorField, basis: list) -> list[Fraction]:
    out = []
    for c in f.components:
        d = {m: rational(v) for m, v in zip(c.monoms(), c.coeffs())} if not c.is_zero else {}
        out.extend(d.get(m, Fraction(0)) for m in basis)
    return out


def solve_hamiltonian(p: LinearPoisson, field: PolyVectorField) -> HamiltonianSolutions | None:
    """All ``H`` of degree at most 2 with ``hamiltonian_field(p, H) == field``, or ``None``."""
    if field.dim != p.dim:
        raise DimensionMismatch("field and Poisson structure dimensions differ")
    ansatz = monomials(p.dim, 2)
    basis = monomials(p.dim, 2)
    cols = [_coeff_vector(hamiltonian_field(p, _monomial_poly(m, p.dim)), basis) for m in ansatz]
    rows = [list(r) for r in zip(*cols)]
    target = _coeff_vector(field, basis)
    sol = solve_linear(rows, target)
    if sol is None:
        return None

    def combine(v):
        expr = sum((sympy.Rational(c.numerator, c.denominator) * _monomial_poly(m, p.dim).as_expr()
                    for c, m in zip(v, ansatz) if c), sympy.Integer(0))
        return poly(expr, p.dim)

    return HamiltonianSolutions(combine(sol.particular), tuple(combine(v) for v in sol.nullspace))


__all__ = [
    "HamiltonianSolutions", "LinearPoisson", "PolyVectorField", "coordinates", "euler_top_field",
    "hamiltonian_field", "kks", "monomials", "poly", "solve_hamiltonian",
]
