"""Deformed brackets, Nijenhuis torsion and the operator-level concomitants."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

from .errors import DimensionMismatch, IdentityViolation
from .exact import Operator, basis_vector, commutator, vadd, vsub
from .lie import (
    Cochain,
    LieAlgebra,
    StructureTensor,
    ad,
    ad_star,
    as_cochain,
    bracket_of,
    ce_coboundary,
    jacobi_defect,
    require_lie,
)

NIJENHUIS = "nijenhuis"
ALMOST_NIJENHUIS = "almost_nijenhuis"
NEITHER = "neither"


def _dims(b: StructureTensor, n: Operator) -> None:
    if b.dim != n.dim:
        raise DimensionMismatch(f"bracket of dim {b.dim} with operator of dim {n.dim}")


def agree(a, b, what: str) -> None:
    """Raise :class:`IdentityViolation` unless two computed values are equal."""
    if a != b:
        raise IdentityViolation(f"{what}: {a!r} != {b!r}")


def deformed_bracket(g: LieAlgebra | StructureTensor, n: Operator) -> StructureTensor:
    """``[x, y]_n = [n x, y] + [x, n y] - n [x, y]``."""
    b = bracket_of(g)
    _dims(b, n)
    e = [basis_vector(b.dim, t) for t in range(b.dim)]
    cols = [n.column(t) for t in range(b.dim)]

    def value(i, j):
        return vsub(vadd(b(cols[i], e[j]), b(e[i], cols[j])), n(b.basis_bracket(i, j)))

    return StructureTensor.from_function(b.dim, value, b.space)


def torsion_wrt(bracket: LieAlgebra | StructureTensor, n: Operator) -> Cochain:
    """Nijenhuis torsion against any antisymmetric bracket: ``n [x, y]_n - [n x, n y]``."""
    b = bracket_of(bracket)
    _dims(b, n)
    bn = deformed_bracket(b, n)
    cols = [n.column(t) for t in range(b.dim)]
    return Cochain.from_function(
        b.dim, 2, 1, lambda i, j: vsub(n(bn.basis_bracket(i, j)), b(cols[i], cols[j])))


def torsion(g: LieAlgebra | StructureTensor, n: Operator) -> Cochain:
    return torsion_wrt(g, n)


def torsion_four_term(g: LieAlgebra | StructureTensor, n: Operator) -> Cochain:
    """``[n x, n y] - n [n x, y] - n [x, n y] + n^2 [x, y]``; the negative of :func:`torsion`."""
    b = bracket_of(g)
    _dims(b, n)
    e = [basis_vector(b.dim, t) for t in range(b.dim)]
    cols = [n.column(t) for t in range(b.dim)]
    n2 = n @ n

    def value(i, j):
        out = b(cols[i], cols[j])
        out = vsub(out, n(b(cols[i], e[j])))
        out = vsub(out, n(b(e[i], cols[j])))
        return vadd(out, n2(b.basis_bracket(i, j)))

    return Cochain.from_function(b.dim, 2, 1, value)


def deform_form(t: Cochain, n: Operator) -> Cochain:
    """Apply ``T -> T(n., .) + T(., n.) - n T`` to a vector-valued 2-form."""
    if t.arity != 2 or t.degree != 1:
        raise ValueError("deform_form expects a vector-valued 2-form")
    e = [basis_vector(t.dim, k) for k in range(t.dim)]
    cols = [n.column(k) for k in range(t.dim)]

    def value(i, j):
        out = vadd(t(cols[i], e[j]).as_vector(), t(e[i], cols[j]).as_vector())
        return vsub(out, n(t.at(i, j).as_vector()))

    return Cochain.from_function(t.dim, 2, 1, value)


def torsion_iterated(g: LieAlgebra | StructureTensor, n: Operator, i: int) -> Cochain:
    """Torsion of ``n`` against the bracket deformed ``i`` times by ``n``, via the recursion on ``i``.

    ``T_i(x, y) = T_{i-1}(n x, y) + T_{i-1}(x, n y) - n T_{i-1}(x, y)`` with
    ``T_0`` the ordinary torsion.  For Nijenhuis ``n`` the ``i``-fold
    deformation is ``[.,.]_{n^i}``.
    """
    if i < 0:
        raise ValueError("order must be non-negative")
    t = torsion(g, n)
    for _ in range(i):
        t = deform_form(t, n)
    return t


def jacobi_ok(b: StructureTensor) -> bool:
    return jacobi_defect(b).is_zero()


@dataclass(frozen=True)
class NijenhuisCandidate:
    base: StructureTensor
    n: Operator
    torsion: Cochain
    status: str

    @property
    def is_nijenhuis(self) -> bool:
        return self.status == NIJENHUIS

    @property
    def deformed_is_lie(self) -> bool:
        return self.status != NEITHER


def classify_operator(g: LieAlgebra | StructureTensor, n: Operator) -> NijenhuisCandidate:
    """Decide whether ``n`` is Nijenhuis, almost Nijenhuis (closed torsion) or neither.

    The torsion test is cross-checked against the Jacobi identity of the
    deformed bracket.
    """
    b = require_lie(g)
    t = torsion(b, n)
    if t.is_zero():
        status = NIJENHUIS
    elif ce_coboundary(b, t).is_zero():
        status = ALMOST_NIJENHUIS
    else:
        status = NEITHER
    agree(status != NEITHER, jacobi_ok(deformed_bracket(b, n)),
          "closed torsion vs. Jacobi of the deformed bracket")
    return NijenhuisCandidate(b, n, t, status)


def iterated_bracket(g: LieAlgebra | StructureTensor, n: Operator, i: int) -> StructureTensor:
    """``[.,.]_{n^i}`` from the direct formula with ``n**i``.

    For Nijenhuis ``n`` and ``i >= 2`` the recursion through ``[.,.]_n`` is
    evaluated as well and must agree.
    """
    if i < 0:
        raise ValueError("order must be non-negative")
    b = bracket_of(g)
    if i == 0:
        return b
    out = deformed_bracket(b, n ** i)
    if i >= 2 and torsion(b, n).is_zero():
        bn = deformed_bracket(b, n)
        rec = recursive_bracket(bn, b, n, i)
        agree(out, rec, f"recursion for the bracket deformed by n^{i}")
    return out


def recursive_bracket(bn: StructureTensor, b: StructureTensor, n: Operator, i: int) -> StructureTensor:
    """``[n^{i-1} x, y]_n + [x, n^{i-1} y]_n - n^{i-1} [x, y]_n``."""
    m = n ** (i - 1)
    e = [basis_vector(b.dim, t) for t in range(b.dim)]
    cols = [m.column(t) for t in range(b.dim)]
    return StructureTensor.from_function(
        b.dim,
        lambda p, q: vsub(vadd(bn(cols[p], e[q]), bn(e[p], cols[q])), m(bn.basis_bracket(p, q))),
        b.space,
    )


def nijenhuis_concomitant(g: LieAlgebra | StructureTensor, n: Operator, n2: Operator) -> Cochain:
    """Symmetric eight-term concomitant of two operators.

    With ``n2 == n`` this is ``-2 * torsion(g, n)`` under the torsion sign used here.
    """
    b = bracket_of(g)
    _dims(b, n)
    _dims(b, n2)
    e = [basis_vector(b.dim, t) for t in range(b.dim)]
    c1 = [n.column(t) for t in range(b.dim)]
    c2 = [n2.column(t) for t in range(b.dim)]
    both = n @ n2 + n2 @ n

    def value(i, j):
        out = vadd(b(c1[i], c2[j]), b(c2[i], c1[j]))
        for v in (n(b(c2[i], e[j])), n2(b(c1[i], e[j])), n(b(e[i], c2[j])), n2(b(e[i], c1[j]))):
            out = vsub(out, v)
        return vadd(out, both(b.basis_bracket(i, j)))

    return Cochain.from_function(b.dim, 2, 1, value)


def compatible_pair(g: LieAlgebra | StructureTensor, n: Operator, n2: Operator) -> bool:
    """Whether the concomitant of ``n`` and ``n2`` vanishes."""
    return nijenhuis_concomitant(g, n, n2).is_zero()


def underline_ad(g: LieAlgebra | StructureTensor, n: Operator, xi: Sequence) -> Operator:
    """``[ad_xi, n] = ad_xi n - n ad_xi``."""
    return commutator(ad(g, xi), n)


def underline_ad_star(g: LieAlgebra | StructureTensor, n: Operator, xi: Sequence) -> Operator:
    """``[tn, ad*_xi]`` acting on the dual."""
    return commutator(n.T, ad_star(g, xi))


def deformed_adjoint(g: LieAlgebra | StructureTensor, n: Operator, i: int, xi: Sequence) -> Operator:
    """Adjoint operator of the ``i``-th deformed bracket, built recursively.

    ``ad^{(i)}_xi = [ad^{(i-1)}_xi, n] + ad^{(i-1)}_{n xi}`` with the plain
    adjoint at ``i = 0``.  For Nijenhuis ``n`` this is the adjoint operator of
    ``iterated_bracket(g, n, i)``.
    """
    if i < 0:
        raise ValueError("order must be non-negative")
    if i == 0:
        return ad(g, xi)
    return commutator(deformed_adjoint(g, n, i - 1, xi), n) + deformed_adjoint(g, n, i - 1, n(xi))


def deformed_coadjoint(g: LieAlgebra | StructureTensor, n: Operator, i: int, xi: Sequence) -> Operator:
    """Coadjoint counterpart of :func:`deformed_adjoint`."""
    return -deformed_adjoint(g, n, i, xi).T


class OperatorForm:
    """Antisymmetric bilinear map with operator values, stored on ``i < j``."""

    __slots__ = ("dim", "_v")

    def __init__(self, dim: int, values: dict):
        self.dim = dim
        self._v = {k: v for k, v in values.items() if not v.is_zero()}

    def at(self, i: int, j: int) -> Operator:
        if i == j:
            return Operator.zero(self.dim)
        if i < j:
            return self._v.get((i, j), Operator.zero(self.dim))
        return -self._v.get((j, i), Operator.zero(self.dim))

    def items(self) -> Iterator[tuple[tuple, Operator]]:
        return iter(sorted(self._v.items()))

    def is_zero(self) -> bool:
        return not self._v

    def first_nonzero(self):
        return next(self.items(), None)

    def trilinear(self) -> dict:
        """Evaluation ``C(e_i, e_j) e_k`` on basis triples, keyed ``(i, j, k)`` with ``i < j``."""
        return {(i, j, k): op.column(k) for (i, j), op in self.items() for k in range(self.dim)
                if any(op.column(k))}


def concomitant_n_ad(g: LieAlgebra | StructureTensor, n: Operator) -> OperatorForm:
    """Compatibility defect between ``n`` and the adjoint representation.

    ``C(x, y) = [[ad_x, n], [ad_y, n]] + [ad_{n[x,y]}, n] - [ad_x, [ad_{ny}, n]]
    - [[ad_{nx}, n], ad_y]``.
    """
    b = require_lie(g)
    _dims(b, n)
    e = [basis_vector(b.dim, t) for t in range(b.dim)]
    vals = {}
    for i, j in combinations(range(b.dim), 2):
        x, y = e[i], e[j]
        ax, ay = ad(b, x), ad(b, y)
        c = commutator(commutator(ax, n), commutator(ay, n))
        c = c + commutator(ad(b, n(b(x, y))), n)
        c = c - commutator(ax, commutator(ad(b, n(y)), n))
        c = c - commutator(commutator(ad(b, n(x)), n), ay)
        vals[(i, j)] = c
    return OperatorForm(b.dim, vals)


def ad_equivariance_failures(g: LieAlgebra | StructureTensor, n: Operator) -> list[tuple[int, int]]:
    """Basis pairs ``(i, j)`` with ``n [e_i, e_j] != [e_i, n e_j]``."""
    b = bracket_of(g)
    _dims(b, n)
    e = [basis_vector(b.dim, t) for t in range(b.dim)]
    return [(i, j) for i in range(b.dim) for j in range(b.dim)
            if n(b(e[i], e[j])) != b(e[i], n(e[j]))]


def is_ad_equivariant(g: LieAlgebra | StructureTensor, n: Operator) -> bool:
    return not ad_equivariance_failures(g, n)


__all__ = [
    "ALMOST_NIJENHUIS", "NEITHER", "NIJENHUIS", "NijenhuisCandidate", "OperatorForm",
    "ad_equivariance_failures", "agree", "classify_operator", "compatible_pair",
    "concomitant_n_ad", "deform_form", "deformed_adjoint", "deformed_bracket", "deformed_coadjoint",
    "is_ad_equivariant", "iterated_bracket", "nijenhuis_concomitant", "recursive_bracket", "torsion",
    "torsion_four_term", "torsion_iterated", "torsion_wrt", "underline_ad", "underline_ad_star",
]
