"""r-matrices, the classical Yang-Baxter equation and coboundary structures."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .bialgebra import Classification, Hierarchy, NL, build_hierarchy, classify, is_lie_bialgebra
from .errors import ConcomitantNonzero, DegenerateR, DimensionMismatch, SkewSymmetryBroken
from .exact import Multivector, Operator, basis_vector, dot, vsub
from .lie import (
    DUAL,
    Cochain,
    LieAlgebra,
    StructureTensor,
    ad,
    ad_p,
    ad_star,
    require_lie,
    schouten_bivector,
    sharp,
    transpose,
)
from .nijenhuis import (
    agree,
    deformed_bracket,
    deformed_coadjoint,
    torsion,
    underline_ad_star,
)


def bivector_from_sharp(s: Operator) -> Multivector:
    """Inverse of :func:`~nlbialgebra.lie.sharp`; raises if ``s`` is not skew."""
    if s.T != -s:
        raise SkewSymmetryBroken("map is not skew, so it is not the sharp of a bivector")
    n = s.dim
    return Multivector(n, 2, {(i, j): s.rows[j][i] for i, j in combinations(range(n), 2)})


class RMatrix:
    """A bivector over a Lie algebra together with its sharp map."""

    def __init__(self, base: LieAlgebra | StructureTensor, r: Multivector):
        b = require_lie(base)
        if r.degree != 2:
            raise ValueError("an r-matrix is a bivector")
        if r.dim != b.dim:
            raise DimensionMismatch("bivector and algebra dimensions differ")
        self.base = b
        self.r = r
        self.r_sharp = sharp(r)

    @property
    def dim(self) -> int:
        return self.base.dim

    @property
    def schouten(self) -> Multivector:
        return schouten_bivector(self.base, self.r)

    @property
    def cybe_certified(self) -> bool:
        return self.schouten.is_zero()

    @property
    def nondegenerate(self) -> bool:
        return self.r_sharp.rank() == self.dim

    def __repr__(self) -> str:
        return f"RMatrix({self.r!r})"


def r_bracket(rm: RMatrix) -> StructureTensor:
    """``[a, b]_r = ad*_{r a} b - ad*_{r b} a``; cross-checked against the Schouten form."""
    b, rs, n = rm.base, rm.r_sharp, rm.dim
    e = [basis_vector(n, t) for t in range(n)]
    cols = [rs.column(t) for t in range(n)]
    out = StructureTensor.from_function(
        n, lambda i, j: vsub(ad_star(b, cols[i])(e[j]), ad_star(b, cols[j])(e[i])), DUAL)
    agree(out, transpose(coboundary_cobracket(rm, check=False)), "two forms of the r-bracket")
    return out


def coboundary_cobracket(rm: RMatrix, check: bool = True) -> Cochain:
    """``x -> [[x, r]]``, the coboundary of ``r``.

    For a certified r-matrix the result is also checked to give a Lie bialgebra.
    """
    n = rm.dim
    delta = Cochain.from_vectors(n, 1, 2, lambda x: ad_p(rm.base, x, rm.r))
    if check and rm.cybe_certified:
        v = is_lie_bialgebra(rm.base, delta)
        agree(v.ok, True, "coboundary of an r-matrix gives a Lie bialgebra")
    return delta


def r_antihomomorphism_defect(rm: RMatrix, sign: int = 1) -> list[tuple[int, int]]:
    """Basis pairs where ``r [a, b]_r != sign * [r a, r b]``.

    With the conventions of this package the Yang-Baxter equation is
    equivalent to ``sign = 1`` (a homomorphism).
    """
    b, rs, n = rm.base, rm.r_sharp, rm.dim
    rb = r_bracket(rm)
    cols = [rs.column(t) for t in range(n)]
    bad = []
    for i, j in combinations(range(n), 2):
        lhs = rs(rb.basis_bracket(i, j))
        rhs = tuple(sign * c for c in b(cols[i], cols[j]))
        if lhs != rhs:
            bad.append((i, j))
    return bad


def _dual_form(dim: int, f) -> StructureTensor:
    return StructureTensor.from_function(dim, f, DUAL)


def concomitant_r_n(rm: RMatrix, n: Operator) -> StructureTensor:
    """``C(a, b) = [tn, ad*_{r a}] b - [tn, ad*_{r b}] a``, a dual-valued antisymmetric form.

    Also evaluated through the deformed coadjoint representation and through
    ``n [x, r b] - [n x, r b]``; all three must agree.
    """
    b, rs, dim = rm.base, rm.r_sharp, rm.dim
    if n.dim != dim:
        raise DimensionMismatch("operator and r-matrix dimensions differ")
    e = [basis_vector(dim, t) for t in range(dim)]
    cols = [rs.column(t) for t in range(dim)]
    tn = n.T

    direct = _dual_form(dim, lambda i, j: vsub(underline_ad_star(b, n, cols[i])(e[j]),
                                               underline_ad_star(b, n, cols[j])(e[i])))

    # row k: eta -> (ad^n_{e_k})* eta - tn ad*_{e_k} eta
    shifted = [deformed_coadjoint(b, n, 1, e[k]) - tn @ ad_star(b, e[k]) for k in range(dim)]

    def via_deformed(i, j):
        return [dot(shifted[k].column(i), cols[j]) - dot(shifted[k].column(j), cols[i]) for k in range(dim)]

    # slot k: y -> n [e_k, y] - [n e_k, y]
    defect = [n @ ad(b, e[k]) - ad(b, n(e[k])) for k in range(dim)]

    def via_brackets(i, j):
        return [defect[k](cols[j])[i] - defect[k](cols[i])[j] for k in range(dim)]

    agree(direct, _dual_form(dim, via_deformed), "concomitant of r and n via deformed coadjoint")
    agree(direct, _dual_form(dim, via_brackets), "concomitant of r and n via brackets")
    return direct


def skew_condition_holds(rm: RMatrix, n: Operator) -> bool:
    return n @ rm.r_sharp == rm.r_sharp @ n.T


def restricted_torsion_zero(rm: RMatrix, n: Operator) -> bool:
    """Whether the torsion of ``n`` vanishes on pairs from the image of r-sharp."""
    t = torsion(rm.base, n)
    cols = [rm.r_sharp.column(k) for k in range(rm.dim)]
    return all(t(cols[i], cols[j]).is_zero() for i, j in combinations(range(rm.dim), 2))


@dataclass(frozen=True)
class ComposeResult:
    r_matrix: RMatrix
    cybe: bool
    restricted_torsion_zero: bool


def compose_nr(rm: RMatrix, n: Operator) -> ComposeResult:
    """The bivector ``n r`` with sharp ``n`` composed with r-sharp.

    Requires ``n r = r tn`` and a vanishing concomitant of ``r`` and ``n``.
    The returned verdict says whether ``n r`` solves the Yang-Baxter equation,
    which must coincide with the torsion of ``n`` vanishing on the image of ``r``.
    """
    if not skew_condition_holds(rm, n):
        raise SkewSymmetryBroken("n composed with r-sharp differs from r-sharp composed with tn")
    c = concomitant_r_n(rm, n)
    if not c.is_zero():
        raise ConcomitantNonzero(f"concomitant of r and n nonzero: {c!r}")
    nr = RMatrix(rm.base, bivector_from_sharp(n @ rm.r_sharp))
    cybe = nr.cybe_certified
    rt = restricted_torsion_zero(rm, n) if rm.cybe_certified else None
    if rm.cybe_certified:
        agree(cybe, rt, "Yang-Baxter for n r vs. torsion on the image of r")
    agree(r_bracket(nr), deformed_bracket(r_bracket(rm), n.T), "bracket of n r vs. deformed r-bracket")
    agree(coboundary_cobracket(nr, check=False), nm_r_cobracket(rm, n), "cobracket of n r")
    return ComposeResult(nr, cybe, bool(rt))


def nm_r_cobracket(rm: RMatrix, n: Operator) -> Cochain:
    """``x -> delta_r(x)(tn ., .) + delta_r(x)(., tn .) - delta_r(n x)``."""
    from .bialgebra import deform_delta_tn
    return deform_delta_tn(coboundary_cobracket(rm, check=False), n, 1)


def rn_identity_failures(rm: RMatrix, rm2: RMatrix, n: Operator, factor: int = 2) -> list:
    """Basis triples where ``eta(T(x, y)) != factor * [[r2, r]](tn eta, r^-1 x, r^-1 y)``.

    ``T`` is the torsion of ``n`` and ``r^-1`` the inverse of r-sharp.
    """
    b, dim = rm.base, rm.dim
    inv = rm.r_sharp.inverse()
    mixed = schouten_bivector(b, rm.r, rm2.r)
    t = torsion(b, n)
    e = [basis_vector(dim, k) for k in range(dim)]
    tn = n.T
    bad = []
    for p in range(dim):
        for i, j in combinations(range(dim), 2):
            lhs = t.at(i, j)(e[p])
            rhs = factor * mixed(tn(e[p]), inv(e[i]), inv(e[j]))
            if lhs != rhs:
                bad.append((p, i, j))
    return bad


@dataclass(frozen=True)
class PairResult:
    n: Operator
    compatible: bool
    nijenhuis: bool | None
    rn_identity: bool


def n_from_pair(rm: RMatrix, rm2: RMatrix, factor: int = 2) -> PairResult:
    """``n = r2-sharp composed with the inverse of r-sharp``.

    When both bivectors solve the Yang-Baxter equation and their mixed
    Schouten bracket vanishes, ``n`` must be Nijenhuis.  The relation between
    the torsion of ``n`` and the mixed bracket is evaluated with the given
    factor and reported.
    """
    if not rm.nondegenerate:
        raise DegenerateR("r-sharp is singular")
    if rm.base != rm2.base:
        raise DimensionMismatch("r-matrices over different algebras")
    n = rm2.r_sharp @ rm.r_sharp.inverse()
    compatible = schouten_bivector(rm.base, rm2.r, rm.r).is_zero()
    nij = None
    if rm.cybe_certified and rm2.cybe_certified and compatible:
        nij = torsion(rm.base, n).is_zero()
        agree(nij, True, "compatible r-matrices give a Nijenhuis operator")
    ok = not rn_identity_failures(rm, rm2, n, factor)
    return PairResult(n, compatible, nij, ok)


@dataclass(frozen=True)
class CoboundaryReport:
    classification: Classification
    hierarchy: Hierarchy | None
    concomitant_powers_zero: tuple


def coboundary_classify(rm: RMatrix, n: Operator, depth: int = 3) -> CoboundaryReport:
    """Classify ``(g, delta_r, n)``; for non-degenerate ``r`` with Nijenhuis ``n`` also build the hierarchy.

    Checks that the concomitant of ``n^k r`` and ``n`` vanishes for
    ``k <= depth`` whenever it vanishes for ``k = 0``.
    """
    compose_nr(rm, n)
    delta = coboundary_cobracket(rm)
    cls = classify(rm.base, delta, n)
    hier = None
    powers: list[bool] = []
    if rm.cybe_certified and rm.nondegenerate and torsion(rm.base, n).is_zero():
        agree(cls.level, NL, "coboundary input with Nijenhuis operator classifies as NL")
        hier = build_hierarchy(rm.base, delta, n, depth)
        for k in range(depth + 1):
            rk = RMatrix(rm.base, bivector_from_sharp((n ** k) @ rm.r_sharp))
            powers.append(concomitant_r_n(rk, n).is_zero())
        agree(all(powers), True, "vanishing concomitant along powers of n")
    return CoboundaryReport(cls, hier, tuple(powers))


__all__ = [
    "ComposeResult", "CoboundaryReport", "PairResult", "RMatrix", "bivector_from_sharp",
    "coboundary_classify", "coboundary_cobracket", "compose_nr", "concomitant_r_n", "n_from_pair",
    "nm_r_cobracket", "r_antihomomorphism_defect", "r_bracket", "restricted_torsion_zero",
    "rn_identity_failures", "skew_condition_holds",
]
