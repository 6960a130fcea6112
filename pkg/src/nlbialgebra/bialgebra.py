"""Cobrackets, their deformations by an operator, classification and hierarchies.

A cobracket is a :class:`~nlbialgebra.lie.Cochain` of arity 1 and degree 2.
The same cobracket is tested for the cocycle property against different
brackets (the original one, ``[.,.]_n``, ``[.,.]_{n^i}``); no separate object
is built for "delta seen in the deformed cohomology".

Two conventions for the coadjoint action appear below.  Matrices printed for
``ad*`` follow ``<ad*_x eta, y> = -<eta, [x, y]>``.  Insertion formulas built
on :func:`~nlbialgebra.exact.iota` use the action for which ``iota`` of the
coadjoint matrix equals the adjoint action on multivectors; that matrix is
``ad_x`` transposed, the negative of the printed one.  Defects that are linear
in the coadjoint vanish under either choice.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import DimensionMismatch, UncertifiedBracket
from .exact import Operator, basis_vector, fmt_multivector, iota
from .lie import (
    Cochain,
    LieAlgebra,
    StructureTensor,
    ad,
    ad_p,
    bracket_of,
    ce_coboundary,
    jacobi_defect,
    transpose,
)
from .nijenhuis import (
    NIJENHUIS,
    NEITHER,
    ad_equivariance_failures,
    agree,
    classify_operator,
    concomitant_n_ad,
    deformed_bracket,
    iterated_bracket,
    torsion,
    underline_ad_star,
)


@dataclass(frozen=True)
class Verdict:
    """Outcome of one named check; ``witness`` describes the first failure."""

    name: str
    ok: bool
    witness: str = ""
    informational: bool = False

    def __bool__(self) -> bool:
        return self.ok


def _first(c: Cochain, label: str) -> str:
    hit = c.first_nonzero()
    if hit is None:
        return ""
    key, val = hit
    return f"{label} at basis {list(key)}: {fmt_multivector(val)}"


def _check_cobracket(b: StructureTensor, delta: Cochain) -> None:
    if delta.arity != 1 or delta.degree != 2:
        raise ValueError("a cobracket is a cochain of arity 1 and degree 2")
    if delta.dim != b.dim:
        raise DimensionMismatch("cobracket and bracket dimensions differ")


def cocycle_defect(bracket: LieAlgebra | StructureTensor, delta: Cochain) -> Cochain:
    """``x, y -> ad_x delta(y) - ad_y delta(x) - delta([x, y])`` for the supplied bracket."""
    b = bracket_of(bracket)
    if not b.is_lie:
        raise UncertifiedBracket("cocycle test needs a Lie bracket")
    _check_cobracket(b, delta)
    return ce_coboundary(b, delta)


def is_cocycle(bracket: LieAlgebra | StructureTensor, delta: Cochain) -> Verdict:
    d = cocycle_defect(bracket, delta)
    return Verdict("cocycle", d.is_zero(), _first(d, "coboundary"))


def bialgebra_identity_defects(g: LieAlgebra | StructureTensor, dual: StructureTensor) -> list:
    """Failures of the compatibility identity written purely with the dual bracket.

    Checks ``[a, b]*([x, y]) = [ad'_x a, b]*(y) + [a, ad'_x b]*(y) - (x <-> y)``
    on basis elements, with ``ad'_x`` the transposed adjoint matrix.  Returns
    the failing ``(i, j, p, q)`` index tuples.
    """
    b = bracket_of(g)
    n = b.dim
    e = [basis_vector(n, t) for t in range(n)]
    co = [ad(b, e[t]).T for t in range(n)]
    bad = []
    for i, j in combinations(range(n), 2):
        xy = b.basis_bracket(i, j)
        for p, q in combinations(range(n), 2):
            lhs = sum(c * w for c, w in zip(dual.basis_bracket(p, q), xy))
            rhs = (dual(co[i](e[p]), e[q])[j] + dual(e[p], co[i](e[q]))[j]
                   - dual(co[j](e[p]), e[q])[i] - dual(e[p], co[j](e[q]))[i])
            if lhs != rhs:
                bad.append((i, j, p, q))
    return bad


def is_lie_bialgebra(g: LieAlgebra | StructureTensor, delta: Cochain) -> Verdict:
    """Cocycle condition plus Jacobi on the dual, cross-checked by the dual-bracket identity."""
    b = bracket_of(g)
    if not b.is_lie:
        return Verdict("lie_bialgebra", False, "bracket fails Jacobi: " + _first(jacobi_defect(b), "defect"))
    _check_cobracket(b, delta)
    dual = transpose(delta)
    coc = is_cocycle(b, delta)
    agree(coc.ok, not bialgebra_identity_defects(b, dual), "cocycle test vs. dual-bracket identity")
    if not coc.ok:
        return Verdict("lie_bialgebra", False, coc.witness)
    if not dual.is_lie:
        return Verdict("lie_bialgebra", False, "dual bracket fails Jacobi: " + _first(jacobi_defect(dual), "defect"))
    return Verdict("lie_bialgebra", True)


def deform_delta_tn(delta: Cochain, n: Operator, k: int = 1) -> Cochain:
    """``x -> iota_{(tn)^k} delta(x) - delta(n^k x)``.

    The step-by-step recursion through ``k - 1`` holds exactly when the
    transpose of ``n`` has zero torsion for the dual bracket; in that case it
    is evaluated too and must agree.
    """
    if k < 0:
        raise ValueError("power must be non-negative")
    if n.dim != delta.dim:
        raise DimensionMismatch("operator and cobracket dimensions differ")
    direct = _deform_once(delta, n ** k, n.T ** k)
    if k >= 2 and torsion(transpose(delta), n.T).is_zero():
        step = delta
        for _ in range(k):
            step = _deform_once(step, n, n.T)
        agree(direct, step, f"recursion for delta deformed by (tn)^{k}")
    return direct


def _deform_once(delta: Cochain, m: Operator, mt: Operator) -> Cochain:
    e = [basis_vector(delta.dim, t) for t in range(delta.dim)]
    return Cochain.from_function(
        delta.dim, 1, 2, lambda i: iota(mt, delta.at(i)) - delta(m(e[i])))


def dual_deformed_bracket(delta: Cochain, n: Operator, j: int = 1) -> StructureTensor:
    """Bracket on the dual deformed by ``(tn)^j``; equal to the transpose of :func:`deform_delta_tn`."""
    out = deformed_bracket(transpose(delta), n.T ** j)
    agree(out, transpose(deform_delta_tn(delta, n, j)), "transpose duality for the deformed cobracket")
    return out


def concomitant_delta_n(g: LieAlgebra | StructureTensor, delta: Cochain, n: Operator, k: int = 1) -> Cochain:
    """Defect ``iota_{(tn)^k U_x} delta(y) - iota_{U_x} delta(n^k y) - (x <-> y)``.

    ``U_x = [tn, ad*_x]``.  For ``k = 1`` this is the compatibility condition
    of the doubly deformed cobracket.
    """
    b = bracket_of(g)
    _check_cobracket(b, delta)
    dim = b.dim
    e = [basis_vector(dim, t) for t in range(dim)]
    u = [underline_ad_star(b, n, e[t]) for t in range(dim)]
    tk = n.T ** k
    nk = n ** k

    def value(i, j):
        a = iota(tk @ u[i], delta.at(j)) - iota(u[i], delta(nk(e[j])))
        c = iota(tk @ u[j], delta.at(i)) - iota(u[j], delta(nk(e[i])))
        return a - c

    return Cochain.from_function(dim, 2, 2, value)


def shifted_concomitant(g: LieAlgebra | StructureTensor, delta: Cochain, n: Operator, k: int) -> Cochain:
    """``iota_{U_x} delta(n^k y) - iota_{tn U_x} delta(n^{k-1} y) - (x <-> y)``; vanishes on NL inputs."""
    b = bracket_of(g)
    _check_cobracket(b, delta)
    dim = b.dim
    e = [basis_vector(dim, t) for t in range(dim)]
    u = [underline_ad_star(b, n, e[t]) for t in range(dim)]
    nk, nk1, tn = n ** k, n ** (k - 1), n.T

    def value(i, j):
        a = iota(u[i], delta(nk(e[j]))) - iota(tn @ u[i], delta(nk1(e[j])))
        c = iota(u[j], delta(nk(e[i]))) - iota(tn @ u[j], delta(nk1(e[i])))
        return a - c

    return Cochain.from_function(dim, 2, 2, value)


def ad_star_equivariance_failures(delta: Cochain, n: Operator) -> list[tuple[int, int, int]]:
    """Triples ``(k, p, q)`` with ``delta(e_k)(e^p, tn e^q) != delta(n e_k)(e^p, e^q)``."""
    dim = delta.dim
    e = [basis_vector(dim, t) for t in range(dim)]
    tn = n.T
    bad = []
    for k in range(dim):
        dk = delta.at(k)
        dnk = delta(n(e[k]))
        for p in range(dim):
            for q in range(dim):
                if dk(e[p], tn(e[q])) != dnk(e[p], e[q]):
                    bad.append((k, p, q))
    return bad


def ad_star_equivariance_pairs(delta: Cochain, n: Operator) -> list[tuple[int, int]]:
    """Dual basis pairs ``(p, q)`` where ``tn [e^p, e^q]* != [e^p, tn e^q]*``.

    Same condition as :func:`ad_star_equivariance_failures`, read on the dual bracket.
    """
    pairs = sorted({(p, q) for _, p, q in ad_star_equivariance_failures(delta, n)})
    agree(pairs, ad_equivariance_failures(transpose(delta), n.T), "two readings of ad*-equivariance")
    return pairs


def ad_star_equivariant(delta: Cochain, n: Operator) -> bool:
    return not ad_star_equivariance_failures(delta, n)


def adnnad_defect(g: LieAlgebra | StructureTensor, delta: Cochain, n: Operator) -> dict:
    """``iota_{[tn, c_x]} delta(y) - (ad_x iota_tn - iota_tn ad_x) delta(y)`` over basis pairs.

    ``c_x`` is the insertion-compatible coadjoint matrix.  The expression is
    not antisymmetric in ``(x, y)``; nonzero values are returned in a dict
    keyed by ordered index pairs.
    """
    b = bracket_of(g)
    _check_cobracket(b, delta)
    dim = b.dim
    e = [basis_vector(dim, t) for t in range(dim)]
    tn = n.T
    out = {}
    for i in range(dim):
        c = ad(b, e[i]).T
        for j in range(dim):
            d = delta.at(j)
            lhs = iota(tn @ c - c @ tn, d)
            rhs = ad_p(b, e[i], iota(tn, d)) - iota(tn, ad_p(b, e[i], d))
            diff = lhs - rhs
            if not diff.is_zero():
                out[(i, j)] = diff
    return out


# -- classification ----------------------------------------------------------

NOT_BIALGEBRA = "not_bialgebra"
LIE_BIALGEBRA = "lie_bialgebra"
ALMOST_NL = "almost_NL"
WEAK_NL = "weak_NL"
NL = "NL"
LEVELS = (NOT_BIALGEBRA, LIE_BIALGEBRA, ALMOST_NL, WEAK_NL, NL)


def level_at_least(level: str, floor: str) -> bool:
    return LEVELS.index(level) >= LEVELS.index(floor)


@dataclass(frozen=True)
class Classification:
    level: str
    witness: str
    checks: tuple = field(default_factory=tuple)

    def at_least(self, floor: str) -> bool:
        return level_at_least(self.level, floor)


def representation_defect(b: StructureTensor, n: Operator) -> Cochain:
    """Jacobi defect of the deformed bracket, i.e. failure of its adjoint map to be a representation."""
    return jacobi_defect(deformed_bracket(b, n))


def classify(g: LieAlgebra | StructureTensor, delta: Cochain, n: Operator) -> Classification:
    """Walk the ladder bialgebra -> almost NL -> weak NL -> NL, stopping at the first failure."""
    b = bracket_of(g)
    checks: list[Verdict] = []

    def stop(level: str, v: Verdict) -> Classification:
        checks.append(v)
        return Classification(level, f"{v.name}: {v.witness}", tuple(checks))

    bi = is_lie_bialgebra(b, delta)
    if not bi:
        return stop(NOT_BIALGEBRA, bi)
    checks.append(bi)
    if n.dim != b.dim:
        raise DimensionMismatch("operator and algebra dimensions differ")

    cand = classify_operator(b, n)
    op = Verdict("operator_almost_nijenhuis", cand.status != NEITHER,
                 _first(ce_coboundary(b, cand.torsion), "coboundary of torsion"))
    if not op:
        return stop(LIE_BIALGEBRA, op)
    checks.append(op)

    bn = deformed_bracket(b, n)
    dn = is_cocycle(bn, delta)
    dn = Verdict("cocycle_deformed_bracket", dn.ok, dn.witness)
    if not dn:
        return stop(LIE_BIALGEBRA, dn)
    checks.append(dn)

    dual = transpose(delta)
    rep = representation_defect(dual, n.T)
    dv = Verdict("dual_deformed_bracket_lie", rep.is_zero(), _first(rep, "Jacobi defect"))
    if not dv:
        return stop(LIE_BIALGEBRA, dv)
    checks.append(dv)
    printed = concomitant_n_ad(dual, n.T)
    checks.append(Verdict("dual_operator_concomitant", printed.is_zero(),
                          "" if printed.is_zero() else f"nonzero at {list(printed.first_nonzero()[0])}",
                          informational=True))

    c1 = concomitant_delta_n(b, delta, n, 1)
    wv = Verdict("double_deformation_cocycle", c1.is_zero(), _first(c1, "defect"))
    if not wv:
        return stop(ALMOST_NL, wv)
    checks.append(wv)

    nv = Verdict("operator_nijenhuis", cand.status == NIJENHUIS, _first(cand.torsion, "torsion"))
    if not nv:
        return stop(WEAK_NL, nv)
    checks.append(nv)
    tt = torsion(dual, n.T)
    tv = Verdict("dual_torsion_zero", tt.is_zero(), _first(tt, "torsion"))
    if not tv:
        return stop(WEAK_NL, tv)
    checks.append(tv)
    return Classification(NL, "", tuple(checks))


# -- hierarchy ---------------------------------------------------------------

class HierarchyRefused(ValueError):
    """Input classifies below NL and no override was given."""


@dataclass(frozen=True)
class Cell:
    i: int
    j: int
    bracket: StructureTensor
    cobracket: Cochain
    primal_lie: bool
    dual_lie: bool
    cocycle: bool

    @property
    def valid(self) -> bool:
        return self.primal_lie and self.dual_lie and self.cocycle


@dataclass(frozen=True)
class Hierarchy:
    depth: int
    level: str
    cells: tuple
    compatibility: tuple  # ((a, b, ok), ...) over primal bracket orders

    @property
    def all_valid(self) -> bool:
        return all(c.valid for c in self.cells) and all(ok for _, _, ok in self.compatibility)

    def cell(self, i: int, j: int) -> Cell:
        for c in self.cells:
            if (c.i, c.j) == (i, j):
                return c
        raise KeyError((i, j))


def build_hierarchy(g: LieAlgebra | StructureTensor, delta: Cochain, n: Operator, depth: int,
                    force: bool = False) -> Hierarchy:
    """Build and independently verify every cell ``([.,.]_{n^i}, delta deformed by (tn)^j)``, ``i + j <= depth``.

    Primal brackets of all orders up to ``depth`` are also checked pairwise:
    the sum of any two must again be Lie.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    b = bracket_of(g)
    level = classify(b, delta, n).level
    if level != NL and not force:
        raise HierarchyRefused(f"input classifies as {level}; pass force=True to explore anyway")
    brackets = [iterated_bracket(b, n, i) for i in range(depth + 1)]
    cobrackets = [deform_delta_tn(delta, n, j) for j in range(depth + 1)]
    cells = []
    for i in range(depth + 1):
        bi = brackets[i]
        for j in range(depth + 1 - i):
            dj = cobrackets[j]
            primal = bi.is_lie
            dual = transpose(dj).is_lie
            coc = primal and ce_coboundary(bi, dj).is_zero()
            cells.append(Cell(i, j, bi, dj, primal, dual, coc))
    compat = tuple((a, c, (brackets[a] + brackets[c]).is_lie)
                   for a, c in combinations(range(depth + 1), 2))
    return Hierarchy(depth, level, tuple(cells), compat)


def equivalence_suite(g: LieAlgebra | StructureTensor, delta: Cochain, n: Operator, max_k: int = 3) -> dict:
    """Compare cocycle conditions across the three kinds of deformation.

    Returns ``{k: {"tn": bool, "n": bool, "mixed": {(i, j): bool}, "agree": bool}}``.
    Mixed cells are only evaluated for NL inputs.  A side is ``None`` when its
    bracket is not Lie (the cocycle question is then undefined).
    """
    b = bracket_of(g)
    nl = classify(b, delta, n).level == NL
    out = {}
    for k in range(1, max_k + 1):
        dk = deform_delta_tn(delta, n, k)
        left = ce_coboundary(b, dk).is_zero()
        bk = iterated_bracket(b, n, k)
        right = ce_coboundary(bk, delta).is_zero() if bk.is_lie else None
        row = {"tn": left, "n": right, "mixed": {}}
        if nl:
            for i in range(k + 1):
                bi = iterated_bracket(b, n, i)
                row["mixed"][(i, k - i)] = ce_coboundary(bi, deform_delta_tn(delta, n, k - i)).is_zero()
        vals = [left, right, *row["mixed"].values()]
        row["agree"] = len({v for v in vals if v is not None}) <= 1
        out[k] = row
    return out


__all__ = [
    "ALMOST_NL", "LEVELS", "LIE_BIALGEBRA", "NL", "NOT_BIALGEBRA", "WEAK_NL", "Cell", "Classification",
    "Hierarchy", "HierarchyRefused", "Verdict", "ad_star_equivariance_failures", "ad_star_equivariance_pairs", "ad_star_equivariant",
    "adnnad_defect", "bialgebra_identity_defects", "build_hierarchy", "classify", "cocycle_defect",
    "concomitant_delta_n", "deform_delta_tn", "dual_deformed_bracket", "equivalence_suite",
    "is_cocycle", "is_lie_bialgebra", "level_at_least", "representation_defect", "shifted_concomitant",
]
