"""Lie brackets by structure constants, cochains and the Chevalley-Eilenberg differential."""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Callable, Iterator, Mapping, Sequence

from .errors import DimensionMismatch, JacobiFailure, UncertifiedBracket
from .exact import (
    Multivector,
    Operator,
    Vector,
    basis_vector,
    det,
    derivation,
    fmt_multivector,
    rational,
    vadd,
    vcombine,
    vector,
    vscale,
    zero_vector,
)

PRIMAL = "primal"
DUAL = "dual"


class StructureTensor:
    """Antisymmetric bilinear map on a ``dim``-dimensional space.

    ``table[(i, j)]`` for ``i < j`` is the vector ``[e_i, e_j]``.  The
    ``space`` tag records whether the basis is of the algebra or its dual.
    """

    __slots__ = ("dim", "space", "_t", "__dict__")

    def __init__(self, dim: int, table: Mapping = (), space: str = PRIMAL):
        if dim <= 0:
            raise ValueError("dimension must be positive")
        if space not in (PRIMAL, DUAL):
            raise ValueError(f"space must be {PRIMAL!r} or {DUAL!r}")
        self.dim = dim
        self.space = space
        t: dict[tuple, Vector] = {}
        items = table.items() if isinstance(table, Mapping) else table
        for (i, j), v in items:
            if not (0 <= i < dim and 0 <= j < dim):
                raise IndexError(f"pair {(i, j)} out of range for dim {dim}")
            if isinstance(v, Mapping):
                v = [v.get(k, 0) for k in range(dim)]
            v = vector(v)
            if len(v) != dim:
                raise DimensionMismatch(f"bracket value for {(i, j)} has length {len(v)}")
            if i == j:
                if any(v):
                    raise ValueError(f"[e{i}, e{i}] must vanish")
                continue
            if i > j:
                i, j, v = j, i, vscale(-1, v)
            if (i, j) in t:
                t[(i, j)] = vadd(t[(i, j)], v)
            else:
                t[(i, j)] = v
        self._t = {k: v for k, v in t.items() if any(v)}

    @classmethod
    def from_function(cls, dim: int, f: Callable[[int, int], Sequence], space: str = PRIMAL) -> StructureTensor:
        """Tabulate ``f(i, j)`` on ``i < j``.  Antisymmetry is assumed, not checked."""
        return cls(dim, {(i, j): f(i, j) for i, j in combinations(range(dim), 2)}, space)

    @classmethod
    def zero(cls, dim: int, space: str = PRIMAL) -> StructureTensor:
        return cls(dim, {}, space)

    def basis_bracket(self, i: int, j: int) -> Vector:
        if i == j:
            return zero_vector(self.dim)
        if i < j:
            return self._t.get((i, j), zero_vector(self.dim))
        return vscale(-1, self._t.get((j, i), zero_vector(self.dim)))

    def __call__(self, u: Sequence, v: Sequence) -> Vector:
        if len(u) != self.dim or len(v) != self.dim:
            raise DimensionMismatch("bracket arguments do not match dimension")
        terms = []
        for (i, j), w in self._t.items():
            c = u[i] * v[j] - u[j] * v[i]
            if c:
                terms.append((c, w))
        return vcombine(terms, self.dim)

    def items(self) -> Iterator[tuple[tuple, Vector]]:
        return iter(sorted(self._t.items()))

    def is_zero(self) -> bool:
        return not self._t

    @cached_property
    def is_lie(self) -> bool:
        return jacobi_defect(self).is_zero()

    def with_space(self, space: str) -> StructureTensor:
        return StructureTensor(self.dim, self._t, space)

    def _check(self, other: StructureTensor) -> None:
        if other.dim != self.dim:
            raise DimensionMismatch("brackets over different dimensions")
        if other.space != self.space:
            raise ValueError("cannot combine primal and dual brackets")

    def __add__(self, other: StructureTensor) -> StructureTensor:
        self._check(other)
        return StructureTensor(self.dim, list(self._t.items()) + list(other._t.items()), self.space)

    def __neg__(self) -> StructureTensor:
        return StructureTensor(self.dim, {k: vscale(-1, v) for k, v in self._t.items()}, self.space)

    def __sub__(self, other: StructureTensor) -> StructureTensor:
        return self + (-other)

    def __rmul__(self, c) -> StructureTensor:
        c = rational(c)
        return StructureTensor(self.dim, {k: vscale(c, v) for k, v in self._t.items()}, self.space)

    def __eq__(self, other) -> bool:
        return (isinstance(other, StructureTensor) and self.dim == other.dim
                and self.space == other.space and self._t == other._t)

    def __hash__(self) -> int:
        return hash((self.dim, self.space, frozenset(self._t.items())))

    def __repr__(self) -> str:
        return f"StructureTensor({self.dim}, {self.space}, {format_bracket(self)})"


def format_bracket(b: StructureTensor, names: Sequence[str] | None = None) -> str:
    if names is None:
        sym = "X^" if b.space == DUAL else "X"
        names = [f"{sym}{i + 1}" for i in range(b.dim)]
    parts = []
    for (i, j), v in b.items():
        parts.append(f"[{names[i]},{names[j]}] = {format_vector(v, names)}")
    return "; ".join(parts) if parts else "abelian"


def format_vector(v: Sequence[Fraction], names: Sequence[str]) -> str:
    return fmt_multivector(Multivector.from_vector(v), names)


class LieAlgebra:
    """A named bracket whose Jacobi identity is checked at construction."""

    def __init__(self, bracket: StructureTensor, name: str = "", basis: Sequence[str] | None = None):
        self.bracket = bracket
        self.name = name
        if basis is None:
            sym = "X^" if bracket.space == DUAL else "X"
            basis = [f"{sym}{i + 1}" for i in range(bracket.dim)]
        if len(basis) != bracket.dim:
            raise DimensionMismatch("basis names do not match dimension")
        self.basis = tuple(basis)
        self.jacobi_certified = bracket.is_lie

    @property
    def dim(self) -> int:
        return self.bracket.dim

    def require(self) -> LieAlgebra:
        if not self.jacobi_certified:
            raise UncertifiedBracket(f"{self.name or 'bracket'} fails the Jacobi identity")
        return self

    def __repr__(self) -> str:
        flag = "" if self.jacobi_certified else ", uncertified"
        return f"LieAlgebra({self.name!r}, dim={self.dim}{flag})"


def bracket_of(g: LieAlgebra | StructureTensor) -> StructureTensor:
    return g.bracket if isinstance(g, LieAlgebra) else g


def require_lie(g: LieAlgebra | StructureTensor) -> StructureTensor:
    b = bracket_of(g)
    if not b.is_lie:
        raise UncertifiedBracket("bracket fails the Jacobi identity")
    return b


# -- cochains ----------------------------------------------------------------

class Cochain:
    """Antisymmetric ``arity``-linear map into the ``degree``-th exterior power.

    Values are stored on strictly increasing basis-index tuples.  A cobracket
    is a ``Cochain`` of arity 1 and degree 2; a torsion has arity 2, degree 1.
    """

    __slots__ = ("dim", "arity", "degree", "_v")

    def __init__(self, dim: int, arity: int, degree: int, values: Mapping = ()):
        self.dim, self.arity, self.degree = dim, arity, degree
        acc: dict[tuple, Multivector] = {}
        items = values.items() if isinstance(values, Mapping) else values
        for key, val in items:
            key = (key,) if isinstance(key, int) else tuple(key)
            if len(key) != arity:
                raise ValueError(f"input {key} does not have arity {arity}")
            val = _as_multivector(val, dim, degree)
            if any(not 0 <= i < dim for i in key):
                raise IndexError(f"input {key} out of range")
            if len(set(key)) < len(key):
                if not val.is_zero():
                    raise ValueError(f"antisymmetric cochain must vanish on repeated input {key}")
                continue
            order = sorted(range(arity), key=lambda a: key[a])
            skey = tuple(key[a] for a in order)
            sign = _parity(order)
            val = val if sign == 1 else -val
            acc[skey] = acc[skey] + val if skey in acc else val
        self._v = {k: v for k, v in acc.items() if not v.is_zero()}

    @classmethod
    def from_function(cls, dim: int, arity: int, degree: int, f: Callable) -> Cochain:
        """Tabulate ``f(*basis_indices)`` on increasing index tuples."""
        return cls(dim, arity, degree, {key: f(*key) for key in combinations(range(dim), arity)})

    @classmethod
    def from_vectors(cls, dim: int, arity: int, degree: int, f: Callable) -> Cochain:
        """Tabulate ``f(*basis_vectors)``."""
        return cls.from_function(dim, arity, degree, lambda *key: f(*(basis_vector(dim, i) for i in key)))

    def at(self, *key: int) -> Multivector:
        """Value on basis vectors with the given indices (any order)."""
        if len(key) != self.arity:
            raise ValueError(f"expected {self.arity} indices")
        if len(set(key)) < len(key):
            return Multivector.zero(self.dim, self.degree)
        order = sorted(range(self.arity), key=lambda a: key[a])
        skey = tuple(key[a] for a in order)
        val = self._v.get(skey)
        if val is None:
            return Multivector.zero(self.dim, self.degree)
        return val if _parity(order) == 1 else -val

    def __call__(self, *vectors: Sequence) -> Multivector:
        if len(vectors) != self.arity:
            raise ValueError(f"expected {self.arity} arguments, got {len(vectors)}")
        out = Multivector.zero(self.dim, self.degree)
        for key, val in self._v.items():
            c = det([[v[t] for t in key] for v in vectors])
            if c:
                out = out + c * val
        return out

    def items(self) -> Iterator[tuple[tuple, Multivector]]:
        return iter(sorted(self._v.items()))

    def is_zero(self) -> bool:
        return not self._v

    def first_nonzero(self) -> tuple[tuple, Multivector] | None:
        return next(self.items(), None)

    def _check(self, other: Cochain) -> None:
        if (self.dim, self.arity, self.degree) != (other.dim, other.arity, other.degree):
            raise DimensionMismatch("cochains of different shape")

    def __add__(self, other: Cochain) -> Cochain:
        self._check(other)
        out = dict(self._v)
        for k, v in other._v.items():
            out[k] = out[k] + v if k in out else v
        return Cochain(self.dim, self.arity, self.degree, out)

    def __neg__(self) -> Cochain:
        return Cochain(self.dim, self.arity, self.degree, {k: -v for k, v in self._v.items()})

    def __sub__(self, other: Cochain) -> Cochain:
        return self + (-other)

    def __rmul__(self, c) -> Cochain:
        c = rational(c)
        return Cochain(self.dim, self.arity, self.degree, {k: c * v for k, v in self._v.items()})

    def __eq__(self, other) -> bool:
        return (isinstance(other, Cochain) and self.dim == other.dim and self.arity == other.arity
                and self.degree == other.degree and self._v == other._v)

    def __hash__(self) -> int:
        return hash((self.dim, self.arity, self.degree, frozenset(self._v.items())))

    def __repr__(self) -> str:
        body = ", ".join(f"{k}: {v!r}" for k, v in self.items())
        return f"Cochain(dim={self.dim}, arity={self.arity}, degree={self.degree}, {{{body}}})"


def _parity(order: Sequence[int]) -> int:
    sign = 1
    seen = list(order)
    for a in range(len(seen)):
        while seen[a] != a:
            b = seen[a]
            seen[a], seen[b] = seen[b], seen[a]
            sign = -sign
    return sign


def _as_multivector(val, dim: int, degree: int) -> Multivector:
    if isinstance(val, Multivector):
        if val.dim != dim or val.degree != degree:
            raise DimensionMismatch(f"value of shape ({val.dim},{val.degree}), expected ({dim},{degree})")
        return val
    if degree == 1:
        v = vector(val)
        if len(v) != dim:
            raise DimensionMismatch("vector value has wrong length")
        return Multivector.from_vector(v)
    if degree == 0:
        return Multivector.scalar(dim, val)
    raise TypeError(f"cannot interpret {val!r} as a degree-{degree} multivector")


def as_structure_tensor(c: Cochain, space: str = PRIMAL) -> StructureTensor:
    """View an arity-2, degree-1 cochain as a bracket."""
    if c.arity != 2 or c.degree != 1:
        raise ValueError("only arity-2 degree-1 cochains are brackets")
    return StructureTensor(c.dim, {k: v.as_vector() for k, v in c.items()}, space)


def as_cochain(b: StructureTensor) -> Cochain:
    return Cochain(b.dim, 2, 1, {k: v for k, v in b.items()})


# -- representations ---------------------------------------------------------

def ad(g: LieAlgebra | StructureTensor, xi: Sequence) -> Operator:
    """Matrix of ``zeta -> [xi, zeta]``."""
    b = bracket_of(g)
    return Operator.from_images([b(xi, basis_vector(b.dim, j)) for j in range(b.dim)])


def ad_star(g: LieAlgebra | StructureTensor, xi: Sequence) -> Operator:
    """Coadjoint matrix, ``<ad*_xi eta, zeta> = -<eta, [xi, zeta]>``."""
    return -ad(g, xi).T


def ad_p(g: LieAlgebra | StructureTensor, xi: Sequence, p: Multivector) -> Multivector:
    """Adjoint action of ``xi`` on a multivector, the Schouten bracket ``[[xi, P]]``.

    On vectors this is the bracket itself; on higher degrees it acts as a
    derivation.
    """
    b = bracket_of(g)
    if p.dim != b.dim:
        raise DimensionMismatch("multivector and algebra dimensions differ")
    return derivation(ad(b, xi), p)


def jacobi_defect(g: LieAlgebra | StructureTensor) -> Cochain:
    """Cyclic sum ``[[x,y],z] + [[z,x],y] + [[y,z],x]`` on basis triples."""
    b = bracket_of(g)

    def cyc(i, j, k):
        e = [basis_vector(b.dim, t) for t in (i, j, k)]
        x, y, z = e
        return vadd(vadd(b(b(x, y), z), b(b(z, x), y)), b(b(y, z), x))

    return Cochain.from_function(b.dim, 3, 1, cyc)


def ce_coboundary(g: LieAlgebra | StructureTensor, c: Cochain, trivial: bool = False) -> Cochain:
    """Chevalley-Eilenberg differential of ``c``.

    The action on values is the adjoint action on multivectors; pass
    ``trivial=True`` for the trivial representation, which for scalar
    cochains gives ``d alpha(x, y) = -alpha([x, y])``.
    """
    b = bracket_of(g)
    if c.dim != b.dim:
        raise DimensionMismatch("cochain and algebra dimensions differ")
    k = c.arity
    n = b.dim
    basis = [basis_vector(n, t) for t in range(n)]

    def value(*key):
        xs = [basis[t] for t in key]
        out = Multivector.zero(n, c.degree)
        if not trivial:
            for i in range(k + 1):
                rest = xs[:i] + xs[i + 1:]
                term = ad_p(b, xs[i], c(*rest))
                out = out + term if i % 2 == 0 else out - term
        for i, j in combinations(range(k + 1), 2):
            rest = [b(xs[i], xs[j])] + [x for t, x in enumerate(xs) if t not in (i, j)]
            term = c(*rest)
            out = out + term if (i + j) % 2 == 0 else out - term
        return out

    return Cochain.from_function(n, k + 1, c.degree, value)


# -- bivectors and duality ---------------------------------------------------

def sharp(r: Multivector) -> Operator:
    """The map ``eta -> r(eta, .)`` from the dual to the algebra, in dual-basis columns."""
    if r.degree != 2:
        raise ValueError("sharp is defined for bivectors")
    n = r.dim
    return Operator([[r[i, j] for i in range(n)] for j in range(n)])


def schouten_bivector(g: LieAlgebra | StructureTensor, r: Multivector, r2: Multivector | None = None) -> Multivector:
    """Algebraic Schouten bracket of bivectors as an element of the third exterior power.

    ``[[r, r]](a, b, c) = a([r a', ...])`` in cyclic form; the mixed bracket
    is obtained by polarization.
    """
    b = bracket_of(g)
    if r.degree != 2 or (r2 is not None and r2.degree != 2):
        raise ValueError("schouten_bivector takes bivectors")
    if r.dim != b.dim or (r2 is not None and r2.dim != b.dim):
        raise DimensionMismatch("bivector and algebra dimensions differ")
    if r2 is not None:
        half = Fraction(1, 2)
        return half * (schouten_bivector(b, r + r2) - schouten_bivector(b, r) - schouten_bivector(b, r2))
    n = b.dim
    rs = sharp(r)
    cols = [rs.column(t) for t in range(n)]
    comps = {}
    for i, j, k in combinations(range(n), 3):
        val = (b(cols[j], cols[k])[i] - b(cols[i], cols[k])[j] + b(cols[i], cols[j])[k])
        if val:
            comps[(i, j, k)] = val
    return Multivector(n, 3, comps)


def transpose(delta: Cochain) -> StructureTensor:
    """Dual bracket of a cobracket: ``[e^i, e^j](e_k) = delta(e_k)(e^i, e^j)``."""
    if delta.arity != 1 or delta.degree != 2:
        raise ValueError("transpose expects a cobracket (arity 1, degree 2)")
    n = delta.dim
    table: dict[tuple, list] = {}
    for (k,), val in delta.items():
        for (i, j), c in val.items():
            table.setdefault((i, j), [Fraction(0)] * n)[k] += c
    return StructureTensor(n, table, DUAL)


def cobracket_from_dual(b: StructureTensor) -> Cochain:
    """Inverse of :func:`transpose`."""
    n = b.dim
    vals: dict[int, dict] = {}
    for (i, j), v in b.items():
        for k, c in enumerate(v):
            if c:
                vals.setdefault(k, {})[(i, j)] = c
    return Cochain(n, 1, 2, {(k,): Multivector(n, 2, d) for k, d in vals.items()})


def dualize(g: LieAlgebra | StructureTensor, delta: Cochain | StructureTensor, name: str = "") -> LieAlgebra:
    """The dual Lie algebra defined by a cobracket (or a ready dual bracket)."""
    b = bracket_of(g)
    dual = delta if isinstance(delta, StructureTensor) else transpose(delta)
    if dual.dim != b.dim:
        raise DimensionMismatch("cobracket and algebra dimensions differ")
    dual = dual.with_space(DUAL if b.space == PRIMAL else PRIMAL)
    if not dual.is_lie:
        key, val = jacobi_defect(dual).first_nonzero()
        raise JacobiFailure(f"dual bracket fails Jacobi on basis triple {key}: {val!r}")
    basis = None
    if isinstance(g, LieAlgebra):
        basis = [_dual_name(s) for s in g.basis]
    return LieAlgebra(dual, name or (f"{g.name}*" if isinstance(g, LieAlgebra) and g.name else ""), basis)


def _dual_name(s: str) -> str:
    if s.startswith("X") and s[1:].isdigit():
        return "X^" + s[1:]
    if s.startswith("X^"):
        return "X" + s[2:]
    return s + "*"

