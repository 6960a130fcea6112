"""Exact rational linear algebra.

Scalars are :class:`fractions.Fraction`.  Vectors are plain tuples of
fractions.  Two value types live here:

* :class:`Operator` -- a square matrix whose column ``j`` is the image of
  basis vector ``j``.
* :class:`Multivector` -- an element of the ``k``-th exterior power, stored
  sparsely on strictly increasing index tuples.

A bivector ``r`` evaluated on the covector pair ``(e^i, e^j)`` with ``i < j``
returns its stored coefficient for ``(i, j)``; ``e_i ^ e_j`` therefore has
coefficient 1 at ``(i, j)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import DimensionMismatch

Vector = tuple  # tuple[Fraction, ...]


def rational(x) -> Fraction:
    """Coerce ``x`` to a Fraction.  Floats are refused: they are never exact."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool) or isinstance(x, float):
        raise TypeError(f"refusing inexact or boolean scalar {x!r}")
    if isinstance(x, (int, str)):
        return Fraction(x)
    # numbers.Rational (e.g. gmpy2.mpq, sympy Rational) expose numerator/denominator
    try:
        return Fraction(int(x.numerator), int(x.denominator))
    except AttributeError:
        raise TypeError(f"cannot convert {x!r} to an exact rational") from None


def fmt_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# -- vectors -----------------------------------------------------------------

def vector(values: Iterable) -> Vector:
    return tuple(rational(v) for v in values)


def zero_vector(dim: int) -> Vector:
    return (Fraction(0),) * dim


def basis_vector(dim: int, i: int) -> Vector:
    return tuple(Fraction(1 if k == i else 0) for k in range(dim))


def vadd(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v: Vector) -> Vector:
    return tuple(c * a for a in v)


def vcombine(terms: Iterable[tuple], dim: int) -> Vector:
    """Sum of ``coeff * vec`` over ``(coeff, vec)`` pairs."""
    out = [Fraction(0)] * dim
    for c, v in terms:
        if c:
            for k, a in enumerate(v):
                if a:
                    out[k] += c * a
    return tuple(out)


def dot(u: Vector, v: Vector) -> Fraction:
    return sum((a * b for a, b in zip(u, v) if a and b), Fraction(0))


def is_zero_vector(v: Vector) -> bool:
    return not any(v)


# -- operators ---------------------------------------------------------------

class Operator:
    """Square rational matrix acting on column vectors.

    ``rows[i][j]`` is the coefficient of basis vector ``i`` in the image of
    basis vector ``j``.
    """

    __slots__ = ("dim", "rows")

    def __init__(self, rows: Sequence[Sequence]):
        rows = tuple(vector(r) for r in rows)
        dim = len(rows)
        if dim == 0 or any(len(r) != dim for r in rows):
            raise DimensionMismatch("operator matrix must be square and non-empty")
        self.dim = dim
        self.rows = rows

    @classmethod
    def identity(cls, dim: int) -> Operator:
        return cls([basis_vector(dim, i) for i in range(dim)])

    @classmethod
    def zero(cls, dim: int) -> Operator:
        return cls([zero_vector(dim)] * dim)

    @classmethod
    def scalar(cls, dim: int, c) -> Operator:
        return rational(c) * cls.identity(dim)

    @classmethod
    def from_images(cls, images: Sequence[Sequence]) -> Operator:
        """Build from the list of images of the basis vectors."""
        cols = [vector(v) for v in images]
        return cls([[cols[j][i] for j in range(len(cols))] for i in range(len(cols))])

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def __call__(self, v: Vector) -> Vector:
        if len(v) != self.dim:
            raise DimensionMismatch(f"operator of dim {self.dim} applied to vector of length {len(v)}")
        return tuple(dot(r, v) for r in self.rows)

    def __matmul__(self, other: Operator) -> Operator:
        if not isinstance(other, Operator):
            return NotImplemented
        if other.dim != self.dim:
            raise DimensionMismatch("cannot compose operators of different dimension")
        cols = [other.column(j) for j in range(self.dim)]
        return Operator([[dot(r, c) for c in cols] for r in self.rows])

    def __add__(self, other: Operator) -> Operator:
        if other.dim != self.dim:
            raise DimensionMismatch("cannot add operators of different dimension")
        return Operator([vadd(a, b) for a, b in zip(self.rows, other.rows)])

    def __sub__(self, other: Operator) -> Operator:
        if other.dim != self.dim:
            raise DimensionMismatch("cannot subtract operators of different dimension")
        return Operator([vsub(a, b) for a, b in zip(self.rows, other.rows)])

    def __neg__(self) -> Operator:
        return Operator([vscale(-1, r) for r in self.rows])

    def __rmul__(self, c) -> Operator:
        c = rational(c)
        return Operator([vscale(c, r) for r in self.rows])

    def __pow__(self, k: int) -> Operator:
        if k < 0:
            raise ValueError("negative operator powers are not supported")
        out = Operator.identity(self.dim)
        for _ in range(k):
            out = out @ self
        return out

    @property
    def T(self) -> Operator:
        return Operator([self.column(j) for j in range(self.dim)])

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def rank(self) -> int:
        return rank(self.rows)

    def inverse(self) -> Operator:
        inv = inverse(self.rows)
        if inv is None:
            raise ZeroDivisionError("operator is singular")
        return Operator(inv)

    def __eq__(self, other) -> bool:
        return isinstance(other, Operator) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(fmt_rational(x) for x in r) for r in self.rows)
        return f"Operator([{body}])"


def commutator(a: Operator, b: Operator) -> Operator:
    return a @ b - b @ a


# -- multivectors ------------------------------------------------------------

def canonical(idx: Sequence[int]) -> tuple[int, tuple]:
    """Sort an index tuple, returning ``(sign, sorted)``; sign 0 on repeats."""
    idx = list(idx)
    sign = 1
    # insertion sort counts transpositions; tuples are short
    for a in range(1, len(idx)):
        b = a
        while b > 0 and idx[b - 1] > idx[b]:
            idx[b - 1], idx[b] = idx[b], idx[b - 1]
            sign = -sign
            b -= 1
    for a in range(1, len(idx)):
        if idx[a] == idx[a - 1]:
            return 0, ()
    return sign, tuple(idx)


def _perm_sign(p: Sequence[int]) -> int:
    return canonical(p)[0]


def det(m: Sequence[Sequence[Fraction]]) -> Fraction:
    k = len(m)
    if k == 0:
        return Fraction(1)
    if k == 1:
        return m[0][0]
    if k == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = Fraction(0)
    for p in permutations(range(k)):
        term = Fraction(_perm_sign(p))
        for a in range(k):
            term *= m[a][p[a]]
            if not term:
                break
        total += term
    return total


class Multivector:
    """Element of the degree-``k`` exterior power over a ``dim``-dimensional space.

    Components are keyed by strictly increasing index tuples; indexing with an
    arbitrary tuple applies the permutation sign (zero on repeats).
    """

    __slots__ = ("dim", "degree", "_c")

    def __init__(self, dim: int, degree: int, components: Mapping | Iterable = ()):
        if dim <= 0 or degree < 0:
            raise ValueError("dimension must be positive and degree non-negative")
        self.dim = dim
        self.degree = degree
        items = components.items() if isinstance(components, Mapping) else components
        acc: dict[tuple, Fraction] = {}
        for idx, c in items:
            idx = tuple(idx)
            if len(idx) != degree:
                raise ValueError(f"index {idx} does not have length {degree}")
            if any(not 0 <= i < dim for i in idx):
                raise IndexError(f"index {idx} out of range for dim {dim}")
            sign, key = canonical(idx)
            c = rational(c)
            if sign and c:
                acc[key] = acc.get(key, Fraction(0)) + sign * c
        self._c = {k: v for k, v in acc.items() if v}

    @classmethod
    def _raw(cls, dim: int, degree: int, comps: dict) -> Multivector:
        mv = object.__new__(cls)
        mv.dim, mv.degree = dim, degree
        mv._c = {k: v for k, v in comps.items() if v}
        return mv

    @classmethod
    def scalar(cls, dim: int, value) -> Multivector:
        return cls(dim, 0, {(): value})

    @classmethod
    def from_vector(cls, v: Sequence) -> Multivector:
        v = vector(v)
        return cls(len(v), 1, {(i,): a for i, a in enumerate(v) if a})

    @classmethod
    def basis(cls, dim: int, *indices: int) -> Multivector:
        """``e_{i1} ^ ... ^ e_{ik}``."""
        return cls(dim, len(indices), {tuple(indices): 1})

    @classmethod
    def zero(cls, dim: int, degree: int) -> Multivector:
        return cls._raw(dim, degree, {})

    def __getitem__(self, idx) -> Fraction:
        if isinstance(idx, int):
            idx = (idx,)
        sign, key = canonical(idx)
        if not sign:
            return Fraction(0)
        return sign * self._c.get(key, Fraction(0))

    def items(self) -> Iterator[tuple[tuple, Fraction]]:
        return iter(sorted(self._c.items()))

    def as_vector(self) -> Vector:
        if self.degree != 1:
            raise ValueError("only degree-1 multivectors convert to vectors")
        return tuple(self._c.get((i,), Fraction(0)) for i in range(self.dim))

    def __call__(self, *covectors: Sequence) -> Fraction:
        """Evaluate on ``degree`` covectors given in the dual basis."""
        if len(covectors) != self.degree:
            raise ValueError(f"expected {self.degree} covectors, got {len(covectors)}")
        for eta in covectors:
            if len(eta) != self.dim:
                raise DimensionMismatch("covector length does not match dimension")
        total = Fraction(0)
        for key, c in self._c.items():
            total += c * det([[eta[t] for t in key] for eta in covectors])
        return total

    def is_zero(self) -> bool:
        return not self._c

    def _check(self, other: Multivector) -> None:
        if not isinstance(other, Multivector):
            raise TypeError("expected a Multivector")
        if other.dim != self.dim or other.degree != self.degree:
            raise DimensionMismatch(
                f"multivectors of shape ({self.dim},{self.degree}) and ({other.dim},{other.degree})")

    def __add__(self, other: Multivector) -> Multivector:
        self._check(other)
        out = dict(self._c)
        for k, v in other._c.items():
            out[k] = out.get(k, Fraction(0)) + v
        return Multivector._raw(self.dim, self.degree, out)

    def __sub__(self, other: Multivector) -> Multivector:
        return self + (-other)

    def __neg__(self) -> Multivector:
        return Multivector._raw(self.dim, self.degree, {k: -v for k, v in self._c.items()})

    def __rmul__(self, c) -> Multivector:
        c = rational(c)
        return Multivector._raw(self.dim, self.degree, {k: c * v for k, v in self._c.items()})

    def __eq__(self, other) -> bool:
        return (isinstance(other, Multivector) and self.dim == other.dim
                and self.degree == other.degree and self._c == other._c)

    def __hash__(self) -> int:
        return hash((self.dim, self.degree, frozenset(self._c.items())))

    def __repr__(self) -> str:
        return f"Multivector({self.dim}, {self.degree}, {fmt_multivector(self)})"


def fmt_multivector(p: Multivector, names: Sequence[str] | None = None) -> str:
    if names is None:
        names = [f"X{i + 1}" for i in range(p.dim)]
    if p.is_zero():
        return "0"
    parts = []
    for key, c in p.items():
        mono = "^".join(names[i] for i in key)
        if not mono:
            parts.append(fmt_rational(c))
            continue
        if c == 1:
            term = mono
        elif c == -1:
            term = "-" + mono
        else:
            term = f"{fmt_rational(c)}*{mono}"
        parts.append(term)
    out = parts[0]
    for t in parts[1:]:
        out += " - " + t[1:] if t.startswith("-") else " + " + t
    return out


def wedge(p: Multivector, q: Multivector) -> Multivector:
    if p.dim != q.dim:
        raise DimensionMismatch("wedge of multivectors over different dimensions")
    out: dict[tuple, Fraction] = {}
    for s, a in p._c.items():
        for t, b in q._c.items():
            sign, key = canonical(s + t)
            if sign:
                out[key] = out.get(key, Fraction(0)) + sign * a * b
    return Multivector._raw(p.dim, p.degree + q.degree, out)


def derivation(a: Operator, p: Multivector) -> Multivector:
    """Extend ``a`` to the exterior power as a derivation:
    ``v1^...^vk -> sum_s v1^...^(a vs)^...^vk``."""
    if a.dim != p.dim:
        raise DimensionMismatch("operator and multivector dimensions differ")
    cols = [a.column(j) for j in range(a.dim)]
    out: dict[tuple, Fraction] = {}
    for key, c in p._c.items():
        for s, t in enumerate(key):
            for m, coeff in enumerate(cols[t]):
                if not coeff:
                    continue
                sign, new = canonical(key[:s] + (m,) + key[s + 1:])
                if sign:
                    out[new] = out.get(new, Fraction(0)) + sign * c * coeff
    return Multivector._raw(p.dim, p.degree, out)


def iota(phi: Operator, p: Multivector) -> Multivector:
    """Insert ``phi`` into each covector slot of ``p``.

    ``phi`` acts on covectors (dual-basis matrix), so
    ``(iota(phi, P))(eta_1..eta_k) = sum_i P(eta_1, .., phi(eta_i), .., eta_k)``.
    On components this is the derivation extension of ``phi.T``.
    """
    if phi.dim != p.dim:
        raise DimensionMismatch("operator and multivector dimensions differ")
    return derivation(phi.T, p)


# -- exact Gaussian elimination ----------------------------------------------

def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and the pivot columns."""
    m = [list(vector(r)) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def inverse(rows: Sequence[Sequence]) -> list[list[Fraction]] | None:
    n = len(rows)
    aug = [list(vector(r)) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    red, piv = rref(aug)
    if piv[:n] != list(range(n)):
        return None
    return [row[n:] for row in red[:n]]


@dataclass(frozen=True)
class LinearSolution:
    particular: Vector
    nullspace: tuple  # tuple[Vector, ...]


def solve_linear(a: Sequence[Sequence], b: Sequence) -> LinearSolution | None:
    """Solve ``a x = b`` exactly.

    Returns a particular solution together with a basis of the null space of
    ``a``, or ``None`` when the system is inconsistent.
    """
    b = vector(b)
    if len(a) != len(b):
        raise DimensionMismatch("right-hand side length differs from row count")
    ncols = len(a[0]) if a else 0
    if any(len(r) != ncols for r in a):
        raise DimensionMismatch("ragged coefficient matrix")
    red, piv = rref([list(r) + [bi] for r, bi in zip(a, b)])
    if ncols in piv:
        return None
    x = [Fraction(0)] * ncols
    for row, c in zip(red, piv):
        x[c] = row[ncols]
    free = [c for c in range(ncols) if c not in piv]
    null = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, c in zip(red, piv):
            v[c] = -row[f]
        null.append(tuple(v))
    return LinearSolution(tuple(x), tuple(null))
