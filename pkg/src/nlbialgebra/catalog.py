"""Built-in worked examples."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .errors import UnknownName
from .exact import Multivector, Operator
from .lie import Cochain, LieAlgebra, StructureTensor, ad_p


@dataclass(frozen=True)
class Problem:
    """An algebra with optional cobracket, operator and r-matrix."""

    algebra: LieAlgebra
    cobracket: Cochain | None = None
    operator: Operator | None = None
    r_matrix: Multivector | None = None

    @property
    def name(self) -> str:
        return self.algebra.name

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def effective_cobracket(self) -> Cochain | None:
        """The explicit cobracket, or the coboundary of the r-matrix when only that is given."""
        if self.cobracket is not None:
            return self.cobracket
        if self.r_matrix is not None:
            return Cochain.from_vectors(self.dim, 1, 2, lambda x: ad_p(self.algebra, x, self.r_matrix))
        return None


def _bracket(dim: int, table: dict) -> StructureTensor:
    """Bracket from 1-based ``{(i, j): {k: coeff}}``."""
    return StructureTensor(dim, {(i - 1, j - 1): {k - 1: c for k, c in v.items()}
                                 for (i, j), v in table.items()})


def _wedge(dim: int, terms: dict) -> Multivector:
    """Bivector from 1-based ``{(i, j): coeff}``."""
    return Multivector(dim, 2, {(i - 1, j - 1): c for (i, j), c in terms.items()})


def _cobracket(dim: int, images: dict) -> Cochain:
    return Cochain(dim, 1, 2, {(k - 1,): _wedge(dim, v) for k, v in images.items()})


def _images(dim: int, images: dict) -> Operator:
    """Operator from 1-based ``{j: {i: coeff}}`` giving ``n(X_j)``."""
    cols = [[images.get(j + 1, {}).get(i + 1, 0) for i in range(dim)] for j in range(dim)]
    return Operator.from_images(cols)


def book() -> Problem:
    b = _bracket(3, {(1, 2): {2: -1}, (1, 3): {3: -1}})
    return Problem(LieAlgebra(b, "book"))


def euler_top() -> Problem:
    b = _bracket(3, {(1, 2): {2: -1}, (1, 3): {3: -1}})
    delta = _cobracket(3, {1: {(2, 3): -1}, 2: {(1, 3): 1}, 3: {(1, 2): -1}})
    n = _images(3, {1: {3: 1}, 2: {2: 1}, 3: {1: -1, 2: -1, 3: 1}})
    return Problem(LieAlgebra(b, "euler_top"), delta, n)


def so3() -> Problem:
    b = _bracket(3, {(1, 2): {3: -1}, (1, 3): {2: 1}, (2, 3): {1: -1}})
    return Problem(LieAlgebra(b, "so3"))


def sl2r() -> Problem:
    b = _bracket(3, {(1, 2): {2: -1}, (1, 3): {3: 1}, (2, 3): {1: -2}})
    return Problem(LieAlgebra(b, "sl2r"))


def solvable22() -> Problem:
    b = _bracket(4, {(1, 2): {2: 1}, (3, 4): {4: 1}})
    delta = _cobracket(4, {2: {(1, 2): 2}, 3: {(3, 4): 1}})
    n = _images(4, {1: {1: 1}, 2: {2: 1}})
    return Problem(LieAlgebra(b, "solvable22"), delta, n)


def r4_coboundary() -> Problem:
    b = _bracket(4, {(1, 4): {1: 1}, (3, 4): {2: 1}})
    n = _images(4, {1: {1: 1}, 2: {1: 1, 2: 1}, 3: {1: 1, 3: 1}, 4: {2: 1, 3: -1, 4: 1}})
    r = _wedge(4, {(2, 3): 1, (1, 4): -1})
    return Problem(LieAlgebra(b, "r4_coboundary"), None, n, r)


CATALOG: dict[str, Callable[[], Problem]] = {
    "euler_top": euler_top,
    "solvable22": solvable22,
    "r4_coboundary": r4_coboundary,
    "so3": so3,
    "book": book,
    "sl2r": sl2r,
}


def names() -> list[str]:
    return list(CATALOG)


def get(name: str) -> Problem:
    try:
        return CATALOG[name]()
    except KeyError:
        raise UnknownName(f"no catalog entry named {name!r}; known: {', '.join(CATALOG)}") from None


__all__ = ["CATALOG", "Problem", "book", "euler_top", "get", "names", "r4_coboundary", "sl2r",
           "so3", "solvable22"]
