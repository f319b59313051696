"""Integer lattices, their vectors and isometric embeddings."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from ..errors import (
    DegenerateLattice,
    DuplicateEdge,
    LatticeMismatch,
    NotEven,
    NotIsometric,
    NotMinusTwo,
    PreconditionError,
    SelfLoop,
)
from . import intmat

Gram = tuple[tuple[int, ...], ...]


def _freeze(rows: Sequence[Sequence[int]]) -> Gram:
    return tuple(tuple(int(v) for v in row) for row in rows)


@dataclass(frozen=True)
class IntegerLattice:
    """An even integral lattice given by its Gram matrix.

    ``allow_degenerate`` exists only for intermediate objects such as the
    intersection matrix of a curve configuration whose classes are linearly
    dependent.
    """

    gram: Gram
    labels: tuple[str, ...] | None = None
    allow_degenerate: bool = field(default=False, compare=False)

    def __post_init__(self):
        g = _freeze(self.gram)
        object.__setattr__(self, "gram", g)
        n = len(g)
        if n == 0:
            raise PreconditionError("lattice rank must be positive")
        if any(len(row) != n for row in g):
            raise PreconditionError("Gram matrix must be square")
        for i in range(n):
            for j in range(i):
                if g[i][j] != g[j][i]:
                    raise PreconditionError(f"Gram matrix is not symmetric at ({i}, {j})")
            if g[i][i] % 2:
                raise NotEven(f"odd diagonal entry at {i}")
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != n:
                raise PreconditionError("label count does not match rank")
            object.__setattr__(self, "labels", labels)
        if not self.allow_degenerate and self.det == 0:
            raise DegenerateLattice("Gram matrix is degenerate")

    @property
    def rank(self) -> int:
        return len(self.gram)

    @cached_property
    def det(self) -> int:
        return intmat.det(self.gram)

    @cached_property
    def signature(self) -> tuple[int, int]:
        """``(n_plus, n_minus)`` from the signs of leading principal minors
        after an exact rational LDL^T diagonalization."""
        from fractions import Fraction

        n = self.rank
        a = [[Fraction(v) for v in row] for row in self.gram]
        pos = neg = 0
        # symmetric Gaussian elimination with pivoting on the diagonal or on
        # a 2x2 hyperbolic block when the diagonal vanishes
        remaining = list(range(n))
        while remaining:
            piv = next((i for i in remaining if a[i][i] != 0), None)
            if piv is None:
                pair = next(((i, j) for i in remaining for j in remaining if i < j and a[i][j] != 0), None)
                if pair is None:
                    break
                i, j = pair
                # replace e_i by e_i + e_j, which has norm 2 a_ij != 0
                for k in range(n):
                    a[i][k] += a[j][k]
                for k in range(n):
                    a[k][i] += a[k][j]
                piv = i
            p = a[piv][piv]
            if p > 0:
                pos += 1
            else:
                neg += 1
            remaining.remove(piv)
            for i in remaining:
                f = a[i][piv] / p
                if f:
                    for k in remaining:
                        a[i][k] -= f * a[piv][k]
            for i in remaining:
                a[i][piv] = a[piv][i] = Fraction(0)
        return pos, neg

    @property
    def is_negative_definite(self) -> bool:
        return self.signature == (0, self.rank)

    @property
    def is_unimodular(self) -> bool:
        return abs(self.det) == 1

    def inner(self, x: Sequence[int], y: Sequence[int]) -> int:
        return intmat.bilinear(self.gram, x, y)

    def norm(self, x: Sequence[int]) -> int:
        return intmat.bilinear(self.gram, x, x)

    def vector(self, coords: Iterable[int]) -> "LatticeVector":
        return LatticeVector(self, tuple(int(c) for c in coords))

    def zero(self) -> "LatticeVector":
        return LatticeVector(self, (0,) * self.rank)

    def basis_vector(self, key: int | str) -> "LatticeVector":
        """Basis vector by 0-based index or by label."""
        if isinstance(key, str):
            if self.labels is None or key not in self.labels:
                raise KeyError(key)
            key = self.labels.index(key)
        c = [0] * self.rank
        c[key] = 1
        return LatticeVector(self, tuple(c))

    def basis(self) -> list["LatticeVector"]:
        return [self.basis_vector(i) for i in range(self.rank)]

    def to_dict(self) -> dict:
        d = {"rank": self.rank, "gram": [list(r) for r in self.gram]}
        if self.labels is not None:
            d["labels"] = list(self.labels)
        return d


@dataclass(frozen=True)
class LatticeVector:
    lattice: IntegerLattice
    coords: tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) != self.lattice.rank:
            raise PreconditionError("coordinate length does not match lattice rank")

    def _check(self, other: "LatticeVector"):
        if not isinstance(other, LatticeVector) or other.lattice != self.lattice:
            raise LatticeMismatch("vectors belong to different lattices")

    def __add__(self, other: "LatticeVector") -> "LatticeVector":
        self._check(other)
        return LatticeVector(self.lattice, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "LatticeVector") -> "LatticeVector":
        self._check(other)
        return LatticeVector(self.lattice, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "LatticeVector":
        return LatticeVector(self.lattice, tuple(-a for a in self.coords))

    def __mul__(self, k: int) -> "LatticeVector":
        return LatticeVector(self.lattice, tuple(k * a for a in self.coords))

    __rmul__ = __mul__

    def __lt__(self, other: "LatticeVector") -> bool:
        return self.coords < other.coords

    def __le__(self, other: "LatticeVector") -> bool:
        return self.coords <= other.coords

    def dot(self, other: "LatticeVector") -> int:
        self._check(other)
        return self.lattice.inner(self.coords, other.coords)

    @property
    def norm(self) -> int:
        return self.lattice.norm(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __repr__(self) -> str:
        return f"LatticeVector{self.coords}"


def inner_product(x: LatticeVector, y: LatticeVector) -> int:
    """Pairing ``x^T G y`` of two vectors of the same lattice."""
    if x.lattice != y.lattice:
        raise LatticeMismatch("vectors belong to different lattices")
    return x.dot(y)


def reflect(r: LatticeVector, x: LatticeVector) -> LatticeVector:
    """Reflection in the root ``r``: ``x + (x.r) r``."""
    if r.norm != -2:
        raise NotMinusTwo(f"reflection vector has norm {r.norm}")
    k = inner_product(x, r)
    return x + r * k


def reflection_matrix(lattice: IntegerLattice, r: Sequence[int]) -> intmat.IntMatrix:
    """Matrix (acting on column coordinates) of the reflection in ``r``."""
    if lattice.norm(r) != -2:
        raise NotMinusTwo("reflection vector must have norm -2")
    rg = intmat.matvec(lattice.gram, r)  # row vector r^T G, symmetric G
    n = lattice.rank
    return [[int(i == j) + r[i] * rg[j] for j in range(n)] for i in range(n)]


@dataclass(frozen=True)
class Embedding:
    """Isometric map ``source -> target``; columns of ``matrix`` are the
    images of the source basis in target coordinates."""

    source: IntegerLattice
    target: IntegerLattice
    matrix: Gram

    def __post_init__(self):
        m = _freeze(self.matrix)
        object.__setattr__(self, "matrix", m)
        if len(m) != self.target.rank or any(len(row) != self.source.rank for row in m):
            raise PreconditionError("embedding matrix has the wrong shape")
        pulled = intmat.matmul(intmat.matmul(intmat.transpose(m), self.target.gram), m)
        if _freeze(pulled) != self.source.gram:
            raise NotIsometric("embedding does not preserve the Gram matrix")

    @classmethod
    def from_images(cls, source: IntegerLattice, target: IntegerLattice, images: Sequence[Sequence[int]]):
        cols = [list(v) for v in images]
        return cls(source, target, _freeze(intmat.transpose(cols)) if cols else ())

    def images(self) -> list[LatticeVector]:
        return [self.target.vector(col) for col in intmat.transpose(self.matrix)]

    def apply(self, coords: Sequence[int]) -> LatticeVector:
        return self.target.vector(intmat.matvec(self.matrix, coords))


# constructions

L10_EDGES = [(1, 4), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (8, 9), (9, 10)]


def gram_from_graph(vertices: Sequence, edges: Sequence[Sequence]) -> list[list[int]]:
    index = {}
    for i, v in enumerate(vertices):
        if v in index:
            raise PreconditionError(f"duplicate vertex {v!r}")
        index[v] = i
    n = len(vertices)
    g = [[-2 if i == j else 0 for j in range(n)] for i in range(n)]
    seen = set()
    for e in edges:
        if len(e) != 2:
            raise PreconditionError(f"edge {e!r} is not a pair")
        a, b = e
        if a not in index or b not in index:
            raise PreconditionError(f"edge {e!r} uses an unknown vertex")
        if a == b:
            raise SelfLoop(f"self loop at {a!r}")
        key = frozenset((a, b))
        if key in seen:
            raise DuplicateEdge(f"edge {a!r}-{b!r} listed twice")
        seen.add(key)
        i, j = index[a], index[b]
        g[i][j] = g[j][i] = 1
    return g


def lattice_from_dual_graph(vertices: Sequence, edges: Sequence[Sequence], allow_degenerate: bool = False) -> IntegerLattice:
    """Gram of a configuration of (-2)-curves from its dual graph."""
    g = gram_from_graph(vertices, edges)
    return IntegerLattice(g, tuple(str(v) for v in vertices), allow_degenerate=allow_degenerate)


def make_L10() -> IntegerLattice:
    """The even unimodular hyperbolic lattice of rank 10 in the T-shaped
    basis e1..e10 (e1 attached to e4, chain e2-e3-...-e10)."""
    labels = [f"e{i}" for i in range(1, 11)]
    edges = [(f"e{a}", f"e{b}") for a, b in L10_EDGES]
    return lattice_from_dual_graph(labels, edges)


def rescale(lat: IntegerLattice, n: int) -> IntegerLattice:
    if n < 1:
        raise PreconditionError("scale factor must be positive")
    if n == 1:
        return lat
    return IntegerLattice(tuple(tuple(n * v for v in row) for row in lat.gram), lat.labels, lat.allow_degenerate)


def direct_sum(a: IntegerLattice, b: IntegerLattice) -> IntegerLattice:
    n, m = a.rank, b.rank
    g = [list(row) + [0] * m for row in a.gram] + [[0] * n + list(row) for row in b.gram]
    labels = None
    if a.labels is not None or b.labels is not None:
        la = a.labels or tuple(f"a{i}" for i in range(n))
        lb = b.labels or tuple(f"b{i}" for i in range(m))
        labels = tuple(la) + tuple(lb)
    return IntegerLattice(g, labels, a.allow_degenerate or b.allow_degenerate)


def hyperbolic_plane() -> IntegerLattice:
    return IntegerLattice(((0, 1), (1, 0)), ("u1", "u2"))
