"""Discriminant groups, saturations, complements and overlattice constructions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, prod
from typing import Sequence

import numpy as np

from ..errors import LatticeMismatch, NotFound, PreconditionError, SingularMatrix
from . import intmat
from .core import Embedding, IntegerLattice, LatticeVector, direct_sum, lattice_from_dual_graph, rescale
from .shortvec import FRAMES, box_vectors


@dataclass(frozen=True)
class DiscriminantData:
    """Smith data ``U * M * V = D`` of an integer matrix.

    ``invariant_factors`` lists only the diagonal entries greater than one;
    ``diagonal`` keeps all of them.  When built from a lattice,
    ``generators`` holds one vector of the dual lattice (rational basis
    coordinates) per nontrivial factor.
    """

    invariant_factors: tuple[int, ...]
    U: tuple[tuple[int, ...], ...]
    V: tuple[tuple[int, ...], ...]
    diagonal: tuple[int, ...]
    generators: tuple[tuple[Fraction, ...], ...] = ()
    gram: tuple[tuple[int, ...], ...] | None = None

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def in_dual(self, x: Sequence) -> bool:
        """Whether rational basis coordinates ``x`` describe a dual vector."""
        a = _pair_rational(self._gram(), x)
        return all(Fraction(v).denominator == 1 for v in a)

    def class_of(self, x: Sequence) -> tuple[int, ...]:
        """Coordinates of ``x + L`` in ``Z/d_1 x ... x Z/d_k``."""
        if not self.in_dual(x):
            raise PreconditionError("vector is not in the dual lattice")
        a = [int(v) for v in _pair_rational(self._gram(), x)]
        ua = intmat.matvec(self.U, a)
        out = []
        for i, d in enumerate(self.diagonal):
            if d > 1:
                out.append(ua[i] % d)
        return tuple(out)

    def same_class(self, x: Sequence, y: Sequence) -> bool:
        diff = [Fraction(a) - Fraction(b) for a, b in zip(x, y)]
        return all(v.denominator == 1 for v in diff)

    def is_trivial_class(self, x: Sequence) -> bool:
        return all(Fraction(v).denominator == 1 for v in x)

    def _gram(self):
        if self.gram is None:
            raise PreconditionError("discriminant data was not built from a lattice")
        return self.gram


def _pair_rational(g, x):
    return [sum(Fraction(gij) * Fraction(xj) for gij, xj in zip(row, x)) for row in g]


def smith_normal_form(m: Sequence[Sequence[int]]) -> DiscriminantData:
    """Smith normal form of a square nonsingular integer matrix."""
    m = intmat.as_matrix(m)
    if not m or len(m) != len(m[0]):
        raise PreconditionError("Smith normal form expects a square matrix")
    if intmat.det(m) == 0:
        raise SingularMatrix("Smith normal form of a singular matrix")
    u, d, v = intmat.smith(m)
    diag = tuple(intmat.smith_diagonal(d))
    return DiscriminantData(
        invariant_factors=tuple(x for x in diag if x > 1),
        U=tuple(map(tuple, u)),
        V=tuple(map(tuple, v)),
        diagonal=diag,
    )


def discriminant_group(lat: IntegerLattice) -> DiscriminantData:
    """``L*/L`` with one dual-lattice representative per cyclic factor.

    With ``U G V = D`` the dual lattice is ``G^-1 Z^n`` and the class
    generating the ``k``-th factor is column ``k`` of ``V`` divided by ``d_k``.
    """
    if lat.det == 0:
        raise SingularMatrix("discriminant group of a degenerate lattice")
    base = smith_normal_form(lat.gram)
    n = lat.rank
    gens = []
    for k, d in enumerate(base.diagonal):
        if d > 1:
            gens.append(tuple(Fraction(base.V[i][k], d) for i in range(n)))
    return DiscriminantData(
        invariant_factors=base.invariant_factors,
        U=base.U,
        V=base.V,
        diagonal=base.diagonal,
        generators=tuple(gens),
        gram=lat.gram,
    )


def closure_index(emb: Embedding) -> int:
    """Index of ``emb(source)`` in its saturation inside the target."""
    _, d, _ = intmat.smith(emb.matrix)
    diag = [x for x in intmat.smith_diagonal(d) if x]
    if len(diag) != emb.source.rank:
        raise PreconditionError("embedded vectors are linearly dependent")
    return prod(diag)


def primitive_closure(amb: IntegerLattice, emb: Embedding) -> Embedding:
    """Saturation ``(emb(source) (x) Q) /\\ amb`` with an integral basis.

    If ``U E V = D`` for the embedding matrix ``E``, the first ``r`` columns
    of ``U^-1`` are a basis of the saturation.  A sublattice that is already
    primitive is returned unchanged.
    """
    if emb.target != amb:
        raise LatticeMismatch("embedding target is not the ambient lattice")
    if amb.det == 0:
        raise PreconditionError("ambient lattice must be nondegenerate")
    e = [list(r) for r in emb.matrix]
    u, d, _ = intmat.smith(e)
    diag = [x for x in intmat.smith_diagonal(d) if x]
    r = len(diag)
    if r != emb.source.rank:
        raise PreconditionError("embedded vectors are linearly dependent")
    if prod(diag) == 1:
        return emb
    uinv = intmat.inverse_unimodular(u)
    cols = [[uinv[i][j] for i in range(amb.rank)] for j in range(r)]
    gram = [[amb.inner(a, b) for b in cols] for a in cols]
    return Embedding.from_images(IntegerLattice(gram), amb, cols)


def is_primitive(emb: Embedding) -> bool:
    return closure_index(emb) == 1


def sublattice_from_vectors(amb: IntegerLattice, vectors: Sequence[Sequence[int]], allow_degenerate: bool = False) -> Embedding:
    vecs = [list(v.coords) if isinstance(v, LatticeVector) else list(v) for v in vectors]
    gram = [[amb.inner(a, b) for b in vecs] for a in vecs]
    return Embedding.from_images(IntegerLattice(gram, allow_degenerate=allow_degenerate), amb, vecs)


def _lex_positive(v: list[int]) -> list[int]:
    for c in v:
        if c:
            return v if c > 0 else [-x for x in v]
    return v


def orthogonal_complement_primitive(amb: IntegerLattice, gens: Sequence[LatticeVector]) -> list[LatticeVector]:
    """Integral basis of ``{x : x . g = 0 for all g}``.

    This is the integer kernel of the pairing matrix, which is automatically
    primitive.  A rank-one answer is normalized to be lex-positive.
    """
    if amb.det == 0:
        raise PreconditionError("ambient lattice must be nondegenerate")
    for g in gens:
        if g.lattice != amb:
            raise LatticeMismatch("generator from another lattice")
    if not gens:
        return amb.basis()
    rows = [intmat.matvec(amb.gram, g.coords) for g in gens]
    basis = intmat.integer_kernel(rows)
    if len(basis) == 1:
        b = basis[0]
        g = intmat.gcd_vector(b)
        basis = [_lex_positive([x // g for x in b])]
    return [amb.vector(b) for b in basis]


# searching for configurations of roots

def _graph_lattice(target_graph) -> IntegerLattice:
    if isinstance(target_graph, IntegerLattice):
        return target_graph
    if isinstance(target_graph, dict):
        return lattice_from_dual_graph(target_graph["vertices"], target_graph["edges"], allow_degenerate=True)
    vertices, edges = target_graph
    return lattice_from_dual_graph(vertices, edges, allow_degenerate=True)


def embed_by_graph(amb: IntegerLattice, target_graph, box: int = 3, frame: str = "basis") -> Embedding:
    """Bounded search for roots of ``amb`` realizing a dual graph.

    Vertices are assigned in their given order and candidates are tried in
    lexicographic order, so the returned embedding is the lex-first one
    among those inside the box.  Forward checking keeps the candidate list of
    every unassigned vertex consistent with all assignments made so far.
    """
    if box < 1:
        raise PreconditionError("box must be at least 1")
    if frame not in FRAMES:
        raise PreconditionError(f"unknown frame {frame!r}")
    src = _graph_lattice(target_graph)
    m = src.rank
    if intmat.rank(src.gram) > amb.rank:
        raise NotFound("graph Gram rank exceeds the ambient rank")
    if src.det != 0 and amb.det != 0:
        sp, sm = src.signature
        ap, am = amb.signature
        if sp > ap or sm > am:
            raise NotFound(f"signature {src.signature} does not fit into the ambient signature {amb.signature}")
    diag = set(src.gram[i][i] for i in range(m))
    if len(diag) != 1:
        raise PreconditionError("all vertices must have the same norm")
    norm = diag.pop()
    pool = box_vectors(amb, norm, box, frame)
    if len(pool) == 0:
        raise NotFound("no vectors of the required norm", box, frame)
    g = np.array(amb.gram, dtype=np.int64)
    pg = pool @ g
    # small pools get the full product table; large ones pair on the fly
    table = pg @ pool.T if len(pool) <= 6000 else None
    target = src.gram
    assign = [0] * m

    def rec(level: int, cands: list[np.ndarray]) -> bool:
        if level == m:
            return True
        for idx in cands[level]:
            prods = table[idx] if table is not None else pg @ pool[idx]
            nxt = list(cands)
            ok = True
            for l in range(level + 1, m):
                c = cands[l]
                c = c[prods[c] == target[l][level]]
                if len(c) == 0:
                    ok = False
                    break
                nxt[l] = c
            if ok:
                assign[level] = int(idx)
                if rec(level + 1, nxt):
                    return True
        return False

    start = [np.arange(len(pool))] * m
    if not rec(0, start):
        raise NotFound("no embedding of the graph", box, frame)
    images = [[int(v) for v in pool[i]] for i in assign]
    return Embedding.from_images(src, amb, images)


# the overlattice M_R

@dataclass(frozen=True)
class MRLattice:
    """The overlattice of ``L10(2) + R(2)`` spanned by ``(v, 0)`` and
    ``(w, w)/2``.

    ``lattice`` uses the basis ``(e_i, 0)`` followed by ``(w_j, w_j)/2`` for
    the basis ``w_j`` of ``R``.  ``transition`` writes the standard basis of
    ``sum_lattice`` in that basis, so ``|det transition|`` is the index.
    """

    lattice: IntegerLattice
    alpha: Embedding
    sum_lattice: IntegerLattice
    transition: tuple[tuple[int, ...], ...]
    index: int
    root_embedding: Embedding

    @property
    def det_from_index(self) -> Fraction:
        return Fraction(self.sum_lattice.det, self.index**2)


def build_MR(r_emb: Embedding) -> MRLattice:
    big = r_emb.target
    rlat = r_emb.source
    n, r = big.rank, rlat.rank
    e = [list(row) for row in r_emb.matrix]  # n x r
    ge = intmat.matmul(big.gram, e)
    top = [[2 * big.gram[i][k] for k in range(n)] + ge[i] for i in range(n)]
    bottom = [[ge[k][j] for k in range(n)] + list(rlat.gram[j]) for j in range(r)]
    labels = tuple(f"({lab},0)" for lab in (big.labels or [f"e{i+1}" for i in range(n)]))
    labels += tuple(f"({lab},{lab})/2" for lab in (rlat.labels or [f"w{j+1}" for j in range(r)]))
    m = IntegerLattice(top + bottom, labels)
    alpha_matrix = [[int(i == j) for j in range(n)] for i in range(n)] + [[0] * n for _ in range(r)]
    alpha = Embedding(rescale(big, 2), m, alpha_matrix)
    sum_lat = direct_sum(rescale(big, 2), rescale(rlat, 2))
    # (e_i, 0) -> (e_i, 0);  (0, w_j) -> 2 (w_j, w_j)/2 - (w_j, 0)
    trans = [[0] * (n + r) for _ in range(n + r)]
    for i in range(n):
        trans[i][i] = 1
    for j in range(r):
        for i in range(n):
            trans[i][n + j] = -e[i][j]
        trans[n + j][n + j] = 2
    index = abs(intmat.det(trans))
    return MRLattice(m, alpha, sum_lat, tuple(map(tuple, trans)), index, r_emb)


def check_mr_transition(mr: MRLattice) -> bool:
    """Gram of the sum lattice equals ``T^t G_M T`` for the transition ``T``."""
    t = [list(r) for r in mr.transition]
    pulled = intmat.matmul(intmat.matmul(intmat.transpose(t), [list(r) for r in mr.lattice.gram]), t)
    return tuple(map(tuple, pulled)) == mr.sum_lattice.gram


def exact_sqrt(n: int) -> int:
    s = isqrt(n)
    if s * s != n:
        raise PreconditionError(f"{n} is not a perfect square")
    return s
