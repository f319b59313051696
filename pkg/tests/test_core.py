from __future__ import annotations

import pytest

from enriques_nd.errors import (
    DegenerateLattice,
    DuplicateEdge,
    LatticeMismatch,
    NotEven,
    NotIsometric,
    NotMinusTwo,
    PreconditionError,
    SelfLoop,
)
from enriques_nd.lattice import (
    Embedding,
    IntegerLattice,
    direct_sum,
    hyperbolic_plane,
    inner_product,
    lattice_from_dual_graph,
    make_L10,
    reflect,
    reflection_matrix,
    rescale,
)
from enriques_nd.lattice import intmat

A1 = IntegerLattice(((-2,),))


def test_L10_basics():
    L = make_L10()
    assert L.rank == 10
    assert L.det == -1
    assert abs(L.det) == 1
    assert L.signature == (1, 9)
    assert L.labels == tuple(f"e{i}" for i in range(1, 11))
    e = L.basis_vector
    assert inner_product(e("e2"), e("e3")) == 1
    assert inner_product(e("e2"), e("e2")) == -2
    assert inner_product(e("e1"), e("e9")) == 0
    assert inner_product(e("e1"), e("e4")) == 1


def test_L10_from_graph_matches():
    verts = [f"e{i}" for i in range(1, 11)]
    edges = [("e1", "e4"), ("e2", "e3"), ("e3", "e4")] + [(f"e{i}", f"e{i + 1}") for i in range(4, 10)]
    L = lattice_from_dual_graph(verts, edges)
    assert L.gram == make_L10().gram
    assert L.det == -1


def test_graph_examples():
    assert lattice_from_dual_graph(["a"], []).gram == ((-2,),)
    d8 = lattice_from_dual_graph(
        [f"e{i}" for i in range(1, 9)],
        [("e1", "e3"), ("e3", "e2"), ("e3", "e4"), ("e4", "e5"), ("e5", "e6"), ("e6", "e7"), ("e7", "e8")],
    )
    assert d8.det == 4
    with pytest.raises(DuplicateEdge):
        lattice_from_dual_graph(["a", "b"], [("a", "b"), ("b", "a")])
    with pytest.raises(SelfLoop):
        lattice_from_dual_graph(["a"], [("a", "a")])


def test_invalid_grams():
    with pytest.raises(PreconditionError):
        IntegerLattice(((-2, 1), (0, -2)))
    with pytest.raises(NotEven):
        IntegerLattice(((-1,),))
    with pytest.raises(DegenerateLattice):
        IntegerLattice(((-2, 2), (2, -2)))
    deg = IntegerLattice(((-2, 2), (2, -2)), allow_degenerate=True)
    assert deg.det == 0


def test_vector_arithmetic_and_mismatch():
    L = make_L10()
    x = L.basis_vector(1) + L.basis_vector(2)
    assert x.norm == -2
    assert (2 * x - x).coords == x.coords
    assert (-x).dot(x) == 2
    with pytest.raises(LatticeMismatch):
        inner_product(L.basis_vector(0), A1.basis_vector(0))
    with pytest.raises(LatticeMismatch):
        _ = L.basis_vector(0) + A1.basis_vector(0)


def test_reflect_examples():
    L = make_L10()
    e2, e3, e9 = L.basis_vector("e2"), L.basis_vector("e3"), L.basis_vector("e9")
    assert reflect(e2, e2) == -e2
    assert reflect(e2, e3) == e3 + e2
    assert reflect(e2, e9) == e9
    with pytest.raises(NotMinusTwo):
        reflect(e2 + e3 + e3, e9)
    m = reflection_matrix(L, e2.coords)
    assert intmat.matmul(intmat.matmul(intmat.transpose(m), [list(r) for r in L.gram]), m) == [list(r) for r in L.gram]


def test_rescale_and_sum():
    assert rescale(A1, 2).gram == ((-4,),)
    L = make_L10()
    assert rescale(L, 2).det == 2**10 * L.det
    assert rescale(L, 1) == L
    s = direct_sum(A1, A1)
    assert s.gram == ((-2, 0), (0, -2))
    assert direct_sum(rescale(L, 2), rescale(A1, 2)).rank == 11
    big = direct_sum(L, A1)
    assert big.det == L.det * A1.det
    assert hyperbolic_plane().gram == ((0, 1), (1, 0))
    assert hyperbolic_plane().signature == (1, 1)


def test_embedding_checks_isometry():
    L = make_L10()
    emb = Embedding.from_images(A1, L, [L.basis_vector(1).coords])
    assert emb.apply([3]).coords == tuple(3 * int(i == 1) for i in range(10))
    with pytest.raises(NotIsometric):
        Embedding.from_images(A1, L, [(1,) + (0,) * 8 + (1,)])
