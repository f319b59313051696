from __future__ import annotations

from fractions import Fraction

import pytest

from enriques_nd.errors import NotFound, SingularMatrix
from enriques_nd.io import load_lattice
from enriques_nd.lattice import (
    Embedding,
    IntegerLattice,
    ade_type,
    build_MR,
    closure_index,
    discriminant_group,
    dynkin_graph,
    dynkin_lattice,
    embed_by_graph,
    hyperbolic_plane,
    is_primitive,
    make_L10,
    orthogonal_complement_primitive,
    primitive_closure,
    smith_normal_form,
    sublattice_from_vectors,
)
from enriques_nd.lattice.sublattice import check_mr_transition
from enriques_nd.lattice import intmat

from test_shortvec import brute_basis_box
from toys import O2_SEQUENCES

L = make_L10()
D8 = load_lattice("src/enriques_nd/data/d8-gram.json")
HALF = (Fraction(1, 2), 0, 0, Fraction(1, 2), 0, Fraction(1, 2), 0, Fraction(1, 2))


def test_snf_examples():
    assert smith_normal_form([list(r) for r in D8.gram]).invariant_factors == (2, 2)
    assert smith_normal_form([[1, 0], [0, 1]]).invariant_factors == ()
    assert smith_normal_form([[-2]]).invariant_factors == (2,)
    with pytest.raises(SingularMatrix):
        smith_normal_form([[1, 1], [1, 1]])
    data = smith_normal_form([list(r) for r in D8.gram])
    u, v = [list(r) for r in data.U], [list(r) for r in data.V]
    d = intmat.matmul(intmat.matmul(u, [list(r) for r in D8.gram]), v)
    assert [d[i][i] for i in range(8)] == list(data.diagonal)
    assert abs(intmat.det(u)) == 1 and abs(intmat.det(v)) == 1


def test_d8_discriminant():
    disc = discriminant_group(D8)
    assert disc.invariant_factors == (2, 2)
    assert disc.order == abs(D8.det) == 4
    assert disc.in_dual(HALF)
    assert not disc.is_trivial_class(HALF)
    assert disc.class_of(HALF) != (0, 0)
    for g in disc.generators:
        assert disc.in_dual(g) and not disc.is_trivial_class(g)
    # another representative of the same class differs from v by basis vectors
    other = (Fraction(-1, 2), 0, 0, Fraction(-1, 2), 0, Fraction(-1, 2), 0, Fraction(1, 2))
    assert disc.same_class(HALF, other)


def test_trivial_discriminants():
    assert discriminant_group(load_lattice("src/enriques_nd/data/config-a-filled.json")).is_trivial()
    assert discriminant_group(hyperbolic_plane()).is_trivial()
    assert discriminant_group(L).is_trivial()


def test_closure_of_d8_is_e8():
    emb = embed_by_graph(L, load_lattice("src/enriques_nd/data/config-b-filled.json"))
    assert closure_index(emb) == 2
    clo = primitive_closure(L, emb)
    lat = clo.source
    assert lat.rank == 8 and abs(lat.det) == 1 and lat.is_negative_definite
    assert all(v % 2 == 0 for v in (lat.gram[i][i] for i in range(8)))
    assert str(ade_type(lat)) == "E8"
    assert is_primitive(clo)
    assert primitive_closure(L, clo) is clo


def test_closure_of_scaled_vector():
    e2 = L.basis_vector("e2")
    emb = sublattice_from_vectors(L, [(2 * e2).coords])
    clo = primitive_closure(L, emb)
    assert [v.coords for v in clo.images()] in ([e2.coords], [(-e2).coords])


def test_embed_examples():
    emb = embed_by_graph(L, (["a"], []), box=1)
    assert emb.images()[0].coords == brute_basis_box(-2, 1)[0]
    with pytest.raises(NotFound) as exc:
        embed_by_graph(hyperbolic_plane(), dynkin_graph("E8"), box=2)
    assert "rank" in str(exc.value)
    # A2 does not fit in A1+A1: the search exhausts the box
    with pytest.raises(NotFound) as exc:
        embed_by_graph(IntegerLattice(((-2, 0), (0, -2))), dynkin_graph("A2"), box=2)
    assert "box 2" in str(exc.value)


@pytest.mark.parametrize("kind", ["A1", "A1+A1", "D8", "E8"])
def test_mr_determinant(kind):
    emb = embed_by_graph(L, dynkin_graph(kind))
    mr = build_MR(emb)
    r = emb.source.rank
    lat = mr.lattice
    assert lat.rank == 10 + r
    assert all(lat.gram[i][i] % 2 == 0 for i in range(lat.rank))
    assert mr.index == 2**r
    assert abs(lat.det) == 2 ** (10 - r) * abs(emb.source.det)
    assert Fraction(abs(lat.det)) == abs(mr.det_from_index)
    assert check_mr_transition(mr)
    assert is_primitive(mr.alpha)


def test_mr_for_e2():
    lat_r = dynkin_lattice("A1")
    emb = Embedding.from_images(lat_r, L, [L.basis_vector("e2").coords])
    mr = build_MR(emb)
    assert mr.lattice.rank == 11
    assert mr.lattice.gram[10][10] == -2
    assert abs(mr.lattice.det) == 2**9 * 2


def test_orthogonal_complements():
    assert orthogonal_complement_primitive(L, L.basis()) == []
    assert len(orthogonal_complement_primitive(L, [L.basis_vector("e1")])) == 9
    seq = [L.vector(g) for g in O2_SEQUENCES[0]]
    (rho,) = orthogonal_complement_primitive(L, seq)
    assert rho.norm == -2
    assert all(rho.dot(g) == 0 for g in seq)
