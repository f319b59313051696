from __future__ import annotations

from hypothesis import given, settings
from hypothesis import strategies as st

from enriques_nd.isotropic import phi_over_candidates
from enriques_nd.lattice import closure_index, intmat, make_L10, primitive_closure, reflect, sublattice_from_vectors
from enriques_nd.lattice.core import reflection_matrix
from enriques_nd.model import make_model, model_from_dict, model_to_dict

from toys import FANO_SEQUENCES, SIMPLE_ROOTS

L = make_L10()
POOL = sorted({f for s in FANO_SEQUENCES for f in s})

coords = st.lists(st.integers(-6, 6), min_size=10, max_size=10)
roots = st.sampled_from(SIMPLE_ROOTS)
matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@given(roots, coords, coords)
def test_reflection_is_an_isometry_and_an_involution(r, x, y):
    rv, xv, yv = L.vector(r), L.vector(x), L.vector(y)
    rx, ry = reflect(rv, xv), reflect(rv, yv)
    assert L.inner(rx.coords, ry.coords) == L.inner(x, y)
    assert reflect(rv, rx) == xv
    m = reflection_matrix(L, r)
    assert tuple(intmat.matvec(m, x)) == rx.coords


@given(matrices)
def test_smith_decomposition(a):
    u, d, v = intmat.smith(a)
    assert intmat.matmul(intmat.matmul(u, a), v) == d
    assert abs(intmat.det(u)) == 1 and abs(intmat.det(v)) == 1
    diag = intmat.smith_diagonal(d)
    for i in range(len(d)):
        for j in range(len(d[0])):
            if i != j:
                assert d[i][j] == 0
    nz = [x for x in diag if x]
    assert all(x > 0 for x in nz) and all(b % a == 0 for a, b in zip(nz, nz[1:]))


@settings(max_examples=60)
@given(st.lists(coords, min_size=1, max_size=3), st.integers(2, 3))
def test_primitive_closure(vectors, k):
    # scaling one generator makes a non-primitive sublattice
    vecs = [list(v) for v in vectors]
    vecs[0] = [k * x for x in vecs[0]]
    if intmat.rank(vecs) != len(vecs):
        return
    gram = [[L.inner(a, b) for b in vecs] for a in vecs]
    if intmat.det(gram) == 0:
        return
    emb = sublattice_from_vectors(L, vecs)
    clo = primitive_closure(L, emb)
    assert primitive_closure(L, clo) is clo
    idx = closure_index(emb)
    assert idx >= k and intmat.det(gram) == idx * idx * clo.source.det
    # every original vector lies in the closure span over the integers
    basis = [list(v.coords) for v in clo.images()]
    cols = intmat.transpose(basis)
    for v in vecs:
        assert intmat.solve_integer(cols, v) is not None


@given(st.lists(st.sampled_from(POOL), min_size=0, max_size=5, unique=True), st.lists(roots, max_size=3, unique=True))
def test_model_round_trip(fibers, curves):
    m = make_model("rt", [tuple(-c for c in r) if i % 2 else r for i, r in enumerate(curves)], fibers)
    again = model_from_dict(model_to_dict(m))
    assert model_to_dict(again) == model_to_dict(m)


@given(coords, st.lists(st.sampled_from(POOL), min_size=1, max_size=6, unique=True), st.lists(st.sampled_from(POOL), max_size=4))
def test_phi_is_monotone_in_candidates(h, cands, extra):
    hv = L.vector(h)
    small = [L.vector(f) for f in cands]
    big = small + [L.vector(f) for f in extra]
    assert phi_over_candidates(hv, big) <= phi_over_candidates(hv, small)
