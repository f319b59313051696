from __future__ import annotations

import random

import pytest

from enriques_nd.enumeration import (
    BoundCertificate,
    MukaiScenario,
    Target,
    allowed_case,
    compute_invariants,
    enumerate_canonical_sequences,
    enumerate_halffiber_cliques,
    enumerate_polarizations,
    max_clique_size,
    mukai_orthogonal_analysis,
    orbit_representatives,
    recheck_certificate,
    uniqueness_violations,
    upper_bound_certificate,
)
from enriques_nd.errors import CertificateFailure, EmptyEnumeration, OrbitCapExceeded, PreconditionError
from enriques_nd.isotropic import Kind, check_isotropic_sequence, polarization_vector
from enriques_nd.lattice import make_L10, reflection_matrix
from enriques_nd.model import make_model, validate_model

from toys import FANO_SEQUENCES, O2_SEQUENCES, SIMPLE_ROOTS, chain_toy, oracle_nondegeneracy, oracle_sequences, random_toys, reflect

L = make_L10()


def symmetric_model():
    """A Fano toy closed up under one simple reflection, with that
    reflection as the isometry generator; both its Fano polarizations form
    a single orbit."""
    rng = random.Random(1)
    for t in range(3):
        toy = chain_toy("t", FANO_SEQUENCES[t % 3], 4, rng)
    r = SIMPLE_ROOTS[2]
    curves = sorted(set(toy.curves) | {reflect(r, c) for c in toy.curves})
    return make_model("sym", curves, toy.halffibers, [reflection_matrix(L, r)])


def test_engine_matches_oracle_other_seed():
    for toy in random_toys(seed=7, count=12):
        m = toy.model()
        for target, length, even in ((Target.LEN10, 10, False), (Target.O2NINE, 9, True)):
            got = {frozenset(e.coords for e in s.entries): s.nondegeneracy for s in enumerate_canonical_sequences(m, target)}
            want = {s: oracle_nondegeneracy(toy, s) for s in oracle_sequences(toy, length, even)}
            assert got == want, toy.name


def test_sequences_are_valid_and_sorted():
    for toy in random_toys(count=8):
        m = toy.model()
        for target in Target:
            seqs = enumerate_canonical_sequences(m, target)
            assert [s.key() for s in seqs] == sorted(s.key() for s in seqs)
            for s in seqs:
                check_isotropic_sequence(s.entries, s.annotation)
                kind, _ = polarization_vector(s)
                assert kind is (Kind.FANO if target is Target.LEN10 else Kind.MUKAI)


def test_invariants_of_toys():
    rng = random.Random(3)
    fano = chain_toy("f", FANO_SEQUENCES[0], 4, rng).model()
    inv = compute_invariants(fano)
    assert (inv.nd, inv.Fnd, inv.Mnd) == (4, 4, None)
    assert inv.clique_bound == 4 and inv.consistent_with_clique_bound
    o2 = chain_toy("m", O2_SEQUENCES[0], 3, rng).model()
    inv = compute_invariants(o2)
    assert (inv.nd, inv.Fnd, inv.Mnd) == (3, None, 3)
    with pytest.raises(EmptyEnumeration):
        compute_invariants(make_model("nothing"))
    with pytest.raises(EmptyEnumeration):
        compute_invariants(make_model("one", halffibers=[FANO_SEQUENCES[0][0]]))


def test_general_surface_triple():
    # ten half-fibers and no curves: the generic picture nd = Fnd = 10
    m = make_model("generic", halffibers=FANO_SEQUENCES[0])
    inv = compute_invariants(m)
    assert (inv.nd, inv.Fnd) == (10, 10)


def test_allowed_cases():
    assert allowed_case(10, 10, 9) and allowed_case(9, 8, 9) and allowed_case(5, 5, 5)
    assert not allowed_case(4, 4, None) and not allowed_case(9, 9, 9 - 2)
    assert allowed_case(9, 9, 8)


def test_cliques():
    m = make_model("generic", halffibers=FANO_SEQUENCES[0])
    assert max_clique_size(m) == 10
    assert len(enumerate_halffiber_cliques(m, 2)) == 45
    with pytest.raises(PreconditionError):
        enumerate_halffiber_cliques(m, 0)


def test_workers_do_not_change_output():
    m = symmetric_model()
    a = enumerate_canonical_sequences(m, Target.LEN10, workers=1)
    b = enumerate_canonical_sequences(m, Target.LEN10, workers=3)
    assert [s.key() for s in a] == [s.key() for s in b]
    assert enumerate_polarizations(m, "fano", workers=2).to_dict() == enumerate_polarizations(m, "fano").to_dict()


def test_orbits_and_cap():
    m = symmetric_model()
    assert validate_model(m).ok
    res = enumerate_polarizations(m, "fano")
    assert len(res) == 2
    orb = orbit_representatives(res, m)
    assert orb.count == 1 and orb.orbit_sizes == (2,)
    assert orb.representatives[0].vector.coords == min(res.vectors())
    with pytest.raises(OrbitCapExceeded):
        orbit_representatives(res, m, cap=1)


def test_uniqueness_on_toys():
    for toy in random_toys(count=12):
        m = toy.model()
        for kind in Kind:
            for p in enumerate_polarizations(m, kind).polarizations:
                assert uniqueness_violations(p, m) == []


def test_certificates():
    rng = random.Random(3)
    toy = chain_toy("f", FANO_SEQUENCES[0], 4, rng)
    m = toy.model()
    reps = list(enumerate_polarizations(m, "fano").polarizations)
    cert = upper_bound_certificate(m, reps, 2, "fano")
    assert cert.conclusion == "Fnd ≤ 8"
    assert recheck_certificate(cert, m).ok
    again = BoundCertificate.from_dict(cert.to_dict())
    assert again == cert
    with pytest.raises(CertificateFailure) as exc:
        upper_bound_certificate(m, reps, 7, "fano")
    assert exc.value.uncertified
    forged = BoundCertificate(cert.mode, 3, cert.witnesses, "Fnd ≤ 7", cert.model)
    assert not recheck_certificate(forged, m).ok
    with pytest.raises(PreconditionError):
        upper_bound_certificate(m, [], 1, "fano")


def test_mukai_certificate_excludes_H():
    rng = random.Random(5)
    toy = chain_toy("m", O2_SEQUENCES[0], 3, rng)
    m = toy.model()
    (p,) = enumerate_polarizations(m, "mukai").polarizations
    rho = mukai_orthogonal_analysis(p, m).rho
    cert = upper_bound_certificate(m, [p], 1, "mukai")
    assert cert.conclusion == "Mnd ≤ 8"
    assert recheck_certificate(cert, m).ok
    only_h = make_model("onlyh", [rho], toy.halffibers)
    bare = p.__class__(p.vector, p.kind, p.sequence, p.nondegeneracy)
    with pytest.raises(CertificateFailure) as exc:
        upper_bound_certificate(only_h, [bare], 1, "mukai")
    # the only orthogonal curve is the root of H itself, which cannot count
    assert any("Mukai clause" in d for d in exc.value.diagnostics)


def test_mukai_analysis():
    rng = random.Random(5)
    m = chain_toy("m", O2_SEQUENCES[0], 3, rng).model()
    (p,) = enumerate_polarizations(m, "mukai").polarizations
    a = mukai_orthogonal_analysis(p, m)
    assert a.scenario is MukaiScenario.SCENARIO_1
    assert len(a.orthogonal_curves) == 6 and a.curves_in_H == ()
    with pytest.raises(PreconditionError):
        mukai_orthogonal_analysis(enumerate_polarizations(chain_toy("f", FANO_SEQUENCES[0], 4, rng).model(), "fano").polarizations[0], m)
