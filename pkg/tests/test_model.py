from __future__ import annotations

import json
from pathlib import Path

import pytest

from enriques_nd.errors import PreconditionError, SchemaError
from enriques_nd.lattice import make_L10, reflection_matrix
from enriques_nd.model import (
    dump_model,
    generator_set,
    isometry_orbit,
    make_model,
    model_from_dict,
    parse_model,
    serialize_model,
    validate_model,
)

from toys import FANO_SEQUENCES, random_toys

DATA = Path("src/enriques_nd/data")
L = make_L10()
IDENTITY = [[int(i == j) for j in range(10)] for i in range(10)]


def write(tmp_path: Path, obj, name: str = "m.json") -> Path:
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return p


def test_shipped_fixtures():
    a = parse_model(DATA / "config-a.json")
    b = parse_model(DATA / "config-b.json")
    assert len(a.curves) == 10 and len(b.curves) == 12
    assert validate_model(a).ok and validate_model(b).ok
    for m in (a, b):
        assert all(c.norm == -2 for c in m.curves)


def test_configuration_graphs_are_realized():
    for name in ("config-a", "config-b"):
        data = json.loads((DATA / f"{name}.json").read_text())
        m = model_from_dict(data)
        verts = data["notes"]["vertices"]
        edges = {frozenset(e) for e in data["notes"]["edges"]}
        for i, x in enumerate(m.curves):
            for j, y in enumerate(m.curves):
                if i < j:
                    assert x.dot(y) == (1 if frozenset((verts[i], verts[j])) in edges else 0)


def test_malformed_inputs(tmp_path):
    with pytest.raises(SchemaError) as exc:
        parse_model(write(tmp_path, {"lattice": {"gram": [[-2, 1], [1]]}}))
    assert exc.value.field == "lattice.gram[1]"
    with pytest.raises(SchemaError) as exc:
        parse_model(write(tmp_path, '{"curves": [\n[1, 2,\n'))
    assert exc.value.line is not None
    with pytest.raises(SchemaError):
        parse_model(write(tmp_path, {"curves": [[0] * 9]}))
    with pytest.raises(SchemaError):
        parse_model(write(tmp_path, {"curve": []}))
    with pytest.raises(SchemaError):
        parse_model(tmp_path / "missing.json")


def test_validation_reports():
    f = FANO_SEQUENCES[0][0]
    e = L.basis_vector(0).coords
    neg = make_model("neg", curves=[tuple(-x for x in L.basis_vector("e10").coords)], halffibers=[f])
    assert neg.halffibers[0].dot(neg.curves[0]) < 0
    rep = validate_model(neg)
    assert not rep.ok and rep.failures["halffibers_nef"] == ((0, 0),)
    assert validate_model(make_model("empty")).ok
    assert validate_model(make_model("id", isometries=[IDENTITY])).ok
    rep = validate_model(make_model("two", curves=[e, e, (1, 1) + (0,) * 8]))
    assert rep.failures["curves_distinct"] == ((0, 1),)
    assert rep.failures["curves_norm"] == (2,)
    rep = validate_model(make_model("nonprim", halffibers=[tuple(3 * x for x in f)]))
    assert rep.failures["halffibers_primitive"] == (0,)
    rep = validate_model(make_model("notiso", halffibers=[e]))
    assert rep.failures["halffibers_isotropic"] == (0,)
    moved = make_model("moved", curves=[e], isometries=[reflection_matrix(L, L.basis_vector(3).coords)])
    assert validate_model(moved).failures["isometries_preserve_curves"] == ((0, 0),)
    skew = [row[:] for row in IDENTITY]
    skew[0][1] = 1
    assert validate_model(make_model("skew", isometries=[skew])).failures["isometries_preserve_gram"] == (0,)


def test_loader_halves_fibers(tmp_path, caplog):
    f = FANO_SEQUENCES[0][0]
    m = parse_model(write(tmp_path, {"halffibers": [[2 * x for x in f]]}))
    assert m.halffibers[0].coords == f
    assert m.warnings and "divisible by 2" in m.warnings[0]
    assert validate_model(m).warnings == m.warnings


def test_round_trip(tmp_path):
    for toy in random_toys(count=6):
        m = toy.model()
        p = tmp_path / f"{m.name}.json"
        dump_model(m, p)
        assert parse_model(p) == m
        assert serialize_model(parse_model(p)) == serialize_model(m)
    swap = make_model("iso", curves=[L.basis_vector(1).coords], isometries=[IDENTITY])
    assert model_from_dict(json.loads(serialize_model(swap))) == swap


def test_orbits():
    e2, e3 = L.basis_vector("e2"), L.basis_vector("e3")
    m = make_model("plain", curves=[e2.coords])
    assert isometry_orbit(m, [e2]).coords() == [e2.coords]
    # the reflection in e2 swaps e3 and e2 + e3
    r = reflection_matrix(L, e2.coords)
    e1, e2 = e3, e2 + e3
    m = make_model("swap", curves=[e1.coords, e2.coords], isometries=[r])
    assert validate_model(m).ok
    assert isometry_orbit(m, [e1]).coords() == sorted([e1.coords, e2.coords])
    assert isometry_orbit(m, [e2]).coords() == sorted([e1.coords, e2.coords])
    assert len(generator_set(m)) == 1


def test_orbit_cap_and_closure():
    # the simple reflections generate the infinite Weyl group
    mats = [reflection_matrix(L, L.basis_vector(i).coords) for i in range(10)]
    m = make_model("big", isometries=mats)
    seed = [L.vector(FANO_SEQUENCES[0][0])]
    res = isometry_orbit(m, seed, cap=5)
    assert res.truncated and len(res) == 5
    assert res.coords() == sorted(res.coords())
    finite = make_model("finite", isometries=mats[7:10])
    full = isometry_orbit(finite, seed)
    assert not full.truncated and len(full) > 1
    pts = set(full.coords())
    for g in generator_set(finite):
        for x in pts:
            assert tuple(sum(a * b for a, b in zip(row, x)) for row in g) in pts
    with pytest.raises(PreconditionError):
        isometry_orbit(m, seed, cap=0)
