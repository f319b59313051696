from __future__ import annotations

import pytest

from enriques_nd.errors import NotDefinite, NotRootGenerated, PreconditionError
from enriques_nd.io import load_lattice
from enriques_nd.lattice import (
    ADEType,
    IntegerLattice,
    ade_type,
    dynkin_graph,
    dynkin_lattice,
    enumerate_roots,
    make_L10,
    root_count,
    simple_roots,
)
from enriques_nd.lattice.roots import iter_dynkin_types


def test_parse_and_print():
    assert str(ADEType.parse("A1+E8")) == "E8+A1"
    assert ADEType.parse("2*A1") == ADEType.parse("A1+A1")
    assert ADEType.parse("D4+A2").rank == 6
    with pytest.raises(PreconditionError):
        ADEType.parse("D3")
    with pytest.raises(PreconditionError):
        ADEType.parse("E9")


def test_root_counts():
    assert len(enumerate_roots(dynkin_lattice("A1"))) == 2
    assert len(enumerate_roots(dynkin_lattice("A2"))) == 6
    assert len(enumerate_roots(dynkin_lattice("E8"))) == 240
    assert root_count("E7") == 126
    assert root_count("D5") == 40
    assert root_count("A1+A1") == 4


def test_roots_sorted_and_signed():
    roots = [r.coords for r in enumerate_roots(dynkin_lattice("D4"))]
    assert roots == sorted(roots)
    assert set(roots) == {tuple(-c for c in r) for r in roots}


def test_examples():
    assert str(ade_type(IntegerLattice(((-2, 0), (0, -2))))) == "A1+A1"
    assert str(ade_type(load_lattice("src/enriques_nd/data/config-a-filled.json"))) == "E8"
    assert str(ade_type(load_lattice("src/enriques_nd/data/config-b-filled.json"))) == "D8"


def test_round_trip_small():
    for t in iter_dynkin_types(5):
        assert ade_type(dynkin_lattice(t)) == t


def test_simple_roots_basis():
    lat = dynkin_lattice("E6")
    s = simple_roots(lat)
    assert len(s) == 6
    for i, a in enumerate(s):
        for b in s[i + 1:]:
            assert lat.inner(a, b) in (0, 1)


def test_errors():
    with pytest.raises(NotDefinite):
        enumerate_roots(make_L10())
    # norm -4 generator: negative definite but no roots
    with pytest.raises(NotRootGenerated):
        ade_type(IntegerLattice(((-4,),)))
    # A1 + <-4> has roots but they do not span
    with pytest.raises(NotRootGenerated):
        ade_type(IntegerLattice(((-2, 0), (0, -4))))


def test_dynkin_graph_shapes():
    v, e = dynkin_graph("D5")
    assert len(v) == 5 and len(e) == 4
    v, e = dynkin_graph("E8")
    assert len(v) == 8 and len(e) == 7
