"""File formats shared by the command line and the test-suite."""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Any

from .errors import SchemaError
from .isotropic import IsotropicSequence, Kind, Polarization
from .lattice.core import IntegerLattice, lattice_from_dual_graph
from .model import SurfaceModel, lattice_from_dict

DATA_DIR = Path(__file__).parent / "data"


def read_json(path: "str | Path") -> Any:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON: {exc.msg}", line=exc.lineno) from exc


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def is_graph(data: Any) -> bool:
    return isinstance(data, dict) and "vertices" in data and "edges" in data


def graph_from_dict(data: dict, allow_degenerate: bool = True) -> IntegerLattice:
    verts = data["vertices"]
    edges = data["edges"]
    if not isinstance(verts, list) or not isinstance(edges, list):
        raise SchemaError("vertices and edges must be lists", field="vertices")
    for i, e in enumerate(edges):
        if not isinstance(e, list) or len(e) != 2:
            raise SchemaError("edge must be a pair", field=f"edges[{i}]")
    try:
        return lattice_from_dual_graph([str(v) for v in verts], [(str(a), str(b)) for a, b in edges], allow_degenerate)
    except Exception as exc:
        raise SchemaError(str(exc), field="edges") from exc


def load_lattice(path: "str | Path", allow_degenerate: bool = False) -> IntegerLattice:
    """A lattice file or a dual-graph file, turned into a lattice."""
    data = read_json(path)
    if is_graph(data):
        return graph_from_dict(data, allow_degenerate)
    return lattice_from_dict(data, where=str(path))


def bundled(name: str) -> Path:
    return DATA_DIR / name


def polarization_from_dict(data: Any, lattice: IntegerLattice, kind: Kind, where: str) -> Polarization:
    if isinstance(data, list):
        vec, seq, c = data, [], 0
    elif isinstance(data, dict) and "vector" in data:
        vec, seq, c = data["vector"], data.get("sequence", []), data.get("nondegeneracy", 0)
        if "kind" in data and Kind.parse(data["kind"]) is not kind:
            raise SchemaError(f"representative is {data['kind']}, expected {kind.value}", field=where)
    else:
        raise SchemaError("representative must be a vector or an object with a vector", field=where)
    n = lattice.rank
    if not isinstance(vec, list) or len(vec) != n or not all(isinstance(v, int) for v in vec):
        raise SchemaError(f"vector must be {n} integers", field=f"{where}.vector")
    v = lattice.vector(vec)
    if v.norm != kind.degree:
        raise SchemaError(f"vector has norm {v.norm}, a {kind.value} vector has norm {kind.degree}", field=f"{where}.vector")
    entries = tuple(lattice.vector(e) for e in seq)
    return Polarization(v, kind, IsotropicSequence(entries), int(c))


def load_representatives(path: "str | Path", lattice: IntegerLattice, kind: Kind) -> list[Polarization]:
    data = read_json(path)
    if isinstance(data, dict):
        for key in ("representatives", "polarizations"):
            if key in data:
                data = data[key]
                break
        else:
            raise SchemaError("expected a list or an object with representatives", field="<root>")
    if not isinstance(data, list):
        raise SchemaError("representatives must be a list", field="<root>")
    if not data:
        raise SchemaError("representatives file is empty", field="<root>")
    return [polarization_from_dict(d, lattice, kind, f"[{i}]") for i, d in enumerate(data)]


def polarizations_csv(pols, orbit_of: dict | None = None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["vector", "kind", "c", "contracted", "orbit"])
    for p in pols:
        oid = "" if orbit_of is None else orbit_of.get(p.vector.coords, "")
        w.writerow([json.dumps(list(p.vector.coords)), p.kind.value, p.nondegeneracy, len(p.contracted_curves), oid])
    return buf.getvalue()


def model_summary(m: SurfaceModel) -> str:
    return f"{m.name}: {len(m.curves)} curves, {len(m.halffibers)} half-fibers, {len(m.isometries)} isometries"
