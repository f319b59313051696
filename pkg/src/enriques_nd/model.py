"""Finite surface models: curve classes, half-fiber classes and isometry
generators inside a marked L10, plus their JSON ingestion."""

from __future__ import annotations

import json
import logging
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Sequence

from .errors import PreconditionError, SchemaError
from .lattice import intmat
from .lattice.core import IntegerLattice, LatticeVector, make_L10

log = logging.getLogger(__name__)

DEFAULT_ORBIT_CAP = 100_000

Matrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class SurfaceModel:
    name: str
    lattice: IntegerLattice
    curves: tuple[LatticeVector, ...] = ()
    halffibers: tuple[LatticeVector, ...] = ()
    isometries: tuple[Matrix, ...] = ()
    warnings: tuple[str, ...] = field(default=(), compare=False)

    def curve_coords(self) -> list[tuple[int, ...]]:
        return [c.coords for c in self.curves]

    def halffiber_coords(self) -> list[tuple[int, ...]]:
        return [f.coords for f in self.halffibers]


def make_model(
    name: str,
    curves: Iterable[Sequence[int]] = (),
    halffibers: Iterable[Sequence[int]] = (),
    isometries: Iterable[Sequence[Sequence[int]]] = (),
    lattice: IntegerLattice | None = None,
) -> SurfaceModel:
    lat = lattice or make_L10()
    return SurfaceModel(
        name,
        lat,
        tuple(lat.vector(c) for c in curves),
        tuple(lat.vector(f) for f in halffibers),
        tuple(tuple(tuple(int(v) for v in row) for row in m) for m in isometries),
    )


# JSON schema

def _int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"expected an integer, got {value!r}", field=where)
    return value


def _int_row(value: Any, n: int, where: str) -> tuple[int, ...]:
    if not isinstance(value, list):
        raise SchemaError("expected a list of integers", field=where)
    if len(value) != n:
        raise SchemaError(f"expected {n} entries, got {len(value)}", field=where)
    return tuple(_int(v, f"{where}[{i}]") for i, v in enumerate(value))


def lattice_from_dict(data: Any, where: str = "lattice") -> IntegerLattice:
    if data == "L10":
        return make_L10()
    if not isinstance(data, dict):
        raise SchemaError('lattice must be an object {"rank", "gram", "labels"} or "L10"', field=where)
    if "gram" not in data:
        raise SchemaError("missing gram", field=where)
    gram = data["gram"]
    if not isinstance(gram, list) or not gram:
        raise SchemaError("gram must be a nonempty list of rows", field=f"{where}.gram")
    n = len(gram)
    if "rank" in data and _int(data["rank"], f"{where}.rank") != n:
        raise SchemaError(f"rank {data['rank']} does not match {n} gram rows", field=f"{where}.rank")
    rows = tuple(_int_row(r, n, f"{where}.gram[{i}]") for i, r in enumerate(gram))
    labels = data.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or len(labels) != n or not all(isinstance(s, str) for s in labels):
            raise SchemaError(f"labels must be {n} strings", field=f"{where}.labels")
    try:
        return IntegerLattice(rows, tuple(labels) if labels else None, allow_degenerate=bool(data.get("degenerate", False)))
    except Exception as exc:  # invariant failures surface as schema problems
        raise SchemaError(str(exc), field=f"{where}.gram") from exc


def model_from_dict(data: Any, source: str = "<dict>") -> SurfaceModel:
    """Build an (unvalidated) model from decoded JSON.

    Half-fiber entries whose coordinates are all even are halved; the fiber
    class of an elliptic pencil is twice the half-fiber class.  Every such
    rewrite is logged and kept in ``model.warnings``.
    """
    if not isinstance(data, dict):
        raise SchemaError("model file must contain a JSON object", field="<root>")
    unknown = set(data) - {"name", "lattice", "curves", "halffibers", "isometries", "notes"}
    if unknown:
        raise SchemaError(f"unknown keys {sorted(unknown)}", field="<root>")
    name = data.get("name", Path(source).stem)
    if not isinstance(name, str):
        raise SchemaError("name must be a string", field="name")
    lat = lattice_from_dict(data.get("lattice", "L10"))
    n = lat.rank
    curves = []
    for i, c in enumerate(data.get("curves", []) or []):
        curves.append(lat.vector(_int_row(c, n, f"curves[{i}]")))
    warnings = []
    fibers = []
    for i, f in enumerate(data.get("halffibers", []) or []):
        row = _int_row(f, n, f"halffibers[{i}]")
        if any(row) and all(v % 2 == 0 for v in row) and lat.norm(row) == 0:
            half = tuple(v // 2 for v in row)
            msg = f"{source}: halffibers[{i}] is divisible by 2; stored as the half-fiber class {list(half)}"
            log.warning(msg)
            warnings.append(msg)
            row = half
        fibers.append(lat.vector(row))
    mats = []
    isos = data.get("isometries", []) or []
    if not isinstance(isos, list):
        raise SchemaError("isometries must be a list of matrices", field="isometries")
    for k, m in enumerate(isos):
        if not isinstance(m, list) or len(m) != n:
            raise SchemaError(f"isometry must be {n}x{n}", field=f"isometries[{k}]")
        mats.append(tuple(_int_row(r, n, f"isometries[{k}][{i}]") for i, r in enumerate(m)))
    return SurfaceModel(name, lat, tuple(curves), tuple(fibers), tuple(mats), tuple(warnings))


def parse_model(path: "str | Path") -> SurfaceModel:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc.msg}", line=exc.lineno) from exc
    return model_from_dict(data, str(path))


def model_to_dict(m: SurfaceModel) -> dict:
    return {
        "name": m.name,
        "lattice": m.lattice.to_dict(),
        "curves": [list(c.coords) for c in m.curves],
        "halffibers": [list(f.coords) for f in m.halffibers],
        "isometries": [[list(r) for r in g] for g in m.isometries],
    }


def serialize_model(m: SurfaceModel) -> str:
    d = model_to_dict(m)
    # one vector per line keeps fixtures diffable
    lines = ["{"]
    lines.append(f'  "name": {json.dumps(d["name"])},')
    lines.append(f'  "lattice": {json.dumps(d["lattice"])},')
    for key in ("curves", "halffibers"):
        rows = d[key]
        if rows:
            body = ",\n".join(f"    {json.dumps(r)}" for r in rows)
            lines.append(f'  "{key}": [\n{body}\n  ],')
        else:
            lines.append(f'  "{key}": [],')
    lines.append(f'  "isometries": {json.dumps(d["isometries"])}')
    lines.append("}")
    return "\n".join(lines) + "\n"


def dump_model(m: SurfaceModel, path: "str | Path") -> None:
    Path(path).write_text(serialize_model(m))


# validation

CHECKS = (
    "lattice_even_unimodular_hyperbolic",
    "curves_norm",
    "curves_distinct",
    "halffibers_isotropic",
    "halffibers_primitive",
    "halffibers_nef",
    "halffibers_distinct",
    "isometries_shape",
    "isometries_preserve_gram",
    "isometries_preserve_curves",
)


@dataclass(frozen=True)
class ModelReport:
    name: str
    failures: dict[str, tuple]
    counts: dict[str, int]
    warnings: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not any(self.failures.values())

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "checks": {c: {"pass": not self.failures[c], "offending": [list(x) if isinstance(x, tuple) else x for x in self.failures[c]]} for c in CHECKS},
            "counts": dict(self.counts),
            "warnings": list(self.warnings),
        }


def _apply(m: Matrix, x: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(a * b for a, b in zip(row, x)) for row in m)


def validate_model(m: SurfaceModel) -> ModelReport:
    lat = m.lattice
    n = lat.rank
    fail: dict[str, list] = {c: [] for c in CHECKS}
    if not (lat.is_unimodular and lat.signature == (1, n - 1)):
        fail["lattice_even_unimodular_hyperbolic"].append(0)
    for i, r in enumerate(m.curves):
        if r.norm != -2:
            fail["curves_norm"].append(i)
    seen: dict = {}
    for i, r in enumerate(m.curves):
        if r.coords in seen:
            fail["curves_distinct"].append((seen[r.coords], i))
        seen.setdefault(r.coords, i)
    seen = {}
    for i, f in enumerate(m.halffibers):
        if f.norm != 0:
            fail["halffibers_isotropic"].append(i)
        if intmat.gcd_vector(f.coords) != 1:
            fail["halffibers_primitive"].append(i)
        for j, r in enumerate(m.curves):
            if f.dot(r) < 0:
                fail["halffibers_nef"].append((i, j))
        if f.coords in seen:
            fail["halffibers_distinct"].append((seen[f.coords], i))
        seen.setdefault(f.coords, i)
    curve_set = set(m.curve_coords())
    g = [list(r) for r in lat.gram]
    for k, mat in enumerate(m.isometries):
        if len(mat) != n or any(len(row) != n for row in mat):
            fail["isometries_shape"].append(k)
            continue
        mm = [list(r) for r in mat]
        if intmat.matmul(intmat.matmul(intmat.transpose(mm), g), mm) != g:
            fail["isometries_preserve_gram"].append(k)
            continue
        for j, r in enumerate(m.curves):
            if _apply(mat, r.coords) not in curve_set:
                fail["isometries_preserve_curves"].append((k, j))
    counts = {"curves": len(m.curves), "halffibers": len(m.halffibers), "isometries": len(m.isometries)}
    return ModelReport(m.name, {k: tuple(v) for k, v in fail.items()}, counts, m.warnings)


# orbits

@dataclass(frozen=True)
class OrbitResult:
    vectors: tuple[LatticeVector, ...]
    truncated: bool

    def __len__(self) -> int:
        return len(self.vectors)

    def coords(self) -> list[tuple[int, ...]]:
        return [v.coords for v in self.vectors]


def generator_set(m: SurfaceModel) -> list[Matrix]:
    """Generators together with their inverses, deduplicated, in a fixed order."""
    out: list[Matrix] = []
    seen = set()
    for g in m.isometries:
        inv = tuple(map(tuple, intmat.inverse_unimodular([list(r) for r in g])))
        for h in (g, inv):
            if h not in seen:
                seen.add(h)
                out.append(h)
    return out


def orbit_coords(gens: Sequence[Matrix], seed: Iterable[Sequence[int]], cap: int) -> tuple[list[tuple[int, ...]], bool]:
    """BFS closure of ``seed`` under ``gens`` with at most ``cap`` elements."""
    seen: dict[tuple[int, ...], None] = {}
    queue: deque = deque()
    for s in seed:
        t = tuple(s)
        if t not in seen:
            seen[t] = None
            queue.append(t)
    truncated = len(seen) > cap
    while queue and not truncated:
        x = queue.popleft()
        for g in gens:
            y = _apply(g, x)
            if y not in seen:
                if len(seen) >= cap:
                    truncated = True
                    break
                seen[y] = None
                queue.append(y)
    return sorted(seen), truncated


def isometry_orbit(m: SurfaceModel, seed: Sequence[LatticeVector], cap: int = DEFAULT_ORBIT_CAP) -> OrbitResult:
    if cap < len({s.coords for s in seed}):
        raise PreconditionError("orbit cap is smaller than the seed")
    pts, truncated = orbit_coords(generator_set(m), (s.coords for s in seed), cap)
    return OrbitResult(tuple(m.lattice.vector(p) for p in pts), truncated)
