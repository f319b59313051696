"""Command line interface.

Exit codes: 0 success, 2 bad input (schema, unreadable file, empty
representatives), 3 failed operation (nothing found within the box, orbit
cap, precondition), 4 failed validation or certificate.  ``model validate``
reports failures as output and exits 0.
"""

from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import __version__
from . import io as fio
from .enumeration import (
    BoundCertificate,
    compute_invariants,
    enumerate_polarizations,
    orbit_representatives,
    recheck_certificate,
    upper_bound_certificate,
)
from .errors import CertificateFailure, EnriquesError, SchemaError
from .isotropic import Kind
from .lattice import (
    ade_type,
    build_MR,
    closure_index,
    discriminant_group,
    dynkin_graph,
    embed_by_graph,
    enumerate_roots,
    make_L10,
    primitive_closure,
)
from .lattice.roots import ADEType
from .lattice.shortvec import FRAMES
from .model import DEFAULT_ORBIT_CAP, SurfaceModel, parse_model, validate_model

EXIT_OK, EXIT_INPUT, EXIT_OPERATION, EXIT_INVALID = 0, 2, 3, 4


class InvalidModel(EnriquesError):
    pass


def _frac(x: Fraction) -> str:
    return str(x)


def _resolve(path: str, fixtures: str | None) -> Path:
    p = Path(path)
    if p.exists() or fixtures is None:
        return p
    q = Path(fixtures) / path
    return q if q.exists() else p


class Output:
    def __init__(self, fmt: str, out: str | None):
        self.fmt = fmt
        self.out = out

    def emit(self, obj: dict, text: str, csv: str | None = None) -> None:
        if self.fmt == "json":
            body = fio.dumps(obj)
        elif self.fmt == "csv":
            if csv is None:
                raise SchemaError("csv output is only available for polarization lists")
            body = csv
        else:
            body = text if text.endswith("\n") else text + "\n"
        if self.out:
            Path(self.out).write_text(body)
        else:
            sys.stdout.write(body)


# lattice commands

def _lattice_arg(args, allow_degenerate: bool = False):
    return fio.load_lattice(_resolve(args.file, args.fixtures_dir), allow_degenerate)


def cmd_snf(args, out: Output) -> int:
    data = fio.read_json(_resolve(args.file, args.fixtures_dir))
    if isinstance(data, dict) and "matrix" in data:
        from .lattice.sublattice import smith_normal_form
        snf = smith_normal_form(data["matrix"])
        gens: tuple = ()
    else:
        lat = fio.graph_from_dict(data) if fio.is_graph(data) else fio.lattice_from_dict(data)
        snf = discriminant_group(lat)
        gens = snf.generators
    obj = {
        "diagonal": list(snf.diagonal),
        "invariant_factors": list(snf.invariant_factors),
        "order": snf.order,
        "U": [list(r) for r in snf.U],
        "V": [list(r) for r in snf.V],
        "generators": [[_frac(v) for v in g] for g in gens],
    }
    inv = " x ".join(f"Z/{d}" for d in snf.invariant_factors) or "trivial"
    lines = [f"diagonal: {list(snf.diagonal)}", f"discriminant group: {inv} (order {snf.order})"]
    for g in gens:
        lines.append("generator: (" + ", ".join(_frac(v) for v in g) + ")")
    out.emit(obj, "\n".join(lines))
    return EXIT_OK


def cmd_ade(args, out: Output) -> int:
    t = ade_type(_lattice_arg(args))
    out.emit({"type": str(t), "rank": t.rank}, str(t))
    return EXIT_OK


def cmd_roots(args, out: Output) -> int:
    roots = enumerate_roots(_lattice_arg(args))
    obj = {"count": len(roots), "roots": [list(r.coords) for r in roots]}
    text = f"{len(roots)} roots\n" + "\n".join(" ".join(map(str, r.coords)) for r in roots)
    out.emit(obj, text)
    return EXIT_OK


def cmd_graph(args, out: Output) -> int:
    lat = _lattice_arg(args, allow_degenerate=True)
    obj = {"rank": lat.rank, "labels": list(lat.labels or ()), "gram": [list(r) for r in lat.gram], "det": lat.det}
    lines = [f"rank {lat.rank}, det {lat.det}"]
    if lat.det != 0:
        obj["signature"] = list(lat.signature)
        lines.append(f"signature {lat.signature}")
        if lat.is_negative_definite:
            t = str(ade_type(lat))
            obj["ade_type"] = t
            lines.append(f"type {t}")
    lines.extend(" ".join(f"{v:3d}" for v in row) for row in lat.gram)
    out.emit(obj, "\n".join(lines))
    return EXIT_OK


def _ambient(args):
    if args.ambient is None:
        return make_L10()
    return fio.load_lattice(_resolve(args.ambient, args.fixtures_dir))


def cmd_closure(args, out: Output) -> int:
    amb = _ambient(args)
    data = fio.read_json(_resolve(args.file, args.fixtures_dir))
    if not fio.is_graph(data):
        raise SchemaError("closure expects a dual-graph file", field="<root>")
    src = fio.graph_from_dict(data)
    frame = args.frame or "basis"
    emb = embed_by_graph(amb, src, box=args.box, frame=frame)
    idx = closure_index(emb)
    clo = primitive_closure(amb, emb)
    obj = {
        "graph_type": str(ade_type(src)) if src.det != 0 and src.is_negative_definite else None,
        "images": [list(v.coords) for v in emb.images()],
        "index": idx,
        "closure_det": clo.source.det,
        "closure_type": None,
        "closure_basis": [list(v.coords) for v in clo.images()],
    }
    if clo.source.is_negative_definite:
        obj["closure_type"] = str(ade_type(clo.source))
    lines = [f"embedding (box {args.box}, frame {frame}):"]
    lines += [f"  {lab} -> {list(v.coords)}" for lab, v in zip(src.labels or (), emb.images())]
    lines.append(f"index of the closure: {idx}")
    lines.append(f"closure det {clo.source.det}, type {obj['closure_type']}")
    out.emit(obj, "\n".join(lines))
    return EXIT_OK


def cmd_mr(args, out: Output) -> int:
    try:
        t = ADEType.parse(args.root_type)
    except ValueError as exc:
        raise SchemaError(str(exc), field="--root-type") from exc
    verts, edges = dynkin_graph(t)
    emb = embed_by_graph(make_L10(), (verts, edges), box=args.box, frame=args.frame or "basis")
    mr = build_MR(emb)
    lat = mr.lattice
    obj = {
        "root_type": str(t),
        "root_images": [list(v.coords) for v in emb.images()],
        "rank": lat.rank,
        "det": lat.det,
        "index": mr.index,
        "det_from_index": _frac(mr.det_from_index),
        "lattice": lat.to_dict(),
    }
    text = f"M_R for R = {t}: rank {lat.rank}, det {lat.det}, index {mr.index}"
    out.emit(obj, text)
    return EXIT_OK


# model commands

def _model(args) -> SurfaceModel:
    return parse_model(_resolve(args.model, args.fixtures_dir))


def _valid_model(args) -> SurfaceModel:
    m = _model(args)
    rep = validate_model(m)
    if not rep.ok:
        failed = [c for c, v in rep.failures.items() if v]
        raise InvalidModel(f"model {m.name!r} fails validation: {', '.join(failed)}")
    return m


def cmd_validate(args, out: Output) -> int:
    rep = validate_model(_model(args))
    lines = [f"model {rep.name}: {'valid' if rep.ok else 'INVALID'}"]
    for c, bad in rep.failures.items():
        lines.append(f"  {'ok  ' if not bad else 'FAIL'} {c}" + (f" {[list(b) if isinstance(b, tuple) else b for b in bad]}" if bad else ""))
    lines += [f"  warning: {w}" for w in rep.warnings]
    out.emit(rep.to_dict(), "\n".join(lines))
    return EXIT_OK


def _pol_lines(pols, orbit_of=None) -> list[str]:
    lines = []
    for p in pols:
        tag = f" orbit {orbit_of[p.vector.coords]}" if orbit_of else ""
        lines.append(f"{' '.join(map(str, p.vector.coords))}  c={p.nondegeneracy}{tag}")
    return lines


def cmd_enumerate(args, out: Output) -> int:
    m = _valid_model(args)
    res = enumerate_polarizations(m, args.kind, args.orbit_cap, args.workers)
    orb = orbit_representatives(res, m, args.orbit_cap)
    lines = [f"{res.model}: {len(res)} {res.kind.value} polarizations ({res.note})"]
    lines += _pol_lines(res.polarizations, orb.orbit_of)
    obj = res.to_dict()
    for p, d in zip(res.polarizations, obj["polarizations"]):
        d["orbit"] = orb.orbit_of[p.vector.coords]
    out.emit(obj, "\n".join(lines), fio.polarizations_csv(res.polarizations, orb.orbit_of))
    return EXIT_OK


def cmd_orbits(args, out: Output) -> int:
    m = _valid_model(args)
    res = enumerate_polarizations(m, args.kind, args.orbit_cap, args.workers)
    orb = orbit_representatives(res, m, args.orbit_cap)
    lines = [f"{orb.model}: {orb.count} orbits of {res.kind.value} polarizations"]
    lines += [f"{' '.join(map(str, p.vector.coords))}  size {s}" for p, s in zip(orb.representatives, orb.orbit_sizes)]
    reps_id = {p.vector.coords: i for i, p in enumerate(orb.representatives)}
    out.emit(orb.to_dict(), "\n".join(lines), fio.polarizations_csv(orb.representatives, reps_id))
    return EXIT_OK


def cmd_invariants(args, out: Output) -> int:
    m = _valid_model(args)
    inv = compute_invariants(m, args.orbit_cap, args.workers)
    text = (
        f"{inv.model}: nd={inv.nd} Fnd={inv.Fnd} Mnd={inv.Mnd} "
        f"(clique bound {inv.clique_bound}, allowed case: {'yes' if inv.allowed else 'no'}; {inv.note})"
    )
    out.emit(inv.to_dict(), text)
    return EXIT_OK


def cmd_certify(args, out: Output) -> int:
    m = _valid_model(args)
    if args.check is not None:
        cert = BoundCertificate.from_dict(fio.read_json(args.check))
    else:
        if args.reps is None or args.d is None:
            raise SchemaError("certify needs a representatives file and --d (or --check CERT)")
        kind = Kind.parse(args.mode)
        reps = fio.load_representatives(_resolve(args.reps, args.fixtures_dir), m.lattice, kind)
        cert = upper_bound_certificate(m, reps, args.d, kind, args.orbit_cap)
    obj = cert.to_dict()
    status = EXIT_OK
    lines = [f"{cert.model}: {cert.conclusion} ({len(cert.witnesses)} representatives, d = {cert.d})"]
    if args.recheck or args.check is not None:
        rep = recheck_certificate(cert, m, args.orbit_cap)
        obj["recheck"] = {"ok": rep.ok, "problems": list(rep.problems)}
        lines.append("recheck: " + ("ok" if rep.ok else "FAILED"))
        lines += [f"  {p}" for p in rep.problems]
        if not rep.ok:
            status = EXIT_INVALID
    out.emit(obj, "\n".join(lines))
    return status


# parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--out", help="write the result to this file instead of stdout")
    common.add_argument("--fixtures-dir", help="resolve relative input paths against this directory")

    search = argparse.ArgumentParser(add_help=False)
    search.add_argument("--box", type=int, default=3)
    search.add_argument("--frame", choices=FRAMES, default=None)

    engine = argparse.ArgumentParser(add_help=False)
    engine.add_argument("--orbit-cap", type=int, default=DEFAULT_ORBIT_CAP)
    engine.add_argument("--workers", type=int, default=1)

    p = argparse.ArgumentParser(prog="enriques-nd", description="Non-degeneracy invariants of Enriques lattices.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true")
    top = p.add_subparsers(dest="group", required=True)

    lat = top.add_parser("lattice", help="lattice computations")
    ls = lat.add_subparsers(dest="cmd", required=True)
    for name, fn, hlp in (
        ("snf", cmd_snf, "Smith form and discriminant group"),
        ("ade-type", cmd_ade, "ADE type of a negative definite root lattice"),
        ("roots", cmd_roots, "all roots of a negative definite lattice"),
        ("graph", cmd_graph, "Gram matrix of a dual graph"),
    ):
        sp = ls.add_parser(name, parents=[common], help=hlp)
        sp.add_argument("file")
        sp.set_defaults(func=fn)
    sp = ls.add_parser("closure", parents=[common, search], help="embed a graph and take the primitive closure")
    sp.add_argument("file")
    sp.add_argument("--ambient", help="ambient lattice file (default L10)")
    sp.set_defaults(func=cmd_closure)
    sp = ls.add_parser("mr", parents=[common, search], help="the overlattice M_R of L10(2) + R(2)")
    sp.add_argument("--root-type", required=True)
    sp.set_defaults(func=cmd_mr)

    mod = top.add_parser("model", help="surface model computations")
    ms = mod.add_subparsers(dest="cmd", required=True)
    sp = ms.add_parser("validate", parents=[common])
    sp.add_argument("model")
    sp.set_defaults(func=cmd_validate)
    sp = ms.add_parser("invariants", parents=[common, engine])
    sp.add_argument("model")
    sp.set_defaults(func=cmd_invariants)
    for name, fn in (("enumerate", cmd_enumerate), ("orbits", cmd_orbits)):
        sp = ms.add_parser(name, parents=[common, engine])
        sp.add_argument("model")
        sp.add_argument("--kind", choices=[k.value for k in Kind], default="fano")
        sp.set_defaults(func=fn)

    sp = top.add_parser("certify", parents=[common, engine], help="upper-bound certificate for representatives")
    sp.add_argument("model")
    sp.add_argument("reps", nargs="?")
    sp.add_argument("--d", type=int)
    sp.add_argument("--mode", choices=[k.value for k in Kind], default="fano")
    sp.add_argument("--recheck", action="store_true", help="re-verify the certificate independently")
    sp.add_argument("--check", metavar="CERT", help="recheck an existing certificate file")
    sp.set_defaults(func=cmd_certify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    out = Output(args.format, args.out)
    try:
        return args.func(args, out)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (CertificateFailure, InvalidModel) as exc:
        print(f"error: {exc}", file=sys.stderr)
        for line in getattr(exc, "diagnostics", ()):
            print(f"  {line}", file=sys.stderr)
        return EXIT_INVALID
    except (EnriquesError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_OPERATION


if __name__ == "__main__":
    sys.exit(main())
