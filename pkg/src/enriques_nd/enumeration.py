"""Enumeration of canonical isotropic sequences on a surface model and the
invariants nd, Fnd, Mnd.

A canonical sequence is a clique ``a_1, ..., a_c`` of half-fibers (pairwise
product 1) where each anchor ``a_s`` carries a chain of curves
``R_1, ..., R_t`` forming an A_t configuration with ``a_s.R_1 = 1`` and
``a_s.R_k = 0`` for ``k >= 2``.  The entries of the anchor's group are
``a_s, a_s + R_1, ..., a_s + R_1 + ... + R_t``.

Inside a group every pairing condition of an isotropic sequence holds
automatically.  Between two groups ``(a, S)`` and ``(b, T)`` the conditions
reduce to: ``a`` is orthogonal to every curve of ``T``, ``b`` to every curve
of ``S``, and each curve of ``S`` is orthogonal to each curve of ``T``.  The
engine works with bitmasks built on exactly this reduction.
"""

from __future__ import annotations

import enum
import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import CertificateFailure, EmptyEnumeration, OrbitCapExceeded, PreconditionError
from .isotropic import (
    AnchorChain,
    IsotropicSequence,
    Kind,
    Polarization,
    complement_generator,
    polarization_from_sequence,
)
from .lattice.core import LatticeVector
from .model import DEFAULT_ORBIT_CAP, SurfaceModel, generator_set, model_from_dict, model_to_dict, orbit_coords

log = logging.getLogger(__name__)

EXACTNESS_NOTE = "exact relative to model data"


class Target(str, enum.Enum):
    LEN10 = "len10"
    O2NINE = "o2nine"

    @property
    def length(self) -> int:
        return 10 if self is Target.LEN10 else 9

    @classmethod
    def for_kind(cls, kind: Kind) -> "Target":
        return cls.LEN10 if Kind.parse(kind) is Kind.FANO else cls.O2NINE


# pools

@dataclass
class _Context:
    """Integer tables shared by the search routines."""

    hf: list[tuple[int, ...]]
    curves: list[tuple[int, ...]]
    hf_hf: np.ndarray
    hf_curve: np.ndarray
    curve_curve: np.ndarray
    truncated: bool = False

    @property
    def nonorth(self) -> list[int]:
        out = []
        for i in range(len(self.curves)):
            mask = 0
            for j in np.flatnonzero(self.curve_curve[i] != 0):
                mask |= 1 << int(j)
            out.append(mask)
        return out


def halffiber_pool(m: SurfaceModel, orbit_cap: int = DEFAULT_ORBIT_CAP) -> tuple[list[tuple[int, ...]], bool]:
    """Half-fibers of the model together with their isometry translates."""
    seed = [f.coords for f in m.halffibers]
    if not m.isometries:
        return sorted(set(seed)), False
    return orbit_coords(generator_set(m), seed, orbit_cap)


def _context(m: SurfaceModel, orbit_cap: int = DEFAULT_ORBIT_CAP) -> _Context:
    hf, truncated = halffiber_pool(m, orbit_cap)
    curves = sorted(set(m.curve_coords()))
    g = np.array(m.lattice.gram, dtype=object)
    n = m.lattice.rank
    h = np.array(hf, dtype=object).reshape(-1, n)
    c = np.array(curves, dtype=object).reshape(-1, n)
    hg = h @ g
    cg = c @ g
    return _Context(
        hf,
        curves,
        (hg @ h.T).astype(np.int64) if len(hf) else np.zeros((0, 0), dtype=np.int64),
        (hg @ c.T).astype(np.int64) if len(hf) and len(curves) else np.zeros((len(hf), len(curves)), dtype=np.int64),
        (cg @ c.T).astype(np.int64) if len(curves) else np.zeros((0, 0), dtype=np.int64),
        truncated,
    )


def _cliques(adj: np.ndarray, kmax: int, kmin: int = 1) -> Iterable[tuple[int, ...]]:
    """All cliques of size kmin..kmax in increasing index order."""
    n = len(adj)
    nbr = [0] * n
    for i in range(n):
        for j in np.flatnonzero(adj[i]):
            if j > i:
                nbr[i] |= 1 << int(j)
    out: list[tuple[int, ...]] = []

    def rec(clique: list[int], cand: int):
        if len(clique) >= kmin:
            out.append(tuple(clique))
        if len(clique) == kmax:
            return
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            clique.append(v)
            rec(clique, cand & nbr[v])
            clique.pop()

    for v in range(n):
        rec([v], nbr[v])
    return out


def enumerate_halffiber_cliques(m: SurfaceModel, k: int, orbit_cap: int = DEFAULT_ORBIT_CAP) -> list[tuple[LatticeVector, ...]]:
    if not 1 <= k <= 10:
        raise PreconditionError("clique size must be between 1 and 10")
    ctx = _context(m, orbit_cap)
    adj = ctx.hf_hf == 1
    out = [tuple(m.lattice.vector(ctx.hf[i]) for i in c) for c in _cliques(adj, k, k)]
    return sorted(out, key=lambda c: tuple(v.coords for v in c))


def max_clique_size(m: SurfaceModel, orbit_cap: int = DEFAULT_ORBIT_CAP) -> int:
    ctx = _context(m, orbit_cap)
    cl = _cliques(ctx.hf_hf == 1, 10)
    return max((len(c) for c in cl), default=0)


# chains

def _anchor_chains(ctx: _Context, a: int, max_len: int) -> list[tuple[tuple[int, ...], int]]:
    """All A-chains of curves attached to anchor ``a``: ``(curves, mask)``."""
    fa = ctx.hf_curve[a]
    cc = ctx.curve_curve
    out: list[tuple[tuple[int, ...], int]] = [((), 0)]
    if max_len == 0:
        return out
    starts = [int(r) for r in np.flatnonzero(fa == 1)]
    zero_a = fa == 0

    def rec(chain: list[int], mask: int):
        out.append((tuple(chain), mask))
        if len(chain) == max_len:
            return
        last = chain[-1]
        for r in np.flatnonzero((cc[last] == 1) & zero_a):
            r = int(r)
            if mask >> r & 1:
                continue
            if any(cc[p, r] != 0 for p in chain[:-1]):
                continue
            chain.append(r)
            rec(chain, mask | 1 << r)
            chain.pop()

    for r in starts:
        rec([r], 1 << r)
    return out


def _complete(
    ctx: _Context,
    clique: tuple[int, ...],
    length: int,
    chains: dict[int, list],
    nonorth: list[int],
    perp: list[int],
    even: bool,
) -> list[tuple[tuple[int, tuple[int, ...]], ...]]:
    """Every choice of chains on ``clique`` with total entry count ``length``."""
    c = len(clique)
    budget = length - c
    options = []
    for s, a in enumerate(clique):
        others = ~0
        for t, b in enumerate(clique):
            if t != s:
                others &= perp[b]
        opts = [(ch, mask) for ch, mask in chains[a] if len(ch) <= budget and mask & ~others == 0]
        options.append(opts)
    best = [max((len(ch) for ch, _ in o), default=0) for o in options]
    tail = [0] * (c + 1)
    for s in range(c - 1, -1, -1):
        tail[s] = tail[s + 1] + best[s]
    if tail[0] < budget:
        return []
    results = []
    chosen: list[tuple[int, ...]] = []

    def rec(s: int, left: int, blocked: int):
        if s == c:
            if left == 0:
                results.append(tuple(zip(clique, chosen)))
            return
        if tail[s] < left:
            return
        for ch, mask in options[s]:
            if len(ch) > left or mask & blocked:
                continue
            nb = blocked
            for r in ch:
                nb |= nonorth[r]
            chosen.append(ch)
            rec(s + 1, left - len(ch), nb)
            chosen.pop()

    rec(0, budget, 0)
    if even:
        results = [r for r in results if _sum_even(ctx, r)]
    return results


def _sum_even(ctx: _Context, structure) -> bool:
    n = len(ctx.hf[0])
    total = [0] * n
    for a, ch in structure:
        t = len(ch)
        for i in range(n):
            total[i] += (t + 1) * ctx.hf[a][i]
        for k, r in enumerate(ch):
            w = t - k
            for i in range(n):
                total[i] += w * ctx.curves[r][i]
    return all(v % 2 == 0 for v in total)


def _search(ctx: _Context, target: Target, cliques: Sequence[tuple[int, ...]]):
    length = target.length
    nonorth = ctx.nonorth
    perp = []
    for a in range(len(ctx.hf)):
        mask = 0
        for r in np.flatnonzero(ctx.hf_curve[a] == 0):
            mask |= 1 << int(r)
        perp.append(mask)
    chains: dict[int, list] = {}
    out = []
    for cl in cliques:
        for a in cl:
            if a not in chains:
                chains[a] = _anchor_chains(ctx, a, length - 1)
        out.extend(_complete(ctx, cl, length, chains, nonorth, perp, target is Target.O2NINE))
    return out


def _build_sequence(m: SurfaceModel, ctx: _Context, structure) -> IsotropicSequence:
    lat = m.lattice
    entries: list[LatticeVector] = []
    ann = []
    for a, ch in structure:
        f = lat.vector(ctx.hf[a])
        ann.append(AnchorChain(len(entries), tuple(lat.vector(ctx.curves[r]) for r in ch)))
        entries.append(f)
        cur = f
        for r in ch:
            cur = cur + lat.vector(ctx.curves[r])
            entries.append(cur)
    return IsotropicSequence(tuple(entries), tuple(ann))


def _worker(args):
    data, orbit_cap, target, cliques = args
    m = model_from_dict(data)
    ctx = _context(m, orbit_cap)
    return _search(ctx, Target(target), [tuple(c) for c in cliques])


def enumerate_canonical_sequences(
    m: SurfaceModel,
    target: "Target | str",
    orbit_cap: int = DEFAULT_ORBIT_CAP,
    workers: int = 1,
) -> list[IsotropicSequence]:
    """Every canonical sequence of the target shape supported by the model.

    Output is deduplicated up to reordering and sorted by the canonical key
    of the entries, independently of ``workers``.
    """
    target = Target(target)
    ctx = _context(m, orbit_cap)
    if not ctx.hf:
        return []
    cliques = _cliques(ctx.hf_hf == 1, target.length)
    if workers > 1 and len(cliques) > 1:
        data = model_to_dict(m)
        parts = [cliques[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as ex:
            found = [s for chunk in ex.map(_worker, [(data, orbit_cap, target.value, p) for p in parts]) for s in chunk]
    else:
        found = _search(ctx, target, cliques)
    seqs = {}
    for structure in found:
        seq = _build_sequence(m, ctx, structure)
        seqs.setdefault(seq.key(), seq)
    return [seqs[k] for k in sorted(seqs)]


# polarizations

@dataclass(frozen=True)
class EnumerationResult:
    kind: Kind
    polarizations: tuple[Polarization, ...]
    stats: dict
    model: str
    note: str = EXACTNESS_NOTE

    def __len__(self) -> int:
        return len(self.polarizations)

    def vectors(self) -> list[tuple[int, ...]]:
        return [p.vector.coords for p in self.polarizations]

    def to_dict(self) -> dict:
        return {
            "model": self.model,
            "kind": self.kind.value,
            "count": len(self.polarizations),
            "stats": self.stats,
            "note": self.note,
            "polarizations": [p.to_dict() for p in self.polarizations],
        }


def enumerate_polarizations(
    m: SurfaceModel,
    kind: "Kind | str",
    orbit_cap: int = DEFAULT_ORBIT_CAP,
    workers: int = 1,
) -> EnumerationResult:
    kind = Kind.parse(kind)
    seqs = enumerate_canonical_sequences(m, Target.for_kind(kind), orbit_cap, workers)
    by_vec: dict[tuple[int, ...], Polarization] = {}
    collapsed = 0
    for s in seqs:
        p = polarization_from_sequence(s)
        if p.vector.coords in by_vec:
            collapsed += 1
            continue
        by_vec[p.vector.coords] = p
    pols = tuple(by_vec[k] for k in sorted(by_vec))
    hist = Counter(p.nondegeneracy for p in pols)
    stats = {
        "sequences": len(seqs),
        "collapsed": collapsed,
        "by_nondegeneracy": {str(c): hist[c] for c in sorted(hist)},
    }
    return EnumerationResult(kind, pols, stats, m.name)



def uniqueness_violations(p: Polarization, m: SurfaceModel, orbit_cap: int = DEFAULT_ORBIT_CAP) -> list[str]:
    """Check that ``p`` meets the entries of its own sequence in exactly
    phi (3 for Fano, 4 for Mukai) and every other model half-fiber in more.
    An empty list means both statements hold."""
    phi = p.kind.phi
    h = p.vector
    lat = m.lattice
    entries = {e.coords for e in p.sequence.entries}
    out = []
    for g in sorted(entries):
        k = h.dot(lat.vector(g))
        if k != phi:
            out.append(f"{list(h.coords)}: entry {list(g)} meets it in {k}, not {phi}")
    pool, _ = halffiber_pool(m, orbit_cap)
    for f in pool:
        if f in entries:
            continue
        k = h.dot(lat.vector(f))
        if k <= phi:
            out.append(f"{list(h.coords)}: half-fiber {list(f)} outside the sequence meets it in {k}")
    return out

# orbits of polarizations

@dataclass(frozen=True)
class OrbitReduction:
    kind: Kind
    representatives: tuple[Polarization, ...]
    orbit_sizes: tuple[int, ...]
    orbit_of: dict
    model: str

    @property
    def count(self) -> int:
        return len(self.representatives)

    def to_dict(self) -> dict:
        return {
            "model": self.model,
            "kind": self.kind.value,
            "orbits": self.count,
            "orbit_sizes": list(self.orbit_sizes),
            "representatives": [p.to_dict() for p in self.representatives],
        }


def orbit_representatives(res: EnumerationResult, m: SurfaceModel, cap: int = DEFAULT_ORBIT_CAP) -> OrbitReduction:
    """Partition the polarization vectors into orbits of the generated group;
    the representative of an orbit is its lex-min member."""
    gens = generator_set(m)
    members = {p.vector.coords: p for p in res.polarizations}
    orbit_of: dict[tuple[int, ...], int] = {}
    orbits: list[list[tuple[int, ...]]] = []
    for v in sorted(members):
        if v in orbit_of:
            continue
        pts, truncated = orbit_coords(gens, [v], cap)
        if truncated:
            raise OrbitCapExceeded(f"orbit of {list(v)} exceeds the cap {cap}")
        inside = sorted(p for p in pts if p in members)
        for p in inside:
            orbit_of[p] = len(orbits)
        orbits.append(inside)
    reps = tuple(members[o[0]] for o in orbits)
    return OrbitReduction(res.kind, reps, tuple(len(o) for o in orbits), orbit_of, res.model)


# invariants

ALLOWED_CASES = ((10, 10, 9), (10, 10, 8), (9, 9, 8), (9, 8, 9))


def allowed_case(nd: int | None, fnd: int | None, mnd: int | None) -> bool:
    """Whether a triple ``(nd, Fnd, Mnd)`` is one the theory permits."""
    if nd is None or fnd is None or mnd is None:
        return False
    if (nd, fnd, mnd) in ALLOWED_CASES:
        return True
    return nd == fnd == mnd


@dataclass(frozen=True)
class Invariants:
    nd: int | None
    Fnd: int | None
    Mnd: int | None
    clique_bound: int
    consistent_with_clique_bound: bool
    allowed: bool
    note: str = EXACTNESS_NOTE
    model: str = ""

    def to_dict(self) -> dict:
        return {
            "model": self.model,
            "nd": self.nd,
            "Fnd": self.Fnd,
            "Mnd": self.Mnd,
            "clique_lower_bound": self.clique_bound,
            "consistent_with_clique_bound": self.consistent_with_clique_bound,
            "allowed_case": self.allowed,
            "note": self.note,
        }


def compute_invariants(m: SurfaceModel, orbit_cap: int = DEFAULT_ORBIT_CAP, workers: int = 1) -> Invariants:
    """nd, Fnd and Mnd of a model whose curve and fibration data are taken as
    exhaustive.  A side with no sequences reports ``None``; if both are
    empty the data cannot describe a surface and EmptyEnumeration is raised.
    """
    fano = enumerate_canonical_sequences(m, Target.LEN10, orbit_cap, workers)
    mukai = enumerate_canonical_sequences(m, Target.O2NINE, orbit_cap, workers)
    if not fano and not mukai:
        raise EmptyEnumeration(f"model {m.name!r} supports no canonical sequence; its data is incomplete")
    fnd = max((s.nondegeneracy for s in fano), default=None)
    mnd = max((s.nondegeneracy for s in mukai), default=None)
    nd = max(v for v in (fnd, mnd) if v is not None)
    bound = max_clique_size(m, orbit_cap)
    return Invariants(nd, fnd, mnd, bound, nd >= bound, allowed_case(nd, fnd, mnd), model=m.name)


# certificates

@dataclass(frozen=True)
class Witness:
    representative: tuple[int, ...]
    curves: tuple[tuple[int, ...], ...]
    sequence: tuple[tuple[int, ...], ...] = ()
    # for Mukai mode: per curve, the indices i with g_i.R != 0
    evidence: tuple[tuple[int, ...], ...] = ()


@dataclass(frozen=True)
class BoundCertificate:
    mode: Kind
    d: int
    witnesses: tuple[Witness, ...]
    conclusion: str
    model: str

    def to_dict(self) -> dict:
        return {
            "model": self.model,
            "mode": self.mode.value,
            "d": self.d,
            "conclusion": self.conclusion,
            "witnesses": [
                {
                    "representative": list(w.representative),
                    "curves": [list(c) for c in w.curves],
                    "sequence": [list(g) for g in w.sequence],
                    "evidence": [list(e) for e in w.evidence],
                }
                for w in self.witnesses
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "BoundCertificate":
        ws = tuple(
            Witness(
                tuple(w["representative"]),
                tuple(tuple(c) for c in w["curves"]),
                tuple(tuple(g) for g in w.get("sequence", [])),
                tuple(tuple(e) for e in w.get("evidence", [])),
            )
            for w in data["witnesses"]
        )
        return cls(Kind.parse(data["mode"]), int(data["d"]), ws, data["conclusion"], data.get("model", ""))


def conclusion_text(mode: Kind, d: int) -> str:
    return f"Fnd ≤ {10 - d}" if mode is Kind.FANO else f"Mnd ≤ {9 - d}"


def curve_pool(m: SurfaceModel, orbit_cap: int = DEFAULT_ORBIT_CAP) -> list[tuple[int, ...]]:
    seed = m.curve_coords()
    if not m.isometries:
        return sorted(set(seed))
    return orbit_coords(generator_set(m), seed, orbit_cap)[0]


def _sequence_for(rep: Polarization, m: SurfaceModel, lookup: dict | None) -> IsotropicSequence | None:
    if rep.sequence is not None and rep.sequence.length:
        return rep.sequence
    if lookup is not None:
        p = lookup.get(rep.vector.coords)
        return p.sequence if p is not None else None
    return None


def upper_bound_certificate(
    m: SurfaceModel,
    reps: Sequence[Polarization],
    d: int,
    mode: "Kind | str",
    orbit_cap: int = DEFAULT_ORBIT_CAP,
) -> BoundCertificate:
    """Find, for every representative, ``d`` distinct curves orthogonal to it.

    In Mukai mode a curve orthogonal to all nine entries of the sequence
    lies in the rank-one lattice H and is not accepted as a witness.
    """
    mode = Kind.parse(mode)
    if not reps:
        raise PreconditionError("no representatives given")
    if d < 1:
        raise PreconditionError("d must be positive")
    pool = curve_pool(m, orbit_cap)
    lat = m.lattice
    lookup = None
    witnesses = []
    bad = []
    diagnostics = []
    for rep in reps:
        if rep.kind is not mode:
            raise PreconditionError(f"representative {list(rep.vector.coords)} is {rep.kind.value}, not {mode.value}")
        h = rep.vector
        orth = [r for r in pool if h.dot(lat.vector(r)) == 0]
        seq_coords: tuple = ()
        evidence: list[tuple[int, ...]] = []
        if mode is Kind.MUKAI:
            seq = _sequence_for(rep, m, lookup)
            if seq is None:
                lookup = {p.vector.coords: p for p in enumerate_polarizations(m, Kind.MUKAI, orbit_cap).polarizations}
                seq = _sequence_for(rep, m, lookup)
            if seq is None:
                bad.append(h.coords)
                diagnostics.append(f"{list(h.coords)}: no O2 sequence on the model defines this vector")
                continue
            seq_coords = tuple(g.coords for g in seq.entries)
            kept = []
            in_h = []
            for r in orth:
                rv = lat.vector(r)
                idx = tuple(i for i, g in enumerate(seq.entries) if g.dot(rv) != 0)
                if idx:
                    kept.append(r)
                    evidence.append(idx)
                else:
                    in_h.append(r)
            if len(kept) < d:
                bad.append(h.coords)
                msg = f"{list(h.coords)}: {len(kept)} admissible orthogonal curves, need {d}"
                if in_h:
                    msg += f"; Mukai clause: {len(in_h)} orthogonal curve(s) lie in H and are excluded"
                diagnostics.append(msg)
                continue
            chosen = tuple(kept[:d])
            evidence = evidence[:d]
        else:
            if len(orth) < d:
                bad.append(h.coords)
                diagnostics.append(f"{list(h.coords)}: {len(orth)} orthogonal curves, need {d}")
                continue
            chosen = tuple(orth[:d])
        witnesses.append(Witness(h.coords, chosen, seq_coords, tuple(evidence)))
    if bad:
        raise CertificateFailure(f"{len(bad)} representative(s) not certified at d = {d}", bad, diagnostics)
    return BoundCertificate(mode, d, tuple(witnesses), conclusion_text(mode, d), m.name)


@dataclass(frozen=True)
class RecheckReport:
    ok: bool
    problems: tuple[str, ...]


def recheck_certificate(cert: BoundCertificate, m: SurfaceModel, orbit_cap: int = DEFAULT_ORBIT_CAP) -> RecheckReport:
    """Recompute every witness intersection of a certificate from scratch."""
    lat = m.lattice
    pool = set(curve_pool(m, orbit_cap))
    problems = []
    if cert.conclusion != conclusion_text(cert.mode, cert.d):
        problems.append(f"conclusion {cert.conclusion!r} does not follow from d = {cert.d}")
    for w in cert.witnesses:
        h = lat.vector(w.representative)
        tag = list(w.representative)
        if h.norm != cert.mode.degree:
            problems.append(f"{tag}: norm {h.norm} is not {cert.mode.degree}")
        if len(set(w.curves)) != len(w.curves) or len(w.curves) < cert.d:
            problems.append(f"{tag}: fewer than {cert.d} distinct witness curves")
        for r in w.curves:
            rv = lat.vector(r)
            if r not in pool:
                problems.append(f"{tag}: witness {list(r)} is not a model curve")
            if rv.norm != -2:
                problems.append(f"{tag}: witness {list(r)} has norm {rv.norm}")
            if h.dot(rv) != 0:
                problems.append(f"{tag}: witness {list(r)} meets the representative in {h.dot(rv)}")
        if cert.mode is Kind.MUKAI:
            gs = [lat.vector(g) for g in w.sequence]
            if len(gs) != 9:
                problems.append(f"{tag}: Mukai witness without its 9-entry sequence")
                continue
            s = [sum(c) for c in zip(*(g.coords for g in gs))]
            if any(v % 2 for v in s) or tuple(v // 2 for v in s) != w.representative:
                problems.append(f"{tag}: recorded sequence does not sum to twice the representative")
            for i, g in enumerate(gs):
                if g.norm != 0 or any(g.dot(gs[j]) != 1 for j in range(9) if j != i):
                    problems.append(f"{tag}: recorded sequence is not isotropic")
                    break
            for r in w.curves:
                rv = lat.vector(r)
                if all(g.dot(rv) == 0 for g in gs):
                    problems.append(f"{tag}: witness {list(r)} lies in H")
    return RecheckReport(not problems, tuple(problems))


# ampleness analysis of Mukai polarizations

class MukaiScenario(str, enum.Enum):
    AMPLE = "ample-against-model"
    SCENARIO_1 = "scenario-1"
    SCENARIO_2 = "scenario-2"
    UNRESOLVED = "unresolved"


@dataclass(frozen=True)
class MukaiAnalysis:
    vector: tuple[int, ...]
    rho: tuple[int, ...]
    scenario: MukaiScenario
    orthogonal_curves: tuple[tuple[int, ...], ...]
    curves_in_H: tuple[tuple[int, ...], ...]
    halffibers_at_4: tuple[tuple[int, ...], ...] = ()
    notes: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "vector": list(self.vector),
            "rho": list(self.rho),
            "scenario": self.scenario.value,
            "orthogonal_curves": [list(r) for r in self.orthogonal_curves],
            "curves_in_H": [list(r) for r in self.curves_in_H],
            "halffibers_at_4": [list(f) for f in self.halffibers_at_4],
            "notes": list(self.notes),
        }


def mukai_orthogonal_analysis(v: Polarization, m: SurfaceModel, orbit_cap: int = DEFAULT_ORBIT_CAP) -> MukaiAnalysis:
    if v.kind is not Kind.MUKAI:
        raise PreconditionError("analysis applies to Mukai polarizations")
    lat = m.lattice
    seq = v.sequence
    rho = complement_generator(seq)
    if rho.norm != -2:
        raise PreconditionError(f"complement generator has norm {rho.norm}")
    curves = [lat.vector(r) for r in curve_pool(m, orbit_cap)]
    orth = [r for r in curves if v.vector.dot(r) == 0]
    in_h = [r for r in orth if all(g.dot(r) == 0 for g in seq.entries)]
    outside = [r for r in orth if r not in in_h]
    notes = []
    at4: list[tuple[int, ...]] = []
    if not orth:
        if all(v.vector.dot(r) > 0 for r in curves):
            scenario = MukaiScenario.AMPLE
        else:
            scenario = MukaiScenario.UNRESOLVED
            notes.append("vector is negative on some model curve")
    elif len(orth) >= 2 and outside:
        scenario = MukaiScenario.SCENARIO_1
        notes.append("at most one curve lies in H, so a second orthogonal curve is contracted")
    elif len(orth) == 1:
        pool, _ = halffiber_pool(m, orbit_cap)
        at4 = [f for f in pool if v.vector.dot(lat.vector(f)) == 4]
        entries = {g.coords for g in seq.entries}
        r = orth[0]
        anchors_ok = all(f in entries for f in at4)
        if anchors_ok and (r in seq.curves() or r in in_h):
            scenario = MukaiScenario.SCENARIO_2
            role = "a chain curve of the sequence" if r in seq.curves() else "the effective root of H"
            notes.append(f"secondary search found {len(at4)} half-fibers at 4; the curve is {role}")
        else:
            scenario = MukaiScenario.UNRESOLVED
            notes.append("secondary search did not reproduce the sequence")
    else:
        scenario = MukaiScenario.UNRESOLVED
        notes.append("every orthogonal curve lies in H")
    return MukaiAnalysis(
        v.vector.coords,
        rho.coords,
        scenario,
        tuple(r.coords for r in orth),
        tuple(r.coords for r in in_h),
        tuple(at4),
        tuple(notes),
    )
