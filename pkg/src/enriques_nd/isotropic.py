"""Isotropic sequences in L10 and the polarizations they define.

An isotropic sequence is a list ``f_1, ..., f_n`` with ``f_i^2 = 0`` and
``f_i . f_j = 1`` for ``i != j``; the maximal length is 10.  A sequence of
length 10 sums to three times a Fano vector, and a length-9 sequence whose
sum is divisible by 2 sums to twice a Mukai vector.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    EmptyCandidates,
    InternalInconsistency,
    LatticeMismatch,
    NotDivisible,
    NotFound,
    NotUnique,
    O1Mukai,
    PreconditionError,
    SequenceViolation,
    WrongLength,
)
from .lattice import intmat
from .lattice.core import IntegerLattice, LatticeVector, inner_product, make_L10
from .lattice.shortvec import Box, as_box, box_vectors
from .lattice.sublattice import orthogonal_complement_primitive

MAX_LENGTH = 10
DEFAULT_BOX = 3
DEFAULT_FRAME = "dual"


class Orbit(str, enum.Enum):
    O1 = "O1"
    O2 = "O2"


class Kind(str, enum.Enum):
    FANO = "fano"
    MUKAI = "mukai"

    @classmethod
    def parse(cls, value: "str | Kind") -> "Kind":
        if isinstance(value, Kind):
            return value
        return cls(str(value).lower())

    @property
    def degree(self) -> int:
        return 10 if self is Kind.FANO else 18

    @property
    def phi(self) -> int:
        return 3 if self is Kind.FANO else 4

    @property
    def length(self) -> int:
        return 10 if self is Kind.FANO else 9


@dataclass(frozen=True)
class Violation:
    kind: str  # NotIsotropic | BadPairing | TooLong | Mismatch | BadAnnotation
    indices: tuple[int, ...] = ()
    detail: str = ""

    def __str__(self) -> str:
        idx = ",".join(map(str, self.indices))
        s = f"{self.kind}({idx})"
        return f"{s}: {self.detail}" if self.detail else s


@dataclass(frozen=True)
class AnchorChain:
    """A half-fiber anchor (index into the entries) and its attached chain
    ``R_1, ..., R_t``; the anchor's group is ``f, f+R_1, ..., f+R_1+...+R_t``."""

    anchor: int
    curves: tuple[LatticeVector, ...] = ()


@dataclass(frozen=True)
class IsotropicSequence:
    entries: tuple[LatticeVector, ...]
    annotation: tuple[AnchorChain, ...] | None = None

    @property
    def length(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def lattice(self) -> IntegerLattice | None:
        return self.entries[0].lattice if self.entries else None

    def entry_sum(self) -> tuple[int, ...]:
        if not self.entries:
            return ()
        return tuple(sum(c) for c in zip(*(e.coords for e in self.entries)))

    @property
    def nondegeneracy(self) -> int | None:
        return None if self.annotation is None else len(self.annotation)

    def curves(self) -> list[LatticeVector]:
        if not self.annotation:
            return []
        return sorted({r for ch in self.annotation for r in ch.curves})

    def sorted(self) -> "IsotropicSequence":
        """Copy with entries in canonical order; anchors are reindexed."""
        order = sorted(range(len(self.entries)), key=lambda i: self.entries[i].coords)
        entries = tuple(self.entries[i] for i in order)
        if self.annotation is None:
            return IsotropicSequence(entries)
        where = {old: new for new, old in enumerate(order)}
        ann = tuple(sorted((AnchorChain(where[a.anchor], a.curves) for a in self.annotation), key=lambda a: a.anchor))
        return IsotropicSequence(entries, ann)

    def key(self) -> tuple[tuple[int, ...], ...]:
        return tuple(sorted(e.coords for e in self.entries))

    def to_json(self) -> list[list[int]]:
        return [list(e.coords) for e in self.entries]


def _annotation_violations(entries: Sequence[LatticeVector], annotation: Sequence[AnchorChain]) -> list[Violation]:
    out = []
    covered: dict[tuple[int, ...], int] = {}
    index = {}
    for i, e in enumerate(entries):
        index.setdefault(e.coords, i)
    for s, group in enumerate(annotation):
        if not 0 <= group.anchor < len(entries):
            out.append(Violation("BadAnnotation", (s,), "anchor index out of range"))
            continue
        f = entries[group.anchor]
        partial = f
        members = [group.anchor]
        for k, r in enumerate(group.curves):
            if r.lattice != f.lattice:
                out.append(Violation("BadAnnotation", (s, k), "curve from another lattice"))
                return out
            if r.norm != -2:
                out.append(Violation("BadAnnotation", (s, k), "chain curve is not a root"))
            want = 1 if k == 0 else 0
            if f.dot(r) != want:
                out.append(Violation("BadAnnotation", (s, k), f"anchor meets curve {k + 1} in {f.dot(r)}"))
            for l in range(k):
                want = 1 if l == k - 1 else 0
                if group.curves[l].dot(r) != want:
                    out.append(Violation("BadAnnotation", (s, l, k), "chain curves do not form an A-chain"))
            partial = partial + r
            if partial.coords not in index:
                out.append(Violation("BadAnnotation", (s, k), "partial chain sum is not an entry"))
            else:
                members.append(index[partial.coords])
        for i in members:
            covered[entries[i].coords] = covered.get(entries[i].coords, 0) + 1
    for i, e in enumerate(entries):
        if covered.get(e.coords, 0) != 1:
            out.append(Violation("BadAnnotation", (i,), "entry not covered exactly once by the annotation"))
    return out


def sequence_violations(entries: Sequence[LatticeVector], annotation: Sequence[AnchorChain] | None = None) -> list[Violation]:
    out: list[Violation] = []
    entries = list(entries)
    if len(entries) > MAX_LENGTH:
        out.append(Violation("TooLong", (len(entries),)))
    if entries:
        lat = entries[0].lattice
        for i, e in enumerate(entries):
            if e.lattice != lat:
                out.append(Violation("Mismatch", (i,), "entry from another lattice"))
        if any(v.kind == "Mismatch" for v in out):
            return out
    for i, e in enumerate(entries):
        if e.norm != 0:
            out.append(Violation("NotIsotropic", (i,), f"norm {e.norm}"))
    for i in range(len(entries)):
        for j in range(i + 1, len(entries)):
            p = entries[i].dot(entries[j])
            if p != 1:
                out.append(Violation("BadPairing", (i, j), f"product {p}"))
    if annotation is not None and not out:
        out.extend(_annotation_violations(entries, annotation))
    return out


def check_isotropic_sequence(entries: Iterable[LatticeVector], annotation: Sequence[AnchorChain] | None = None) -> IsotropicSequence:
    """Validate ``entries`` (and an optional canonical annotation).

    Raises :class:`SequenceViolation` listing every failed norm and pairing.
    """
    entries = tuple(entries)
    bad = sequence_violations(entries, annotation)
    if bad:
        if any(v.kind == "Mismatch" for v in bad):
            raise LatticeMismatch("sequence mixes lattices")
        raise SequenceViolation(bad)
    return IsotropicSequence(entries, None if annotation is None else tuple(annotation))


def classify_length9(seq: IsotropicSequence) -> Orbit:
    if seq.length != 9:
        raise WrongLength(f"expected 9 entries, got {seq.length}")
    s = seq.entry_sum()
    g = intmat.gcd_vector(s)
    if g % 2 == 0:
        return Orbit.O2
    if g == 1:
        return Orbit.O1
    raise InternalInconsistency(f"sum of a length-9 sequence has content {g}")


@dataclass(frozen=True)
class Polarization:
    vector: LatticeVector
    kind: Kind
    sequence: IsotropicSequence
    nondegeneracy: int
    contracted_curves: tuple[LatticeVector, ...] = ()

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "vector": list(self.vector.coords),
            "sequence": self.sequence.to_json(),
            "nondegeneracy": self.nondegeneracy,
            "contracted_curves": [list(r.coords) for r in self.contracted_curves],
        }


def polarization_vector(seq: IsotropicSequence) -> tuple[Kind, LatticeVector]:
    """Fano or Mukai vector of a valid sequence of length 10 or O2-length 9,
    with every numerical identity re-verified."""
    if seq.length == 10:
        kind, div = Kind.FANO, 3
    elif seq.length == 9:
        if classify_length9(seq) is Orbit.O1:
            raise O1Mukai("length-9 sequence in O1 does not define a Mukai vector")
        kind, div = Kind.MUKAI, 2
    else:
        raise WrongLength(f"polarizations come from 10 or 9 entries, not {seq.length}")
    s = seq.entry_sum()
    if any(c % div for c in s):
        raise NotDivisible(f"entry sum is not divisible by {div}")
    v = seq.lattice.vector(c // div for c in s)
    if v.norm != kind.degree:
        raise NotDivisible(f"vector has norm {v.norm}, expected {kind.degree}")
    for i, f in enumerate(seq.entries):
        if v.dot(f) != kind.phi:
            raise NotDivisible(f"vector meets entry {i} in {v.dot(f)}, expected {kind.phi}")
    return kind, v


def trivial_annotation(seq: IsotropicSequence) -> IsotropicSequence:
    """Annotate every entry as a bare anchor (no curves)."""
    return IsotropicSequence(seq.entries, tuple(AnchorChain(i) for i in range(seq.length)))


def polarization_from_sequence(seq: IsotropicSequence) -> Polarization:
    if seq.annotation is None:
        raise PreconditionError("polarization needs an annotated sequence")
    bad = sequence_violations(seq.entries, seq.annotation)
    if bad:
        raise SequenceViolation(bad)
    kind, v = polarization_vector(seq)
    srt = seq.sorted()
    return Polarization(v, kind, srt, len(seq.annotation), tuple(srt.curves()))


def phi_over_candidates(h: LatticeVector, candidates: Sequence[LatticeVector]) -> int:
    if not candidates:
        raise EmptyCandidates("no isotropic candidates")
    for f in candidates:
        if f.norm != 0:
            raise PreconditionError("candidate is not isotropic")
    return min(abs(inner_product(h, f)) for f in candidates)


# bounded lattice searches

@lru_cache(maxsize=8)
def _iso_pool(lattice: IntegerLattice, box: Box):
    x = box_vectors(lattice, 0, box)
    a = x @ np.array(lattice.gram, dtype=np.int64)
    a.setflags(write=False)
    return x, a


def isotropic_pool(lattice: IntegerLattice, box: "int | Box" = DEFAULT_BOX, frame: str | None = None):
    """Nonzero isotropic vectors of the box (lex sorted basis coordinates)
    and their pairing rows ``x^T G``."""
    return _iso_pool(lattice, as_box(box, frame, DEFAULT_FRAME))


@dataclass(frozen=True)
class PhiResult:
    value: int
    witness: LatticeVector
    box: Box

    def __int__(self) -> int:
        return self.value


def phi_bounded(h: LatticeVector, box: "int | Box" = DEFAULT_BOX, frame: str | None = None) -> PhiResult:
    """Minimum of ``|h.f|`` over nonzero isotropic ``f`` in the box.

    The witness is the lex-first minimizer.
    """
    b = as_box(box, frame, DEFAULT_FRAME)
    if b.bound < 1:
        raise PreconditionError("box must be at least 1")
    if h.norm <= 0:
        raise PreconditionError("phi needs a vector of positive norm")
    x, _ = _iso_pool(h.lattice, b)
    if len(x) == 0:
        raise NotFound("no isotropic vectors", b.bound, b.frame)
    gh = np.array(intmat.matvec(h.lattice.gram, h.coords), dtype=np.int64)
    vals = np.abs(x @ gh)
    m = int(vals.min())
    i = int(np.flatnonzero(vals == m)[0])
    return PhiResult(m, h.lattice.vector(int(c) for c in x[i]), b)


def extension_candidates(seq: IsotropicSequence, box: "int | Box" = DEFAULT_BOX, frame: str | None = None) -> list[LatticeVector]:
    """Every isotropic ``f`` in the box with ``f.f_i = 1`` for all entries.

    The affine system ``f.f_i = 1`` is first solved over the integers; when
    it has no integral solution the answer is empty without scanning.
    Otherwise the isotropic vectors of the box are filtered by the system.
    """
    b = as_box(box, frame, DEFAULT_FRAME)
    lat = seq.lattice or make_L10()
    x, a = _iso_pool(lat, b)
    if seq.length == 0:
        return [lat.vector(int(c) for c in row) for row in x]
    rows = [intmat.matvec(lat.gram, f.coords) for f in seq.entries]
    if intmat.solve_integer(rows, [1] * len(rows)) is None:
        return []
    mask = np.ones(len(x), dtype=bool)
    for f in seq.entries:
        mask &= (a @ np.array(f.coords, dtype=np.int64)) == 1
    return [lat.vector(int(c) for c in row) for row in x[mask]]


def search_isotropic_sequences(
    length: int,
    box: "int | Box" = DEFAULT_BOX,
    frame: str | None = None,
    lattice: IntegerLattice | None = None,
    even_sum: bool | None = None,
    limit: int = 1,
    breadth: int = 50,
    positive: bool = True,
) -> list[IsotropicSequence]:
    """Depth-first search for isotropic sequences inside a box.

    Entries are picked in increasing pool order and each level tries at most
    ``breadth`` candidates, so this finds examples, not every sequence.
    ``even_sum`` selects sequences by the parity of the entry sum.  Entries
    of a sequence pair positively, so they share a half of the light cone;
    with ``positive`` the pool is cut to the half containing the Fano vector
    of the fundamental chamber (x.omega_1 = x_1 > 0).
    """
    if not 1 <= length <= MAX_LENGTH:
        raise PreconditionError("length must be between 1 and 10")
    lat = lattice or make_L10()
    x, a = isotropic_pool(lat, box, frame)
    if positive:
        keep = x[:, 0] > 0 if lat == make_L10() else np.ones(len(x), dtype=bool)
        x, a = x[keep], a[keep]
    found: list[list[int]] = []
    chosen: list[int] = []

    def rec(cands: np.ndarray):
        if len(found) >= limit:
            return
        if len(chosen) == length:
            s = x[chosen].sum(axis=0)
            if even_sum is None or bool(np.all(s % 2 == 0)) == even_sum:
                found.append(list(chosen))
            return
        for idx in cands[:breadth]:
            if len(found) >= limit:
                return
            nxt = cands[(a[cands] @ x[idx] == 1) & (cands > idx)]
            if len(nxt) < length - len(chosen) - 1:
                continue
            chosen.append(int(idx))
            rec(nxt)
            chosen.pop()

    rec(np.arange(len(x)))
    out = []
    for idxs in found:
        out.append(check_isotropic_sequence(lat.vector(int(c) for c in x[i]) for i in idxs))
    return out


def complement_generator(seq: IsotropicSequence) -> LatticeVector:
    """The primitive generator ``rho`` of the orthogonal complement of the
    entries of a length-9 sequence (a rank-one lattice)."""
    if seq.length != 9:
        raise WrongLength("complement generator needs 9 entries")
    basis = orthogonal_complement_primitive(seq.lattice, list(seq.entries))
    if len(basis) != 1:
        raise InternalInconsistency(f"complement has rank {len(basis)}")
    return basis[0]


def chamber_vectors(norm: int, box: "int | Box" = DEFAULT_BOX, frame: str | None = None, lattice: IntegerLattice | None = None) -> list[LatticeVector]:
    """Vectors of the given norm with ``x.e_i >= 0`` for every basis root."""
    b = as_box(box, frame, DEFAULT_FRAME)
    lat = lattice or make_L10()
    n = lat.rank
    if b.frame == "dual":
        pts = box_vectors(lat, norm, b, lo=[0] * n, hi=[b.bound] * n)
    else:
        pts = box_vectors(lat, norm, b)
        pts = pts[np.all(pts @ np.array(lat.gram, dtype=np.int64) >= 0, axis=1)]
    return [lat.vector(int(c) for c in row) for row in pts]


def vinberg_fano_vector(box: "int | Box" = DEFAULT_BOX, frame: str | None = None, lattice: IntegerLattice | None = None) -> LatticeVector:
    """The unique vector of norm 10 and box-phi 3 in the fundamental chamber."""
    b = as_box(box, frame, DEFAULT_FRAME)
    lat = lattice or make_L10()
    if b.bound < 1:
        raise NotFound("empty box", b.bound, b.frame)
    hits = [v for v in chamber_vectors(10, b, lattice=lat) if phi_bounded(v, b).value == 3]
    if not hits:
        raise NotFound("no chamber vector of norm 10 with phi 3", b.bound, b.frame)
    if len(hits) > 1:
        raise NotUnique(f"{len(hits)} chamber vectors of norm 10 with phi 3 in box {b}", hits)
    return hits[0]
