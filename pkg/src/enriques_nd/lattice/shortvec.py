"""Short and fixed-norm vector enumeration.

Two engines live here:

* :func:`definite_vectors` -- exact Fincke-Pohst recursion for definite
  forms; no box needed.
* :func:`box_vectors` -- exhaustive scan of a coordinate box for vectors of
  a given norm in any (possibly indefinite) lattice.  The scan is
  vectorized with numpy on int64, which is exact as long as the guard in
  :func:`_check_overflow` holds.

A box has a *frame*.  In the ``"basis"`` frame the box bounds the
coordinates ``x_i`` themselves.  In the ``"dual"`` frame it bounds the
pairings ``a_i = x . e_i`` with the basis vectors; for the unimodular L10
this is just another integral coordinate system (the fundamental-weight
basis), and it is the one in which isotropic vectors are small.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt, lcm
from typing import Sequence

import numpy as np

from ..errors import NotDefinite, PreconditionError
from . import intmat
from .core import IntegerLattice

FRAMES = ("basis", "dual")

# upper bound on the size of the vectorized inner grid
_INNER_CELLS = 2_000_000


@dataclass(frozen=True)
class Box:
    """A coordinate box: ``bound`` in the given ``frame``."""

    bound: int
    frame: str = "basis"

    def __post_init__(self):
        if self.frame not in FRAMES:
            raise PreconditionError(f"unknown box frame {self.frame!r}")
        if self.bound < 0:
            raise PreconditionError("box bound must be nonnegative")

    def __str__(self) -> str:
        return f"{self.bound}/{self.frame}"


def as_box(box: "int | Box", frame: str | None = None, default_frame: str = "basis") -> Box:
    if isinstance(box, Box):
        if frame is not None and frame != box.frame:
            return Box(box.bound, frame)
        return box
    return Box(int(box), frame or default_frame)


# Fincke-Pohst

def _ldl(q: Sequence[Sequence[int]]):
    """Completed-square form: ``Q(x) = sum_i d_i (x_i + sum_{j>i} m_ij x_j)^2``."""
    n = len(q)
    a = [[Fraction(v) for v in row] for row in q]
    d = [Fraction(0)] * n
    m = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        d[i] = a[i][i]
        if d[i] <= 0:
            raise NotDefinite("form is not positive definite")
        for j in range(i + 1, n):
            m[i][j] = a[i][j] / d[i]
        for j in range(i + 1, n):
            for k in range(i + 1, n):
                a[j][k] -= m[i][j] * a[i][k]
    return d, m


def _integer_levels(q: Sequence[Sequence[int]]):
    """Scaled integer version of the completed-square form.

    Returns ``(P, levels)`` where each level is ``(W_i, k_i, row_i)`` and
    ``P * Q(x) = sum_i W_i (k_i x_i + sum_{j>i} row_i[j] x_j)^2`` with all
    quantities integral, so the recursion below never builds a Fraction.
    """
    n = len(q)
    d, m = _ldl(q)
    ks = []
    for i in range(n):
        k = 1
        for j in range(i + 1, n):
            k = lcm(k, m[i][j].denominator)
        ks.append(k)
    ws = [d[i] / (ks[i] ** 2) for i in range(n)]
    p = 1
    for w in ws:
        p = lcm(p, w.denominator)
    levels = []
    for i in range(n):
        row = [0] * n
        for j in range(i + 1, n):
            row[j] = int(m[i][j] * ks[i])
        levels.append((int(ws[i] * p), ks[i], row))
    return p, levels


@lru_cache(maxsize=64)
def _definite_cached(gram, sign, limit, exact):
    n = len(gram)
    q = [[sign * v for v in row] for row in gram]
    p, levels = _integer_levels(q)
    out: list[tuple[int, ...]] = []
    x = [0] * n
    top = p * limit

    def rec(i: int, remaining: int):
        if i < 0:
            val = top - remaining
            if val != 0 and (not exact or val == top):
                out.append(tuple(x))
            return
        w, k, row = levels[i]
        s = 0
        for j in range(i + 1, n):
            if row[j] and x[j]:
                s += row[j] * x[j]
        t = isqrt(remaining // w)
        # |k x + s| <= t
        lo = -((t + s) // k)
        hi = (t - s) // k
        for v in range(lo, hi + 1):
            u = k * v + s
            x[i] = v
            rec(i - 1, remaining - w * u * u)
        x[i] = 0

    rec(n - 1, top)
    out.sort()
    return tuple(out)


def definite_vectors(lattice: IntegerLattice, norm: int | None = None, bound: int | None = None) -> list[tuple[int, ...]]:
    """All vectors ``x`` with ``x^2 = norm`` (or ``0 < |x^2| <= bound``) in a
    definite lattice, lexicographically sorted."""
    pos, neg = lattice.signature
    n = lattice.rank
    if pos == n:
        sign = 1
    elif neg == n:
        sign = -1
    else:
        raise NotDefinite("lattice is not definite")
    if norm is not None:
        limit, exact = sign * norm, True
    else:
        limit, exact = bound, False
    if limit is None or limit <= 0:
        return []
    return list(_definite_cached(lattice.gram, sign, int(limit), exact))


# box scans

def _check_overflow(q: np.ndarray, bounds: np.ndarray):
    b = int(np.max(np.abs(bounds))) if bounds.size else 0
    worst = int(np.sum(np.abs(q))) * max(b, 1) ** 2
    if worst >= 2**62:
        raise PreconditionError("box scan would overflow int64; reduce the box")


def _scan(q: np.ndarray, lo: np.ndarray, hi: np.ndarray, target: int) -> np.ndarray:
    """All integer ``a`` with ``lo <= a <= hi`` and ``a^T q a = target``."""
    n = len(q)
    widths = hi - lo + 1
    if n == 0 or np.any(widths <= 0):
        return np.zeros((0, n), dtype=np.int64)
    lo, hi = lo.astype(np.int64), hi.astype(np.int64)
    _check_overflow(q, np.concatenate([lo, hi]))
    k, cells = 0, 1
    while k < n and cells * int(widths[n - 1 - k]) <= _INNER_CELLS:
        cells *= int(widths[n - 1 - k])
        k += 1
    k = max(k, 1)
    h = n - k
    inner = np.array(
        list(itertools.product(*[range(int(lo[i]), int(hi[i]) + 1) for i in range(h, n)])),
        dtype=np.int64,
    ).reshape(-1, k)
    q_tail = q[h:, h:]
    q_inner = np.einsum("ij,jk,ik->i", inner, q_tail, inner)
    q_head = q[:h, :h]
    # column c holds 2 * (row c of the cross block) . inner, so the cross
    # term for a head vector is a short weighted sum of these columns
    cross = [np.ascontiguousarray(inner @ (2 * q[c, h:])) for c in range(h)]
    chunks = []
    for head in itertools.product(*[range(int(lo[i]), int(hi[i]) + 1) for i in range(h)]):
        rest = target - sum(q_head[a, b] * head[a] * head[b] for a in range(h) for b in range(h))
        total = q_inner.copy()
        for c in range(h):
            if head[c]:
                total += head[c] * cross[c]
        sel = inner[total == rest]
        if len(sel):
            hv = np.array(head, dtype=np.int64)
            chunks.append(np.hstack([np.tile(hv, (len(sel), 1)), sel]))
    if not chunks:
        return np.zeros((0, n), dtype=np.int64)
    return np.vstack(chunks)


def lex_sort_rows(a: np.ndarray) -> np.ndarray:
    if len(a) == 0:
        return a
    order = np.lexsort(a.T[::-1])
    return a[order]


@lru_cache(maxsize=32)
def _box_vectors_cached(gram, norm, bound, frame, lo, hi, include_zero):
    g = np.array(gram, dtype=np.int64)
    n = len(g)
    lo_v = np.full(n, -bound, dtype=np.int64) if lo is None else np.array(lo, dtype=np.int64)
    hi_v = np.full(n, bound, dtype=np.int64) if hi is None else np.array(hi, dtype=np.int64)
    if frame == "basis":
        pts = _scan(g, lo_v, hi_v, norm)
    else:
        d = intmat.det(gram)
        adj = np.array(intmat.adjugate(gram), dtype=np.int64)
        # x = G^-1 a, so x^2 = a^T G^-1 a = a^T adj a / det
        a = _scan(adj, lo_v, hi_v, norm * d)
        num = a @ adj.T
        keep = np.all(num % d == 0, axis=1)
        pts = num[keep] // d
    if not include_zero:
        pts = pts[np.any(pts != 0, axis=1)]
    pts = lex_sort_rows(pts)
    pts.setflags(write=False)
    return pts


def box_vectors(
    lattice: IntegerLattice,
    norm: int,
    box: "int | Box",
    frame: str | None = None,
    lo: Sequence[int] | None = None,
    hi: Sequence[int] | None = None,
    include_zero: bool = False,
) -> np.ndarray:
    """Vectors of the given norm inside a box, as a read-only int64 array.

    Rows are basis coordinates, lexicographically sorted.  ``lo``/``hi``
    override the symmetric bound per coordinate (in the box's frame).
    """
    b = as_box(box, frame)
    return _box_vectors_cached(
        lattice.gram,
        int(norm),
        b.bound,
        b.frame,
        None if lo is None else tuple(int(v) for v in lo),
        None if hi is None else tuple(int(v) for v in hi),
        include_zero,
    )


def frame_coords(lattice: IntegerLattice, x: Sequence[int], frame: str) -> tuple[int, ...]:
    if frame == "basis":
        return tuple(int(v) for v in x)
    return tuple(intmat.matvec(lattice.gram, x))


def in_box(lattice: IntegerLattice, x: Sequence[int], box: "int | Box", frame: str | None = None) -> bool:
    b = as_box(box, frame)
    return all(abs(c) <= b.bound for c in frame_coords(lattice, x, b.frame))
